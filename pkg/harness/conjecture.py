"""
The Z^2 intersection identity behind the indexed-language question.

The language {x^n w_n : w_n has n ys and n zs} is studied in its concrete
form over the Z^2 generators: x is the block `a b`, y is `a^-1` and z is
`b^-1`. With that renaming the language equals the word problem of Z^2
intersected with the regular shell (ab)*{a^-1, b^-1}*.
"""
from __future__ import annotations

import itertools
import logging
import math
from dataclasses import replace
from typing import Iterator

from gautomata.automaton import intersect_regular, wp_automaton
from groups.algebra import free_abelian_group
from machines.machine import Edge, Machine, MachineClass, NoOp, is_deterministic, require_valid

from .compare import ComparisonReport, WordSetAcceptor, compare_languages
from .words import enumerate_words

logger = logging.getLogger(__name__)

X_BLOCK = ('a', 'b')
Y_TOKEN = 'a^-1'
Z_TOKEN = 'b^-1'
CONJECTURE_ALPHABET = ('a', 'a^-1', 'b', 'b^-1')


def ln_words(n: int, y: str = 'y', z: str = 'z') -> list[tuple[str, ...]]:
    """Every word over {y, z} with exactly n of each, y-first lexicographic order."""
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    words = []
    for positions in itertools.combinations(range(2 * n), n):
        chosen = set(positions)
        words.append(tuple(y if i in chosen else z for i in range(2 * n)))
    return words


def conjecture_language(n_max: int) -> list[tuple[str, ...]]:
    """(ab)^n w_n for n <= n_max and w_n in L_n(a^-1, b^-1)."""
    return [X_BLOCK * n + w for n in range(n_max + 1) for w in ln_words(n, Y_TOKEN, Z_TOKEN)]


def conjecture_language_xyz(n_max: int) -> list[tuple[str, ...]]:
    """The letters-only reading x^n w_n, w_n in L_n(y, z)."""
    return [('x',) * n + w for n in range(n_max + 1) for w in ln_words(n, 'y', 'z')]


def conjecture_renaming() -> dict[str, tuple[str, ...]]:
    return {'x': X_BLOCK, 'y': (Y_TOKEN,), 'z': (Z_TOKEN,)}


def rename_xyz(word) -> tuple[str, ...]:
    renaming = conjecture_renaming()
    return tuple(token for letter in word for token in renaming[letter])


def conjecture_filter() -> Machine:
    """Deterministic fsa for (ab)*{a^-1, b^-1}*."""
    edges = [
        Edge('ab', 'a', NoOp(), 'b'),
        Edge('b', 'b', NoOp(), 'ab'),
    ]
    for source in ('ab', 'inv'):
        edges.extend(Edge(source, token, NoOp(), 'inv') for token in (Y_TOKEN, Z_TOKEN))
    machine = Machine(
        machine_class=MachineClass.FSA,
        input_alphabet=CONJECTURE_ALPHABET,
        states=('ab', 'b', 'inv'),
        start='ab',
        accepts=('ab', 'inv'),
        edges=tuple(edges),
        name='(ab)*{a^-1,b^-1}*',
    )
    return require_valid(machine)


def fsa_language(m: Machine, max_len: int) -> Iterator[tuple[str, ...]]:
    """Accepted words of a deterministic fsa up to max_len, length-then-lexicographic."""
    if m.machine_class != MachineClass.FSA or not is_deterministic(m):
        raise ValueError(f"{m} is not a deterministic fsa")
    layer = [((), m.start)]
    for length in range(max_len + 1):
        yield from (word for word, state in layer if state in m.accept_set)
        if length == max_len:
            break
        layer = sorted(((word + (edge.token,), edge.dst)
                        for word, state in layer for _, edge in m.edges_from(state)), key=lambda item: item[0])


def conjecture_check(max_len: int, exhaustive: bool = False) -> ComparisonReport:
    """
    Compare the intersection G-automaton with the explicit language.

    By default the sweep covers the words of the regular shell; words outside
    it have no path in the intersection and are not in the explicit language.
    `exhaustive` sweeps every word over the four tokens instead.
    """
    if max_len < 0:
        raise ValueError(f"Length bound must be nonnegative, got {max_len}")
    shell = conjecture_filter()
    automaton = intersect_regular(wp_automaton(free_abelian_group(2)), shell)
    explicit = WordSetAcceptor(conjecture_language(math.ceil(max_len / 2)),
                               label='(ab)^n L_n(a^-1,b^-1)', alphabet=CONJECTURE_ALPHABET)
    if exhaustive:
        words, domain = enumerate_words(CONJECTURE_ALPHABET, max_len), 'all words'
    else:
        words, domain = fsa_language(shell, max_len), 'regular shell'
    report = compare_languages(automaton, explicit, max_len, alphabet=CONJECTURE_ALPHABET,
                               words=words, domain=domain)
    report = replace(report, notes=('x = a b, y = a^-1, z = b^-1',))
    logger.info(f"Conjecture check up to length {max_len} ({domain}): "
                f"{len(report.disagreements)} disagreements")
    return report
