"""
Exact group arithmetic for the three families the toolkit works over:
finite groups given by a Cayley table, free abelian groups Z^k and free
groups F_k.

Specs and elements are frozen values. Every operation here is a pure
function, so values can be shared between threads without copying.
"""
from __future__ import annotations

import itertools
import logging
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence, Union

logger = logging.getLogger(__name__)

FINITE = 'finite'
FREE_ABELIAN = 'free-abelian'
FREE = 'free'

FAMILY_CHOICES = (
    (FINITE, 'Finite group (Cayley table)'),
    (FREE_ABELIAN, 'Free abelian group Z^k'),
    (FREE, 'Free group F_k'),
)

INVERSE_SUFFIX = '^-1'


class GroupError(ValueError):
    """Raised for family/rank mismatches, unknown generators and invalid specs."""


@dataclass(frozen=True, order=True)
class GeneratorSymbol:
    """A generator name with exponent +1 or -1, written `a` or `a^-1`."""
    name: str
    exponent: int = 1

    def __post_init__(self):
        if not self.name or '^' in self.name or any(ch.isspace() for ch in self.name):
            raise GroupError(f"Invalid generator name: {self.name!r}")
        if self.exponent not in (1, -1):
            raise GroupError(f"Generator exponent must be +1 or -1, got {self.exponent}")

    @property
    def token(self) -> str:
        if self.exponent == 1:
            return self.name
        return f"{self.name}{INVERSE_SUFFIX}"

    def inverse(self) -> 'GeneratorSymbol':
        return GeneratorSymbol(self.name, -self.exponent)

    @classmethod
    def parse(cls, token: str) -> 'GeneratorSymbol':
        if token.endswith(INVERSE_SUFFIX):
            return cls(token[:-len(INVERSE_SUFFIX)], -1)
        return cls(token, 1)

    def __str__(self):
        return self.token


Letter = Union[GeneratorSymbol, str]


def as_symbol(letter: Letter) -> GeneratorSymbol:
    if isinstance(letter, GeneratorSymbol):
        return letter
    return GeneratorSymbol.parse(letter)


def parse_word(text: str) -> tuple[GeneratorSymbol, ...]:
    """Split a space-separated token string (`"a b^-1 a"`) into symbols."""
    return tuple(GeneratorSymbol.parse(token) for token in text.split())


def inverse_token(token: str) -> str:
    return GeneratorSymbol.parse(token).inverse().token


@dataclass(frozen=True)
class GroupElement:
    """
    A group element. The payload depends on the family: an index for finite
    groups, an integer vector for Z^k, a freely reduced word for F_k.
    """
    family: str
    payload: object

    def __str__(self):
        if self.family == FINITE:
            return f"#{self.payload}"
        if self.family == FREE_ABELIAN:
            return '(' + ','.join(str(x) for x in self.payload) + ')'
        if not self.payload:
            return '1'
        return ' '.join(symbol.token for symbol in self.payload)


@dataclass(frozen=True)
class GroupSpec:
    """
    A concrete group together with its ordered generating set.

    `generators` pairs every generator symbol with its image and is closed
    under formal inversion: the constructors below always list `x` directly
    followed by `x^-1`.
    """
    family: str
    generators: tuple[tuple[GeneratorSymbol, GroupElement], ...]
    order: int | None = None
    rank: int | None = None
    cayley: tuple[tuple[int, ...], ...] | None = None
    element_names: tuple[str, ...] | None = None
    letters: tuple[str, ...] | None = None
    name: str = ''

    def __str__(self):
        if self.name:
            return self.name
        if self.family == FINITE:
            return f"finite group of order {self.order}"
        if self.family == FREE_ABELIAN:
            return f"Z^{self.rank}"
        return f"F_{self.rank}"

    @cached_property
    def symbols(self) -> tuple[GeneratorSymbol, ...]:
        return tuple(symbol for symbol, _ in self.generators)

    @cached_property
    def tokens(self) -> tuple[str, ...]:
        return tuple(symbol.token for symbol in self.symbols)

    @cached_property
    def _images(self) -> dict[GeneratorSymbol, GroupElement]:
        return dict(self.generators)

    def image(self, letter: Letter) -> GroupElement:
        symbol = as_symbol(letter)
        try:
            return self._images[symbol]
        except KeyError:
            raise GroupError(f"Unknown generator {symbol.token!r} for {self}") from None

    def symbol_for(self, element: GroupElement) -> GeneratorSymbol | None:
        """The first generator (in declared order) whose image is `element`."""
        for symbol, image in self.generators:
            if image == element:
                return symbol
        return None

    def element_label(self, element: GroupElement) -> str:
        if self.family == FINITE and self.element_names:
            return self.element_names[element.payload]
        return str(element)

    def elements(self) -> list[GroupElement]:
        if self.family != FINITE:
            raise GroupError(f"{self} is infinite; its elements cannot be listed")
        return [GroupElement(FINITE, index) for index in range(self.order)]


# ---------------------------------------------------------------------------
# Element arithmetic
# ---------------------------------------------------------------------------

def check_element(spec: GroupSpec, a: GroupElement) -> None:
    """Raise GroupError unless `a` is a well-formed element of `spec`."""
    if a.family != spec.family:
        raise GroupError(f"Element of family {a.family!r} used with {spec.family!r} group {spec}")
    if spec.family == FINITE:
        if not isinstance(a.payload, int) or not 0 <= a.payload < spec.order:
            raise GroupError(f"Element index {a.payload!r} out of range for {spec}")
    elif spec.family == FREE_ABELIAN:
        if len(a.payload) != spec.rank:
            raise GroupError(f"Vector {a} has length {len(a.payload)}, expected rank {spec.rank}")
    else:
        for symbol in a.payload:
            if symbol.name not in spec.letters:
                raise GroupError(f"Letter {symbol.token!r} is not a letter of {spec}")


def identity(spec: GroupSpec) -> GroupElement:
    if spec.family == FINITE:
        return GroupElement(FINITE, 0)
    if spec.family == FREE_ABELIAN:
        return GroupElement(FREE_ABELIAN, (0,) * spec.rank)
    return GroupElement(FREE, ())


def multiply(spec: GroupSpec, a: GroupElement, b: GroupElement) -> GroupElement:
    check_element(spec, a)
    check_element(spec, b)
    if spec.family == FINITE:
        return GroupElement(FINITE, spec.cayley[a.payload][b.payload])
    if spec.family == FREE_ABELIAN:
        return GroupElement(FREE_ABELIAN, tuple(x + y for x, y in zip(a.payload, b.payload)))
    # Both factors are reduced, so cancellation only happens at the seam.
    word = list(a.payload)
    for symbol in b.payload:
        if word and word[-1] == symbol.inverse():
            word.pop()
        else:
            word.append(symbol)
    return GroupElement(FREE, tuple(word))


def invert(spec: GroupSpec, a: GroupElement) -> GroupElement:
    check_element(spec, a)
    if spec.family == FINITE:
        return GroupElement(FINITE, spec.cayley[a.payload].index(0))
    if spec.family == FREE_ABELIAN:
        return GroupElement(FREE_ABELIAN, tuple(-x for x in a.payload))
    return GroupElement(FREE, tuple(symbol.inverse() for symbol in reversed(a.payload)))


def is_identity(spec: GroupSpec, a: GroupElement) -> bool:
    """Word-problem oracle: true iff `a` is the identity of `spec`."""
    check_element(spec, a)
    if spec.family == FINITE:
        return a.payload == 0
    if spec.family == FREE_ABELIAN:
        return not any(a.payload)
    return not a.payload


def evaluate_word(spec: GroupSpec, word: Iterable[Letter]) -> GroupElement:
    """Left-to-right product of the generator images of `word`."""
    result = identity(spec)
    for letter in word:
        result = multiply(spec, result, spec.image(letter))
    return result


def product(spec: GroupSpec, elements: Iterable[GroupElement]) -> GroupElement:
    result = identity(spec)
    for element in elements:
        result = multiply(spec, result, element)
    return result


def element_norm(spec: GroupSpec, a: GroupElement) -> int:
    """Search-budget metric: 0/1 for finite groups, max |coordinate| for Z^k, word length for F_k."""
    check_element(spec, a)
    if spec.family == FINITE:
        return 0 if a.payload == 0 else 1
    if spec.family == FREE_ABELIAN:
        return max((abs(x) for x in a.payload), default=0)
    return len(a.payload)


def max_generator_norm(spec: GroupSpec) -> int:
    return max((element_norm(spec, image) for _, image in spec.generators), default=0)


def express_in_generators(spec: GroupSpec, element: GroupElement) -> tuple[GeneratorSymbol, ...]:
    """
    Write `element` as a word in the generators of `spec`.

    A generator image comes back as a single symbol. Longer decompositions
    use unit steps for Z^k and F_k, and a shortest Cayley-graph path for
    finite groups. Raises GroupError when the generators cannot express it.
    """
    check_element(spec, element)
    if is_identity(spec, element):
        return ()
    symbol = spec.symbol_for(element)
    if symbol is not None:
        return (symbol,)

    if spec.family == FINITE:
        parents = {0: None}
        queue = deque([0])
        while queue:
            current = queue.popleft()
            if current == element.payload:
                break
            for symbol, image in spec.generators:
                nxt = spec.cayley[current][image.payload]
                if nxt not in parents:
                    parents[nxt] = (current, symbol)
                    queue.append(nxt)
        if element.payload not in parents:
            raise GroupError(f"Element {spec.element_label(element)} is not generated by {spec.tokens}")
        word = []
        current = element.payload
        while parents[current] is not None:
            current, symbol = parents[current]
            word.append(symbol)
        return tuple(reversed(word))

    if spec.family == FREE_ABELIAN:
        word = []
        for position, value in enumerate(element.payload):
            if value == 0:
                continue
            unit = [0] * spec.rank
            unit[position] = 1 if value > 0 else -1
            symbol = spec.symbol_for(GroupElement(FREE_ABELIAN, tuple(unit)))
            if symbol is None:
                raise GroupError(f"Weight {element} needs a unit step along coordinate {position + 1}, "
                                 f"which no generator of {spec} provides")
            word.extend([symbol] * abs(value))
        return tuple(word)

    word = []
    for letter in element.payload:
        symbol = spec.symbol_for(GroupElement(FREE, (letter,)))
        if symbol is None:
            raise GroupError(f"Weight {element} uses letter {letter.token!r}, which is not a generator image of {spec}")
        word.append(symbol)
    return tuple(word)


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------

def validate_group(spec: GroupSpec) -> list[str]:
    """Return a list of diagnostics; empty iff `spec` satisfies every invariant."""
    diagnostics = []
    if spec.family not in dict(FAMILY_CHOICES):
        return [f"unknown family {spec.family!r}"]

    if spec.family == FINITE:
        diagnostics.extend(_validate_cayley(spec))
        if diagnostics:
            return diagnostics
        if spec.element_names is not None and len(spec.element_names) != spec.order:
            diagnostics.append(f"{len(spec.element_names)} element names given for order {spec.order}")
    else:
        if not isinstance(spec.rank, int) or spec.rank < 1:
            return [f"rank must be a positive integer, got {spec.rank!r}"]
        if spec.family == FREE and (spec.letters is None or len(spec.letters) != spec.rank):
            return [f"free group of rank {spec.rank} needs exactly {spec.rank} letters"]

    seen = set()
    for symbol, image in spec.generators:
        if symbol in seen:
            diagnostics.append(f"generator {symbol.token!r} listed twice")
        seen.add(symbol)
        try:
            check_element(spec, image)
        except GroupError as exc:
            diagnostics.append(f"generator {symbol.token!r}: {exc}")
            continue
        if spec.family == FREE and any(x == y.inverse() for x, y in zip(image.payload, image.payload[1:])):
            diagnostics.append(f"generator {symbol.token!r}: image {image} is not reduced")

    images = dict(spec.generators)
    for symbol, image in spec.generators:
        partner = symbol.inverse()
        if partner not in images:
            diagnostics.append(f"generator list is not closed under inversion: {partner.token!r} missing")
        elif not diagnostics and images[partner] != invert(spec, image):
            diagnostics.append(f"image of {partner.token!r} is not the inverse of the image of {symbol.token!r}")
    return diagnostics


def _validate_cayley(spec: GroupSpec) -> list[str]:
    n = spec.order
    table = spec.cayley
    if not isinstance(n, int) or n < 1:
        return [f"order must be a positive integer, got {n!r}"]
    if table is None or len(table) != n or any(len(row) != n for row in table):
        return [f"Cayley table must be {n}x{n}"]
    diagnostics = []
    full = set(range(n))
    for i, row in enumerate(table):
        if set(row) != full:
            diagnostics.append(f"row {i} is not a permutation of 0..{n - 1}")
    for j in range(n):
        if {table[i][j] for i in range(n)} != full:
            diagnostics.append(f"column {j} is not a permutation of 0..{n - 1}")
    if diagnostics:
        return diagnostics
    if list(table[0]) != list(range(n)) or [table[i][0] for i in range(n)] != list(range(n)):
        return ["element 0 must be the identity (row and column 0 must read 0..n-1)"]
    for a, b, c in itertools.product(range(n), repeat=3):
        if table[table[a][b]][c] != table[a][table[b][c]]:
            return [f"table is not associative at ({a}, {b}, {c})"]
    return []


def _require_valid(spec: GroupSpec) -> GroupSpec:
    diagnostics = validate_group(spec)
    if diagnostics:
        raise GroupError(f"Invalid group {spec}: " + '; '.join(diagnostics))
    logger.debug(f"Built {spec} with generators {' '.join(spec.tokens)}")
    return spec


# ---------------------------------------------------------------------------
# Constructors
# ---------------------------------------------------------------------------

def default_generator_names(k: int) -> list[str]:
    if k <= 26:
        return list('abcdefghijklmnopqrstuvwxyz'[:k])
    return [f"x{i}" for i in range(1, k + 1)]


def _closed(pairs: Iterable[tuple[str, GroupElement]], inverse) -> tuple[tuple[GeneratorSymbol, GroupElement], ...]:
    generators = []
    for name, image in pairs:
        generators.append((GeneratorSymbol(name, 1), image))
        generators.append((GeneratorSymbol(name, -1), inverse(image)))
    return tuple(generators)


def finite_group(cayley: Sequence[Sequence[int]], generators: Mapping[str, int] | Sequence[tuple[str, int]],
                 element_names: Sequence[str] | None = None, name: str = '') -> GroupSpec:
    """Build a finite group from its Cayley table; element 0 must be the identity."""
    table = tuple(tuple(int(x) for x in row) for row in cayley)
    pairs = list(generators.items()) if isinstance(generators, Mapping) else list(generators)
    draft = GroupSpec(
        family=FINITE,
        generators=(),
        order=len(table),
        cayley=table,
        element_names=tuple(element_names) if element_names is not None else None,
        name=name,
    )
    problems = _validate_cayley(draft)
    if problems:
        raise GroupError("Invalid Cayley table: " + '; '.join(problems))
    for gen_name, index in pairs:
        if not 0 <= index < draft.order:
            raise GroupError(f"Generator {gen_name!r} maps to {index}, outside 0..{draft.order - 1}")

    def inverse(image):
        return GroupElement(FINITE, table[image.payload].index(0))

    spec = GroupSpec(
        family=FINITE,
        generators=_closed(((n, GroupElement(FINITE, i)) for n, i in pairs), inverse),
        order=draft.order,
        cayley=table,
        element_names=draft.element_names,
        name=name,
    )
    return _require_valid(spec)


def cyclic_group(n: int, generator: str = 't', name: str = '') -> GroupSpec:
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    names = ['e'] + [generator if i == 1 else f"{generator}{i}" for i in range(1, n)]
    return finite_group(table, [(generator, 1 % n)], element_names=names, name=name or f"Z/{n}")


def symmetric_group(n: int, name: str = '') -> GroupSpec:
    """S_n on {0..n-1}, generated by the transposition s=(0 1) and the cycle r=(0 1 ... n-1)."""
    perms = list(itertools.permutations(range(n)))
    index = {perm: i for i, perm in enumerate(perms)}
    # composition: (p*q)(x) = q(p(x)), i.e. apply p first
    table = [[index[tuple(q[p[x]] for x in range(n))] for q in perms] for p in perms]
    swap = tuple([1, 0] + list(range(2, n)))
    cycle = tuple(list(range(1, n)) + [0])
    names = [''.join(str(x) for x in perm) for perm in perms]
    return finite_group(table, [('s', index[swap]), ('r', index[cycle])], element_names=names,
                        name=name or f"S_{n}")


def free_abelian_group(k: int, names: Sequence[str] | None = None,
                       generators: Sequence[tuple[str, Sequence[int]]] | None = None,
                       name: str = '') -> GroupSpec:
    """Z^k; by default generated by the standard unit vectors (the counters)."""
    if not isinstance(k, int) or k < 1:
        raise GroupError(f"Rank must be a positive integer, got {k!r}")
    if generators is None:
        names = list(names) if names is not None else default_generator_names(k)
        if len(names) != k:
            raise GroupError(f"{len(names)} generator names given for rank {k}")
        generators = [(gen, [1 if i == j else 0 for j in range(k)]) for i, gen in enumerate(names)]
    pairs = []
    for gen, vector in generators:
        if len(vector) != k:
            raise GroupError(f"Generator {gen!r} maps to a vector of length {len(vector)}, expected {k}")
        pairs.append((gen, GroupElement(FREE_ABELIAN, tuple(int(x) for x in vector))))
    spec = GroupSpec(
        family=FREE_ABELIAN,
        generators=_closed(pairs, lambda v: GroupElement(FREE_ABELIAN, tuple(-x for x in v.payload))),
        rank=k,
        name=name,
    )
    return _require_valid(spec)


def free_group(k: int, letters: Sequence[str] | None = None,
               generators: Sequence[tuple[str, str]] | None = None, name: str = '') -> GroupSpec:
    """F_k on `letters`; by default each letter is its own generator."""
    if not isinstance(k, int) or k < 1:
        raise GroupError(f"Rank must be a positive integer, got {k!r}")
    letters = tuple(letters) if letters is not None else tuple(default_generator_names(k))
    if len(letters) != k:
        raise GroupError(f"{len(letters)} letters given for rank {k}")
    for letter in letters:
        GeneratorSymbol(letter)
    if generators is None:
        generators = [(letter, letter) for letter in letters]
    pairs = [(gen, GroupElement(FREE, parse_word(word))) for gen, word in generators]
    spec = GroupSpec(
        family=FREE,
        generators=_closed(pairs, lambda w: GroupElement(FREE, tuple(s.inverse() for s in reversed(w.payload)))),
        rank=k,
        letters=letters,
        name=name,
    )
    return _require_valid(spec)


def has_standard_generators(spec: GroupSpec) -> bool:
    """True when every letter of a free group (or unit vector of Z^k) is a generator image."""
    if spec.family == FREE:
        return all(spec.symbol_for(GroupElement(FREE, (GeneratorSymbol(x),))) is not None for x in spec.letters)
    if spec.family == FREE_ABELIAN:
        units = [tuple(1 if i == j else 0 for j in range(spec.rank)) for i in range(spec.rank)]
        return all(spec.symbol_for(GroupElement(FREE_ABELIAN, unit)) is not None for unit in units)
    return True
