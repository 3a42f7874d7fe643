"""
Machines recognising the word problem of a group, one per executable class:

    finite groups        fsa   states are the group elements
    free groups          pda   the stack holds the freely reduced word
    free abelian Z^k     lba   k signed unary counters on the work tape
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction

from groups.algebra import (
    FINITE, FREE, FREE_ABELIAN, GeneratorSymbol, GroupElement, GroupSpec, default_generator_names,
    free_abelian_group, identity, multiply,
)
from machines.machine import (
    BLANK, BOTTOM, LEFT_END, RIGHT_END, Edge, Machine, MachineClass, Move, NoOp, StackAction,
    StackInstruction, TapeInstruction, require_valid,
)

from .product import TransferError

logger = logging.getLogger(__name__)

# Class of the word problem of each family, lowest rung first.
NATURAL_CLASS = {
    FINITE: MachineClass.FSA.value,
    FREE: MachineClass.PDA.value,
    FREE_ABELIAN: MachineClass.LBA.value,
}
CLASS_RANK = {MachineClass.FSA.value: 0, MachineClass.PDA.value: 1, MachineClass.LBA.value: 2}


@dataclass(frozen=True)
class WordProblemMachine:
    machine: Machine
    group: GroupSpec
    certificate: str

    def __str__(self):
        return str(self.machine)


def wp_machine_finite(spec: GroupSpec) -> WordProblemMachine:
    """One state per element, start and accept at the identity, h --g--> h*g."""
    if spec.family != FINITE:
        raise TransferError(f"wp_machine_finite needs a finite group, got {spec}")
    edges = []
    for element in spec.elements():
        for symbol, image in spec.generators:
            target = multiply(spec, element, image)
            edges.append(Edge(spec.element_label(element), symbol.token, NoOp(), spec.element_label(target)))
    states = tuple(spec.element_label(element) for element in spec.elements())
    if len(set(states)) != len(states):
        raise TransferError(f"Element names of {spec} are not distinct")
    start = spec.element_label(identity(spec))
    machine = Machine(
        machine_class=MachineClass.FSA,
        input_alphabet=spec.tokens,
        states=states,
        start=start,
        accepts=(start,),
        edges=tuple(edges),
        name=f"WP({spec}) fsa",
    )
    return WordProblemMachine(require_valid(machine), spec, MachineClass.FSA.value)


def _letter_tokens(spec: GroupSpec) -> dict[str, str]:
    """Generator token for every signed letter; the generators must be exactly the letters."""
    tokens = {}
    for symbol, image in spec.generators:
        if len(image.payload) != 1:
            raise TransferError(f"Generator {symbol.token!r} of {spec} is not a single letter")
        letter = image.payload[0].token
        if letter in tokens:
            raise TransferError(f"Generators {tokens[letter]!r} and {symbol.token!r} of {spec} name the same letter")
        tokens[letter] = symbol.token
    return tokens


def wp_machine_free(spec: GroupSpec) -> WordProblemMachine:
    """
    Pushdown machine for F_k: on token g pop if the top is g^-1, else push g.
    An epsilon edge guarded by the bottom marker leads to the accept state.
    """
    if spec.family != FREE:
        raise TransferError(f"wp_machine_free needs a free group, got {spec}")
    tokens = _letter_tokens(spec)
    inverse = {tokens[letter]: tokens[GeneratorSymbol.parse(letter).inverse().token] for letter in tokens}
    stack_symbols = (BOTTOM,) + spec.tokens
    edges = []
    for token in spec.tokens:
        edges.append(Edge('work', token, StackInstruction(inverse[token], StackAction.POP), 'work'))
        for top in stack_symbols:
            if top != inverse[token]:
                edges.append(Edge('work', token, StackInstruction(top, StackAction.PUSH, token), 'work'))
    edges.append(Edge('work', None, StackInstruction(BOTTOM, StackAction.STAY), 'accept'))
    machine = Machine(
        machine_class=MachineClass.PDA,
        input_alphabet=spec.tokens,
        states=('work', 'accept'),
        start='work',
        accepts=('accept',),
        edges=tuple(edges),
        tape_alphabet=stack_symbols,
        name=f"WP({spec}) pda",
    )
    return WordProblemMachine(require_valid(machine), spec, MachineClass.PDA.value)


ONE = '1'
PLUS = '+'
MINUS = '-'
SEPARATOR = '|'
SIGNS = {1: PLUS, -1: MINUS}
CONTENT = (ONE, PLUS, MINUS, SEPARATOR)
WORK_SYMBOLS = CONTENT + (BLANK,)


class _Program:
    """Edge accumulator for the counter machine; states are registered in first-use order."""

    def __init__(self):
        self.states = []
        self.edges = []

    def state(self, name: str) -> str:
        if name not in self.states:
            self.states.append(name)
        return name

    def step(self, src, dst, guard=None, write=None, move=Move.STAY, token=None):
        self.edges.append(Edge(self.state(src), token, TapeInstruction(guard, write, move), self.state(dst)))


def wp_machine_zn(k: int, names: list[str] | None = None) -> WordProblemMachine:
    """
    Linear bounded machine for Z^k with space multiplier 2k+3.

    The tape holds k zones separated by '|', each a sign cell followed by the
    magnitude in unary. Every token runs a program over epsilon edges that
    walks to its zone and either inserts a '1' (shifting the rest right) or
    deletes one (shifting the rest left), then rewinds to the left end. The
    word is accepted when, after the last token, no zone holds a '1'.
    """
    if not isinstance(k, int) or k < 1:
        raise TransferError(f"Rank must be a positive integer, got {k!r}")
    names = list(names) if names is not None else default_generator_names(k)
    group = free_abelian_group(k, names=names)
    program = _Program()

    layout = [PLUS if j % 2 == 0 else SEPARATOR for j in range(2 * k - 1)]
    for j, symbol in enumerate(layout):
        nxt = f"init{j + 1}" if j + 1 < len(layout) else 'rewind'
        program.step(f"init{j}", nxt, guard=BLANK, write=symbol, move=Move.RIGHT)

    for symbol in WORK_SYMBOLS:
        program.step('rewind', 'rewind', guard=symbol, move=Move.LEFT)
    program.step('rewind', 'ready', guard=LEFT_END, move=Move.RIGHT)

    for i, name in enumerate(names, start=1):
        for exponent, sign in SIGNS.items():
            token = GeneratorSymbol(name, exponent).token
            target = f"sign{sign}" if i == 1 else f"seek{i}{sign}.1"
            program.step('ready', target, token=token)
            for j in range(1, i):
                here = f"seek{i}{sign}.{j}"
                for symbol in (ONE, PLUS, MINUS):
                    program.step(here, here, guard=symbol, move=Move.RIGHT)
                nxt = f"sign{sign}" if j + 1 == i else f"seek{i}{sign}.{j + 1}"
                program.step(here, nxt, guard=SEPARATOR, move=Move.RIGHT)

    for sign in SIGNS.values():
        for current in SIGNS.values():
            peek = f"peek{sign}{current}"
            program.step(f"sign{sign}", peek, guard=current, move=Move.RIGHT)
            if current == sign:
                program.step(peek, f"carry{ONE}", guard=ONE)
            else:
                program.step(peek, 'pull_read', guard=ONE, move=Move.RIGHT)
            for end in (SEPARATOR, BLANK):
                program.step(peek, f"setsign{sign}", guard=end, move=Move.LEFT)
            program.step(f"setsign{sign}", f"carry{ONE}", guard=current, write=sign, move=Move.RIGHT)

    # insert: write the carried symbol, pick up the one underneath
    for carried in CONTENT:
        for found in CONTENT:
            program.step(f"carry{carried}", f"carry{found}", guard=found, write=carried, move=Move.RIGHT)
        program.step(f"carry{carried}", 'rewind', guard=BLANK, write=carried)

    # delete: copy every cell one to the left until a blank has been copied
    for found in WORK_SYMBOLS:
        program.step('pull_read', f"pull_write{found}", guard=found, move=Move.LEFT)
        for previous in CONTENT:
            if found == BLANK:
                program.step(f"pull_write{found}", 'rewind', guard=previous, write=found)
            else:
                program.step(f"pull_write{found}", 'pull_shift', guard=previous, write=found, move=Move.RIGHT)
    for symbol in CONTENT:
        program.step('pull_shift', 'pull_read', guard=symbol, move=Move.RIGHT)

    program.step('ready', 'check')
    for symbol in (PLUS, MINUS, SEPARATOR):
        program.step('check', 'check', guard=symbol, move=Move.RIGHT)
    program.step('check', 'accept', guard=BLANK)

    states = ['init0'] + [state for state in program.states if state != 'init0']
    machine = Machine(
        machine_class=MachineClass.LBA,
        input_alphabet=group.tokens,
        states=tuple(states),
        start='init0',
        accepts=('accept',),
        edges=tuple(program.edges),
        tape_alphabet=(LEFT_END, RIGHT_END) + WORK_SYMBOLS,
        space_multiplier=Fraction(2 * k + 3),
        name=f"WP(Z^{k}) lba",
    )
    logger.debug(f"Built {machine}: {len(states)} states, {len(program.edges)} edges")
    return WordProblemMachine(require_valid(machine), group, MachineClass.LBA.value)


def _as_class(wp: WordProblemMachine, cls: str) -> WordProblemMachine:
    """Re-tag an fsa word-problem machine as a pda or lba that never uses its tape."""
    m = wp.machine
    if cls == MachineClass.PDA:
        instruction, tape, multiplier = StackInstruction(None, StackAction.STAY), (BOTTOM,), None
    else:
        instruction, tape, multiplier = TapeInstruction(None, None, Move.STAY), (LEFT_END, RIGHT_END, BLANK), Fraction(1)
    machine = Machine(
        machine_class=cls,
        input_alphabet=m.input_alphabet,
        states=m.states,
        start=m.start,
        accepts=m.accepts,
        edges=tuple(Edge(e.src, e.token, instruction, e.dst) for e in m.edges),
        tape_alphabet=tape,
        space_multiplier=multiplier,
        name=f"WP({wp.group}) {cls}",
    )
    return WordProblemMachine(require_valid(machine), wp.group, str(cls))


def _unit_names(spec: GroupSpec) -> list[str]:
    """Generator names of a Z^k spec whose generators are exactly the unit vectors and their inverses."""
    names = []
    for position in range(spec.rank):
        unit = GroupElement(FREE_ABELIAN, tuple(1 if i == position else 0 for i in range(spec.rank)))
        symbol = spec.symbol_for(unit)
        if symbol is None or symbol.exponent != 1:
            raise TransferError(f"{spec} has no positive generator for unit vector {unit}")
        names.append(symbol.name)
    if len(spec.generators) != 2 * spec.rank:
        raise TransferError(f"{spec} has generators besides the unit vectors")
    return names


def wp_machine_for(spec: GroupSpec, cls: str = 'auto') -> WordProblemMachine:
    """
    The word-problem machine of `spec` in class `cls` ('auto' picks the
    family's natural class). Classes below the family's class are refused;
    a finite group's fsa can be re-tagged as a pda or lba.
    """
    natural = NATURAL_CLASS[spec.family]
    cls = natural if cls in (None, 'auto') else str(cls)
    if cls not in CLASS_RANK:
        raise TransferError(f"No word-problem machine in class {cls!r}; choose fsa, pda or lba")
    if CLASS_RANK[cls] < CLASS_RANK[natural]:
        raise TransferError(f"The word problem of {spec} is not recognised in class {cls}; it needs {natural}")
    if spec.family == FINITE:
        wp = wp_machine_finite(spec)
        return wp if cls == natural else _as_class(wp, cls)
    if cls != natural:
        raise TransferError(f"No {cls} builder for {spec}; its word-problem machine is a {natural}")
    if spec.family == FREE:
        return wp_machine_free(spec)
    wp = wp_machine_zn(spec.rank, _unit_names(spec))
    return WordProblemMachine(wp.machine, spec, wp.certificate)
