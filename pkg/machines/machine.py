"""
Instruction-edge machines: a finite state control whose edges carry an
input token (or epsilon) and one tape instruction.

The class tag decides what the tape is. Only fsa, pda and lba machines can
be run; the other rungs of the ladder parse and validate but are refused by
the deciders.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Union

from django.db import models

logger = logging.getLogger(__name__)

BOTTOM = '#'
LEFT_END = '<'
RIGHT_END = '>'
BLANK = '_'
MARKERS = (LEFT_END, RIGHT_END)


class MachineError(ValueError):
    """Raised on class mismatches, unimplemented classes and invalid machines."""


class MachineClass(models.TextChoices):
    FSA = 'fsa', 'Finite state automaton'
    PDA = 'pda', 'Pushdown automaton'
    STACK = 'stack', 'Stack automaton'
    NESTED_STACK = 'nested-stack', 'Nested-stack automaton'
    LBA = 'lba', 'Linear bounded automaton'
    DECIDABLE = 'decidable', 'Halting Turing machine'
    TURING = 'turing', 'Turing machine'


LANGUAGE_CLASS = {
    MachineClass.FSA.value: 'regular',
    MachineClass.PDA.value: 'context-free',
    MachineClass.STACK.value: 'stack',
    MachineClass.NESTED_STACK.value: 'indexed',
    MachineClass.LBA.value: 'context-sensitive',
    MachineClass.DECIDABLE.value: 'decidable',
    MachineClass.TURING.value: 'recursively enumerable',
}

EXECUTABLE_CLASSES = (MachineClass.FSA, MachineClass.PDA, MachineClass.LBA)


class StackAction(models.TextChoices):
    PUSH = 'push', 'Push'
    POP = 'pop', 'Pop'
    STAY = 'stay', 'Stay'


class Move(models.TextChoices):
    LEFT = 'L', 'Left'
    RIGHT = 'R', 'Right'
    STAY = 'S', 'Stay'


@dataclass(frozen=True)
class NoOp:
    """The only instruction of a finite state automaton."""

    def __str__(self):
        return 'noop'


@dataclass(frozen=True)
class StackInstruction:
    """Guard on the top-of-stack symbol (None = any), then push, pop or stay."""
    guard: str | None = None
    action: str = StackAction.STAY
    symbol: str | None = None

    def __str__(self):
        guard = self.guard if self.guard is not None else '*'
        if self.action == StackAction.PUSH:
            return f"[{guard}] push {self.symbol}"
        return f"[{guard}] {self.action}"


@dataclass(frozen=True)
class TapeInstruction:
    """Guard on the scanned cell (None = any), optional write (None = keep), one move."""
    guard: str | None = None
    write: str | None = None
    move: str = Move.STAY

    def __str__(self):
        guard = self.guard if self.guard is not None else '*'
        write = self.write if self.write is not None else '='
        return f"[{guard}] {write} {self.move}"


Instruction = Union[NoOp, StackInstruction, TapeInstruction]

INSTRUCTION_TYPES = {
    MachineClass.FSA.value: NoOp,
    MachineClass.PDA.value: StackInstruction,
    MachineClass.LBA.value: TapeInstruction,
}


def neutral_instruction(machine_class: str) -> Instruction:
    """The instruction that reads nothing and changes nothing in `machine_class`."""
    if machine_class == MachineClass.FSA:
        return NoOp()
    if machine_class == MachineClass.PDA:
        return StackInstruction(guard=None, action=StackAction.STAY)
    if machine_class == MachineClass.LBA:
        return TapeInstruction(guard=None, write=None, move=Move.STAY)
    raise MachineError(f"Class {machine_class!r} is not executable; it has no neutral instruction")


@dataclass(frozen=True)
class Edge:
    src: str
    token: str | None
    instruction: Instruction
    dst: str

    def __str__(self):
        token = self.token if self.token is not None else 'eps'
        return f"{self.src} --{token} / {self.instruction}--> {self.dst}"


@dataclass(frozen=True)
class Machine:
    """
    A class-tagged machine. `tape_alphabet` holds the stack symbols of a pda
    (bottom marker included) or the work symbols of an lba (blank and end
    markers included); it is empty for an fsa. `space_multiplier` is the
    constant c of an lba: a run on a word w gets ceil(c * (|w| + 1)) cells.
    """
    machine_class: str
    input_alphabet: tuple[str, ...]
    states: tuple[str, ...]
    start: str
    accepts: tuple[str, ...]
    edges: tuple[Edge, ...]
    tape_alphabet: tuple[str, ...] = ()
    space_multiplier: Fraction | None = None
    name: str = ''

    def __str__(self):
        return self.name or f"{self.machine_class} machine with {len(self.states)} states"

    @cached_property
    def accept_set(self) -> frozenset[str]:
        return frozenset(self.accepts)

    @cached_property
    def outgoing(self) -> dict[str, list[tuple[int, Edge]]]:
        table = {state: [] for state in self.states}
        for index, edge in enumerate(self.edges):
            table.setdefault(edge.src, []).append((index, edge))
        return table

    def edges_from(self, state: str) -> list[tuple[int, Edge]]:
        return self.outgoing.get(state, [])


@dataclass(frozen=True)
class RunStats:
    configurations: int = 0
    max_cells: int = 0
    max_stack_depth: int = 0
    cells_available: int | None = None


class Verdict(models.TextChoices):
    ACCEPT = 'accept', 'Accept'
    REJECT = 'reject', 'Reject'
    RESOURCE_EXCEEDED = 'resource-exceeded', 'Resource exceeded'


@dataclass(frozen=True)
class RunResult:
    """
    Outcome of a decider. On accept, `run` lists the edge indices of one
    accepting run, which `deciders.replay_run` can re-execute.
    """
    verdict: str
    stats: RunStats
    run: tuple[int, ...] = ()

    @property
    def accepted(self) -> bool:
        return self.verdict == Verdict.ACCEPT


def _guards_overlap(a: Instruction, b: Instruction) -> bool:
    guard_a = getattr(a, 'guard', None)
    guard_b = getattr(b, 'guard', None)
    return guard_a is None or guard_b is None or guard_a == guard_b


def is_deterministic(m: Machine) -> bool:
    """No epsilon edges, and no state with two same-token edges whose guards overlap."""
    for state in m.states:
        edges = m.edges_from(state)
        for position, (_, edge) in enumerate(edges):
            if edge.token is None:
                return False
            for _, other in edges[position + 1:]:
                if other.token == edge.token and _guards_overlap(edge.instruction, other.instruction):
                    return False
    return True


def validate_machine(m: Machine) -> list[str]:
    """Structural diagnostics; an empty list means the machine is well formed."""
    diagnostics = []
    if m.machine_class not in MachineClass.values:
        return [f"unknown machine class {m.machine_class!r}"]

    states = set(m.states)
    if len(states) != len(m.states):
        diagnostics.append("state list contains duplicates")
    if m.start not in states:
        diagnostics.append(f"start state {m.start!r} is not a state")
    for state in m.accepts:
        if state not in states:
            diagnostics.append(f"accept state {state!r} is not a state")

    alphabet = set(m.input_alphabet)
    tape = set(m.tape_alphabet)
    expected = INSTRUCTION_TYPES.get(m.machine_class)

    if m.machine_class == MachineClass.PDA and BOTTOM not in tape:
        diagnostics.append(f"pda tape alphabet must contain the bottom marker {BOTTOM!r}")
    if m.machine_class == MachineClass.LBA:
        for marker in (BLANK, LEFT_END, RIGHT_END):
            if marker not in tape:
                diagnostics.append(f"lba tape alphabet must contain {marker!r}")
        if m.space_multiplier is None or m.space_multiplier <= 0:
            diagnostics.append("lba needs a positive space multiplier")

    for index, edge in enumerate(m.edges):
        where = f"edge {index} ({edge})"
        if edge.src not in states or edge.dst not in states:
            diagnostics.append(f"{where}: endpoint is not a state")
        if edge.token is not None and edge.token not in alphabet:
            diagnostics.append(f"{where}: token {edge.token!r} is not in the input alphabet")
        if expected is None:
            continue
        if not isinstance(edge.instruction, expected):
            diagnostics.append(f"{where}: {m.machine_class} edges need a {expected.__name__}")
            continue
        if m.machine_class == MachineClass.PDA:
            diagnostics.extend(_check_stack_instruction(where, edge.instruction, tape))
        elif m.machine_class == MachineClass.LBA:
            diagnostics.extend(_check_tape_instruction(where, edge.instruction, tape))
    return diagnostics


def _check_stack_instruction(where: str, instruction: StackInstruction, tape: set) -> list[str]:
    problems = []
    if instruction.guard is not None and instruction.guard not in tape:
        problems.append(f"{where}: guard {instruction.guard!r} is not a tape symbol")
    if instruction.action not in StackAction.values:
        problems.append(f"{where}: unknown stack action {instruction.action!r}")
    elif instruction.action == StackAction.POP:
        if instruction.guard is None or instruction.guard == BOTTOM:
            problems.append(f"{where}: pops the bottom marker (pop needs a guard other than {BOTTOM!r})")
    elif instruction.action == StackAction.PUSH:
        if instruction.symbol is None or instruction.symbol not in tape:
            problems.append(f"{where}: pushes {instruction.symbol!r}, which is not a tape symbol")
        elif instruction.symbol == BOTTOM:
            problems.append(f"{where}: pushes the bottom marker")
    return problems


def _check_tape_instruction(where: str, instruction: TapeInstruction, tape: set) -> list[str]:
    problems = []
    guard = instruction.guard
    if guard is not None and guard not in tape:
        problems.append(f"{where}: guard {guard!r} is not a tape symbol")
    if instruction.move not in Move.values:
        problems.append(f"{where}: unknown move {instruction.move!r}")
    if instruction.write is not None:
        if instruction.write not in tape or instruction.write in MARKERS:
            problems.append(f"{where}: cannot write {instruction.write!r}")
        if guard is None or guard in MARKERS:
            problems.append(f"{where}: writes without a guard on a work symbol (could overwrite an end marker)")
    if instruction.move == Move.LEFT and (guard is None or guard == LEFT_END):
        problems.append(f"{where}: moves left without a guard excluding the left end marker")
    if instruction.move == Move.RIGHT and (guard is None or guard == RIGHT_END):
        problems.append(f"{where}: moves right without a guard excluding the right end marker")
    return problems


def require_valid(m: Machine) -> Machine:
    diagnostics = validate_machine(m)
    if diagnostics:
        raise MachineError(f"Invalid machine {m}: " + '; '.join(diagnostics))
    return m
