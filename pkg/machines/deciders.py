"""
Membership deciders for the executable classes.

fsa: subset simulation with epsilon closure.
pda: grammar conversion plus chart recognition (exact, no step bound).
lba: breadth-first search over configurations inside the space bound.

`pda_search_accepts` is a bounded configuration search kept as an
independent oracle for the grammar route.
"""
from __future__ import annotations

import logging
import math
from collections import deque
from typing import Iterable

from django.conf import settings

from .grammar import pda_to_grammar, recognize
from .machine import (
    BLANK, BOTTOM, EXECUTABLE_CLASSES, LEFT_END, MARKERS, RIGHT_END, Machine, MachineClass,
    MachineError, Move, RunResult, RunStats, StackAction, Verdict,
)

logger = logging.getLogger(__name__)


def _tokens(word: Iterable) -> tuple[str, ...]:
    return tuple(str(token) for token in word)


def _require_class(m: Machine, expected: str) -> None:
    if m.machine_class not in MachineClass.values:
        raise MachineError(f"Unknown machine class {m.machine_class!r}")
    if m.machine_class not in EXECUTABLE_CLASSES:
        raise MachineError(f"Unimplemented class {m.machine_class!r}: only fsa, pda and lba machines can be run")
    if m.machine_class != expected:
        raise MachineError(f"Class mismatch: {expected} decider given a {m.machine_class} machine")


def space_bound(m: Machine, length: int) -> int:
    """Number of work cells an lba gets on a word of `length` tokens."""
    return math.ceil(m.space_multiplier * (length + 1))


# ---------------------------------------------------------------------------
# fsa
# ---------------------------------------------------------------------------

def fsa_accepts(m: Machine, word: Iterable) -> RunResult:
    _require_class(m, MachineClass.FSA)
    word = _tokens(word)
    # layer[state] = (previous state, edge index, epsilon?) or None for the start
    layers = [_eps_closure(m, {m.start: None})]
    for token in word:
        step = {}
        for state in layers[-1]:
            for index, edge in m.edges_from(state):
                if edge.token == token and edge.dst not in step:
                    step[edge.dst] = (state, index, False)
        layers.append(_eps_closure(m, step))
        if not layers[-1]:
            break
    configurations = sum(len(layer) for layer in layers)
    stats = RunStats(configurations=configurations)
    if len(layers) == len(word) + 1:
        for state in layers[-1]:
            if state in m.accept_set:
                return RunResult(Verdict.ACCEPT, stats, _fsa_run(layers, state))
    return RunResult(Verdict.REJECT, stats)


def _eps_closure(m: Machine, layer: dict) -> dict:
    queue = deque(layer)
    while queue:
        state = queue.popleft()
        for index, edge in m.edges_from(state):
            if edge.token is None and edge.dst not in layer:
                layer[edge.dst] = (state, index, True)
                queue.append(edge.dst)
    return layer


def _fsa_run(layers: list[dict], state: str) -> tuple[int, ...]:
    run = []
    position = len(layers) - 1
    parent = layers[position][state]
    while parent is not None:
        previous, index, epsilon = parent
        run.append(index)
        if not epsilon:
            position -= 1
        parent = layers[position][previous]
    return tuple(reversed(run))


# ---------------------------------------------------------------------------
# pda
# ---------------------------------------------------------------------------

def pda_accepts(m: Machine, word: Iterable) -> RunResult:
    """Exact pda membership, accepting by final state over a never-popped bottom marker."""
    _require_class(m, MachineClass.PDA)
    word = _tokens(word)
    result = recognize(pda_to_grammar(m), word)
    if not result.accepted:
        return RunResult(Verdict.REJECT, RunStats(configurations=result.items))
    replayed = replay_run(m, word, result.derivation)
    stats = RunStats(configurations=result.items, max_stack_depth=replayed.max_stack_depth)
    return RunResult(Verdict.ACCEPT, stats, result.derivation)


def _stack_step(instruction, stack: tuple[str, ...]) -> tuple[str, ...] | None:
    top = stack[-1]
    if instruction.guard is not None and instruction.guard != top:
        return None
    if instruction.action == StackAction.POP:
        if top == BOTTOM:
            return None
        return stack[:-1]
    if instruction.action == StackAction.PUSH:
        return stack + (instruction.symbol,)
    return stack


def pda_search_accepts(m: Machine, word: Iterable, depth_limit: int | None = None) -> RunResult:
    """
    Breadth-first search over (position, state, stack) with the stack height
    above the bottom marker capped at `depth_limit` (default |word| + |states| + 2).
    """
    _require_class(m, MachineClass.PDA)
    word = _tokens(word)
    n = len(word)
    if depth_limit is None:
        depth_limit = n + len(m.states) + 2
    cap = settings.GA_PDA_SEARCH_MAX_CONFIGS
    start = (0, m.start, (BOTTOM,))
    parents = {start: None}
    queue = deque([start])
    deepest = 0
    while queue:
        config = queue.popleft()
        pos, state, stack = config
        deepest = max(deepest, len(stack) - 1)
        if pos == n and state in m.accept_set:
            stats = RunStats(configurations=len(parents), max_stack_depth=deepest)
            return RunResult(Verdict.ACCEPT, stats, _unwind(parents, config))
        for index, edge in m.edges_from(state):
            if edge.token is None:
                advance = 0
            elif pos < n and edge.token == word[pos]:
                advance = 1
            else:
                continue
            stack_after = _stack_step(edge.instruction, stack)
            if stack_after is None or len(stack_after) - 1 > depth_limit:
                continue
            nxt = (pos + advance, edge.dst, stack_after)
            if nxt not in parents:
                parents[nxt] = (config, index)
                queue.append(nxt)
        if len(parents) > cap:
            logger.warning(f"pda search on {m} hit the configuration cap ({cap})")
            return RunResult(Verdict.RESOURCE_EXCEEDED, RunStats(configurations=len(parents), max_stack_depth=deepest))
    return RunResult(Verdict.REJECT, RunStats(configurations=len(parents), max_stack_depth=deepest))


def _unwind(parents: dict, config) -> tuple[int, ...]:
    run = []
    while parents[config] is not None:
        config, index = parents[config]
        run.append(index)
    return tuple(reversed(run))


# ---------------------------------------------------------------------------
# lba
# ---------------------------------------------------------------------------

def _tape_step(instruction, tape: tuple[str, ...], head: int) -> tuple[tuple[str, ...], int] | None:
    scanned = tape[head]
    if instruction.guard is not None and instruction.guard != scanned:
        return None
    if instruction.write is not None:
        if scanned in MARKERS:
            return None
        tape = tape[:head] + (instruction.write,) + tape[head + 1:]
    if instruction.move == Move.LEFT:
        if scanned == LEFT_END:
            return None
        head -= 1
    elif instruction.move == Move.RIGHT:
        if scanned == RIGHT_END:
            return None
        head += 1
    return tape, head


def lba_accepts(m: Machine, word: Iterable, visited_cap: int | None = None) -> RunResult:
    """
    Decide an lba by breadth-first search over (position, state, tape, head).

    The input is read through the control; the work tape starts blank with
    ceil(c * (|word| + 1)) cells between the end markers and the head on the
    first cell. The configuration space is finite, so the search terminates
    unless the visited cap is hit first.
    """
    _require_class(m, MachineClass.LBA)
    word = _tokens(word)
    n = len(word)
    cells = space_bound(m, n)
    cap = visited_cap if visited_cap is not None else settings.GA_LBA_VISITED_CAP
    start = (0, m.start, (LEFT_END,) + (BLANK,) * cells + (RIGHT_END,), 1)
    parents = {start: None}
    queue = deque([start])
    furthest = 1

    def stats():
        return RunStats(configurations=len(parents), max_cells=furthest, cells_available=cells)

    while queue:
        config = queue.popleft()
        pos, state, tape, head = config
        if 1 <= head <= cells:
            furthest = max(furthest, head)
        if pos == n and state in m.accept_set:
            return RunResult(Verdict.ACCEPT, stats(), _unwind(parents, config))
        for index, edge in m.edges_from(state):
            if edge.token is None:
                advance = 0
            elif pos < n and edge.token == word[pos]:
                advance = 1
            else:
                continue
            moved = _tape_step(edge.instruction, tape, head)
            if moved is None:
                continue
            nxt = (pos + advance, edge.dst) + moved
            if nxt not in parents:
                parents[nxt] = (config, index)
                queue.append(nxt)
        if len(parents) > cap:
            logger.warning(f"lba search on {m} hit the visited cap ({cap}) at |word|={n}")
            return RunResult(Verdict.RESOURCE_EXCEEDED, stats())
    return RunResult(Verdict.REJECT, stats())


# ---------------------------------------------------------------------------
# Dispatch and replay
# ---------------------------------------------------------------------------

DECIDERS = {
    MachineClass.FSA.value: fsa_accepts,
    MachineClass.PDA.value: pda_accepts,
    MachineClass.LBA.value: lba_accepts,
}


def accepts(m: Machine, word: Iterable) -> RunResult:
    """Run the decider for the machine's class."""
    decider = DECIDERS.get(str(m.machine_class))
    if decider is None:
        _require_class(m, MachineClass.FSA)
    return decider(m, word)


def replay_run(m: Machine, word: Iterable, run: Iterable[int]) -> RunStats:
    """
    Re-execute an accepting run edge by edge and return its stats.
    Raises MachineError at the first step that does not apply.
    """
    word = _tokens(word)
    n = len(word)
    state, pos = m.start, 0
    stack = (BOTTOM,)
    cells = space_bound(m, n) if m.machine_class == MachineClass.LBA else None
    tape = (LEFT_END,) + (BLANK,) * cells + (RIGHT_END,) if cells is not None else None
    head = 1
    steps = 0
    deepest = 0
    furthest = 1 if cells is not None else 0
    for index in run:
        if not 0 <= index < len(m.edges):
            raise MachineError(f"Run step {steps}: no edge {index} in {m}")
        edge = m.edges[index]
        if edge.src != state:
            raise MachineError(f"Run step {steps}: edge {index} leaves {edge.src!r}, machine is in {state!r}")
        if edge.token is not None:
            if pos >= n or word[pos] != edge.token:
                raise MachineError(f"Run step {steps}: edge {index} reads {edge.token!r} at input position {pos}")
            pos += 1
        if m.machine_class == MachineClass.PDA:
            stack = _stack_step(edge.instruction, stack)
            if stack is None:
                raise MachineError(f"Run step {steps}: stack guard of edge {index} fails")
            deepest = max(deepest, len(stack) - 1)
        elif cells is not None:
            moved = _tape_step(edge.instruction, tape, head)
            if moved is None:
                raise MachineError(f"Run step {steps}: tape instruction of edge {index} does not apply")
            tape, head = moved
            if 1 <= head <= cells:
                furthest = max(furthest, head)
        state = edge.dst
        steps += 1
    if pos != n:
        raise MachineError(f"Run stops after {pos} of {n} input tokens")
    if state not in m.accept_set:
        raise MachineError(f"Run ends in {state!r}, which is not an accept state")
    return RunStats(configurations=steps + 1, max_cells=furthest, max_stack_depth=deepest, cells_available=cells)
