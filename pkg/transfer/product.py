"""
The product of a G-automaton P with a machine N recognising the word
problem of its group.

Product states are pairs (p, q) rendered "p|q". Edges:

    pair      P edge (x, g) with N edge (token(g), instruction)
    identity  P edge (x, 1) with the class's neutral instruction, q unchanged
    lift      N epsilon edge (eps, instruction), p unchanged

A P edge with an epsilon letter pairs like any other and gives an
epsilon-input product edge. Only states reachable from the start pair that
can still reach an accept pair are kept.
"""
from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from typing import TYPE_CHECKING

import networkx as nx

from gautomata.automaton import (
    GAutomaton, has_unique_group_labels, is_deterministic as gautomaton_is_deterministic, is_normalized,
    pair_state,
)
from groups.algebra import is_identity
from machines.machine import Edge, Machine, is_deterministic, neutral_instruction

if TYPE_CHECKING:
    from .builders import WordProblemMachine

logger = logging.getLogger(__name__)

PAIR = 'pair'
IDENTITY = 'identity'
LIFT = 'lift'


class TransferError(ValueError):
    """Raised for unnormalized automata, generator-token mismatches and unsupported classes."""


@dataclass(frozen=True)
class EdgeProvenance:
    rule: str
    p_edge: int | None
    n_edge: int | None


@dataclass(frozen=True)
class ProductMachine:
    """A machine in N's class together with where its states and edges came from."""
    machine: Machine
    states: tuple[tuple[str, str], ...]
    edges: tuple[EdgeProvenance, ...]

    def factors(self, state: str) -> tuple[str, str]:
        return self.states[self.machine.states.index(state)]


def same_group(P: GAutomaton, N: 'WordProblemMachine') -> bool:
    left, right = P.group, N.group
    return (left.family == right.family and left.generators == right.generators
            and left.cayley == right.cayley and left.rank == right.rank)


def product(P: GAutomaton, N: 'WordProblemMachine') -> ProductMachine:
    if not is_normalized(P):
        raise TransferError(f"{P} is not normalized: every edge weight must be a generator image or the identity")
    machine = N.machine
    if set(machine.input_alphabet) != set(P.group.tokens) or not same_group(P, N):
        raise TransferError(f"Generator-token mismatch: {N} reads {sorted(machine.input_alphabet)}, "
                            f"{P} is labelled by {P.group} with generators {sorted(P.group.tokens)}")

    by_token = {}
    lifts = {}
    for index, edge in enumerate(machine.edges):
        target = lifts if edge.token is None else by_token.setdefault(edge.token, {})
        target.setdefault(edge.src, []).append((index, edge))
    neutral = neutral_instruction(machine.machine_class)

    def successors(p, q):
        for p_index, p_edge in P.edges_from(p):
            if is_identity(P.group, p_edge.weight):
                yield (p_edge.dst, q), p_edge.letter, neutral, EdgeProvenance(IDENTITY, p_index, None)
                continue
            token = P.group.symbol_for(p_edge.weight).token
            for n_index, n_edge in by_token.get(token, {}).get(q, ()):
                yield (p_edge.dst, n_edge.dst), p_edge.letter, n_edge.instruction, EdgeProvenance(PAIR, p_index, n_index)
        for n_index, n_edge in lifts.get(q, ()):
            yield (p, n_edge.dst), None, n_edge.instruction, EdgeProvenance(LIFT, None, n_index)

    start = (P.start, machine.start)
    order = [start]
    seen = {start}
    raw = []
    queue = deque([start])
    while queue:
        pair = queue.popleft()
        for nxt, token, instruction, provenance in successors(*pair):
            raw.append((pair, token, instruction, nxt, provenance))
            if nxt not in seen:
                seen.add(nxt)
                order.append(nxt)
                queue.append(nxt)

    accepting = {pair for pair in order if pair[0] in P.accept_set and pair[1] in machine.accept_set}
    graph = nx.DiGraph()
    graph.add_nodes_from(order)
    graph.add_edges_from((src, dst) for src, _, _, dst, _ in raw)
    alive = set(accepting)
    for pair in accepting:
        alive |= nx.ancestors(graph, pair)
    alive.add(start)
    kept = [pair for pair in order if pair in alive]

    edges, provenance = [], []
    for src, token, instruction, dst, origin in raw:
        if src in alive and dst in alive:
            edges.append(Edge(pair_state(*src), token, instruction, pair_state(*dst)))
            provenance.append(origin)

    result = Machine(
        machine_class=machine.machine_class,
        input_alphabet=P.alphabet,
        states=tuple(pair_state(*pair) for pair in kept),
        start=pair_state(*start),
        accepts=tuple(pair_state(*pair) for pair in kept if pair in accepting),
        edges=tuple(edges),
        tape_alphabet=machine.tape_alphabet,
        space_multiplier=machine.space_multiplier,
        name=f"{P} x {machine}",
    )
    logger.info(f"Built {result}: {len(order)} reachable pairs, {len(kept)} kept, {len(edges)} edges")
    return ProductMachine(result, tuple(kept), tuple(provenance))


def product_preserves_determinism(P: GAutomaton, N: 'WordProblemMachine') -> bool:
    """Both factors deterministic, and no state of P repeats a group element on its outgoing edges."""
    return (is_deterministic(N.machine) and gautomaton_is_deterministic(P)
            and has_unique_group_labels(P))
