"""
G-automata: finite directed graphs whose edges carry a letter (or epsilon)
and a group element. A word is accepted when some path from the start
vertex to an accept vertex spells it and the product of its weights is the
identity.
"""
from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import networkx as nx

from groups.algebra import (
    GroupElement, GroupError, GroupSpec, check_element, express_in_generators,
    free_abelian_group, identity, inverse_token, is_identity, multiply, product, validate_group,
)
from machines.machine import Machine, MachineClass

logger = logging.getLogger(__name__)


class GAutomatonError(ValueError):
    """Raised for unnormalized inputs, alphabet mismatches and inexpressible weights."""


@dataclass(frozen=True)
class GEdge:
    src: str
    letter: str | None
    weight: GroupElement
    dst: str

    def __str__(self):
        letter = self.letter if self.letter is not None else 'eps'
        return f"{self.src} --({letter}, {self.weight})--> {self.dst}"


@dataclass(frozen=True)
class PathLabel:
    """The word a path spells and the product of its weights."""
    word: tuple[str, ...]
    weight: GroupElement


@dataclass(frozen=True)
class GAutomaton:
    group: GroupSpec
    alphabet: tuple[str, ...]
    states: tuple[str, ...]
    start: str
    accepts: tuple[str, ...]
    edges: tuple[GEdge, ...]
    name: str = ''

    def __str__(self):
        return self.name or f"{self.group}-automaton with {len(self.states)} states"

    @cached_property
    def accept_set(self) -> frozenset[str]:
        return frozenset(self.accepts)

    @cached_property
    def outgoing(self) -> dict[str, list[tuple[int, GEdge]]]:
        table = {state: [] for state in self.states}
        for index, edge in enumerate(self.edges):
            table.setdefault(edge.src, []).append((index, edge))
        return table

    def edges_from(self, state: str) -> list[tuple[int, GEdge]]:
        return self.outgoing.get(state, [])

    @cached_property
    def used_letters(self) -> tuple[str, ...]:
        """Letters that label at least one edge, in alphabet order."""
        used = {edge.letter for edge in self.edges if edge.letter is not None}
        return tuple(letter for letter in self.alphabet if letter in used)

    @cached_property
    def weighted_cycles(self) -> list[tuple[str, ...]]:
        return weighted_epsilon_cycles(self)


def close_alphabet(tokens: Iterable[str]) -> tuple[str, ...]:
    """Add the formal inverse right after every token that lacks one."""
    closed = []
    for token in tokens:
        for candidate in (token, inverse_token(token)):
            if candidate not in closed:
                closed.append(candidate)
    return tuple(closed)


def g_automaton(group: GroupSpec, states: Sequence[str], start: str, accepts: Sequence[str],
                edges: Iterable[GEdge | tuple], alphabet: Sequence[str] | None = None,
                name: str = '') -> GAutomaton:
    """Build a G-automaton, closing its alphabet under formal inversion."""
    edges = tuple(edge if isinstance(edge, GEdge) else GEdge(*edge) for edge in edges)
    tokens = list(alphabet) if alphabet is not None else []
    tokens.extend(edge.letter for edge in edges if edge.letter is not None and edge.letter not in tokens)
    return GAutomaton(
        group=group,
        alphabet=close_alphabet(tokens),
        states=tuple(states),
        start=start,
        accepts=tuple(accepts),
        edges=edges,
        name=name,
    )


def validate_gautomaton(A: GAutomaton) -> list[str]:
    """Structural diagnostics; an empty list means the automaton is well formed."""
    diagnostics = [f"group: {problem}" for problem in validate_group(A.group)]
    states = set(A.states)
    if len(states) != len(A.states):
        diagnostics.append("state list contains duplicates")
    if A.start not in states:
        diagnostics.append(f"start vertex {A.start!r} is not a state")
    for state in A.accepts:
        if state not in states:
            diagnostics.append(f"accept vertex {state!r} is not a state")
    alphabet = set(A.alphabet)
    for token in A.alphabet:
        try:
            partner = inverse_token(token)
        except GroupError as exc:
            diagnostics.append(f"letter {token!r}: {exc}")
            continue
        if partner not in alphabet:
            diagnostics.append(f"alphabet is not closed under inversion: {partner!r} missing")
    for index, edge in enumerate(A.edges):
        where = f"edge {index} ({edge.src} -> {edge.dst})"
        if edge.src not in states or edge.dst not in states:
            diagnostics.append(f"{where}: endpoint is not a state")
        if edge.letter is not None and edge.letter not in alphabet:
            diagnostics.append(f"{where}: letter {edge.letter!r} is not in the alphabet")
        try:
            check_element(A.group, edge.weight)
        except GroupError as exc:
            diagnostics.append(f"{where}: {exc}")
    return diagnostics


def require_valid(A: GAutomaton) -> GAutomaton:
    diagnostics = validate_gautomaton(A)
    if diagnostics:
        raise GAutomatonError(f"Invalid G-automaton {A}: " + '; '.join(diagnostics))
    return A


def evaluate_path(A: GAutomaton, path: Iterable[int]) -> PathLabel:
    """Word and weight of a path given as edge indices; the empty path has the identity weight."""
    edges = [A.edges[index] for index in path]
    for before, after in zip(edges, edges[1:]):
        if before.dst != after.src:
            raise GAutomatonError(f"Edges {before} and {after} do not form a path")
    word = tuple(edge.letter for edge in edges if edge.letter is not None)
    return PathLabel(word, product(A.group, (edge.weight for edge in edges)))


def weighted_epsilon_cycles(A: GAutomaton) -> list[tuple[str, ...]]:
    """
    Strongly connected components of the epsilon subgraph that contain a
    cycle whose weight is not the identity.

    Inside a component, potentials are assigned along a breadth-first tree;
    every cycle has identity weight iff every edge u -g-> v satisfies
    potential(u) * g == potential(v).
    """
    graph = nx.MultiDiGraph()
    graph.add_nodes_from(A.states)
    for index, edge in enumerate(A.edges):
        if edge.letter is None:
            graph.add_edge(edge.src, edge.dst, key=index, weight=edge.weight)
    flagged = []
    for component in nx.strongly_connected_components(graph):
        sub = graph.subgraph(component)
        if sub.number_of_edges() == 0:
            continue
        root = min(component)
        potential = {root: identity(A.group)}
        for u, v in nx.bfs_edges(sub, root):
            weight = next(iter(sub[u][v].values()))['weight']
            potential[v] = multiply(A.group, potential[u], weight)
        if any(multiply(A.group, potential[u], data['weight']) != potential[v]
               for u, v, data in sub.edges(data=True)):
            flagged.append(tuple(sorted(component)))
    if flagged:
        logger.warning(f"{A} has epsilon cycles with non-identity weight in {flagged}; "
                       f"membership verdicts are bounded-semantics only")
    return sorted(flagged)


def is_generator_step(group: GroupSpec, weight: GroupElement) -> bool:
    return is_identity(group, weight) or group.symbol_for(weight) is not None


def is_normalized(A: GAutomaton) -> bool:
    return all(is_generator_step(A.group, edge.weight) for edge in A.edges)


def normalize(A: GAutomaton) -> GAutomaton:
    """
    Split every edge whose weight is a longer product into a chain through
    fresh states: the original letter and the first generator on the first
    edge, epsilon and one generator on each of the rest.
    """
    states = list(A.states)
    taken = set(states)
    edges = []
    for i, edge in enumerate(A.edges):
        if is_generator_step(A.group, edge.weight):
            edges.append(edge)
            continue
        try:
            word = express_in_generators(A.group, edge.weight)
        except GroupError as exc:
            raise GAutomatonError(f"Cannot normalize edge {i} ({edge}): {exc}") from exc
        chain = [edge.src]
        for j in range(1, len(word)):
            fresh = f"{edge.src}>{edge.dst}#{i}.{j}"
            while fresh in taken:
                fresh += "'"
            taken.add(fresh)
            states.append(fresh)
            chain.append(fresh)
        chain.append(edge.dst)
        for j, symbol in enumerate(word):
            letter = edge.letter if j == 0 else None
            edges.append(GEdge(chain[j], letter, A.group.image(symbol), chain[j + 1]))
    if len(edges) == len(A.edges):
        return A
    logger.info(f"Normalized {A}: {len(A.edges)} edges became {len(edges)}, {len(states) - len(A.states)} fresh states")
    return GAutomaton(A.group, A.alphabet, tuple(states), A.start, A.accepts, tuple(edges), A.name)


def is_deterministic(A: GAutomaton) -> bool:
    """No epsilon-letter edges and no state with two outgoing edges sharing a letter."""
    for state in A.states:
        letters = [edge.letter for _, edge in A.edges_from(state)]
        if None in letters or len(letters) != len(set(letters)):
            return False
    return True


def has_unique_group_labels(A: GAutomaton) -> bool:
    """No state with two outgoing edges carrying the same group element."""
    for state in A.states:
        weights = [edge.weight for _, edge in A.edges_from(state)]
        if len(weights) != len(set(weights)):
            return False
    return True


def wp_automaton(spec: GroupSpec) -> GAutomaton:
    """One vertex, start and accept, with a loop (g, g) for every generator g: accepts the word problem."""
    edges = [GEdge('q0', symbol.token, image, 'q0') for symbol, image in spec.generators]
    return g_automaton(spec, ['q0'], 'q0', ['q0'], edges, alphabet=spec.tokens, name=f"WP({spec})")


def counter_automaton(k: int, states: Sequence[str], edges: Iterable[tuple], start: str,
                      accepts: Sequence[str], alphabet: Sequence[str] | None = None,
                      name: str = '') -> GAutomaton:
    """A Z^k-automaton from (src, letter, vector, dst) edges; vectors may be arbitrary."""
    group = free_abelian_group(k)
    built = []
    for src, letter, vector, dst in edges:
        if len(vector) != k:
            raise GAutomatonError(f"Edge {src} -> {dst} has a weight of length {len(vector)}, expected {k}")
        built.append(GEdge(src, letter, GroupElement(group.family, tuple(int(x) for x in vector)), dst))
    return g_automaton(group, states, start, accepts, built, alphabet=alphabet, name=name)


def pair_state(p: str, q: str) -> str:
    return f"{p}|{q}"


def intersect_regular(A: GAutomaton, F: Machine) -> GAutomaton:
    """
    G-automaton for L(A) intersected with the language of an epsilon-free fsa.
    Only pairs reachable from (start, start) are built.
    """
    if F.machine_class != MachineClass.FSA:
        raise GAutomatonError(f"intersect_regular needs an fsa, got a {F.machine_class}")
    if any(edge.token is None for edge in F.edges):
        raise GAutomatonError(f"{F} has epsilon edges")
    extra = set(F.input_alphabet) - set(A.alphabet)
    if extra:
        raise GAutomatonError(f"Alphabet mismatch: {sorted(extra)} are not letters of {A}")
    start = (A.start, F.start)
    seen = {start}
    queue = deque([start])
    edges = []
    while queue:
        p, q = queue.popleft()
        for _, edge in A.edges_from(p):
            if edge.letter is None:
                targets = [q]
            else:
                targets = [f_edge.dst for _, f_edge in F.edges_from(q) if f_edge.token == edge.letter]
            for q_next in targets:
                nxt = (edge.dst, q_next)
                edges.append(GEdge(pair_state(p, q), edge.letter, edge.weight, pair_state(*nxt)))
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
    ordered = sorted(seen, key=lambda pair: (A.states.index(pair[0]), F.states.index(pair[1])))
    accepts = [pair_state(p, q) for p, q in ordered if p in A.accept_set and q in F.accept_set]
    result = GAutomaton(
        group=A.group,
        alphabet=A.alphabet,
        states=tuple(pair_state(p, q) for p, q in ordered),
        start=pair_state(*start),
        accepts=tuple(accepts),
        edges=tuple(edges),
        name=f"{A} & {F}",
    )
    logger.info(f"Intersected {A} with {F}: {len(result.states)} reachable pairs, {len(edges)} edges")
    return result

