"""
Pushdown automaton to context-free grammar, and a chart recognizer for the
resulting grammar.

The conversion is the classical triple construction adapted to acceptance by
final state over a bottom marker that is never popped:

    ('pop', p, A, q)  derives the input read while going from state p with A
                      on top of the stack to state q with A popped;
    ('acc', p, A)     derives the input read while going from state p with A
                      on top to an accept state, never popping A.

The start symbol is ('acc', start, BOTTOM). Every production remembers the
machine edge it came from, so the pre-order of a parse tree is a run.
"""
from __future__ import annotations

import logging
from collections import defaultdict, deque
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Sequence, Union

from .machine import BOTTOM, Machine, MachineClass, MachineError, StackAction

logger = logging.getLogger(__name__)

Nonterminal = tuple
Symbol = Union[str, Nonterminal]


def is_nonterminal(symbol: Symbol) -> bool:
    return isinstance(symbol, tuple)


def render_symbol(symbol: Symbol) -> str:
    if not is_nonterminal(symbol):
        return symbol
    return '[' + ','.join(str(part) for part in symbol) + ']'


@dataclass(frozen=True)
class Production:
    lhs: Nonterminal
    rhs: tuple[Symbol, ...]
    edge: int | None = None

    def __str__(self):
        body = ' '.join(render_symbol(s) for s in self.rhs) or 'eps'
        source = f"   (edge {self.edge})" if self.edge is not None else ''
        return f"{render_symbol(self.lhs)} -> {body}{source}"


@dataclass(frozen=True)
class Grammar:
    start: Nonterminal
    productions: tuple[Production, ...]

    @cached_property
    def by_lhs(self) -> dict[Nonterminal, list[Production]]:
        table = defaultdict(list)
        for production in self.productions:
            table[production.lhs].append(production)
        return dict(table)

    @cached_property
    def nullable(self) -> dict[Nonterminal, Production]:
        """Nullable nonterminals, each with the production that first proved it."""
        witness = {}
        changed = True
        while changed:
            changed = False
            for production in self.productions:
                if production.lhs in witness:
                    continue
                if all(is_nonterminal(s) and s in witness for s in production.rhs):
                    witness[production.lhs] = production
                    changed = True
        return witness

    def __str__(self):
        return '\n'.join(str(p) for p in self.productions)


@dataclass(frozen=True)
class _Transition:
    src: str
    token: str | None
    top: str
    replace: tuple[str, ...]
    dst: str
    edge: int


def _standard_transitions(m: Machine) -> list[_Transition]:
    """Rewrite every edge as 'read top symbol A, replace it by a string'."""
    transitions = []
    for index, edge in enumerate(m.edges):
        instruction = edge.instruction
        tops = [instruction.guard] if instruction.guard is not None else list(m.tape_alphabet)
        for top in tops:
            if instruction.action == StackAction.POP:
                if top == BOTTOM:
                    continue
                replace = ()
            elif instruction.action == StackAction.PUSH:
                replace = (instruction.symbol, top)
            else:
                replace = (top,)
            transitions.append(_Transition(edge.src, edge.token, top, replace, edge.dst, index))
    return transitions


@lru_cache(maxsize=64)
def pda_to_grammar(m: Machine) -> Grammar:
    """Grammar whose language is the language of pda `m`; only nonterminals reachable from the start are built."""
    if m.machine_class != MachineClass.PDA:
        raise MachineError(f"Grammar conversion needs a pda, got {m.machine_class}")
    by_top = defaultdict(list)
    for transition in _standard_transitions(m):
        by_top[(transition.src, transition.top)].append(transition)
    states = m.states
    accepts = m.accept_set

    def expand(nonterminal):
        kind = nonterminal[0]
        if kind == 'acc':
            _, p, top = nonterminal
            if p in accepts:
                yield Production(nonterminal, ())
            for t in by_top.get((p, top), ()):
                lead = (t.token,) if t.token is not None else ()
                if len(t.replace) == 1:
                    yield Production(nonterminal, lead + (('acc', t.dst, t.replace[0]),), t.edge)
                elif len(t.replace) == 2:
                    upper, lower = t.replace
                    yield Production(nonterminal, lead + (('acc', t.dst, upper),), t.edge)
                    for r in states:
                        yield Production(nonterminal, lead + (('pop', t.dst, upper, r), ('acc', r, lower)), t.edge)
        else:
            _, p, top, q = nonterminal
            for t in by_top.get((p, top), ()):
                lead = (t.token,) if t.token is not None else ()
                if not t.replace:
                    if t.dst == q:
                        yield Production(nonterminal, lead, t.edge)
                elif len(t.replace) == 1:
                    yield Production(nonterminal, lead + (('pop', t.dst, t.replace[0], q),), t.edge)
                else:
                    upper, lower = t.replace
                    for r in states:
                        yield Production(nonterminal, lead + (('pop', t.dst, upper, r), ('pop', r, lower, q)), t.edge)

    start = ('acc', m.start, BOTTOM)
    productions = []
    seen = {start}
    queue = deque([start])
    while queue:
        nonterminal = queue.popleft()
        for production in expand(nonterminal):
            productions.append(production)
            for symbol in production.rhs:
                if is_nonterminal(symbol) and symbol not in seen:
                    seen.add(symbol)
                    queue.append(symbol)
    logger.debug(f"Grammar for {m}: {len(seen)} nonterminals, {len(productions)} productions")
    return Grammar(start, tuple(productions))


# ---------------------------------------------------------------------------
# Chart recognition (Earley, with the nullable-advance rule for epsilon productions)
# ---------------------------------------------------------------------------

@dataclass
class ChartResult:
    accepted: bool
    items: int
    derivation: tuple[int, ...] = ()
    charts: list = field(default_factory=list, repr=False)


def recognize(grammar: Grammar, word: Sequence[str]) -> ChartResult:
    """
    Decide whether `grammar` derives `word`. On success, `derivation` holds the
    edge indices of the parse tree in pre-order.
    """
    n = len(word)
    rules = grammar.by_lhs
    nullable = grammar.nullable
    # item = (production index, dot, origin); chart[j][item] = backpointer
    productions = list(grammar.productions)
    index_of = {id(p): i for i, p in enumerate(productions)}
    rule_ids = {lhs: [index_of[id(p)] for p in ps] for lhs, ps in rules.items()}
    charts = [dict() for _ in range(n + 1)]
    waiting = [defaultdict(list) for _ in range(n + 1)]
    predicted = [set() for _ in range(n + 1)]
    total = 0

    for j in range(n + 1):
        chart = charts[j]
        agenda = deque()

        def add(item, backpointer, position=j):
            target = charts[position]
            if item not in target:
                target[item] = backpointer
                if position == j:
                    agenda.append(item)

        if j == 0:
            for rid in rule_ids.get(grammar.start, ()):
                add((rid, 0, 0), ('predict',))
        else:
            agenda.extend(chart.keys())

        while agenda:
            item = agenda.popleft()
            rid, dot, origin = item
            rhs = productions[rid].rhs
            if dot == len(rhs):
                lhs = productions[rid].lhs
                for parent in waiting[origin][lhs]:
                    prid, pdot, porigin = parent
                    add((prid, pdot + 1, porigin), ('complete', parent, origin, item))
                continue
            symbol = rhs[dot]
            if not is_nonterminal(symbol):
                if j < n and word[j] == symbol:
                    add((rid, dot + 1, origin), ('scan', item), position=j + 1)
                continue
            waiting[j][symbol].append(item)
            if symbol not in predicted[j]:
                predicted[j].add(symbol)
                for child in rule_ids.get(symbol, ()):
                    add((child, 0, j), ('predict',))
            if symbol in nullable:
                add((rid, dot + 1, origin), ('null', item, symbol))
        total += len(chart)

    for item in charts[n]:
        rid, dot, origin = item
        production = productions[rid]
        if origin == 0 and production.lhs == grammar.start and dot == len(production.rhs):
            edges = _tree_edges(productions, charts, nullable, item, n)
            return ChartResult(True, total, tuple(edges), charts)
    return ChartResult(False, total, (), charts)


def _tree_edges(productions, charts, nullable, item, position) -> list[int]:
    """Pre-order edge list of the parse tree rooted at completed `item`."""
    rid = item[0]
    children = []
    current, at = item, position
    while True:
        backpointer = charts[at][current]
        kind = backpointer[0]
        if kind == 'predict':
            break
        if kind == 'scan':
            current, at = backpointer[1], at - 1
        elif kind == 'complete':
            _, parent, parent_at, child = backpointer
            children.append(('tree', child, at))
            current, at = parent, parent_at
        else:
            _, parent, symbol = backpointer
            children.append(('null', symbol))
            current = parent
    edges = [productions[rid].edge] if productions[rid].edge is not None else []
    for child in reversed(children):
        if child[0] == 'tree':
            edges.extend(_tree_edges(productions, charts, nullable, child[1], child[2]))
        else:
            edges.extend(_null_edges(nullable, child[1]))
    return edges


def _null_edges(nullable, symbol) -> list[int]:
    production = nullable[symbol]
    edges = [production.edge] if production.edge is not None else []
    for child in production.rhs:
        edges.extend(_null_edges(nullable, child))
    return edges
