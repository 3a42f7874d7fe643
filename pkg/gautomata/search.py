"""
Bounded-search membership for G-automata.

The search explores (input position, state, group element) configurations
breadth first. Elements whose norm exceeds the budget and epsilon runs
longer than the budget are pruned, so a reject is only certain when the
result says it is exact. An accept always comes with a path whose weight
has been re-evaluated to the identity.
"""
from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from typing import Iterable

from django.conf import settings
from django.db import models

from groups.algebra import element_norm, identity, is_identity, max_generator_norm, multiply

from .automaton import GAutomaton, GAutomatonError, evaluate_path

logger = logging.getLogger(__name__)


class MembershipVerdict(models.TextChoices):
    ACCEPT = 'accept', 'Accept'
    REJECT = 'reject-within-budget', 'Reject within budget'
    EXHAUSTED = 'budget-exhausted', 'Budget exhausted'


@dataclass(frozen=True)
class SearchBudget:
    norm_cap: int
    eps_cap: int
    max_configurations: int

    def __post_init__(self):
        for name in ('norm_cap', 'eps_cap', 'max_configurations'):
            if getattr(self, name) < 1:
                raise GAutomatonError(f"Search budget {name} must be positive, got {getattr(self, name)}")

    @classmethod
    def default_for(cls, A: GAutomaton, length: int, norm_cap: int | None = None, eps_cap: int | None = None,
                    max_configurations: int | None = None) -> 'SearchBudget':
        """Defaults scale with the word: norm (n+1)*max generator norm*4, epsilon run |states|*(n+1)."""
        largest = max([max_generator_norm(A.group)] + [element_norm(A.group, edge.weight) for edge in A.edges])
        return cls(
            norm_cap=norm_cap if norm_cap is not None else max(1, (length + 1) * largest * 4),
            eps_cap=eps_cap if eps_cap is not None else max(1, len(A.states) * (length + 1)),
            max_configurations=(max_configurations if max_configurations is not None
                                else settings.GA_SEARCH_MAX_CONFIGS),
        )


@dataclass(frozen=True)
class MembershipResult:
    verdict: str
    path: tuple[int, ...] = ()
    explored: int = 0
    pruned_norm: int = 0
    pruned_eps: int = 0
    exact: bool = False

    @property
    def accepted(self) -> bool:
        return self.verdict == MembershipVerdict.ACCEPT


def g_membership(A: GAutomaton, word: Iterable, budget: SearchBudget | None = None) -> MembershipResult:
    word = tuple(str(token) for token in word)
    n = len(word)
    if budget is None:
        budget = SearchBudget.default_for(A, n)
    group = A.group
    start = (0, A.start, identity(group), 0)
    best = {start[:3]: 0}
    parents = {start: None}
    queue = deque([start])
    pruned_norm = pruned_eps = 0

    while queue:
        config = queue.popleft()
        pos, state, element, eps = config
        if best[config[:3]] < eps:
            continue
        if pos == n and state in A.accept_set and is_identity(group, element):
            path = _unwind(parents, config)
            label = evaluate_path(A, path)
            if label.word != word or not is_identity(group, label.weight):
                raise GAutomatonError(f"Search produced an unsound path {path} for {word} on {A}")
            return MembershipResult(MembershipVerdict.ACCEPT, path, len(parents), pruned_norm, pruned_eps, True)
        for index, edge in A.edges_from(state):
            if edge.letter is None:
                if eps >= budget.eps_cap:
                    pruned_eps += 1
                    continue
                nxt_pos, nxt_eps = pos, eps + 1
            elif pos < n and edge.letter == word[pos]:
                nxt_pos, nxt_eps = pos + 1, 0
            else:
                continue
            nxt_element = multiply(group, element, edge.weight)
            if element_norm(group, nxt_element) > budget.norm_cap:
                pruned_norm += 1
                continue
            key = (nxt_pos, edge.dst, nxt_element)
            if key in best and best[key] <= nxt_eps:
                continue
            best[key] = nxt_eps
            nxt = key + (nxt_eps,)
            parents[nxt] = (config, index)
            queue.append(nxt)
        if len(parents) > budget.max_configurations:
            logger.warning(f"Membership search on {A} exhausted {budget.max_configurations} configurations "
                           f"for a word of length {n}")
            return MembershipResult(MembershipVerdict.EXHAUSTED, (), len(parents), pruned_norm, pruned_eps, False)

    # without weighted epsilon cycles, epsilon runs shorter than |states| reach every weight
    exact = (not A.weighted_cycles and pruned_norm == 0
             and (pruned_eps == 0 or budget.eps_cap >= len(A.states)))
    return MembershipResult(MembershipVerdict.REJECT, (), len(parents), pruned_norm, pruned_eps, exact)


def _unwind(parents: dict, config) -> tuple[int, ...]:
    path = []
    while parents[config] is not None:
        config, index = parents[config]
        path.append(index)
    return tuple(reversed(path))
