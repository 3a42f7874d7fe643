"""
Language comparison over every word up to a length bound.

Anything that decides words can be compared: a G-automaton (bounded
search), a machine (its class decider), a group (the word-problem oracle)
or a plain word set. Budget-exhausted words are reported apart from both
agreements and disagreements.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable

from django.db import models

from gautomata.automaton import GAutomaton
from gautomata.search import MembershipVerdict, SearchBudget, g_membership
from groups.algebra import GroupSpec, evaluate_word, is_identity
from machines.deciders import accepts
from machines.machine import Machine, Verdict

from .words import enumerate_words, render_word

logger = logging.getLogger(__name__)


class ComparisonError(ValueError):
    """Raised when an acceptor cannot read every token of the comparison alphabet."""


class Outcome(models.TextChoices):
    ACCEPT = 'accept', 'Accept'
    REJECT = 'reject', 'Reject'
    EXHAUSTED = 'exhausted', 'Budget exhausted'


class Acceptor:
    """Common interface: a label, the tokens it reads, and a per-word outcome."""
    label = ''

    @property
    def alphabet(self) -> tuple[str, ...] | None:
        """Tokens this acceptor can read; None reads anything."""
        return None

    @property
    def default_alphabet(self) -> tuple[str, ...]:
        return self.alphabet or ()

    def decide(self, word: tuple[str, ...]) -> str:
        raise NotImplementedError

    def __str__(self):
        return self.label


class GAutomatonAcceptor(Acceptor):

    def __init__(self, automaton: GAutomaton, norm_cap: int | None = None, eps_cap: int | None = None,
                 max_configurations: int | None = None, label: str = ''):
        self.automaton = automaton
        self.caps = {'norm_cap': norm_cap, 'eps_cap': eps_cap, 'max_configurations': max_configurations}
        self.label = label or str(automaton)

    @property
    def alphabet(self):
        return self.automaton.alphabet

    @property
    def default_alphabet(self):
        # letters on no edge can never occur in an accepted word
        return self.automaton.used_letters

    def decide(self, word):
        budget = SearchBudget.default_for(self.automaton, len(word), **self.caps)
        result = g_membership(self.automaton, word, budget)
        if result.accepted:
            return Outcome.ACCEPT
        if result.verdict == MembershipVerdict.EXHAUSTED:
            return Outcome.EXHAUSTED
        return Outcome.REJECT


class MachineAcceptor(Acceptor):

    def __init__(self, machine: Machine, label: str = ''):
        self.machine = machine
        self.label = label or str(machine)

    @property
    def alphabet(self):
        return self.machine.input_alphabet

    @property
    def default_alphabet(self):
        used = {edge.token for edge in self.machine.edges if edge.token is not None}
        return tuple(token for token in self.machine.input_alphabet if token in used)

    def decide(self, word):
        result = accepts(self.machine, word)
        if result.verdict == Verdict.RESOURCE_EXCEEDED:
            return Outcome.EXHAUSTED
        return Outcome.ACCEPT if result.accepted else Outcome.REJECT


class GroupOracle(Acceptor):
    """Accepts exactly the words that evaluate to the identity."""

    def __init__(self, spec: GroupSpec, label: str = ''):
        self.spec = spec
        self.label = label or f"word problem of {spec}"

    @property
    def alphabet(self):
        return self.spec.tokens

    def decide(self, word):
        return Outcome.ACCEPT if is_identity(self.spec, evaluate_word(self.spec, word)) else Outcome.REJECT


class WordSetAcceptor(Acceptor):
    """A finite language given by its words."""

    def __init__(self, words: Iterable[Iterable[str]], label: str = 'word set', alphabet: Iterable[str] | None = None):
        self.words = frozenset(tuple(word) for word in words)
        self.label = label
        self._alphabet = tuple(alphabet) if alphabet is not None else None

    @property
    def alphabet(self):
        return self._alphabet

    @property
    def default_alphabet(self):
        if self._alphabet is not None:
            return self._alphabet
        return tuple(sorted({token for word in self.words for token in word}))

    def decide(self, word):
        return Outcome.ACCEPT if tuple(word) in self.words else Outcome.REJECT


def as_acceptor(obj, **caps) -> Acceptor:
    """Wrap a G-automaton, machine, word-problem/product machine or group as an acceptor."""
    if isinstance(obj, Acceptor):
        return obj
    if isinstance(obj, GAutomaton):
        return GAutomatonAcceptor(obj, **caps)
    if isinstance(obj, Machine):
        return MachineAcceptor(obj)
    if isinstance(obj, GroupSpec):
        return GroupOracle(obj)
    machine = getattr(obj, 'machine', None)
    if isinstance(machine, Machine):
        return MachineAcceptor(machine)
    raise ComparisonError(f"Cannot decide words with a {type(obj).__name__}")


@dataclass(frozen=True)
class WordVerdicts:
    word: tuple[str, ...]
    left: str
    right: str

    def to_dict(self):
        return {'word': render_word(self.word), 'left': str(self.left), 'right': str(self.right)}


@dataclass(frozen=True)
class ComparisonReport:
    left: str
    right: str
    alphabet: tuple[str, ...]
    max_len: int
    total: int = 0
    agreements: int = 0
    disagreements: tuple[WordVerdicts, ...] = ()
    exhausted: tuple[WordVerdicts, ...] = ()
    domain: str = 'all words'
    notes: tuple[str, ...] = ()

    @property
    def passed(self) -> bool:
        """No disagreement. Exhausted words do not fail the comparison but never count as agreements."""
        return not self.disagreements

    @property
    def complete(self) -> bool:
        return self.passed and not self.exhausted

    def to_dict(self):
        return {
            'left': self.left,
            'right': self.right,
            'alphabet': list(self.alphabet),
            'max_len': self.max_len,
            'domain': self.domain,
            'total': self.total,
            'agreements': self.agreements,
            'disagreements': [entry.to_dict() for entry in self.disagreements],
            'exhausted': [entry.to_dict() for entry in self.exhausted],
            'passed': self.passed,
            'notes': list(self.notes),
        }

    def render_text(self) -> str:
        lines = [
            f"left:          {self.left}",
            f"right:         {self.right}",
            f"alphabet:      {' '.join(self.alphabet)}",
            f"max length:    {self.max_len} ({self.domain})",
            f"words:         {self.total}",
            f"agreements:    {self.agreements}",
            f"disagreements: {len(self.disagreements)}",
            f"exhausted:     {len(self.exhausted)}",
        ]
        for entry in self.disagreements:
            lines.append(f"  differ  [{render_word(entry.word) or 'eps'}] left={entry.left} right={entry.right}")
        for entry in self.exhausted:
            lines.append(f"  budget  [{render_word(entry.word) or 'eps'}] left={entry.left} right={entry.right}")
        lines.extend(f"note: {note}" for note in self.notes)
        lines.append('PASS' if self.passed else 'FAIL')
        return '\n'.join(lines)


def comparison_alphabet(left: Acceptor, right: Acceptor, alphabet: Iterable[str] | None = None) -> tuple[str, ...]:
    """
    The sorted comparison alphabet: `alphabet` when given, else the tokens the
    left acceptor actually uses. Every token must be readable by both sides.
    """
    tokens = tuple(sorted(set(alphabet if alphabet is not None else left.default_alphabet)))
    if not tokens:
        raise ComparisonError(f"No comparison alphabet: {left} uses no tokens")
    for acceptor in (left, right):
        readable = acceptor.alphabet
        if readable is None:
            continue
        missing = [token for token in tokens if token not in readable]
        if missing:
            raise ComparisonError(f"Acceptor alphabet mismatch: {acceptor} cannot read {', '.join(missing)}")
    return tokens


def compare_languages(left, right, max_len: int, alphabet: Iterable[str] | None = None,
                      words: Iterable[tuple[str, ...]] | None = None, domain: str = 'all words',
                      **caps) -> ComparisonReport:
    """
    Decide every word of length 0..max_len with both acceptors. `words`
    replaces the full enumeration when the sweep is restricted to a subset.
    """
    left, right = as_acceptor(left, **caps), as_acceptor(right, **caps)
    tokens = comparison_alphabet(left, right, alphabet)
    stream = words if words is not None else enumerate_words(tokens, max_len)
    total = agreements = 0
    disagreements, exhausted = [], []
    for word in stream:
        total += 1
        verdicts = WordVerdicts(tuple(word), left.decide(word), right.decide(word))
        if Outcome.EXHAUSTED in (verdicts.left, verdicts.right):
            exhausted.append(verdicts)
        elif verdicts.left == verdicts.right:
            agreements += 1
        else:
            disagreements.append(verdicts)
    report = ComparisonReport(
        left=left.label,
        right=right.label,
        alphabet=tokens,
        max_len=max_len,
        total=total,
        agreements=agreements,
        disagreements=tuple(disagreements),
        exhausted=tuple(exhausted),
        domain=domain,
    )
    logger.info(f"Compared {left} with {right} up to length {max_len}: {total} words, "
                f"{len(disagreements)} disagreements, {len(exhausted)} exhausted")
    if exhausted:
        logger.warning(f"{len(exhausted)} words exhausted the search budget comparing {left} with {right}")
    return report


@dataclass(frozen=True)
class LanguageSlice:
    alphabet: tuple[str, ...]
    max_len: int
    words: tuple[tuple[str, ...], ...]
    exhausted: tuple[tuple[str, ...], ...] = ()

    def rendered(self) -> list[str]:
        return [render_word(word) for word in self.words]


def language_slice(acceptor, max_len: int, alphabet: Iterable[str] | None = None, **caps) -> LanguageSlice:
    """The accepted words of length 0..max_len in length-then-lexicographic order."""
    acceptor = as_acceptor(acceptor, **caps)
    tokens = tuple(sorted(set(alphabet if alphabet is not None else acceptor.default_alphabet)))
    if not tokens:
        raise ComparisonError(f"No alphabet to enumerate: {acceptor} uses no tokens")
    if acceptor.alphabet is not None:
        missing = [token for token in tokens if token not in acceptor.alphabet]
        if missing:
            raise ComparisonError(f"{acceptor} cannot read {', '.join(missing)}")
    accepted, exhausted = [], []
    for word in enumerate_words(tokens, max_len):
        outcome = acceptor.decide(word)
        if outcome == Outcome.ACCEPT:
            accepted.append(word)
        elif outcome == Outcome.EXHAUSTED:
            exhausted.append(word)
    return LanguageSlice(tokens, max_len, tuple(accepted), tuple(exhausted))
