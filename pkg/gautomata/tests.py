import itertools
import random
from dataclasses import replace

from django.test import SimpleTestCase

from groups.algebra import (
    FREE_ABELIAN, GroupElement, cyclic_group, evaluate_word, free_abelian_group, free_group, identity,
    is_identity, multiply, symmetric_group,
)
from machines.deciders import fsa_accepts
from machines.machine import Edge, Machine, MachineClass, NoOp

from .automaton import (
    GAutomatonError, GEdge, counter_automaton, evaluate_path, g_automaton, has_unique_group_labels,
    intersect_regular, is_deterministic, is_normalized, normalize, validate_gautomaton,
    weighted_epsilon_cycles, wp_automaton,
)
from .search import MembershipVerdict, SearchBudget, g_membership


def words_upto(alphabet, max_len):
    for length in range(max_len + 1):
        yield from itertools.product(alphabet, repeat=length)


def a_eq():
    return counter_automaton(1, ['s'], [('s', 'a', [1], 's'), ('s', 'b', [-1], 's')], 's', ['s'], name='A_eq')


def a_anbn():
    return counter_automaton(
        1, ['s', 't'],
        [('s', 'a', [1], 's'), ('s', 'b', [-1], 't'), ('t', 'b', [-1], 't')],
        's', ['t'], name='A_anbn',
    )


def a_anbncn():
    return counter_automaton(
        2, ['s_a', 's_b', 's_c'],
        [('s_a', 'a', [1, 0], 's_a'), ('s_a', 'b', [-1, 1], 's_b'), ('s_b', 'b', [-1, 1], 's_b'),
         ('s_b', 'c', [0, -1], 's_c'), ('s_c', 'c', [0, -1], 's_c')],
        's_a', ['s_a', 's_c'], name='A_anbncn',
    )


def naive_accepts(A, word):
    """Exhaustive path enumeration for automata without epsilon edges."""
    frontier = {(A.start, identity(A.group))}
    for letter in word:
        frontier = {(edge.dst, multiply(A.group, element, edge.weight))
                    for state, element in frontier
                    for _, edge in A.edges_from(state) if edge.letter == letter}
    return any(state in A.accept_set and is_identity(A.group, element) for state, element in frontier)


def accepted_words(A, alphabet, max_len):
    return [' '.join(word) for word in words_upto(alphabet, max_len) if g_membership(A, word).accepted]


class ValidateGAutomatonTests(SimpleTestCase):

    def test_word_problem_automaton_is_valid(self):
        self.assertEqual(validate_gautomaton(wp_automaton(free_abelian_group(2))), [])

    def test_wrong_rank_weight(self):
        A = wp_automaton(free_abelian_group(2))
        bad = replace(A, edges=A.edges + (GEdge('q0', 'a', GroupElement(FREE_ABELIAN, (1,)), 'q0'),))
        self.assertEqual(len(validate_gautomaton(bad)), 1)

    def test_accept_vertex_outside_states(self):
        A = wp_automaton(free_abelian_group(2))
        self.assertEqual(len(validate_gautomaton(replace(A, accepts=('q0', 'q9')))), 1)

    def test_alphabet_is_closed_under_inversion(self):
        self.assertEqual(a_eq().alphabet, ('a', 'a^-1', 'b', 'b^-1'))
        self.assertEqual(a_eq().used_letters, ('a', 'b'))


class NormalizeTests(SimpleTestCase):

    def test_long_weight_becomes_a_chain(self):
        A = counter_automaton(2, ['p', 'q'], [('p', 'x', [2, 0], 'q')], 'p', ['q'])
        normalized = normalize(A)
        a = A.group.image('a')
        self.assertEqual(normalized.edges, (GEdge('p', 'x', a, 'p>q#0.1'), GEdge('p>q#0.1', None, a, 'q')))
        self.assertTrue(is_normalized(normalized))

    def test_normalized_automaton_is_a_fixpoint(self):
        A = wp_automaton(free_abelian_group(2))
        self.assertEqual(normalize(A), A)

    def test_language_is_preserved(self):
        rng = random.Random(31337)
        fixtures = [a_anbncn()]
        for _ in range(4):
            edges = [(rng.choice('pqr'), rng.choice('xy'), [rng.randint(-2, 2), rng.randint(-2, 2)], rng.choice('pqr'))
                     for _ in range(5)]
            fixtures.append(counter_automaton(2, ['p', 'q', 'r'], edges, 'p', [rng.choice('pqr')]))
        for A in fixtures:
            normalized = normalize(A)
            self.assertEqual(weighted_epsilon_cycles(normalized), [])
            for word in words_upto(A.used_letters, 6):
                with self.subTest(automaton=str(A), word=word):
                    self.assertEqual(g_membership(normalized, word).accepted, naive_accepts(A, word))

    def test_inexpressible_weight(self):
        group = free_abelian_group(2, generators=[('u', [2, 0]), ('b', [0, 1])])
        A = g_automaton(group, ['p'], 'p', ['p'], [('p', 'x', GroupElement(FREE_ABELIAN, (1, 0)), 'p')])
        with self.assertRaises(GAutomatonError):
            normalize(A)


class MembershipTests(SimpleTestCase):

    def test_a_eq(self):
        self.assertEqual(g_membership(a_eq(), 'a b b a'.split()).verdict, MembershipVerdict.ACCEPT)
        result = g_membership(a_eq(), 'a a b'.split())
        self.assertEqual(result.verdict, MembershipVerdict.REJECT)
        self.assertTrue(result.exact)

    def test_a_anbn_slice(self):
        self.assertEqual(accepted_words(a_anbn(), ('a', 'b'), 6), ['a b', 'a a b b', 'a a a b b b'])

    def test_a_anbncn_slice(self):
        A = normalize(a_anbncn())
        self.assertEqual(accepted_words(A, ('a', 'b', 'c'), 6), ['', 'a b c', 'a a b b c c'])

    def test_empty_word_with_accepting_start(self):
        result = g_membership(a_eq(), [])
        self.assertTrue(result.accepted)
        self.assertEqual(evaluate_path(a_eq(), result.path).weight, identity(a_eq().group))

    def test_accept_carries_a_verified_path(self):
        A = a_anbn()
        result = g_membership(A, 'a a b b'.split())
        label = evaluate_path(A, result.path)
        self.assertEqual(label.word, ('a', 'a', 'b', 'b'))
        self.assertTrue(is_identity(A.group, label.weight))

    def test_budget_exhaustion_is_not_a_reject(self):
        budget = SearchBudget(norm_cap=100, eps_cap=10, max_configurations=2)
        result = g_membership(a_eq(), 'a b a b'.split(), budget)
        self.assertEqual(result.verdict, MembershipVerdict.EXHAUSTED)
        self.assertFalse(result.exact)

    def test_budget_caps_must_be_positive(self):
        with self.assertRaises(GAutomatonError):
            SearchBudget(norm_cap=0, eps_cap=1, max_configurations=1)

    def test_norm_pruning_makes_rejects_inexact(self):
        budget = SearchBudget(norm_cap=1, eps_cap=10, max_configurations=1000)
        result = g_membership(a_eq(), 'a a b b'.split(), budget)
        self.assertEqual(result.verdict, MembershipVerdict.REJECT)
        self.assertFalse(result.exact)

    def test_weighted_epsilon_cycle_is_flagged(self):
        group = free_abelian_group(1)
        one = group.image('a')
        minus_three = GroupElement(FREE_ABELIAN, (-3,))
        A = g_automaton(group, ['s', 't'], 's', ['t'], [('s', None, one, 's'), ('s', 'x', minus_three, 't')])
        self.assertEqual(weighted_epsilon_cycles(A), [('s',)])
        self.assertTrue(g_membership(A, ['x']).accepted)
        rejected = g_membership(A, ['x', 'x'])
        self.assertEqual(rejected.verdict, MembershipVerdict.REJECT)
        self.assertFalse(rejected.exact)

    def test_identity_epsilon_cycle_is_not_flagged(self):
        group = free_abelian_group(1)
        A = g_automaton(group, ['p', 'q'], 'p', ['p'],
                        [('p', None, group.image('a'), 'q'), ('q', None, group.image('a^-1'), 'p')])
        self.assertEqual(weighted_epsilon_cycles(A), [])


class WordProblemAutomatonTests(SimpleTestCase):

    def test_z1_examples(self):
        A = wp_automaton(free_abelian_group(1))
        self.assertTrue(g_membership(A, 'a a^-1 a a^-1'.split()).accepted)
        self.assertFalse(g_membership(A, 'a a'.split()).accepted)

    def test_word_problem_automaton_matches_oracle(self):
        groups = [cyclic_group(2), symmetric_group(3), free_group(1), free_group(2),
                  free_abelian_group(1), free_abelian_group(2)]
        for spec in groups:
            A = wp_automaton(spec)
            exhausted, wrong = [], []
            for word in words_upto(spec.tokens, 8):
                result = g_membership(A, word)
                if result.verdict == MembershipVerdict.EXHAUSTED:
                    exhausted.append(word)
                elif result.accepted != is_identity(spec, evaluate_word(spec, word)):
                    wrong.append(word)
            with self.subTest(group=str(spec)):
                self.assertEqual(exhausted, [])
                self.assertEqual(wrong, [])

    def test_determinism_predicates(self):
        A = wp_automaton(free_abelian_group(2))
        self.assertTrue(is_deterministic(A))
        self.assertTrue(has_unique_group_labels(A))
        doubled = replace(A, edges=A.edges + (GEdge('q0', 'a', A.group.image('b'), 'q0'),))
        self.assertFalse(is_deterministic(doubled))
        self.assertFalse(has_unique_group_labels(doubled))


class CounterAutomatonTests(SimpleTestCase):

    def test_anbncn_examples(self):
        A = a_anbncn()
        self.assertTrue(g_membership(A, 'a b c'.split()).accepted)
        self.assertTrue(g_membership(A, 'a a b b c c'.split()).accepted)
        self.assertFalse(g_membership(A, 'a a b c'.split()).accepted)

    def test_length_mismatch(self):
        with self.assertRaises(GAutomatonError):
            counter_automaton(2, ['s'], [('s', 'a', [1], 's')], 's', ['s'])


def all_words_fsa(alphabet, accepting=True):
    return Machine(
        machine_class=MachineClass.FSA,
        input_alphabet=tuple(alphabet),
        states=('u',),
        start='u',
        accepts=('u',) if accepting else (),
        edges=tuple(Edge('u', token, NoOp(), 'u') for token in alphabet),
    )


class IntersectRegularTests(SimpleTestCase):

    def setUp(self):
        self.A = wp_automaton(free_abelian_group(2))

    def test_universal_filter_keeps_the_language(self):
        product = intersect_regular(self.A, all_words_fsa(self.A.alphabet))
        for word in words_upto(self.A.alphabet, 5):
            with self.subTest(word=word):
                self.assertEqual(g_membership(product, word).accepted, g_membership(self.A, word).accepted)

    def test_empty_filter_rejects_everything(self):
        product = intersect_regular(self.A, all_words_fsa(self.A.alphabet, accepting=False))
        self.assertEqual(product.accepts, ())
        for word in words_upto(self.A.alphabet, 3):
            self.assertFalse(g_membership(product, word).accepted)

    def test_membership_in_both_factors(self):
        # (ab)* then inverses only
        F = Machine(
            machine_class=MachineClass.FSA,
            input_alphabet=self.A.alphabet,
            states=('0', '1', '2'),
            start='0',
            accepts=('0', '2'),
            edges=(Edge('0', 'a', NoOp(), '1'), Edge('1', 'b', NoOp(), '0'),
                   Edge('0', 'a^-1', NoOp(), '2'), Edge('0', 'b^-1', NoOp(), '2'),
                   Edge('2', 'a^-1', NoOp(), '2'), Edge('2', 'b^-1', NoOp(), '2')),
        )
        product = intersect_regular(self.A, F)
        for word in words_upto(self.A.alphabet, 6):
            with self.subTest(word=word):
                both = g_membership(self.A, word).accepted and fsa_accepts(F, word).accepted
                self.assertEqual(g_membership(product, word).accepted, both)

    def test_alphabet_mismatch(self):
        with self.assertRaises(GAutomatonError):
            intersect_regular(self.A, all_words_fsa(('a', 'z')))
