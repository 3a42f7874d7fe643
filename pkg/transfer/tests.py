import itertools
from dataclasses import replace

from django.test import SimpleTestCase

from gautomata.automaton import GEdge, counter_automaton, g_automaton, normalize, wp_automaton
from gautomata.search import g_membership
from groups.algebra import (
    cyclic_group, evaluate_word, free_abelian_group, free_group, is_identity, symmetric_group,
)
from machines.deciders import accepts, lba_accepts, pda_accepts, pda_search_accepts, space_bound
from machines.machine import MachineClass, Verdict, is_deterministic, validate_machine

from .builders import wp_machine_finite, wp_machine_for, wp_machine_free, wp_machine_zn
from .product import IDENTITY, LIFT, PAIR, TransferError, product, product_preserves_determinism


def words_upto(alphabet, max_len):
    for length in range(max_len + 1):
        yield from itertools.product(alphabet, repeat=length)


def in_word_problem(spec, word):
    return is_identity(spec, evaluate_word(spec, word))


def parity_automaton():
    z2 = cyclic_group(2)
    return g_automaton(z2, ['s'], 's', ['s'], [('s', 'a', z2.image('t'), 's')], name='parity')


def a_eq_counter(letters=('l', 'r')):
    up, down = letters
    return counter_automaton(1, ['s'], [('s', up, [1], 's'), ('s', down, [-1], 's')], 's', ['s'], name='A_eq')


def a_eq_free(letters=('l', 'r')):
    f1 = free_group(1)
    up, down = letters
    return g_automaton(f1, ['s'], 's', ['s'], [('s', up, f1.image('a'), 's'), ('s', down, f1.image('a^-1'), 's')],
                       name='A_eq over F_1')


def a_anbn():
    return counter_automaton(
        1, ['s', 't'], [('s', 'a', [1], 's'), ('s', 'b', [-1], 't'), ('t', 'b', [-1], 't')], 's', ['t'],
        name='A_anbn',
    )


def a_anbncn():
    return counter_automaton(
        2, ['s_a', 's_b', 's_c'],
        [('s_a', 'a', [1, 0], 's_a'), ('s_a', 'b', [-1, 1], 's_b'), ('s_b', 'b', [-1, 1], 's_b'),
         ('s_b', 'c', [0, -1], 's_c'), ('s_c', 'c', [0, -1], 's_c')],
        's_a', ['s_a', 's_c'], name='A_anbncn',
    )


class FiniteBuilderTests(SimpleTestCase):

    def test_z2_examples(self):
        wp = wp_machine_finite(cyclic_group(2))
        self.assertEqual(wp.machine.states, ('e', 't'))
        self.assertTrue(accepts(wp.machine, ['t', 't']).accepted)
        self.assertFalse(accepts(wp.machine, ['t']).accepted)
        self.assertEqual(wp.certificate, MachineClass.FSA)

    def test_s3_agrees_with_group_oracle(self):
        s3 = symmetric_group(3)
        wp = wp_machine_finite(s3)
        for word in words_upto(s3.tokens, 5):
            with self.subTest(word=word):
                self.assertEqual(accepts(wp.machine, word).accepted, in_word_problem(s3, word))

    def test_rejects_other_families(self):
        with self.assertRaises(TransferError):
            wp_machine_finite(free_group(1))


class FreeBuilderTests(SimpleTestCase):

    def test_f2_examples(self):
        wp = wp_machine_free(free_group(2))
        self.assertTrue(pda_accepts(wp.machine, 'a b b^-1 a^-1'.split()).accepted)
        self.assertFalse(pda_accepts(wp.machine, 'a b a^-1 b^-1'.split()).accepted)

    def test_f1_agrees_with_group_oracle(self):
        f1 = free_group(1)
        wp = wp_machine_free(f1)
        for word in words_upto(f1.tokens, 8):
            with self.subTest(word=word):
                self.assertEqual(pda_accepts(wp.machine, word).accepted, in_word_problem(f1, word))

    def test_grammar_route_agrees_with_configuration_search(self):
        fixtures = [(wp_machine_free(free_group(1)).machine, 6), (wp_machine_free(free_group(2)).machine, 6),
                    (product(a_eq_free(), wp_machine_free(free_group(1))).machine, 6)]
        for machine, max_len in fixtures:
            alphabet = sorted({edge.token for edge in machine.edges if edge.token is not None})
            for word in words_upto(alphabet, max_len):
                with self.subTest(machine=str(machine), word=word):
                    searched = pda_search_accepts(machine, word)
                    self.assertNotEqual(searched.verdict, Verdict.RESOURCE_EXCEEDED)
                    self.assertEqual(pda_accepts(machine, word).verdict, searched.verdict)

    def test_balanced_count_pda(self):
        M = product(a_eq_free(), wp_machine_free(free_group(1))).machine
        self.assertEqual(M.machine_class, MachineClass.PDA)
        self.assertTrue(pda_accepts(M, 'l l r r'.split()).accepted)
        self.assertFalse(pda_accepts(M, 'l l r'.split()).accepted)


class CounterBuilderTests(SimpleTestCase):

    def test_z2_examples(self):
        wp = wp_machine_zn(2)
        self.assertEqual(validate_machine(wp.machine), [])
        self.assertEqual(wp.machine.space_multiplier, 7)
        self.assertTrue(lba_accepts(wp.machine, 'a b a^-1 b^-1'.split()).accepted)
        self.assertFalse(lba_accepts(wp.machine, 'a b a^-1'.split()).accepted)

    def test_long_word_stays_in_space(self):
        wp = wp_machine_zn(2)
        word = 'a a b b a^-1 a^-1 b^-1 b^-1'.split()
        result = lba_accepts(wp.machine, word)
        self.assertTrue(result.accepted)
        self.assertLessEqual(result.stats.max_cells, 7 * 9)

    def test_agrees_with_group_oracle_within_space(self):
        for k, max_len in [(1, 8), (2, 6)]:
            wp = wp_machine_zn(k)
            for word in words_upto(wp.group.tokens, max_len):
                with self.subTest(k=k, word=word):
                    result = lba_accepts(wp.machine, word)
                    self.assertEqual(result.accepted, in_word_problem(wp.group, word))
                    self.assertLessEqual(result.stats.max_cells, (2 * k + 3) * (len(word) + 1))

    def test_zone_sign_flips(self):
        wp = wp_machine_zn(1)
        for word, expected in [('a^-1 a^-1 a a', True), ('a^-1 a a a^-1', True), ('a^-1 a a', False)]:
            with self.subTest(word=word):
                self.assertEqual(lba_accepts(wp.machine, word.split()).accepted, expected)


class ClassSelectionTests(SimpleTestCase):

    def test_auto_picks_the_natural_class(self):
        self.assertEqual(wp_machine_for(cyclic_group(3)).certificate, MachineClass.FSA)
        self.assertEqual(wp_machine_for(free_group(2)).certificate, MachineClass.PDA)
        self.assertEqual(wp_machine_for(free_abelian_group(2)).certificate, MachineClass.LBA)

    def test_classes_below_the_family_are_refused(self):
        with self.assertRaises(TransferError):
            wp_machine_for(free_abelian_group(2), 'fsa')
        with self.assertRaises(TransferError):
            wp_machine_for(free_group(1), 'fsa')
        with self.assertRaises(TransferError):
            wp_machine_for(free_abelian_group(1), 'pda')

    def test_finite_group_as_pda_and_lba(self):
        z3 = cyclic_group(3)
        for cls in ('pda', 'lba'):
            wp = wp_machine_for(z3, cls)
            self.assertEqual(wp.machine.machine_class, cls)
            for word in words_upto(z3.tokens, 4):
                with self.subTest(cls=cls, word=word):
                    self.assertEqual(accepts(wp.machine, word).accepted, in_word_problem(z3, word))

    def test_free_group_has_no_lba_builder(self):
        with self.assertRaises(TransferError):
            wp_machine_for(free_group(1), 'lba')

    def test_nonstandard_generators_are_refused(self):
        with self.assertRaises(TransferError):
            wp_machine_for(free_abelian_group(2, generators=[('u', [1, 1]), ('b', [0, 1])]))
        with self.assertRaises(TransferError):
            wp_machine_for(free_group(2, generators=[('u', 'a b'), ('b', 'b')]))


class ProductTests(SimpleTestCase):

    def assertSameLanguage(self, P, M, max_len):
        for word in words_upto(P.used_letters, max_len):
            with self.subTest(machine=str(M), word=word):
                expected = g_membership(P, word)
                self.assertTrue(expected.accepted or expected.exact)
                result = accepts(M, word)
                self.assertEqual(result.accepted, expected.accepted)
                if M.machine_class == MachineClass.LBA:
                    self.assertLessEqual(result.stats.max_cells, space_bound(M, len(word)))
                    self.assertLessEqual(result.stats.max_cells, M.space_multiplier * (len(word) + 1))

    def test_parity_product(self):
        P = parity_automaton()
        N = wp_machine_finite(cyclic_group(2))
        M = product(P, N).machine
        self.assertEqual(M.states, ('s|e', 's|t'))
        self.assertEqual((M.start, M.accepts), ('s|e', ('s|e',)))
        self.assertTrue(accepts(M, ['a', 'a']).accepted)
        self.assertFalse(accepts(M, ['a']).accepted)
        self.assertSameLanguage(P, M, 8)

    def test_product_matches_direct_search(self):
        pairs = [
            (a_eq_counter(), wp_machine_zn(1), 8),
            (a_eq_free(), wp_machine_free(free_group(1)), 8),
            (a_anbn(), wp_machine_zn(1), 8),
            (normalize(a_anbncn()), wp_machine_zn(2), 6),
        ]
        for P, N, max_len in pairs:
            built = product(P, N)
            self.assertEqual(built.machine.machine_class, N.machine.machine_class)
            self.assertEqual(validate_machine(built.machine), [])
            self.assertSameLanguage(P, built.machine, max_len)

    def test_a_eq_over_z1(self):
        M = product(a_eq_counter(), wp_machine_zn(1)).machine
        for word in ['l l r r', 'l r l r', '']:
            self.assertTrue(lba_accepts(M, word.split()).accepted)
        self.assertFalse(lba_accepts(M, 'l l r'.split()).accepted)

    def test_word_problem_automaton_through_product(self):
        cases = [(cyclic_group(2), 8), (symmetric_group(3), 5), (free_group(1), 8), (free_group(2), 4),
                 (free_abelian_group(1), 6), (free_abelian_group(2), 4)]
        for spec, max_len in cases:
            M = product(wp_automaton(spec), wp_machine_for(spec)).machine
            for word in words_upto(spec.tokens, max_len):
                with self.subTest(group=str(spec), word=word):
                    self.assertEqual(accepts(M, word).accepted, in_word_problem(spec, word))

    def test_provenance_names_the_factor_edges(self):
        P = normalize(a_anbncn())
        N = wp_machine_zn(2)
        built = product(P, N)
        self.assertEqual(len(built.edges), len(built.machine.edges))
        for edge, origin in zip(built.machine.edges, built.edges):
            p, q = built.factors(edge.src)
            if origin.rule == PAIR:
                self.assertEqual(edge.token, P.edges[origin.p_edge].letter)
                self.assertEqual(edge.instruction, N.machine.edges[origin.n_edge].instruction)
                self.assertEqual((p, q), (P.edges[origin.p_edge].src, N.machine.edges[origin.n_edge].src))
            elif origin.rule == LIFT:
                self.assertIsNone(edge.token)
                self.assertEqual(q, N.machine.edges[origin.n_edge].src)
            else:
                self.assertEqual(origin.rule, IDENTITY)
                self.assertEqual(p, P.edges[origin.p_edge].src)

    def test_identity_weight_edges_keep_n_in_place(self):
        z2 = cyclic_group(2)
        P = g_automaton(z2, ['s', 'u'], 's', ['u'], [('s', 'a', z2.image('t'), 's'),
                                                    ('s', 'x', z2.elements()[0], 'u')])
        M = product(P, wp_machine_finite(z2)).machine
        self.assertTrue(accepts(M, ['a', 'a', 'x']).accepted)
        self.assertFalse(accepts(M, ['a', 'x']).accepted)

    def test_unnormalized_automaton_is_refused(self):
        with self.assertRaises(TransferError):
            product(a_anbncn(), wp_machine_zn(2))

    def test_token_mismatch_is_refused(self):
        with self.assertRaises(TransferError):
            product(a_eq_counter(), wp_machine_finite(cyclic_group(2)))
        with self.assertRaises(TransferError):
            product(a_anbn(), wp_machine_zn(2))


class DeterminismPreservationTests(SimpleTestCase):

    def test_parity_pipeline(self):
        P = parity_automaton()
        N = wp_machine_finite(cyclic_group(2))
        self.assertTrue(product_preserves_determinism(P, N))
        self.assertTrue(is_deterministic(product(P, N).machine))

    def test_duplicated_letter_edges(self):
        P = parity_automaton()
        mutated = replace(P, edges=P.edges + (GEdge('s', 'a', P.group.elements()[0], 's'),))
        self.assertFalse(product_preserves_determinism(mutated, wp_machine_finite(cyclic_group(2))))

    def test_epsilon_edge_in_n(self):
        self.assertFalse(product_preserves_determinism(a_eq_free(), wp_machine_free(free_group(1))))

    def test_predicate_implies_deterministic_product(self):
        s3 = symmetric_group(3)
        z3 = cyclic_group(3)
        for P, N in [(parity_automaton(), wp_machine_finite(cyclic_group(2))),
                     (wp_automaton(s3), wp_machine_finite(s3)),
                     (wp_automaton(z3), wp_machine_finite(z3))]:
            if product_preserves_determinism(P, N):
                self.assertTrue(is_deterministic(product(P, N).machine), str(P))
