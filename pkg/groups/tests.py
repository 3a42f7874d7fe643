import random

from django.test import SimpleTestCase

from .algebra import (
    FINITE, FREE, FREE_ABELIAN, GeneratorSymbol, GroupElement, GroupError, GroupSpec,
    cyclic_group, element_norm, evaluate_word, express_in_generators, finite_group,
    free_abelian_group, free_group, identity, invert, is_identity, multiply, parse_word,
    symmetric_group, validate_group,
)


def random_element(spec, rng, length=6):
    word = [rng.choice(spec.symbols) for _ in range(rng.randint(0, length))]
    return evaluate_word(spec, word)


class GeneratorSymbolTests(SimpleTestCase):

    def test_tokens_and_inverses(self):
        a = GeneratorSymbol.parse('a')
        a_inv = GeneratorSymbol.parse('a^-1')
        self.assertEqual(a_inv, GeneratorSymbol('a', -1))
        self.assertEqual(a.inverse(), a_inv)
        self.assertEqual(a_inv.inverse(), a)
        self.assertEqual(a_inv.token, 'a^-1')

    def test_rejects_bad_names(self):
        for name in ['', 'a b', 'a^2']:
            with self.assertRaises(GroupError):
                GeneratorSymbol(name)
        with self.assertRaises(GroupError):
            GeneratorSymbol('a', 2)


class IdentityAndArithmeticTests(SimpleTestCase):

    def setUp(self):
        self.z2 = free_abelian_group(2)
        self.f2 = free_group(2)
        self.c2 = cyclic_group(2)

    def test_identities(self):
        self.assertEqual(identity(self.z2), GroupElement(FREE_ABELIAN, (0, 0)))
        self.assertEqual(identity(self.f2), GroupElement(FREE, ()))
        self.assertEqual(identity(self.c2), GroupElement(FINITE, 0))

    def test_multiply_examples(self):
        a, b = self.z2.image('a'), self.z2.image('b')
        self.assertEqual(multiply(self.z2, a, b).payload, (1, 1))
        ab = evaluate_word(self.f2, parse_word('a b'))
        self.assertEqual(multiply(self.f2, ab, self.f2.image('b^-1')), self.f2.image('a'))
        t = self.c2.image('t')
        self.assertTrue(is_identity(self.c2, multiply(self.c2, t, t)))

    def test_invert_examples(self):
        v = GroupElement(FREE_ABELIAN, (3, -1))
        self.assertEqual(invert(self.z2, v).payload, (-3, 1))
        ab = evaluate_word(self.f2, parse_word('a b'))
        self.assertEqual(invert(self.f2, ab).payload, parse_word('b^-1 a^-1'))
        s3 = symmetric_group(3)
        for element in s3.elements():
            inverse = invert(s3, element)
            self.assertEqual(s3.cayley[element.payload][inverse.payload], 0)

    def test_is_identity_examples(self):
        self.assertTrue(is_identity(self.z2, GroupElement(FREE_ABELIAN, (0, 0))))
        commutator = evaluate_word(self.f2, parse_word('a b a^-1 b^-1'))
        self.assertFalse(is_identity(self.f2, commutator))
        self.assertTrue(is_identity(self.c2, GroupElement(FINITE, 0)))

    def test_evaluate_word_examples(self):
        word = parse_word('a b a^-1 b^-1')
        self.assertEqual(evaluate_word(self.z2, word).payload, (0, 0))
        self.assertEqual(evaluate_word(self.f2, word).payload, word)
        self.assertEqual(evaluate_word(self.c2, ['t', 't', 't']), self.c2.image('t'))

    def test_evaluate_word_rejects_unknown_generator(self):
        with self.assertRaises(GroupError):
            evaluate_word(self.z2, ['c'])

    def test_element_norm_examples(self):
        self.assertEqual(element_norm(self.z2, GroupElement(FREE_ABELIAN, (2, -5))), 5)
        self.assertEqual(element_norm(self.f2, evaluate_word(self.f2, parse_word('a b a'))), 3)
        self.assertEqual(element_norm(self.c2, identity(self.c2)), 0)
        self.assertEqual(element_norm(self.z2, identity(self.z2)), 0)

    def test_family_and_rank_mismatch(self):
        z3 = free_abelian_group(3)
        with self.assertRaises(GroupError):
            multiply(self.z2, identity(z3), identity(self.z2))
        with self.assertRaises(GroupError):
            multiply(self.z2, identity(self.f2), identity(self.z2))


class GroupAxiomPropertyTests(SimpleTestCase):
    """Random triples checked against the group axioms for every family."""

    def test_axioms(self):
        rng = random.Random(20240517)
        specs = [cyclic_group(5), symmetric_group(3), free_abelian_group(3), free_group(2), free_group(3)]
        for spec in specs:
            e = identity(spec)
            for _ in range(200):
                a, b, c = (random_element(spec, rng) for _ in range(3))
                with self.subTest(group=str(spec), a=str(a), b=str(b), c=str(c)):
                    self.assertEqual(multiply(spec, multiply(spec, a, b), c),
                                     multiply(spec, a, multiply(spec, b, c)))
                    self.assertEqual(multiply(spec, e, a), a)
                    self.assertEqual(multiply(spec, a, invert(spec, a)), e)

    def test_free_reduction_is_canonical(self):
        rng = random.Random(7)
        f2 = free_group(2)
        for _ in range(300):
            word = [rng.choice(f2.symbols) for _ in range(rng.randint(0, 8))]
            symbol = rng.choice(f2.symbols)
            position = rng.randint(0, len(word))
            padded = word[:position] + [symbol, symbol.inverse()] + word[position:]
            self.assertEqual(evaluate_word(f2, word), evaluate_word(f2, padded))
            payload = evaluate_word(f2, word).payload
            self.assertFalse(any(x == y.inverse() for x, y in zip(payload, payload[1:])))

    def test_free_abelian_evaluation_is_coordinate_sum(self):
        rng = random.Random(11)
        z4 = free_abelian_group(4)
        for _ in range(200):
            word = [rng.choice(z4.symbols) for _ in range(rng.randint(0, 12))]
            expected = [0, 0, 0, 0]
            for symbol in word:
                expected['abcd'.index(symbol.name)] += symbol.exponent
            self.assertEqual(evaluate_word(z4, word).payload, tuple(expected))


class ValidationTests(SimpleTestCase):

    def test_shipped_constructors_are_valid(self):
        for spec in [cyclic_group(2), cyclic_group(1), symmetric_group(3), free_abelian_group(2), free_group(2)]:
            self.assertEqual(validate_group(spec), [])

    def test_generators_closed_under_inversion(self):
        spec = free_abelian_group(2)
        self.assertEqual(spec.tokens, ('a', 'a^-1', 'b', 'b^-1'))
        self.assertEqual(cyclic_group(2).tokens, ('t', 't^-1'))

    def test_rejects_non_latin_square(self):
        with self.assertRaises(GroupError):
            finite_group([[0, 1], [1, 1]], {'t': 1})

    def test_rejects_identity_not_at_zero(self):
        with self.assertRaises(GroupError):
            finite_group([[1, 0], [0, 1]], {'t': 1})

    def test_rejects_generator_out_of_range(self):
        with self.assertRaises(GroupError):
            finite_group([[0, 1], [1, 0]], {'t': 2})

    def test_rejects_unclosed_generator_list(self):
        spec = GroupSpec(family=FREE_ABELIAN, rank=1,
                         generators=((GeneratorSymbol('a'), GroupElement(FREE_ABELIAN, (1,))),))
        self.assertTrue(any('closed under inversion' in d for d in validate_group(spec)))

    def test_rejects_unreduced_free_image(self):
        with self.assertRaises(GroupError):
            free_group(2, generators=[('u', 'a a^-1 b')])


class ExpressInGeneratorsTests(SimpleTestCase):

    def test_unit_steps_in_z2(self):
        z2 = free_abelian_group(2)
        word = express_in_generators(z2, GroupElement(FREE_ABELIAN, (2, -1)))
        self.assertEqual([s.token for s in word], ['a', 'a', 'b^-1'])

    def test_shortest_path_in_finite_group(self):
        s3 = symmetric_group(3)
        for element in s3.elements():
            word = express_in_generators(s3, element)
            self.assertEqual(evaluate_word(s3, word), element)
            self.assertLessEqual(len(word), 2)

    def test_inexpressible_weight_is_reported(self):
        z2 = free_abelian_group(2, generators=[('u', [2, 0]), ('b', [0, 1])])
        with self.assertRaises(GroupError):
            express_in_generators(z2, GroupElement(FREE_ABELIAN, (1, 0)))
