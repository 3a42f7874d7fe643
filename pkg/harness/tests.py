import json
import math
import tempfile
from fractions import Fraction
from io import StringIO
from pathlib import Path

from django.conf import settings
from django.core.exceptions import ValidationError
from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase, TestCase

from gautomata.automaton import (
    GEdge, counter_automaton, g_automaton, intersect_regular, normalize, wp_automaton,
)
from groups.algebra import (
    FREE, GroupElement, cyclic_group, finite_group, free_abelian_group, free_group, parse_word, symmetric_group,
)
from machines.deciders import accepts
from machines.machine import Edge, Machine, MachineClass, StackAction, StackInstruction, is_deterministic
from transfer.builders import wp_machine_finite, wp_machine_free, wp_machine_zn
from transfer.product import product

from .compare import (
    ComparisonError, GroupOracle, Outcome, WordSetAcceptor, compare_languages, language_slice,
)
from .conjecture import (
    conjecture_check, conjecture_filter, conjecture_language, conjecture_language_xyz, conjecture_renaming,
    fsa_language, ln_words, rename_xyz,
)
from .documents import (
    document_diagnostics, dumps_document, load_document, loads_document, parse_document, serialize_document,
)
from .forms import GroupHeaderForm, MachineHeaderForm
from .models import ComparisonRun, Fixture, fixture_slice_diagnostics
from .words import enumerate_words, word_count

CORPUS = Path(settings.GA_CORPUS_DIR)


def a_eq():
    return counter_automaton(1, ['s'], [('s', 'a', [1], 's'), ('s', 'b', [-1], 's')], 's', ['s'], name='A_eq')


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


def ga(*args):
    out = StringIO()
    call_command('ga', *[str(arg) for arg in args], stdout=out)
    return out.getvalue()


class WordEnumerationTests(SimpleTestCase):

    def test_counts(self):
        self.assertEqual(len(list(enumerate_words(['a'], 2))), 3)
        self.assertEqual(len(list(enumerate_words(['a', 'b'], 2))), 7)
        self.assertEqual(len(list(enumerate_words(['a', 'b', 'a^-1', 'b^-1'], 3))), 85)
        self.assertEqual(word_count(4, 3), 85)

    def test_length_then_lexicographic(self):
        self.assertEqual(list(enumerate_words(['a', 'b'], 2)),
                         [(), ('a',), ('b',), ('a', 'a'), ('a', 'b'), ('b', 'a'), ('b', 'b')])

    def test_stream_is_lazy(self):
        stream = enumerate_words(['a', 'b'], 60)
        self.assertEqual(next(stream), ())
        self.assertEqual(next(stream), ('a',))

    def test_empty_alphabet(self):
        with self.assertRaises(ValueError):
            list(enumerate_words([], 2))


class CompareLanguagesTests(SimpleTestCase):

    def test_identical_acceptors_agree(self):
        report = compare_languages(a_anbn(), a_anbn(), 6)
        self.assertEqual(report.disagreements, ())
        self.assertEqual(report.total, 127)
        self.assertTrue(report.complete)

    def test_word_problem_automata_against_group_oracles(self):
        for spec in [cyclic_group(2), symmetric_group(3), free_group(1), free_group(2),
                     free_abelian_group(1), free_abelian_group(2)]:
            with self.subTest(group=str(spec)):
                report = compare_languages(wp_automaton(spec), spec, 8)
                self.assertEqual(report.total, word_count(len(spec.tokens), 8))
                self.assertEqual(report.disagreements, ())
                self.assertEqual(report.exhausted, ())

    def test_automaton_against_its_product_machine(self):
        compiled = product(a_anbn(), wp_machine_zn(1))
        report = compare_languages(a_anbn(), compiled, 6)
        self.assertEqual(report.alphabet, ('a', 'b'))
        self.assertTrue(report.complete)

    def test_disagreements_are_listed(self):
        report = compare_languages(a_anbn(), WordSetAcceptor([('a', 'b')]), 4)
        self.assertFalse(report.passed)
        self.assertEqual([entry.word for entry in report.disagreements], [('a', 'a', 'b', 'b')])
        entry = report.disagreements[0]
        self.assertEqual((entry.left, entry.right), (Outcome.ACCEPT, Outcome.REJECT))

    def test_exhausted_words_are_not_agreements(self):
        report = compare_languages(a_eq(), WordSetAcceptor([()]), 2, max_configurations=1)
        self.assertEqual(report.agreements, 1)
        self.assertEqual(len(report.exhausted), 6)
        self.assertEqual(report.total, report.agreements + len(report.disagreements) + len(report.exhausted))
        self.assertTrue(report.passed)
        self.assertFalse(report.complete)

    def test_alphabet_mismatch(self):
        with self.assertRaises(ComparisonError):
            compare_languages(wp_automaton(free_abelian_group(1)), GroupOracle(cyclic_group(2)), 2)

    def test_report_is_deterministic(self):
        first = compare_languages(a_anbn(), WordSetAcceptor([('a', 'b')]), 6)
        second = compare_languages(a_anbn(), WordSetAcceptor([('a', 'b')]), 6)
        self.assertEqual(json.dumps(first.to_dict()), json.dumps(second.to_dict()))
        self.assertEqual(first.render_text(), second.render_text())

    def test_language_slice(self):
        result = language_slice(a_anbncn(), 6)
        self.assertEqual(result.rendered(), ['', 'a b c', 'a a b b c c'])
        self.assertEqual(result.alphabet, ('a', 'b', 'c'))


class ConjectureTests(SimpleTestCase):

    def test_ln_words(self):
        self.assertEqual(ln_words(0), [()])
        self.assertEqual(ln_words(1), [('y', 'z'), ('z', 'y')])
        for n in range(7):
            with self.subTest(n=n):
                words = ln_words(n)
                self.assertEqual(len(words), math.comb(2 * n, n))
                self.assertTrue(all(w.count('y') == n and w.count('z') == n for w in words))

    def test_conjecture_language(self):
        self.assertEqual(conjecture_language(0), [()])
        self.assertEqual(conjecture_language(1), [(), ('a', 'b', 'a^-1', 'b^-1'), ('a', 'b', 'b^-1', 'a^-1')])
        self.assertEqual(len(conjecture_language(2)), 9)

    def test_readings_correspond(self):
        self.assertEqual(conjecture_renaming(), {'x': ('a', 'b'), 'y': ('a^-1',), 'z': ('b^-1',)})
        self.assertEqual([rename_xyz(word) for word in conjecture_language_xyz(3)], conjecture_language(3))

    def test_filter(self):
        shell = conjecture_filter()
        self.assertTrue(is_deterministic(shell))
        self.assertLessEqual(len(shell.states), 4)
        self.assertTrue(accepts(shell, 'a b a b'.split()).accepted)
        self.assertFalse(accepts(shell, 'b a'.split()).accepted)
        self.assertTrue(accepts(shell, 'a b a^-1 b^-1'.split()).accepted)

    def test_shell_enumeration_matches_filtering(self):
        shell = conjecture_filter()
        filtered = [w for w in enumerate_words(('a', 'a^-1', 'b', 'b^-1'), 5) if accepts(shell, w).accepted]
        self.assertEqual(list(fsa_language(shell, 5)), filtered)

    def test_unbalanced_word_rejected_by_both_sides(self):
        word = ('a', 'b', 'a^-1', 'a^-1')
        automaton = intersect_regular(wp_automaton(free_abelian_group(2)), conjecture_filter())
        report = compare_languages(automaton, WordSetAcceptor(conjecture_language(2)), 4, words=[word])
        self.assertEqual(report.agreements, 1)
        self.assertNotIn(word, conjecture_language(2))

    def test_exhaustive_check(self):
        report = conjecture_check(6, exhaustive=True)
        self.assertEqual(report.total, word_count(4, 6))
        self.assertTrue(report.complete)

    def test_check_up_to_twelve(self):
        report = conjecture_check(12)
        self.assertEqual(report.disagreements, ())
        self.assertEqual(report.exhausted, ())
        self.assertEqual(report.domain, 'regular shell')


class DocumentRoundTripTests(SimpleTestCase):

    def assertRoundTrip(self, obj):
        again = parse_document(json.loads(dumps_document(obj)))
        self.assertEqual(again, obj)
        self.assertEqual(dumps_document(again), dumps_document(obj))

    def test_groups(self):
        for spec in [cyclic_group(2), symmetric_group(3), free_abelian_group(2), free_group(2),
                     finite_group([[0, 1, 2], [1, 2, 0], [2, 0, 1]], [('g', 1)]),
                     free_abelian_group(2, generators=[('u', [2, 0]), ('b', [0, 1])]),
                     free_group(2, generators=[('x', 'a b'), ('y', 'b')])]:
            with self.subTest(group=str(spec)):
                self.assertRoundTrip(spec)

    def test_gautomata(self):
        f2 = free_group(2)
        eps = g_automaton(f2, ['p', 'q'], 'p', ['q'], [GEdge('p', None, GroupElement(FREE, parse_word('a b^-1')), 'q')])
        shell_product = intersect_regular(wp_automaton(free_abelian_group(2)), conjecture_filter())
        for A in [a_eq(), normalize(a_anbncn()), wp_automaton(symmetric_group(3)), eps, shell_product]:
            with self.subTest(automaton=str(A)):
                self.assertRoundTrip(A)

    def test_machines(self):
        stack = Machine(
            machine_class=MachineClass.STACK,
            input_alphabet=('a',),
            states=('p',),
            start='p',
            accepts=('p',),
            edges=(Edge('p', 'a', StackInstruction('#', StackAction.PUSH, 'x'), 'p'),),
            tape_alphabet=('#', 'x'),
        )
        for m in [conjecture_filter(), wp_machine_finite(cyclic_group(2)), wp_machine_free(free_group(2)),
                  wp_machine_zn(2), product(a_anbn(), wp_machine_zn(1)), stack]:
            with self.subTest(machine=str(m)):
                self.assertRoundTrip(m)

    def test_fixture(self):
        fixture = load_document(CORPUS / 'parity.fixture')
        self.assertRoundTrip(fixture)
        self.assertEqual(fixture.kind, 'pair')

    def test_multiplier_is_a_string_fraction(self):
        data = serialize_document(wp_machine_zn(2))
        self.assertEqual(data['space_multiplier'], '7')
        self.assertEqual(parse_document(data).machine.space_multiplier, Fraction(7))


class CorpusDocumentTests(SimpleTestCase):

    def test_groups_match_constructors(self):
        self.assertEqual(load_document(CORPUS / 'cyclic2.group'), cyclic_group(2))
        self.assertEqual(load_document(CORPUS / 's3.group'), symmetric_group(3))
        self.assertEqual(load_document(CORPUS / 'zn2.group'), free_abelian_group(2))
        self.assertEqual(load_document(CORPUS / 'f2.group'), free_group(2))

    def test_word_problem_automata_match_constructor(self):
        cases = {'wp_cyclic2.gaut': cyclic_group(2), 'wp_s3.gaut': symmetric_group(3),
                 'wp_zn1.gaut': free_abelian_group(1), 'wp_zn2.gaut': free_abelian_group(2),
                 'wp_f1.gaut': free_group(1), 'wp_f2.gaut': free_group(2)}
        for name, spec in cases.items():
            with self.subTest(document=name):
                self.assertEqual(load_document(CORPUS / name), wp_automaton(spec))

    def test_machines_match_builders(self):
        self.assertEqual(load_document(CORPUS / 'cyclic2.wp'), wp_machine_finite(cyclic_group(2)))
        self.assertEqual(load_document(CORPUS / 'f1.wp'), wp_machine_free(free_group(1)))
        self.assertEqual(load_document(CORPUS / 'conjecture_filter.mach'), conjecture_filter())

    def test_fixture_automata_match_constructors(self):
        self.assertEqual(load_document(CORPUS / 'aeq.gaut'), a_eq())
        self.assertEqual(load_document(CORPUS / 'anbn.gaut'), a_anbn())
        self.assertEqual(load_document(CORPUS / 'anbncn.gaut'), a_anbncn())


class OptionalFieldTests(SimpleTestCase):
    counter = {
        'kind': 'gautomaton',
        'group': {'kind': 'group', 'family': 'free-abelian', 'rank': 1},
        'states': ['s'],
        'start': 's',
        'accepts': ['s'],
        'edges': [{'src': 's', 'letter': 'a', 'weight': [1], 'dst': 's'}],
    }

    def test_free_group_without_letters(self):
        self.assertEqual(parse_document({'kind': 'group', 'family': 'free', 'rank': 2}), free_group(2))

    def test_finite_group_without_element_names(self):
        data = {'kind': 'group', 'family': 'finite', 'cayley': [[0, 1], [1, 0]], 'generators': [['t', 1]]}
        self.assertEqual(parse_document(data), finite_group([[0, 1], [1, 0]], [('t', 1)]))

    def test_gautomaton_without_alphabet(self):
        expected = counter_automaton(1, ['s'], [('s', 'a', [1], 's')], 's', ['s'])
        parsed = parse_document(self.counter)
        self.assertEqual(parsed, expected)
        self.assertEqual(parsed.alphabet, ('a', 'a^-1'))

    def test_fixture_slice_without_alphabet(self):
        fixture = parse_document({
            'kind': 'fixture',
            'name': 'tiny',
            'documents': {'automaton': self.counter},
            'slices': [{'document': 'automaton', 'max_len': 2, 'words': ['']}],
        })
        self.assertIsNone(fixture.slices[0].alphabet)
        self.assertEqual(fixture_slice_diagnostics(fixture), [])

    def test_every_corpus_file_loads(self):
        for path in sorted(CORPUS.iterdir()):
            with self.subTest(document=path.name):
                self.assertEqual(document_diagnostics(load_document(path)), [])


class MalformedDocumentTests(SimpleTestCase):
    z1 = {'kind': 'group', 'family': 'free-abelian', 'rank': 1, 'generators': [['a', [1]]]}

    def message(self, data, source='bad.gaut'):
        with self.assertRaises(ValidationError) as cm:
            parse_document(data, source=source)
        return cm.exception.messages[0]

    def test_weight_of_wrong_rank(self):
        data = {'kind': 'gautomaton', 'group': self.z1, 'states': ['s'], 'start': 's', 'accepts': ['s'],
                'edges': [{'src': 's', 'letter': 'a', 'weight': [1], 'dst': 's'},
                          {'src': 's', 'letter': 'b', 'weight': [1, 2], 'dst': 's'}]}
        self.assertTrue(self.message(data).startswith('bad.gaut: $.edges[1].weight:'))

    def test_missing_field(self):
        data = {'kind': 'gautomaton', 'group': self.z1, 'states': ['s'], 'accepts': [], 'edges': []}
        self.assertEqual(self.message(data), "bad.gaut: $: missing required field 'start'")

    def test_nested_group_location(self):
        data = {'kind': 'gautomaton', 'group': {'kind': 'group', 'family': 'free'}, 'states': ['s'],
                'start': 's', 'accepts': [], 'edges': []}
        self.assertTrue(self.message(data).startswith('bad.gaut: $.group'))

    def test_unknown_kind(self):
        self.assertTrue(self.message({'kind': 'grammar'}).startswith('bad.gaut: $.kind:'))

    def test_lba_needs_multiplier(self):
        data = {'kind': 'machine', 'class': 'lba', 'input_alphabet': [], 'states': ['p'], 'start': 'p',
                'accepts': [], 'edges': []}
        self.assertTrue(self.message(data, 'bad.mach').startswith('bad.mach: $.space_multiplier:'))

    def test_invalid_json(self):
        with self.assertRaises(ValidationError) as cm:
            loads_document('{"kind": ', source='broken.json')
        self.assertTrue(cm.exception.messages[0].startswith('broken.json: line 1'))

    def test_file_reference_needs_a_base_directory(self):
        data = {'kind': 'gautomaton', 'group': 'zn1.group', 'states': ['s'], 'start': 's', 'accepts': [],
                'edges': []}
        self.assertIn('cannot resolve', self.message(data))


class HeaderFormTests(SimpleTestCase):

    def test_group_header(self):
        self.assertTrue(GroupHeaderForm({'family': 'free', 'rank': 2}).is_valid())
        self.assertFalse(GroupHeaderForm({'family': 'free'}).is_valid())
        self.assertFalse(GroupHeaderForm({'family': 'finite', 'rank': 2}).is_valid())
        self.assertFalse(GroupHeaderForm({'family': 'cyclic', 'order': 2}).is_valid())

    def test_machine_header(self):
        form = MachineHeaderForm({'machine_class': 'lba', 'space_multiplier': '7/2'})
        self.assertTrue(form.is_valid())
        self.assertEqual(form.cleaned_data['space_multiplier'], Fraction(7, 2))
        self.assertFalse(MachineHeaderForm({'machine_class': 'lba', 'space_multiplier': '-1'}).is_valid())
        self.assertFalse(MachineHeaderForm({'machine_class': 'lba'}).is_valid())
        self.assertTrue(MachineHeaderForm({'machine_class': 'turing'}).is_valid())


class FixtureModelTests(TestCase):

    def test_load_corpus(self):
        out = StringIO()
        call_command('load_corpus', stdout=out)
        self.assertEqual(Fixture.objects.count(), 7)
        self.assertEqual(Fixture.objects.get(name='parity').kind, 'pair')
        self.assertEqual(Fixture.objects.get(name='word-problems').kind, 'gautomaton')

    def test_reloading_updates_in_place(self):
        call_command('load_corpus', stdout=StringIO())
        call_command('load_corpus', stdout=StringIO())
        self.assertEqual(Fixture.objects.filter(name='anbn').count(), 1)

    def test_every_slice_is_reproducible(self):
        call_command('load_corpus', '--check', stdout=StringIO())
        for fixture in Fixture.objects.all():
            with self.subTest(fixture=fixture.name):
                self.assertEqual(fixture.check_slices(), [])

    def test_stored_fixture_parses_back(self):
        call_command('load_corpus', stdout=StringIO())
        fixture = Fixture.objects.get(name='anbn').as_document()
        self.assertIsNone(fixture.slices[0].alphabet)
        self.assertEqual(fixture, load_document(CORPUS / 'anbn.fixture'))

    def test_wrong_slice_is_reported(self):
        call_command('load_corpus', stdout=StringIO())
        fixture = Fixture.objects.get(name='anbn')
        fixture.slices[0]['words'].append('a b b')
        fixture.save()
        diagnostics = fixture.check_slices()
        self.assertEqual(len(diagnostics), 1)
        self.assertIn('[a b b]', diagnostics[0])

    def test_comparison_run_record(self):
        report = compare_languages(a_anbn(), WordSetAcceptor([('a', 'b')]), 4)
        run = ComparisonRun.record(report)
        self.assertFalse(run.passed)
        self.assertEqual(run.disagreement_count, 1)
        self.assertEqual(run.disagreements[0]['word'], 'a a b b')
        self.assertEqual(run.total, 31)


class GaCommandTests(TestCase):

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)
        self.dir = Path(self.tmp.name)

    def assertExitCode(self, code, *args):
        with self.assertRaises(CommandError) as cm:
            ga(*args)
        self.assertEqual(cm.exception.returncode, code)
        return cm.exception

    def test_run_accepts(self):
        output = ga('run', CORPUS / 'aeq.gaut', '--word', 'a b b a')
        self.assertIn('verdict:  accept', output)
        self.assertIn('exact:    yes', output)

    def test_run_reject_exits_one(self):
        self.assertExitCode(1, 'run', CORPUS / 'aeq.gaut', '--word', 'a a b')

    def test_run_budget_exhaustion_exits_three(self):
        self.assertExitCode(3, 'run', CORPUS / 'aeq.gaut', '--word', 'a b', '--budget-configs', '1')

    def test_run_machine_with_grammar(self):
        output = ga('run', CORPUS / 'f1.wp', '--word', 'a a^-1', '--grammar')
        self.assertIn(' -> ', output)
        self.assertIn('verdict:  accept', output)

    def test_run_group_oracle(self):
        data = json.loads(ga('run', CORPUS / 's3.group', '--word', 's s', '--report', 'json'))
        self.assertEqual(data['verdict'], 'accept')
        self.assertEqual(data['element'], '012')

    def test_validate_corpus(self):
        files = sorted(CORPUS.iterdir())
        output = ga('validate', *files)
        self.assertEqual(output.count(': ok ('), len(files))

    def test_validate_minimal_automaton(self):
        minimal = self.dir / 'minimal.gaut'
        minimal.write_text(json.dumps(OptionalFieldTests.counter), encoding='utf-8')
        output = ga('validate', minimal)
        self.assertIn(': ok (gautomaton', output)
        self.assertNotIn('weighted epsilon cycles', output)

    def test_validate_flags_weighted_epsilon_cycles(self):
        drifting = dict(OptionalFieldTests.counter, edges=[{'src': 's', 'letter': None, 'weight': [1], 'dst': 's'}])
        path = self.dir / 'drift.gaut'
        path.write_text(json.dumps(drifting), encoding='utf-8')
        self.assertIn('weighted epsilon cycles in {s}, verdicts are bounded', ga('validate', path))

    def test_validate_fixtures(self):
        output = ga('validate', '--slices', *sorted(CORPUS.glob('*.fixture')))
        self.assertEqual(output.count(': ok (fixture'), 7)

    def test_validate_reports_location(self):
        bad = self.dir / 'bad.gaut'
        bad.write_text(json.dumps({
            'kind': 'gautomaton', 'group': 'zn.group', 'states': ['s'], 'start': 's', 'accepts': ['s'],
            'edges': [{'src': 's', 'letter': 'a', 'weight': 'x', 'dst': 's'}],
        }), encoding='utf-8')
        (self.dir / 'zn.group').write_text(json.dumps(MalformedDocumentTests.z1), encoding='utf-8')
        out = StringIO()
        with self.assertRaises(CommandError) as cm:
            call_command('ga', 'validate', str(bad), stdout=out)
        self.assertEqual(cm.exception.returncode, 2)
        self.assertIn('$.edges[0].weight', out.getvalue())

    def test_product_pipeline(self):
        z1 = self.dir / 'z1.wp'
        compiled = self.dir / 'out.mach'
        ga('wp', '--group', 'zn:1', '-o', z1)
        ga('product', CORPUS / 'anbn.gaut', z1, '-o', compiled)
        self.assertIn(': ok (machine', ga('validate', compiled))
        output = ga('compare', CORPUS / 'anbn.gaut', compiled, '--max-len', 6)
        self.assertTrue(output.rstrip().endswith('PASS'))

    def test_finite_pipeline(self):
        compiled = self.dir / 'parity.mach'
        ga('product', CORPUS / 'parity.gaut', CORPUS / 'cyclic2.wp', '-o', compiled)
        m = load_document(compiled).machine
        self.assertEqual(m.machine_class, MachineClass.FSA)
        self.assertTrue(is_deterministic(m))
        self.assertIn('PASS', ga('compare', CORPUS / 'parity.gaut', compiled, '--max-len', 8))

    def test_compare_record(self):
        ga('compare', CORPUS / 'wp_zn1.gaut', CORPUS / 'zn1.group', '--max-len', 6, '--record')
        run = ComparisonRun.objects.get()
        self.assertTrue(run.passed)
        self.assertEqual(run.total, 127)

    def test_compare_disagreement_exits_two(self):
        self.assertExitCode(2, 'compare', CORPUS / 'anbn.gaut', CORPUS / 'aeq.gaut', '--max-len', 4)

    def test_outputs_are_byte_identical(self):
        for args in [('wp', '--group', 'zn:2'),
                     ('enumerate', '--accepted-by', CORPUS / 'anbncn.gaut', '--max-len', 6, '--report', 'json'),
                     ('conjecture', '--max-len', 6, '--report', 'json')]:
            with self.subTest(args=args):
                self.assertEqual(ga(*args), ga(*args))

    def test_wp_class_below_the_group_is_refused(self):
        self.assertExitCode(2, 'wp', '--group', 'zn:1', '--class', 'fsa')

    def test_wp_automaton(self):
        data = json.loads(ga('wp', '--group', f"finite:{CORPUS / 's3.group'}", '--automaton'))
        self.assertEqual(data['kind'], 'gautomaton')
        self.assertEqual(len(data['edges']), 4)

    def test_enumerate(self):
        self.assertEqual(ga('enumerate', '--alphabet', 'a b', '--max-len', 2).split('\n')[:7],
                         ['eps', 'a', 'b', 'a a', 'a b', 'b a', 'b b'])
        data = json.loads(ga('enumerate', '--accepted-by', CORPUS / 'anbn.gaut', '--max-len', 6, '--report', 'json'))
        self.assertEqual(data['words'], ['a b', 'a a b b', 'a a a b b b'])

    def test_conjecture(self):
        self.assertTrue(ga('conjecture', '--max-len', 8).rstrip().endswith('PASS'))
        lines = ga('conjecture', '--list', 1).rstrip().split('\n')
        self.assertEqual(lines, ['eps  =>  eps', 'x y z  =>  a b a^-1 b^-1', 'x z y  =>  a b b^-1 a^-1'])
