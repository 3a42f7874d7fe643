import itertools
from dataclasses import replace
from fractions import Fraction

from django.test import SimpleTestCase, override_settings

from .deciders import accepts, fsa_accepts, lba_accepts, pda_accepts, pda_search_accepts, replay_run
from .grammar import pda_to_grammar, recognize
from .machine import (
    BLANK, BOTTOM, LEFT_END, RIGHT_END, Edge, Machine, MachineClass, MachineError, Move, NoOp,
    StackAction, StackInstruction, TapeInstruction, Verdict, is_deterministic, validate_machine,
)


def words_upto(alphabet, max_len):
    for length in range(max_len + 1):
        for word in itertools.product(alphabet, repeat=length):
            yield word


def parity_fsa():
    return Machine(
        machine_class=MachineClass.FSA,
        input_alphabet=('a',),
        states=('even', 'odd'),
        start='even',
        accepts=('even',),
        edges=(Edge('even', 'a', NoOp(), 'odd'), Edge('odd', 'a', NoOp(), 'even')),
        name='parity',
    )


def epsilon_fsa():
    """a* b via an epsilon hop between the two phases."""
    return Machine(
        machine_class=MachineClass.FSA,
        input_alphabet=('a', 'b'),
        states=('p', 'q', 'f'),
        start='p',
        accepts=('f',),
        edges=(
            Edge('p', 'a', NoOp(), 'p'),
            Edge('p', None, NoOp(), 'q'),
            Edge('q', 'b', NoOp(), 'f'),
            Edge('q', None, NoOp(), 'p'),
        ),
    )


def anbn_pda():
    return Machine(
        machine_class=MachineClass.PDA,
        input_alphabet=('a', 'b'),
        states=('p', 'q', 'f'),
        start='p',
        accepts=('f',),
        tape_alphabet=(BOTTOM, 'A'),
        edges=(
            Edge('p', 'a', StackInstruction(None, StackAction.PUSH, 'A'), 'p'),
            Edge('p', None, StackInstruction(None, StackAction.STAY), 'q'),
            Edge('q', 'b', StackInstruction('A', StackAction.POP), 'q'),
            Edge('q', None, StackInstruction(BOTTOM, StackAction.STAY), 'f'),
        ),
        name='a^n b^n',
    )


def pumping_pda():
    """Pushes any number of X on epsilon, then a pops one, then b* with X's left over."""
    return Machine(
        machine_class=MachineClass.PDA,
        input_alphabet=('a', 'b'),
        states=('s', 't'),
        start='s',
        accepts=('t',),
        tape_alphabet=(BOTTOM, 'X'),
        edges=(
            Edge('s', None, StackInstruction(None, StackAction.PUSH, 'X'), 's'),
            Edge('s', 'a', StackInstruction('X', StackAction.POP), 't'),
            Edge('t', 'b', StackInstruction(None, StackAction.STAY), 't'),
            Edge('t', None, StackInstruction('X', StackAction.POP), 't'),
        ),
    )


def anbn_lba():
    """Writes a 1 per a, then erases one per b walking left; accepts on reaching the left marker."""
    return Machine(
        machine_class=MachineClass.LBA,
        input_alphabet=('a', 'b'),
        states=('A', 'B', 'C', 'F'),
        start='A',
        accepts=('F',),
        tape_alphabet=(LEFT_END, RIGHT_END, BLANK, '1'),
        space_multiplier=Fraction(1),
        edges=(
            Edge('A', 'a', TapeInstruction(BLANK, '1', Move.RIGHT), 'A'),
            Edge('A', None, TapeInstruction(BLANK, None, Move.LEFT), 'B'),
            Edge('B', 'b', TapeInstruction('1', BLANK, Move.STAY), 'C'),
            Edge('C', None, TapeInstruction(BLANK, None, Move.LEFT), 'B'),
            Edge('B', None, TapeInstruction(LEFT_END, None, Move.STAY), 'F'),
        ),
    )


def naive_fsa_accepts(m, word):
    """Depth-first path enumeration with |states|*(|word|+1) epsilon moves at most."""
    limit = len(m.states) * (len(word) + 1)
    stack = [(m.start, 0, 0)]
    seen = set()
    while stack:
        state, pos, eps = stack.pop()
        if (state, pos, eps) in seen:
            continue
        seen.add((state, pos, eps))
        if pos == len(word) and state in m.accept_set:
            return True
        for _, edge in m.edges_from(state):
            if edge.token is None and eps < limit:
                stack.append((edge.dst, pos, eps + 1))
            elif edge.token is not None and pos < len(word) and edge.token == word[pos]:
                stack.append((edge.dst, pos + 1, eps))
    return False


class ValidateMachineTests(SimpleTestCase):

    def test_well_formed_machines(self):
        for machine in [parity_fsa(), epsilon_fsa(), anbn_pda(), pumping_pda(), anbn_lba()]:
            self.assertEqual(validate_machine(machine), [], str(machine))

    def test_pda_popping_bottom_marker(self):
        machine = anbn_pda()
        bad = replace(machine, edges=machine.edges + (
            Edge('q', None, StackInstruction(BOTTOM, StackAction.POP), 'q'),))
        diagnostics = validate_machine(bad)
        self.assertEqual(len(diagnostics), 1)
        self.assertIn('edge 4', diagnostics[0])

    def test_lba_left_move_without_guard(self):
        machine = anbn_lba()
        bad = replace(machine, edges=machine.edges + (
            Edge('A', None, TapeInstruction(None, None, Move.LEFT), 'A'),))
        self.assertEqual(len(validate_machine(bad)), 1)

    def test_start_and_accepts_must_be_states(self):
        machine = parity_fsa()
        bad = replace(machine, start='zero', accepts=('two',))
        self.assertEqual(len(validate_machine(bad)), 2)

    def test_reserved_classes_validate_but_do_not_run(self):
        machine = Machine(MachineClass.NESTED_STACK, ('a',), ('s',), 's', ('s',), ())
        self.assertEqual(validate_machine(machine), [])
        with self.assertRaisesMessage(MachineError, 'Unimplemented class'):
            accepts(machine, ['a'])


class DeterminismTests(SimpleTestCase):

    def test_parity_is_deterministic(self):
        self.assertTrue(is_deterministic(parity_fsa()))

    def test_epsilon_edge_breaks_determinism(self):
        self.assertFalse(is_deterministic(epsilon_fsa()))

    def test_overlapping_guards(self):
        machine = Machine(
            machine_class=MachineClass.PDA, input_alphabet=('x',), states=('q',), start='q', accepts=('q',),
            tape_alphabet=(BOTTOM, 'g'),
            edges=(Edge('q', 'x', StackInstruction('g', StackAction.STAY), 'q'),
                   Edge('q', 'x', StackInstruction(None, StackAction.PUSH, 'g'), 'q')),
        )
        self.assertFalse(is_deterministic(machine))

    def test_disjoint_guards(self):
        machine = Machine(
            machine_class=MachineClass.PDA, input_alphabet=('x',), states=('q',), start='q', accepts=('q',),
            tape_alphabet=(BOTTOM, 'g'),
            edges=(Edge('q', 'x', StackInstruction('g', StackAction.POP), 'q'),
                   Edge('q', 'x', StackInstruction(BOTTOM, StackAction.PUSH, 'g'), 'q')),
        )
        self.assertTrue(is_deterministic(machine))


class FsaDeciderTests(SimpleTestCase):

    def test_parity_examples(self):
        machine = parity_fsa()
        self.assertEqual(fsa_accepts(machine, ['a', 'a']).verdict, Verdict.ACCEPT)
        self.assertEqual(fsa_accepts(machine, ['a']).verdict, Verdict.REJECT)
        self.assertTrue(fsa_accepts(machine, []).accepted)

    def test_agrees_with_path_enumeration(self):
        for machine in [parity_fsa(), epsilon_fsa()]:
            for word in words_upto(machine.input_alphabet, 6):
                with self.subTest(machine=str(machine), word=word):
                    self.assertEqual(fsa_accepts(machine, word).accepted, naive_fsa_accepts(machine, word))

    def test_accepting_run_replays(self):
        machine = epsilon_fsa()
        result = fsa_accepts(machine, ['a', 'a', 'b'])
        self.assertTrue(result.accepted)
        replay_run(machine, ['a', 'a', 'b'], result.run)

    def test_class_mismatch(self):
        with self.assertRaisesMessage(MachineError, 'Class mismatch'):
            fsa_accepts(anbn_pda(), ['a'])

    def test_deciders_are_pure(self):
        machine = epsilon_fsa()
        self.assertEqual(fsa_accepts(machine, ['a', 'b']), fsa_accepts(machine, ['a', 'b']))


class PdaDeciderTests(SimpleTestCase):

    def test_anbn(self):
        machine = anbn_pda()
        for word, expected in [((), True), (('a', 'b'), True), (('a', 'a', 'b', 'b'), True),
                               (('a',), False), (('a', 'b', 'b'), False), (('b', 'a'), False)]:
            with self.subTest(word=word):
                self.assertEqual(pda_accepts(machine, word).accepted, expected)

    def test_epsilon_push_cycle_is_decided(self):
        machine = pumping_pda()
        self.assertTrue(pda_accepts(machine, ['a', 'b', 'b']).accepted)
        self.assertFalse(pda_accepts(machine, ['b']).accepted)
        self.assertFalse(pda_accepts(machine, ['a', 'a']).accepted)

    def test_grammar_route_agrees_with_configuration_search(self):
        for machine in [anbn_pda(), pumping_pda()]:
            for word in words_upto(machine.input_alphabet, 6):
                with self.subTest(machine=str(machine), word=word):
                    exact = pda_accepts(machine, word)
                    searched = pda_search_accepts(machine, word)
                    self.assertNotEqual(searched.verdict, Verdict.RESOURCE_EXCEEDED)
                    self.assertEqual(exact.verdict, searched.verdict)

    def test_accepting_run_is_reconstructed(self):
        machine = anbn_pda()
        word = ['a', 'a', 'a', 'b', 'b', 'b']
        result = pda_accepts(machine, word)
        self.assertTrue(result.accepted)
        self.assertEqual(result.stats.max_stack_depth, 3)
        self.assertEqual(replay_run(machine, word, result.run).max_stack_depth, 3)

    def test_grammar_productions_name_their_edges(self):
        grammar = pda_to_grammar(anbn_pda())
        self.assertEqual(grammar.start, ('acc', 'p', BOTTOM))
        edges = {production.edge for production in grammar.productions} - {None}
        self.assertEqual(edges, {0, 1, 2, 3})
        self.assertIn(('acc', 'f', BOTTOM), grammar.nullable)
        self.assertTrue(recognize(grammar, ['a', 'b']).accepted)

    @override_settings(GA_PDA_SEARCH_MAX_CONFIGS=5)
    def test_search_cap_yields_resource_exceeded(self):
        result = pda_search_accepts(pumping_pda(), ['b', 'b', 'b'])
        self.assertEqual(result.verdict, Verdict.RESOURCE_EXCEEDED)


class LbaDeciderTests(SimpleTestCase):

    def test_anbn(self):
        machine = anbn_lba()
        for word in words_upto(('a', 'b'), 6):
            expected = len(word) % 2 == 0 and word == ('a',) * (len(word) // 2) + ('b',) * (len(word) // 2)
            with self.subTest(word=word):
                result = lba_accepts(machine, word)
                self.assertEqual(result.accepted, expected)
                self.assertLessEqual(result.stats.max_cells, len(word) + 1)
                self.assertEqual(result.stats.cells_available, len(word) + 1)

    def test_run_replays_within_space(self):
        machine = anbn_lba()
        word = ['a', 'a', 'b', 'b']
        result = lba_accepts(machine, word)
        stats = replay_run(machine, word, result.run)
        self.assertEqual(stats.max_cells, 3)

    def test_visited_cap(self):
        result = lba_accepts(anbn_lba(), ['a', 'a', 'a', 'b', 'b', 'b'], visited_cap=3)
        self.assertEqual(result.verdict, Verdict.RESOURCE_EXCEEDED)

    def test_dispatch(self):
        self.assertTrue(accepts(anbn_lba(), ['a', 'b']).accepted)
        self.assertTrue(accepts(anbn_pda(), ['a', 'b']).accepted)
        self.assertFalse(accepts(parity_fsa(), ['a']).accepted)


class ReplayTests(SimpleTestCase):

    def test_rejects_a_run_that_does_not_apply(self):
        with self.assertRaises(MachineError):
            replay_run(parity_fsa(), ['a'], [1])

    def test_rejects_a_run_ending_outside_accepts(self):
        with self.assertRaises(MachineError):
            replay_run(parity_fsa(), ['a'], [0])
