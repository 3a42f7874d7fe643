"""
The toolkit command line: `python manage.py ga <subcommand> ...` or `./ga <subcommand> ...`.

Exit codes: 0 success, 1 run verdict reject, 2 validation or comparison
failure, 3 resource exhaustion.
"""
import json
import logging

from django.conf import settings
from django.core.exceptions import ValidationError
from django.core.management.base import BaseCommand, CommandError

from gautomata.automaton import GAutomaton, GAutomatonError, normalize, wp_automaton
from gautomata.search import MembershipVerdict, SearchBudget, g_membership
from groups.algebra import GroupError, GroupSpec, evaluate_word, free_abelian_group, free_group, is_identity
from machines.deciders import accepts
from machines.grammar import pda_to_grammar
from machines.machine import LANGUAGE_CLASS, Machine, MachineClass, MachineError, Verdict
from transfer.builders import WordProblemMachine, wp_machine_for
from transfer.product import TransferError, product

from harness.compare import ComparisonError, compare_languages, language_slice
from harness.conjecture import conjecture_check, conjecture_language_xyz, rename_xyz
from harness.documents import (
    FixtureDocument, document_diagnostics, document_kind, dump_document, dumps_document, load_document,
    require_valid_document,
)
from harness.models import ComparisonRun, fixture_slice_diagnostics
from harness.words import enumerate_words, parse_tokens, render_word

logger = logging.getLogger(__name__)

EXIT_REJECT = 1
EXIT_INVALID = 2
EXIT_EXHAUSTED = 3

DOMAIN_ERRORS = (GroupError, MachineError, GAutomatonError, TransferError, ComparisonError)


class Command(BaseCommand):
    help = "Group-automaton toolkit: validate, run, build word-problem machines, products and comparisons"

    def add_arguments(self, parser):
        subcommands = parser.add_subparsers(dest='action', required=True, metavar='subcommand')

        validate = subcommands.add_parser('validate', help="Check documents for well-formedness")
        validate.add_argument('files', nargs='+')
        validate.add_argument('--slices', action='store_true', help="Also recompute fixture slices")

        run = subcommands.add_parser('run', help="Decide one word")
        run.add_argument('file')
        run.add_argument('--word', default='', help='Space-separated tokens, e.g. "a b^-1 a"')
        run.add_argument('--grammar', action='store_true', help="Print the grammar of a pda first")
        self.add_report_argument(run)
        self.add_budget_arguments(run)

        wp = subcommands.add_parser('wp', help="Emit a word-problem automaton or machine")
        wp.add_argument('--group', required=True, help="finite:<file> | zn:<k> | free:<k>")
        wp.add_argument('--class', dest='machine_class', default='auto',
                        choices=['auto', MachineClass.FSA, MachineClass.PDA, MachineClass.LBA])
        wp.add_argument('--automaton', action='store_true', help="Emit the one-state G-automaton instead")
        wp.add_argument('-o', '--output')

        prod = subcommands.add_parser('product', help="Compile a G-automaton with a word-problem machine")
        prod.add_argument('automaton')
        prod.add_argument('machine')
        prod.add_argument('-o', '--output')

        compare = subcommands.add_parser('compare', help="Compare two languages up to a length bound")
        compare.add_argument('left')
        compare.add_argument('right')
        compare.add_argument('--max-len', type=int, default=None)
        compare.add_argument('--alphabet', default=None, help="Space-separated tokens; default: the left side's")
        compare.add_argument('--record', action='store_true', help="Store the report as a ComparisonRun")
        self.add_report_argument(compare)
        self.add_budget_arguments(compare)

        enum = subcommands.add_parser('enumerate', help="List words, or the accepted words of a document")
        enum.add_argument('--alphabet', default=None)
        enum.add_argument('--max-len', type=int, default=None)
        enum.add_argument('--accepted-by', default=None)
        self.add_report_argument(enum)
        self.add_budget_arguments(enum)

        conjecture = subcommands.add_parser(
            'conjecture',
            help="Check the Z^2 intersection identity; by default only over words of (ab)*{a^-1,b^-1}*, "
                 "outside which both sides reject")
        conjecture.add_argument('--max-len', type=int, default=12)
        conjecture.add_argument('--exhaustive', action='store_true',
                                help="Sweep every word over a, a^-1, b, b^-1, not only (ab)*{a^-1,b^-1}*")
        conjecture.add_argument('--list', type=int, default=None, metavar='N',
                                help="Print the language for n <= N in both readings and stop")
        conjecture.add_argument('--record', action='store_true')
        self.add_report_argument(conjecture)

    def add_report_argument(self, parser):
        parser.add_argument('--report', choices=['text', 'json'], default='text')

    def add_budget_arguments(self, parser):
        parser.add_argument('--budget-norm', type=int, default=None)
        parser.add_argument('--budget-eps', type=int, default=None)
        parser.add_argument('--budget-configs', type=int, default=None)

    def handle(self, *args, **options):
        handler = getattr(self, f"handle_{options['action']}")
        try:
            handler(options)
        except ValidationError as exc:
            for message in exc.messages:
                logger.error(message)
            raise CommandError('; '.join(exc.messages), returncode=EXIT_INVALID)
        except DOMAIN_ERRORS as exc:
            logger.error(str(exc))
            raise CommandError(str(exc), returncode=EXIT_INVALID)

    # helpers ---------------------------------------------------------------

    def budget_caps(self, options):
        return {
            'norm_cap': options.get('budget_norm'),
            'eps_cap': options.get('budget_eps'),
            'max_configurations': options.get('budget_configs'),
        }

    def max_len(self, options):
        value = options.get('max_len')
        value = settings.GA_DEFAULT_MAX_LEN if value is None else value
        if value < 0:
            raise CommandError(f"--max-len must be nonnegative, got {value}", returncode=EXIT_INVALID)
        return value

    def load(self, path):
        obj = load_document(path)
        return require_valid_document(obj, str(path))

    def emit(self, options, data: dict, lines: list[str]):
        if options['report'] == 'json':
            self.stdout.write(json.dumps(data, indent=2, ensure_ascii=False))
        else:
            self.stdout.write('\n'.join(lines))

    def write_document(self, obj, output):
        if output:
            dump_document(obj, output)
        else:
            self.stdout.write(dumps_document(obj), ending='')

    # subcommands -----------------------------------------------------------

    def handle_validate(self, options):
        invalid = 0
        for path in options['files']:
            try:
                obj = load_document(path)
            except ValidationError as exc:
                invalid += 1
                for message in exc.messages:
                    logger.error(message)
                    self.stdout.write(message)
                continue
            diagnostics = document_diagnostics(obj)
            if not diagnostics and options['slices'] and isinstance(obj, FixtureDocument):
                diagnostics = fixture_slice_diagnostics(obj)
            if diagnostics:
                invalid += 1
                for message in diagnostics:
                    self.stdout.write(f"{path}: {message}")
            else:
                self.stdout.write(f"{path}: ok ({document_kind(obj)} {describe(obj)})")
        if invalid:
            raise CommandError(f"{invalid} of {len(options['files'])} documents are invalid", returncode=EXIT_INVALID)

    def handle_run(self, options):
        obj = self.load(options['file'])
        word = parse_tokens(options['word'])
        data = {'document': describe(obj), 'word': render_word(word)}
        lines = [f"document: {describe(obj)}", f"word:     {render_word(word) or 'eps'}"]

        if isinstance(obj, GAutomaton):
            budget = SearchBudget.default_for(obj, len(word), **self.budget_caps(options))
            result = g_membership(obj, word, budget)
            data.update({'verdict': str(result.verdict), 'exact': result.exact, 'path': list(result.path),
                         'explored': result.explored, 'pruned_norm': result.pruned_norm,
                         'pruned_eps': result.pruned_eps})
            lines += [f"verdict:  {result.verdict}", f"exact:    {'yes' if result.exact else 'no'}",
                      f"path:     {' '.join(str(i) for i in result.path) or '-'}",
                      f"explored: {result.explored} configurations"]
            code = {MembershipVerdict.ACCEPT: 0, MembershipVerdict.REJECT: EXIT_REJECT}.get(result.verdict,
                                                                                            EXIT_EXHAUSTED)
        elif isinstance(obj, GroupSpec):
            element = evaluate_word(obj, word)
            accepted = is_identity(obj, element)
            data.update({'verdict': str(Verdict.ACCEPT if accepted else Verdict.REJECT),
                         'element': obj.element_label(element)})
            lines += [f"verdict:  {data['verdict']}", f"element:  {data['element']}"]
            code = 0 if accepted else EXIT_REJECT
        elif isinstance(obj, FixtureDocument):
            raise CommandError(f"{options['file']} is a fixture; run one of its documents", returncode=EXIT_INVALID)
        else:
            machine = obj.machine if not isinstance(obj, Machine) else obj
            if options['grammar']:
                if machine.machine_class != MachineClass.PDA:
                    raise CommandError(f"--grammar needs a pda, {machine} is a {machine.machine_class}",
                                       returncode=EXIT_INVALID)
                grammar = pda_to_grammar(machine)
                data['grammar'] = [str(p) for p in grammar.productions]
                lines = [str(grammar), ''] + lines
            result = accepts(machine, word)
            stats = result.stats
            data.update({'verdict': str(result.verdict), 'run': list(result.run),
                         'configurations': stats.configurations, 'max_stack_depth': stats.max_stack_depth,
                         'max_cells': stats.max_cells, 'cells_available': stats.cells_available})
            lines += [f"verdict:  {result.verdict}", f"run:      {' '.join(str(i) for i in result.run) or '-'}",
                      f"explored: {stats.configurations} configurations"]
            if machine.machine_class == MachineClass.PDA:
                lines.append(f"stack:    {stats.max_stack_depth} deepest")
            if stats.cells_available is not None:
                lines.append(f"space:    {stats.max_cells} of {stats.cells_available} cells")
            code = {Verdict.ACCEPT: 0, Verdict.REJECT: EXIT_REJECT}.get(result.verdict, EXIT_EXHAUSTED)

        self.emit(options, data, lines)
        if code:
            raise CommandError(data['verdict'], returncode=code)

    def handle_wp(self, options):
        spec = self.group_argument(options['group'])
        if options['automaton']:
            self.write_document(wp_automaton(spec), options['output'])
            return
        wp = wp_machine_for(spec, options['machine_class'])
        logger.info(f"Built {wp} ({LANGUAGE_CLASS[str(wp.certificate)]} word problem)")
        self.write_document(wp, options['output'])

    def group_argument(self, value) -> GroupSpec:
        family, _, argument = value.partition(':')
        if family == 'finite' and argument:
            spec = self.load(argument)
            if not isinstance(spec, GroupSpec):
                raise CommandError(f"{argument} is not a group document", returncode=EXIT_INVALID)
            return spec
        if family in ('zn', 'free') and argument.isdigit() and int(argument) >= 1:
            return free_abelian_group(int(argument)) if family == 'zn' else free_group(int(argument))
        raise CommandError(f"--group must be finite:<file>, zn:<k> or free:<k>, got {value!r}",
                           returncode=EXIT_INVALID)

    def handle_product(self, options):
        P = self.load(options['automaton'])
        N = self.load(options['machine'])
        if not isinstance(P, GAutomaton):
            raise CommandError(f"{options['automaton']} is not a G-automaton document", returncode=EXIT_INVALID)
        if not isinstance(N, WordProblemMachine):
            raise CommandError(f"{options['machine']} is not a word-problem machine document "
                               f"(it needs 'group' and 'certificate')", returncode=EXIT_INVALID)
        self.write_document(product(normalize(P), N), options['output'])

    def handle_compare(self, options):
        left, right = self.load(options['left']), self.load(options['right'])
        for path, obj in ((options['left'], left), (options['right'], right)):
            if isinstance(obj, FixtureDocument):
                raise CommandError(f"{path} is a fixture; compare its documents", returncode=EXIT_INVALID)
        alphabet = parse_tokens(options['alphabet']) if options['alphabet'] else None
        report = compare_languages(left, right, self.max_len(options), alphabet=alphabet,
                                   **self.budget_caps(options))
        self.finish_report(report, options)

    def finish_report(self, report, options):
        self.emit(options, report.to_dict(), report.render_text().split('\n'))
        if options['record']:
            run = ComparisonRun.record(report)
            logger.info(f"Recorded {run}")
        if not report.passed:
            raise CommandError(f"{len(report.disagreements)} disagreements", returncode=EXIT_INVALID)
        if report.exhausted:
            raise CommandError(f"{len(report.exhausted)} words exhausted the budget", returncode=EXIT_EXHAUSTED)

    def handle_enumerate(self, options):
        max_len = self.max_len(options)
        alphabet = parse_tokens(options['alphabet']) if options['alphabet'] else None
        exhausted = ()
        if options['accepted_by']:
            obj = self.load(options['accepted_by'])
            result = language_slice(obj, max_len, alphabet=alphabet, **self.budget_caps(options))
            alphabet, words, exhausted = result.alphabet, result.words, result.exhausted
        elif alphabet:
            words = tuple(enumerate_words(alphabet, max_len))
        else:
            raise CommandError("enumerate needs --alphabet or --accepted-by", returncode=EXIT_INVALID)
        rendered = [render_word(word) for word in words]
        data = {'alphabet': list(alphabet), 'max_len': max_len, 'count': len(rendered), 'words': rendered}
        lines = [word or 'eps' for word in rendered]
        if exhausted:
            data['exhausted'] = [render_word(word) for word in exhausted]
            lines += [f"budget exhausted: {render_word(word) or 'eps'}" for word in exhausted]
        self.emit(options, data, lines)
        if exhausted:
            raise CommandError(f"{len(exhausted)} words exhausted the budget", returncode=EXIT_EXHAUSTED)

    def handle_conjecture(self, options):
        if options['list'] is not None:
            words = conjecture_language_xyz(options['list'])
            pairs = [(render_word(word), render_word(rename_xyz(word))) for word in words]
            data = {'n_max': options['list'], 'words': [{'xyz': xyz, 'ab': ab} for xyz, ab in pairs]}
            lines = [f"{xyz or 'eps'}  =>  {ab or 'eps'}" for xyz, ab in pairs]
            self.emit(options, data, lines)
            return
        report = conjecture_check(self.max_len(options), exhaustive=options['exhaustive'])
        self.finish_report(report, options)


def describe(obj) -> str:
    if isinstance(obj, GroupSpec):
        return f"{obj} on {' '.join(obj.tokens)}"
    if isinstance(obj, GAutomaton):
        text = f"{obj}: {len(obj.states)} states, {len(obj.edges)} edges over {obj.group}"
        if obj.weighted_cycles:
            cycles = ', '.join('{' + ' '.join(component) + '}' for component in obj.weighted_cycles)
            text += f"; weighted epsilon cycles in {cycles}, verdicts are bounded"
        return text
    if isinstance(obj, FixtureDocument):
        return f"{obj.name}: {len(obj.documents)} documents, {len(obj.slices)} slices"
    machine = obj if isinstance(obj, Machine) else obj.machine
    return f"{machine}: {machine.machine_class}, {len(machine.states)} states, {len(machine.edges)} edges"
