"""
JSON documents for groups, G-automata, machines and fixtures.

Every document is a UTF-8 JSON object with a top-level "kind". Inverse
tokens are written `name^-1`, epsilon as null, rational constants as
strings ("5", "7/2"). A G-automaton or machine may name its group by a
path relative to the document instead of inlining it.

Malformed documents raise django's ValidationError with the location of
the offending value, e.g. `aeq.gaut: $.edges[3].weight: ...`.
"""
from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from pathlib import Path

from django.core.exceptions import ValidationError

from gautomata.automaton import GAutomaton, GAutomatonError, GEdge, g_automaton, validate_gautomaton
from groups.algebra import (
    FINITE, FREE, FREE_ABELIAN, GeneratorSymbol, GroupElement, GroupError, GroupSpec, check_element, evaluate_word,
    finite_group, free_abelian_group, free_group, identity, multiply, validate_group,
)
from machines.machine import (
    Edge, Machine, MachineClass, NoOp, StackInstruction, TapeInstruction, validate_machine,
)
from transfer.builders import WordProblemMachine
from transfer.product import EdgeProvenance, ProductMachine

from .forms import DocumentHeaderForm, GroupHeaderForm, MachineHeaderForm, SliceForm

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SliceSpec:
    """Expected accepted words of one fixture document up to `max_len`."""
    document: str
    max_len: int
    words: tuple[tuple[str, ...], ...]
    alphabet: tuple[str, ...] | None = None
    oracle: str = ''


@dataclass(frozen=True)
class FixtureDocument:
    name: str
    description: str
    documents: tuple[tuple[str, object], ...]
    slices: tuple[SliceSpec, ...] = ()

    def document(self, role: str):
        for key, value in self.documents:
            if key == role:
                return value
        raise KeyError(role)

    @property
    def kind(self) -> str:
        kinds = {document_kind(value) for _, value in self.documents}
        if {'gautomaton', 'machine'} <= kinds:
            return 'pair'
        return kinds.pop() if len(kinds) == 1 else 'pair'


def document_kind(obj) -> str:
    if isinstance(obj, GroupSpec):
        return 'group'
    if isinstance(obj, GAutomaton):
        return 'gautomaton'
    if isinstance(obj, (Machine, WordProblemMachine, ProductMachine)):
        return 'machine'
    if isinstance(obj, FixtureDocument):
        return 'fixture'
    raise TypeError(f"{type(obj).__name__} is not a document type")


# ---------------------------------------------------------------------------
# Reading
# ---------------------------------------------------------------------------

class DocumentReader:
    """Parses one document; `source` prefixes every error location."""

    def __init__(self, source: str = '<document>', base_dir: Path | None = None):
        self.source = source
        self.base_dir = Path(base_dir) if base_dir is not None else None

    def error(self, path: str, message: str) -> ValidationError:
        return ValidationError(f"{self.source}: {path}: {message}", code='invalid')

    def form_errors(self, form, path: str) -> ValidationError:
        messages = []
        for field, errors in form.errors.items():
            where = path if field == '__all__' else f"{path}.{field}"
            messages.extend(f"{self.source}: {where}: {error}" for error in errors)
        return ValidationError(messages, code='invalid')

    def require(self, data: dict, key: str, path: str, kind=None, default=...):
        if key not in data or data[key] is None:
            if default is not ...:
                return default
            raise self.error(path, f"missing required field {key!r}")
        value = data[key]
        if kind is not None and (not isinstance(value, kind) or isinstance(value, bool) and kind is not bool):
            raise self.error(f"{path}.{key}", f"expected {_kind_name(kind)}, got {type(value).__name__}")
        return value

    def strings(self, data: dict, key: str, path: str, default=...) -> tuple[str, ...]:
        values = self.require(data, key, path, list, default)
        if values is None:
            return values
        for index, value in enumerate(values):
            if not isinstance(value, str):
                raise self.error(f"{path}.{key}[{index}]", f"expected a string, got {type(value).__name__}")
        return tuple(values)

    def parse(self, data, path: str = '$'):
        if not isinstance(data, dict):
            raise self.error(path, f"a document must be a JSON object, got {type(data).__name__}")
        header = DocumentHeaderForm({'kind': data.get('kind'), 'name': data.get('name') or ''})
        if not header.is_valid():
            raise self.form_errors(header, path)
        kind = header.cleaned_data['kind']
        parser = getattr(self, f"parse_{kind}")
        return parser(data, path)

    def resolve(self, value, path: str, expected: str | None = None):
        """An inline document or a path to one, relative to this document."""
        if isinstance(value, str):
            if self.base_dir is None:
                raise self.error(path, f"cannot resolve file reference {value!r} without a base directory")
            obj = load_document(self.base_dir / value)
        else:
            obj = self.parse(value, path)
        if expected is not None and document_kind(obj) != expected:
            raise self.error(path, f"expected a {expected} document, got a {document_kind(obj)}")
        return obj

    # groups ----------------------------------------------------------------

    def parse_group(self, data: dict, path: str) -> GroupSpec:
        header = GroupHeaderForm({key: data.get(key) for key in ('family', 'order', 'rank')})
        if not header.is_valid():
            raise self.form_errors(header, path)
        family = header.cleaned_data['family']
        name = data.get('name') or ''
        generators = self.require(data, 'generators', path, list, default=None)
        pairs = None
        if generators is not None:
            pairs = []
            for index, entry in enumerate(generators):
                if not isinstance(entry, list) or len(entry) != 2 or not isinstance(entry[0], str):
                    raise self.error(f"{path}.generators[{index}]", "expected a [name, image] pair")
                pairs.append(tuple(entry))
        try:
            if family == FINITE:
                return self._finite_group(data, path, pairs, name)
            rank = header.cleaned_data['rank']
            if family == FREE_ABELIAN:
                return free_abelian_group(rank, generators=pairs, name=name)
            letters = self.strings(data, 'letters', path, default=None)
            return free_group(rank, letters=letters, generators=pairs, name=name)
        except (GroupError, TypeError, ValueError) as exc:
            raise self.error(path, str(exc)) from exc

    def _finite_group(self, data: dict, path: str, pairs, name: str) -> GroupSpec:
        cayley = self.require(data, 'cayley', path, list)
        for i, row in enumerate(cayley):
            if not isinstance(row, list) or any(not isinstance(x, int) or isinstance(x, bool) for x in row):
                raise self.error(f"{path}.cayley[{i}]", "expected a list of element indices")
        names = self.strings(data, 'element_names', path, default=None)
        if pairs is None:
            raise self.error(path, "a finite group needs its generators")
        indices = []
        for index, (gen, image) in enumerate(pairs):
            if isinstance(image, str):
                if names is None or image not in names:
                    raise self.error(f"{path}.generators[{index}]", f"unknown element {image!r}")
                image = names.index(image)
            indices.append((gen, image))
        spec = finite_group(cayley, indices, element_names=names, name=name)
        if data.get('order') is not None and data['order'] != spec.order:
            raise self.error(f"{path}.order", f"order {data['order']} does not match a {spec.order}x{spec.order} table")
        return spec

    def parse_element(self, spec: GroupSpec, value, path: str) -> GroupElement:
        try:
            if spec.family == FINITE:
                if isinstance(value, int) and not isinstance(value, bool):
                    element = GroupElement(FINITE, value)
                elif isinstance(value, str) and spec.element_names and value in spec.element_names:
                    element = GroupElement(FINITE, spec.element_names.index(value))
                elif isinstance(value, str):
                    element = evaluate_word(spec, value.split())
                else:
                    raise self.error(path, "expected an element name, index or generator word")
                check_element(spec, element)
                return element
            if spec.family == FREE_ABELIAN:
                if not isinstance(value, list) or any(not isinstance(x, int) or isinstance(x, bool) for x in value):
                    raise self.error(path, "expected an integer vector")
                element = GroupElement(FREE_ABELIAN, tuple(value))
                check_element(spec, element)
                return element
            if not isinstance(value, str):
                raise self.error(path, "expected a word over the free letters, e.g. \"a b^-1\"")
            result = identity(spec)
            for token in value.split():
                result = multiply(spec, result, GroupElement(FREE, (GeneratorSymbol.parse(token),)))
            return result
        except GroupError as exc:
            raise self.error(path, str(exc)) from exc

    # G-automata ------------------------------------------------------------

    def parse_gautomaton(self, data: dict, path: str) -> GAutomaton:
        group = self.resolve(self.require(data, 'group', path), f"{path}.group", 'group')
        states = self.strings(data, 'states', path)
        start = self.require(data, 'start', path, str)
        accepts = self.strings(data, 'accepts', path)
        alphabet = self.strings(data, 'alphabet', path, default=None)
        edges = []
        for index, entry in enumerate(self.require(data, 'edges', path, list)):
            where = f"{path}.edges[{index}]"
            if not isinstance(entry, dict):
                raise self.error(where, "expected an edge object")
            letter = self.require(entry, 'letter', where, str, default=None)
            weight = self.parse_element(group, self.require(entry, 'weight', where), f"{where}.weight")
            edges.append(GEdge(self.require(entry, 'src', where, str), letter, weight,
                               self.require(entry, 'dst', where, str)))
        try:
            return g_automaton(group, states, start, accepts, edges, alphabet=alphabet, name=data.get('name') or '')
        except (GAutomatonError, GroupError) as exc:
            raise self.error(path, str(exc)) from exc

    # machines --------------------------------------------------------------

    def parse_instruction(self, machine_class: str, value, path: str):
        if value is None or value == {}:
            if machine_class in (MachineClass.PDA, MachineClass.LBA):
                raise self.error(path, f"{machine_class} edges need an instruction")
            return NoOp()
        if not isinstance(value, dict):
            raise self.error(path, "expected an instruction object")
        guard = self.require(value, 'guard', path, str, default=None)
        if 'action' in value:
            return StackInstruction(guard, self.require(value, 'action', path, str),
                                    self.require(value, 'symbol', path, str, default=None))
        if 'move' in value or 'write' in value:
            return TapeInstruction(guard, self.require(value, 'write', path, str, default=None),
                                   self.require(value, 'move', path, str, default='S'))
        raise self.error(path, "an instruction needs an 'action' (stack) or a 'move' (tape)")

    def parse_machine(self, data: dict, path: str):
        header = MachineHeaderForm({
            'machine_class': data.get('class'),
            'space_multiplier': data.get('space_multiplier') or '',
            'certificate': data.get('certificate') or '',
        })
        if not header.is_valid():
            raise self.form_errors(header, path)
        machine_class = header.cleaned_data['machine_class']
        edges = []
        for index, entry in enumerate(self.require(data, 'edges', path, list)):
            where = f"{path}.edges[{index}]"
            if not isinstance(entry, dict):
                raise self.error(where, "expected an edge object")
            instruction = self.parse_instruction(machine_class, entry.get('instruction'), f"{where}.instruction")
            edges.append(Edge(self.require(entry, 'src', where, str), self.require(entry, 'token', where, str, None),
                              instruction, self.require(entry, 'dst', where, str)))
        machine = Machine(
            machine_class=machine_class,
            input_alphabet=self.strings(data, 'input_alphabet', path),
            states=self.strings(data, 'states', path),
            start=self.require(data, 'start', path, str),
            accepts=self.strings(data, 'accepts', path),
            edges=tuple(edges),
            tape_alphabet=self.strings(data, 'tape_alphabet', path, default=()),
            space_multiplier=header.cleaned_data['space_multiplier'],
            name=data.get('name') or '',
        )
        if 'product' in data:
            return self._product(machine, self.require(data, 'product', path, dict), f"{path}.product")
        if 'group' in data:
            group = self.resolve(data['group'], f"{path}.group", 'group')
            certificate = header.cleaned_data['certificate'] or machine_class
            return WordProblemMachine(machine, group, certificate)
        return machine

    def _product(self, machine: Machine, data: dict, path: str) -> ProductMachine:
        factors = self.require(data, 'factors', path, list)
        provenance = self.require(data, 'provenance', path, list)
        if len(factors) != len(machine.states):
            raise self.error(f"{path}.factors", f"{len(factors)} factor pairs for {len(machine.states)} states")
        if len(provenance) != len(machine.edges):
            raise self.error(f"{path}.provenance", f"{len(provenance)} entries for {len(machine.edges)} edges")
        pairs = []
        for index, pair in enumerate(factors):
            if not isinstance(pair, list) or len(pair) != 2 or not all(isinstance(x, str) for x in pair):
                raise self.error(f"{path}.factors[{index}]", "expected a [p, q] state pair")
            pairs.append(tuple(pair))
        origins = []
        for index, entry in enumerate(provenance):
            where = f"{path}.provenance[{index}]"
            if not isinstance(entry, dict):
                raise self.error(where, "expected a provenance object")
            origins.append(EdgeProvenance(self.require(entry, 'rule', where, str),
                                          self.require(entry, 'p_edge', where, int, None),
                                          self.require(entry, 'n_edge', where, int, None)))
        return ProductMachine(machine, tuple(pairs), tuple(origins))

    # fixtures --------------------------------------------------------------

    def parse_fixture(self, data: dict, path: str) -> FixtureDocument:
        name = self.require(data, 'name', path, str)
        documents = []
        for role, value in self.require(data, 'documents', path, dict).items():
            documents.append((role, self.resolve(value, f"{path}.documents.{role}")))
        roles = {role for role, _ in documents}
        slices = []
        for index, entry in enumerate(self.require(data, 'slices', path, list, default=[])):
            where = f"{path}.slices[{index}]"
            if not isinstance(entry, dict):
                raise self.error(where, "expected a slice object")
            form = SliceForm({key: entry.get(key) for key in ('document', 'max_len', 'oracle')})
            if not form.is_valid():
                raise self.form_errors(form, where)
            if form.cleaned_data['document'] not in roles:
                raise self.error(f"{where}.document", f"no document with role {form.cleaned_data['document']!r}")
            words = tuple(tuple(word.split()) for word in self.strings(entry, 'words', where))
            slices.append(SliceSpec(
                document=form.cleaned_data['document'],
                max_len=form.cleaned_data['max_len'],
                words=words,
                alphabet=self.strings(entry, 'alphabet', where, default=None),
                oracle=form.cleaned_data['oracle'],
            ))
        return FixtureDocument(name, data.get('description') or '', tuple(documents), tuple(slices))


def _kind_name(kind) -> str:
    names = {str: 'a string', int: 'an integer', list: 'a list', dict: 'an object', bool: 'a boolean'}
    return names.get(kind, getattr(kind, '__name__', str(kind)))


def parse_document(data, source: str = '<document>', base_dir: Path | None = None):
    return DocumentReader(source, base_dir).parse(data)


def loads_document(text: str, source: str = '<document>', base_dir: Path | None = None):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{source}: line {exc.lineno} column {exc.colno}: {exc.msg}", code='invalid') from exc
    return parse_document(data, source, base_dir)


def load_document(path) -> object:
    path = Path(path)
    try:
        text = path.read_text(encoding='utf-8')
    except OSError as exc:
        raise ValidationError(f"{path}: cannot read document: {exc.strerror}", code='invalid') from exc
    except UnicodeDecodeError as exc:
        raise ValidationError(f"{path}: document is not UTF-8", code='invalid') from exc
    logger.debug(f"Loading {path}")
    return loads_document(text, str(path), path.parent)


# ---------------------------------------------------------------------------
# Writing
# ---------------------------------------------------------------------------

def serialize_element(spec: GroupSpec, element: GroupElement):
    if spec.family == FINITE:
        return spec.element_names[element.payload] if spec.element_names else element.payload
    if spec.family == FREE_ABELIAN:
        return list(element.payload)
    return ' '.join(symbol.token for symbol in element.payload)


def serialize_group(spec: GroupSpec) -> dict:
    doc = {'kind': 'group', 'family': spec.family}
    if spec.name:
        doc['name'] = spec.name
    positive = [(symbol, image) for symbol, image in spec.generators if symbol.exponent == 1]
    if spec.family == FINITE:
        doc['order'] = spec.order
        if spec.element_names:
            doc['element_names'] = list(spec.element_names)
        doc['cayley'] = [list(row) for row in spec.cayley]
    else:
        doc['rank'] = spec.rank
        if spec.family == FREE:
            doc['letters'] = list(spec.letters)
    doc['generators'] = [[symbol.name, serialize_element(spec, image)] for symbol, image in positive]
    return doc


def serialize_gautomaton(A: GAutomaton) -> dict:
    doc = {'kind': 'gautomaton'}
    if A.name:
        doc['name'] = A.name
    doc.update({
        'group': serialize_group(A.group),
        'alphabet': list(A.alphabet),
        'states': list(A.states),
        'start': A.start,
        'accepts': list(A.accepts),
        'edges': [{'src': e.src, 'letter': e.letter, 'weight': serialize_element(A.group, e.weight), 'dst': e.dst}
                  for e in A.edges],
    })
    return doc


def serialize_instruction(instruction):
    if isinstance(instruction, StackInstruction):
        doc = {'guard': instruction.guard, 'action': str(instruction.action)}
        if instruction.symbol is not None:
            doc['symbol'] = instruction.symbol
        return doc
    if isinstance(instruction, TapeInstruction):
        return {'guard': instruction.guard, 'write': instruction.write, 'move': str(instruction.move)}
    return None


def serialize_machine(obj) -> dict:
    m = obj.machine if isinstance(obj, (WordProblemMachine, ProductMachine)) else obj
    doc = {'kind': 'machine', 'class': str(m.machine_class)}
    if m.name:
        doc['name'] = m.name
    if m.space_multiplier is not None:
        doc['space_multiplier'] = str(m.space_multiplier)
    doc.update({
        'input_alphabet': list(m.input_alphabet),
        'tape_alphabet': list(m.tape_alphabet),
        'states': list(m.states),
        'start': m.start,
        'accepts': list(m.accepts),
        'edges': [],
    })
    for edge in m.edges:
        entry = {'src': edge.src, 'token': edge.token, 'dst': edge.dst}
        instruction = serialize_instruction(edge.instruction)
        if instruction is not None:
            entry['instruction'] = instruction
        doc['edges'].append(entry)
    if isinstance(obj, WordProblemMachine):
        doc['certificate'] = str(obj.certificate)
        doc['group'] = serialize_group(obj.group)
    elif isinstance(obj, ProductMachine):
        doc['product'] = {
            'factors': [list(pair) for pair in obj.states],
            'provenance': [{'rule': e.rule, 'p_edge': e.p_edge, 'n_edge': e.n_edge} for e in obj.edges],
        }
    return doc


def serialize_fixture(fixture: FixtureDocument) -> dict:
    slices = []
    for item in fixture.slices:
        entry = {'document': item.document, 'max_len': item.max_len}
        if item.alphabet is not None:
            entry['alphabet'] = list(item.alphabet)
        entry['words'] = [' '.join(word) for word in item.words]
        if item.oracle:
            entry['oracle'] = item.oracle
        slices.append(entry)
    return {
        'kind': 'fixture',
        'name': fixture.name,
        'description': fixture.description,
        'documents': {role: serialize_document(obj) for role, obj in fixture.documents},
        'slices': slices,
    }


SERIALIZERS = {
    'group': serialize_group,
    'gautomaton': serialize_gautomaton,
    'machine': serialize_machine,
    'fixture': serialize_fixture,
}


def serialize_document(obj) -> dict:
    return SERIALIZERS[document_kind(obj)](obj)


def dumps_document(obj) -> str:
    """Canonical text: two-space indent, declared key order, trailing newline."""
    return json.dumps(serialize_document(obj), indent=2, ensure_ascii=False) + '\n'


def dump_document(obj, path) -> None:
    Path(path).write_text(dumps_document(obj), encoding='utf-8')
    logger.info(f"Wrote {document_kind(obj)} document {path}")


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------

def document_diagnostics(obj) -> list[str]:
    """Structural diagnostics of a parsed document; empty when it is well formed."""
    kind = document_kind(obj)
    if kind == 'group':
        return validate_group(obj)
    if kind == 'gautomaton':
        return validate_gautomaton(obj)
    if kind == 'machine':
        diagnostics = validate_machine(obj.machine if not isinstance(obj, Machine) else obj)
        if isinstance(obj, WordProblemMachine):
            diagnostics.extend(_certificate_diagnostics(obj))
        return diagnostics
    diagnostics = []
    for role, document in obj.documents:
        diagnostics.extend(f"{role}: {message}" for message in document_diagnostics(document))
    return diagnostics


def _certificate_diagnostics(wp: WordProblemMachine) -> list[str]:
    problems = []
    if str(wp.certificate) != str(wp.machine.machine_class):
        problems.append(f"certificate {wp.certificate!r} does not match machine class {wp.machine.machine_class!r}")
    if set(wp.machine.input_alphabet) != set(wp.group.tokens):
        problems.append(f"input alphabet {list(wp.machine.input_alphabet)} is not the generator tokens "
                        f"{list(wp.group.tokens)} of {wp.group}")
    return problems


def require_valid_document(obj, source: str = '<document>'):
    diagnostics = document_diagnostics(obj)
    if diagnostics:
        raise ValidationError([f"{source}: {message}" for message in diagnostics], code='invalid')
    return obj
