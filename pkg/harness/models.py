from django.db import models

from .compare import ComparisonReport, language_slice
from .documents import FixtureDocument, parse_document, serialize_document
from .words import render_word


def fixture_slice_diagnostics(fixture: FixtureDocument) -> list[str]:
    """Recompute every expected slice of a fixture; one message per mismatch."""
    diagnostics = []
    for item in fixture.slices:
        computed = language_slice(fixture.document(item.document), item.max_len, alphabet=item.alphabet)
        where = f"{fixture.name}/{item.document} up to length {item.max_len}"
        if computed.exhausted:
            diagnostics.append(f"{where}: {len(computed.exhausted)} words exhausted the search budget")
        expected = set(item.words)
        found = set(computed.words)
        for word in sorted(expected - found, key=lambda w: (len(w), w)):
            diagnostics.append(f"{where}: expected [{render_word(word)}] is not accepted")
        for word in sorted(found - expected, key=lambda w: (len(w), w)):
            diagnostics.append(f"{where}: [{render_word(word)}] is accepted but not listed")
    return diagnostics


class Fixture(models.Model):
    """A corpus entry: one or more documents with expected language slices"""
    KIND_CHOICES = [
        ('group', 'Group'),
        ('gautomaton', 'G-automaton'),
        ('machine', 'Machine'),
        ('pair', 'G-automaton and machine'),
    ]

    name = models.SlugField(max_length=100, unique=True)
    kind = models.CharField(max_length=20, choices=KIND_CHOICES, default='gautomaton')
    description = models.TextField(blank=True, help_text="What the fixture covers and where its slices come from")
    source = models.CharField(max_length=255, blank=True, help_text="Corpus file the fixture was loaded from")

    # role -> inline document, and [{document, max_len, alphabet?, words, oracle}]
    documents = models.JSONField(default=dict)
    slices = models.JSONField(default=list, blank=True)

    created_at = models.DateTimeField(auto_now_add=True)
    updated_at = models.DateTimeField(auto_now=True)

    class Meta:
        ordering = ['name']

    def __str__(self):
        return self.name

    @classmethod
    def from_document(cls, fixture: FixtureDocument, source: str = ''):
        """Create or update the row named after `fixture`."""
        data = serialize_document(fixture)
        row, _ = cls.objects.update_or_create(
            name=fixture.name,
            defaults={
                'kind': fixture.kind,
                'description': fixture.description,
                'source': source,
                'documents': data['documents'],
                'slices': data['slices'],
            },
        )
        return row

    def as_document(self) -> FixtureDocument:
        return parse_document({
            'kind': 'fixture',
            'name': self.name,
            'description': self.description,
            'documents': self.documents,
            'slices': self.slices,
        }, source=f"fixture {self.name}")

    @property
    def slice_count(self):
        return len(self.slices or [])

    def check_slices(self) -> list[str]:
        """Recompute the expected slices with their acceptors"""
        return fixture_slice_diagnostics(self.as_document())


class ComparisonRun(models.Model):
    """A stored language comparison report"""
    left_label = models.CharField(max_length=255)
    right_label = models.CharField(max_length=255)
    alphabet = models.JSONField(default=list)
    max_len = models.PositiveIntegerField()
    domain = models.CharField(max_length=50, default='all words')

    total = models.PositiveIntegerField(default=0)
    agreements = models.PositiveIntegerField(default=0)
    disagreements = models.JSONField(default=list, blank=True)
    exhausted = models.JSONField(default=list, blank=True)
    passed = models.BooleanField(default=False)

    created_at = models.DateTimeField(auto_now_add=True)

    class Meta:
        ordering = ['-created_at']

    def __str__(self):
        verdict = 'pass' if self.passed else 'fail'
        return f"{self.left_label} vs {self.right_label} (<= {self.max_len}, {verdict})"

    @classmethod
    def record(cls, report: ComparisonReport):
        data = report.to_dict()
        return cls.objects.create(
            left_label=report.left[:255],
            right_label=report.right[:255],
            alphabet=data['alphabet'],
            max_len=report.max_len,
            domain=report.domain,
            total=report.total,
            agreements=report.agreements,
            disagreements=data['disagreements'],
            exhausted=data['exhausted'],
            passed=report.passed,
        )

    @property
    def disagreement_count(self):
        return len(self.disagreements or [])

    @property
    def exhausted_count(self):
        return len(self.exhausted or [])
