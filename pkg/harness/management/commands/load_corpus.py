import logging
from pathlib import Path

from django.conf import settings
from django.core.exceptions import ValidationError
from django.core.management.base import BaseCommand, CommandError

from harness.documents import FixtureDocument, document_diagnostics, load_document
from harness.models import Fixture, fixture_slice_diagnostics

logger = logging.getLogger(__name__)


class Command(BaseCommand):
    help = "Load the fixture corpus (*.fixture documents) into the database"

    def add_arguments(self, parser):
        parser.add_argument('--corpus', default=None, help="Corpus directory (default: GA_CORPUS_DIR)")
        parser.add_argument('--check', action='store_true', help="Recompute every slice before saving")

    def handle(self, *args, **options):
        corpus = Path(options['corpus'] or settings.GA_CORPUS_DIR)
        paths = sorted(corpus.glob('*.fixture'))
        if not paths:
            raise CommandError(f"No fixtures found in {corpus}", returncode=2)

        failures = 0
        for path in paths:
            try:
                fixture = load_document(path)
            except ValidationError as exc:
                failures += 1
                for message in exc.messages:
                    logger.error(message)
                    self.stderr.write(message)
                continue
            if not isinstance(fixture, FixtureDocument):
                failures += 1
                self.stderr.write(f"{path}: not a fixture document")
                continue
            diagnostics = document_diagnostics(fixture)
            if not diagnostics and options['check']:
                diagnostics = fixture_slice_diagnostics(fixture)
            if diagnostics:
                failures += 1
                for message in diagnostics:
                    self.stderr.write(f"{path}: {message}")
                continue
            row = Fixture.from_document(fixture, source=path.name)
            self.stdout.write(f"Loaded {row.name} ({row.kind}, {row.slice_count} slices)")

        if failures:
            raise CommandError(f"{failures} of {len(paths)} fixtures were not loaded", returncode=2)
        self.stdout.write(self.style.SUCCESS(f"Loaded {len(paths)} fixtures from {corpus}"))
