from django.contrib import admin, messages

from .models import ComparisonRun, Fixture


@admin.register(Fixture)
class FixtureAdmin(admin.ModelAdmin):
    """Corpus fixtures with their documents and expected language slices"""

    list_display = ('name', 'kind', 'slice_count', 'source', 'updated_at')
    list_filter = ('kind', 'updated_at')
    search_fields = ('name', 'description', 'source')
    readonly_fields = ('created_at', 'updated_at')

    fieldsets = (
        ('Basic Information', {
            'fields': ('name', 'kind', 'description', 'source')
        }),
        ('Documents', {
            'fields': ('documents',),
            'classes': ('collapse',)
        }),
        ('Expected Slices', {
            'fields': ('slices',)
        }),
        ('Timestamps', {
            'fields': ('created_at', 'updated_at'),
            'classes': ('collapse',)
        }),
    )

    ordering = ('name',)
    list_per_page = 50

    def slice_count(self, obj):
        return obj.slice_count
    slice_count.short_description = 'Slices'

    actions = ['check_slices']

    def check_slices(self, request, queryset):
        """Recompute the expected slices of the selected fixtures"""
        failing = 0
        for fixture in queryset:
            diagnostics = fixture.check_slices()
            if diagnostics:
                failing += 1
                self.message_user(request, f'{fixture.name}: ' + '; '.join(diagnostics), messages.ERROR)
        checked = queryset.count()
        self.message_user(request, f'{checked - failing} of {checked} fixtures reproduce their slices.')
    check_slices.short_description = "Recompute expected slices"


@admin.register(ComparisonRun)
class ComparisonRunAdmin(admin.ModelAdmin):
    """Recorded language comparisons"""

    list_display = ('left_label', 'right_label', 'max_len', 'total', 'agreements',
                    'disagreement_count', 'exhausted_count', 'passed', 'created_at')
    list_filter = ('passed', 'domain', 'created_at')
    search_fields = ('left_label', 'right_label')
    readonly_fields = ('created_at',)

    fieldsets = (
        ('Acceptors', {
            'fields': ('left_label', 'right_label', 'alphabet', 'max_len', 'domain')
        }),
        ('Outcome', {
            'fields': ('total', 'agreements', 'passed')
        }),
        ('Word Lists', {
            'fields': ('disagreements', 'exhausted'),
            'classes': ('collapse',)
        }),
        ('Timestamps', {
            'fields': ('created_at',),
            'classes': ('collapse',)
        }),
    )

    ordering = ('-created_at',)
    list_per_page = 50

    def disagreement_count(self, obj):
        return obj.disagreement_count
    disagreement_count.short_description = 'Disagreements'

    def exhausted_count(self, obj):
        return obj.exhausted_count
    exhausted_count.short_description = 'Exhausted'
