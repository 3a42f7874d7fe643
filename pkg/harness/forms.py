from fractions import Fraction

from django import forms

from groups.algebra import FAMILY_CHOICES, FINITE
from machines.machine import MachineClass

DOCUMENT_KINDS = (
    ('group', 'Group'),
    ('gautomaton', 'G-automaton'),
    ('machine', 'Machine'),
    ('fixture', 'Fixture'),
)


class DocumentHeaderForm(forms.Form):
    """
    Top-level fields shared by every document.
    """
    kind = forms.ChoiceField(choices=DOCUMENT_KINDS)
    name = forms.CharField(max_length=200, required=False, strip=False)


class GroupHeaderForm(forms.Form):
    family = forms.ChoiceField(choices=FAMILY_CHOICES)
    order = forms.IntegerField(min_value=1, required=False)
    rank = forms.IntegerField(min_value=1, required=False)

    def clean(self):
        cleaned_data = super().clean()
        family = cleaned_data.get('family')
        if family == FINITE:
            if cleaned_data.get('rank') is not None:
                raise forms.ValidationError("A finite group has an order and a Cayley table, not a rank")
        elif family and cleaned_data.get('rank') is None:
            raise forms.ValidationError(f"A {family} group needs a rank")
        return cleaned_data


class MachineHeaderForm(forms.Form):
    machine_class = forms.ChoiceField(choices=MachineClass.choices)
    space_multiplier = forms.CharField(max_length=50, required=False)
    certificate = forms.ChoiceField(choices=MachineClass.choices, required=False)

    def clean_space_multiplier(self):
        value = self.cleaned_data.get('space_multiplier')
        if not value:
            return None
        try:
            multiplier = Fraction(value)
        except (ValueError, ZeroDivisionError):
            raise forms.ValidationError(f"{value!r} is not a rational number such as \"5\" or \"7/2\"")
        if multiplier <= 0:
            raise forms.ValidationError("The space multiplier must be positive")
        return multiplier

    def clean(self):
        cleaned_data = super().clean()
        if cleaned_data.get('machine_class') == MachineClass.LBA and not cleaned_data.get('space_multiplier'):
            if 'space_multiplier' not in self.errors:
                self.add_error('space_multiplier', "An lba document needs its space multiplier c")
        return cleaned_data


class SliceForm(forms.Form):
    """
    One expected language slice of a fixture.
    """
    document = forms.CharField(max_length=100)
    max_len = forms.IntegerField(min_value=0)
    oracle = forms.CharField(max_length=500, required=False)
