# Generated by Django 5.1.4 on 2026-10-17 09:12

from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = [
    ]

    operations = [
        migrations.CreateModel(
            name='ComparisonRun',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('left_label', models.CharField(max_length=255)),
                ('right_label', models.CharField(max_length=255)),
                ('alphabet', models.JSONField(default=list)),
                ('max_len', models.PositiveIntegerField()),
                ('domain', models.CharField(default='all words', max_length=50)),
                ('total', models.PositiveIntegerField(default=0)),
                ('agreements', models.PositiveIntegerField(default=0)),
                ('disagreements', models.JSONField(blank=True, default=list)),
                ('exhausted', models.JSONField(blank=True, default=list)),
                ('passed', models.BooleanField(default=False)),
                ('created_at', models.DateTimeField(auto_now_add=True)),
            ],
            options={
                'ordering': ['-created_at'],
            },
        ),
        migrations.CreateModel(
            name='Fixture',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('name', models.SlugField(max_length=100, unique=True)),
                ('kind', models.CharField(choices=[('group', 'Group'), ('gautomaton', 'G-automaton'), ('machine', 'Machine'), ('pair', 'G-automaton and machine')], default='gautomaton', max_length=20)),
                ('description', models.TextField(blank=True, help_text='What the fixture covers and where its slices come from')),
                ('source', models.CharField(blank=True, help_text='Corpus file the fixture was loaded from', max_length=255)),
                ('documents', models.JSONField(default=dict)),
                ('slices', models.JSONField(blank=True, default=list)),
                ('created_at', models.DateTimeField(auto_now_add=True)),
                ('updated_at', models.DateTimeField(auto_now=True)),
            ],
            options={
                'ordering': ['name'],
            },
        ),
    ]
