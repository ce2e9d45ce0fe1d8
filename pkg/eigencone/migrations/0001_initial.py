# Generated by Django 6.0 on 2026-10-18 09:12

from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = [
    ]

    operations = [
        migrations.CreateModel(
            name='Analysis',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('task', models.CharField(db_index=True, max_length=32)),
                ('problem_json', models.JSONField()),
                ('options_json', models.JSONField(default=dict)),
                ('report_json', models.JSONField(blank=True, null=True)),
                ('decision', models.CharField(choices=[('yes', 'Yes'), ('no', 'No'), ('inconclusive', 'Inconclusive'), ('decided', 'Decided'), ('pending', 'Pending'), ('failed', 'Failed')], db_index=True, default='pending', max_length=20)),
                ('seed', models.IntegerField(default=0)),
                ('tolerance', models.FloatField(default=0.0)),
                ('duration_ms', models.PositiveIntegerField(default=0)),
                ('error', models.TextField(blank=True)),
                ('created_at', models.DateTimeField(auto_now_add=True)),
                ('updated_at', models.DateTimeField(auto_now=True)),
            ],
            options={
                'ordering': ['-created_at'],
            },
        ),
    ]
