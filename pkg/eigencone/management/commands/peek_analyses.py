from django.core.management.base import BaseCommand
from django.db.models import Count
from eigencone.models import Analysis


class Command(BaseCommand):
    help = "Print counts per decision and the latest stored tropeig runs"

    def add_arguments(self, parser):
        parser.add_argument('--limit', type=int, default=10, help='Number of runs to list')

    def handle(self, *args, **options):
        total = Analysis.objects.count()
        self.stdout.write(self.style.SUCCESS(f"Total runs: {total}"))
        for row in Analysis.objects.values('decision').annotate(count=Count('id')).order_by('decision'):
            self.stdout.write(f"  {row['decision']:<13} {row['count']}")

        self.stdout.write(f"\nLatest {options['limit']}:")
        for obj in Analysis.objects.only(
            "id", "task", "decision", "seed", "tolerance", "duration_ms", "created_at"
        )[:options['limit']]:
            self.stdout.write(
                f"- #{obj.id} | {obj.created_at:%Y-%m-%d %H:%M} | {obj.get_summary()}"
            )
