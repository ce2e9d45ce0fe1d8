from django.db import models


class Analysis(models.Model):
    """Stored tropeig runs for history and asynchronous execution."""

    DECISION_CHOICES = (
        ("yes", "Yes"),
        ("no", "No"),
        ("inconclusive", "Inconclusive"),
        ("decided", "Decided"),
        ("pending", "Pending"),
        ("failed", "Failed"),
    )

    task = models.CharField(max_length=32, db_index=True)
    problem_json = models.JSONField()
    options_json = models.JSONField(default=dict)
    report_json = models.JSONField(blank=True, null=True)
    decision = models.CharField(max_length=20, choices=DECISION_CHOICES, default="pending", db_index=True)

    seed = models.IntegerField(default=0)
    tolerance = models.FloatField(default=0.0)
    duration_ms = models.PositiveIntegerField(default=0)
    error = models.TextField(blank=True)

    created_at = models.DateTimeField(auto_now_add=True)
    updated_at = models.DateTimeField(auto_now=True)

    class Meta:
        ordering = ["-created_at"]

    def __str__(self) -> str:
        return f"Analysis #{self.id} {self.task} ({self.decision})"

    def get_summary(self) -> str:
        return f"{self.task}: {self.decision} in {self.duration_ms}ms (seed {self.seed}, eps {self.tolerance:g})"
