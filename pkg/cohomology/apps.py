from django.apps import AppConfig


class CohomologyConfig(AppConfig):
    name = 'cohomology'
    verbose_name = "Graded cohomology rings and exterior algebras"
