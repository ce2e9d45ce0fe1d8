from django.apps import AppConfig


class EigenconeConfig(AppConfig):
    name = 'eigencone'
    verbose_name = 'Tropical eigencones'
