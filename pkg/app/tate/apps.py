from django.apps import AppConfig


class TateConfig(AppConfig):
    name = 'tate'
    verbose_name = 'Local fiber analysis'
