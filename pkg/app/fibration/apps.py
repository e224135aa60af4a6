from django.apps import AppConfig


class FibrationConfig(AppConfig):
    name = 'fibration'
    verbose_name = 'Elliptic fibrations'
