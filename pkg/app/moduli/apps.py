from django.apps import AppConfig


class ModuliConfig(AppConfig):
    name = 'moduli'
    verbose_name = 'Shtuka moduli surfaces'
