from django.apps import AppConfig


class EstimatorsConfig(AppConfig):
    name = 'estimators'
