from django.apps import AppConfig


class UncertaintyAppConfig(AppConfig):
    name = 'uncertainty_app'
    verbose_name = 'Uncertainty-aware cross-modal retrieval'
