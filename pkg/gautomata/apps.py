from django.apps import AppConfig


class GautomataConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'gautomata'
