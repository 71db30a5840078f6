from django.apps import AppConfig


class ApproachabilityConfig(AppConfig):
    name = 'approachability'
