from django.apps import AppConfig


class EllipticityConfig(AppConfig):
    name = 'ellipticity'
    verbose_name = "Obstruction certificates and homomorphism witnesses"
