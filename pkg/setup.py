#!/usr/bin/env python3

from setuptools import setup, find_packages
import os

version = os.environ.get("CI_PIPELINE_IID")
if version is None:
    version = "0.0.dev0"

setup(
    name="qr-obstructions",
    version=version,
    description="Certificates and homomorphism witnesses for quasiregular ellipticity of manifold pairs",
    packages=find_packages(exclude=["*.tests"]),
    package_data={"ellipticity": ["fixtures/*.yaml"]},
    scripts=["manage.py"],
    python_requires=">=3.8",
    install_requires=[
        "django",
        "djangorestframework",
        "PyYAML",
        "jsonschema",
        "sympy",
    ],
)
