"""
This setup script only exists to allow an editable install of :mod:`rsdlog`
with pip. The package metadata lives in "pyproject.toml".
"""

from setuptools import setup

setup()
