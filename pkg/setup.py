#!/usr/bin/env python

from setuptools import setup

setup(
    version = '1.0',
    name = 'rotowave',
    description = 'Dispersion of small-amplitude waves in a rotating compressible fluid.',
    author = 'The rotowave developers',
    license = 'MIT',
    packages = ['rotowave', 'rotowave.tests'],
    install_requires = ['numpy', 'scipy'],
    test_suite = 'rotowave.tests',
    zip_safe = False,
    entry_points = {
        'console_scripts': [
            'rotowave = rotowave:main',
        ]
    }
)
