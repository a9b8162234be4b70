#!/usr/bin/env python
# -*- coding: utf-8 -*-

from setuptools import find_packages, setup

setup(name="advance_purchase",
      version="0.1.0",
      description="Advance-purchase pricing against loss-averse consumers",
      packages=find_packages(),
      install_requires=["numpy >= 1.17", "scipy >= 1.4", "pandas >= 1.5"],
      entry_points={"console_scripts": ["apgame=advance_purchase.bin.apgame:main"]})
