#!/usr/bin/env python3

from setuptools import find_packages, setup

setup(
    packages=find_packages(exclude=["docs", "tests", "conftest.py"]),
    # can also be specified in pyproject.toml as tool.setuptools.script-files,
    # but it seems to be both "discouraged" and broken
    scripts=["bin/chainmix"],
)
