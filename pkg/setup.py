#!/usr/bin/env python
# -*- coding: utf-8 -*-
# *********************************************************************
# ziprec - recommendation via compression-based matrix completion
# Copyright (C) 2024 The ziprec developers
#
# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License
# along with this program.  If not, see <http://www.gnu.org/licenses/>.
# *********************************************************************

from setuptools import find_packages, setup


# as suggested on http://python-packaging.readthedocs.io/en/latest/metadata.html
def readme():
    with open("README.md") as f:
        return f.read()


setup(
    name="ziprec",
    version="1.0.0",
    description="ziprec - recommendation via compression-based matrix completion",
    long_description=readme(),
    long_description_content_type="text/markdown",
    author="The ziprec developers",
    license="GPL v3",
    classifiers=[
        "Development Status :: 4 - Beta",
        "Environment :: Console",
        "Intended Audience :: Science/Research",
        "Topic :: Scientific/Engineering :: Information Analysis",
        "License :: OSI Approved :: GNU General Public License v3 or later (GPLv3+)",
        "Operating System :: OS Independent",
        "Programming Language :: Python :: 3",
    ],
    keywords="recommender systems matrix completion compression kolmogorov complexity",
    packages=find_packages(exclude=["tests", "tests.*", "system_tests", "system_tests.*"]),
    python_requires=">=3.10.0",
    install_requires=["numpy", "scipy", "pandas", "semantic_version", "PyYAML", "scanf"],
    extras_require={
        "dev": [
            "flake8",
            "mock",
            "parameterized",
            "pytest",
            "pytest-cov",
            "coverage",
            "tox",
            "approvaltests",
            "pytest-approvaltests",
        ],
    },
    entry_points={
        "console_scripts": [
            "ziprec=ziprec.scripts.run:main",
        ],
    },
)
