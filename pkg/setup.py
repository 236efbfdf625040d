# -*- coding: utf-8 -*-

"""
Setup file for the schottky package.
"""

from setuptools import setup, find_packages

MAIN_PACKAGE = "schottky"
DESCRIPTION = "Exact geometric Schottky groups of the hyperbolic plane"
LICENSE = "MIT"
VERSION = "0.1.0"
KEYWORDS = ["hyperbolic", "schottky", "fuchsian", "moebius", "surfaces"]


CLASSIFIERS = [
    "Development Status :: 3 - Alpha",
    "Environment :: Console",
    "Intended Audience :: Science/Research",
    "License :: OSI Approved :: MIT License",
    "Natural Language :: English",
    "Programming Language :: Python",
    "Programming Language :: Python :: 3",
    "Topic :: Scientific/Engineering :: Mathematics",
]


DEPENDENCIES = [
    "numpy",
    "pandas",
    "networkx",
    "matplotlib",
    "colorama",
    "pyfiglet",
    "Pygments",
]


def readme():
    """Return the contents of the README.md file."""
    with open("README.md", encoding="utf8") as freadme:
        return freadme.read()


def setup_package():
    setup(
        name=MAIN_PACKAGE,
        version=VERSION,
        description=DESCRIPTION,
        include_package_data=True,
        install_requires=DEPENDENCIES,
        keywords=KEYWORDS,
        license=LICENSE,
        long_description=readme(),
        long_description_content_type="text/markdown",
        classifiers=CLASSIFIERS,
        setup_requires=["wheel"],
        packages=find_packages(exclude=["tests", "tests.*"]),
        entry_points={
            "console_scripts": [
                "schottky = schottky.cli:main",
            ]
        },
    )


if __name__ == "__main__":
    setup_package()
