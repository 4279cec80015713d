"""Installation script for eigenfib."""
import os

try:
    from setuptools import setup
except ImportError:
    from distutils.core import setup

# Project details
project_name = 'eigenfib'
project_version = __import__(project_name).__version__
project_readme_fname = 'README.rst'
project_pkgs = [path for (path, dirs, files) in os.walk(project_name)
                if '__init__.py' in files]


# README
with open(project_readme_fname) as f:
    project_readme = f.read()


# Project setup
setup(
    name = project_name,
    version = project_version,
    description = 'Eigenfunction and minimal fibre checks on symmetric spaces',
    long_description = project_readme,
    author = 'eigenfib developers',

    packages = project_pkgs,
    python_requires = '>=3.8',
    install_requires = [
        'numpy>=1.17',
        'scipy>=1.4',
    ],

    entry_points={
        'console_scripts': [
            'eigenfib = eigenfib.cli:parse',
        ]
    },

    classifiers = [
        'Development Status :: 3 - Alpha',
        'Programming Language :: Python :: 3',
        'Topic :: Scientific/Engineering :: Mathematics',
    ]
)
