# setup.py
from setuptools import setup, find_packages

# Read the contents of your README file
with open("README.md", "r", encoding="utf-8") as fh:
    long_description = fh.read()

setup(
    name="eqnv",
    version="0.1.0",  # Initial development version
    description="Exact equivariant non-vanishing checks for toric and fixed-point data",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=find_packages(
        exclude=["tests", "tests.*", "examples", "examples.*"]  # Exclude tests and examples from package
    ),
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "Topic :: Scientific/Engineering :: Mathematics",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Operating System :: OS Independent",
    ],
    python_requires=">=3.8",
    install_requires=[
        "sympy>=1.9",  # exact rank, determinant and inverse
        "pycddlib>=2.1,<3",  # exact vertex / half-space conversion (Matrix API, fraction mode)
    ],
    extras_require={
        "dev": [
            "pytest>=7.0.0",
            "flake8>=6.0.0",
            "mypy>=1.0.0",
        ]
    },
    entry_points={
        "console_scripts": [
            "eqnv=eqnv.cli.main:main",
        ],
    },
    include_package_data=True,
)
