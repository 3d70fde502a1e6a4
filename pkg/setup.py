from setuptools import setup, find_packages

setup(
    name="pipframe",
    version="1.0.0",
    description="Reproducing pairs, partial inner product spaces and their numerical checks",
    packages=find_packages(include=["src", "src.*"]),
    python_requires=">=3.10",
    install_requires=[
        "numpy>=1.24.0,<2.0.0",
        "scipy>=1.10.0",
        "jsonschema>=4.18.0",
        "tomli>=1.1.0; python_version < '3.11'",
    ],
    extras_require={
        "test": [
            "pytest>=7.4.0",
            "hypothesis>=6.80.0",
        ],
    },
    entry_points={
        "console_scripts": ["pipframe=src.main:main"],
    },
)
