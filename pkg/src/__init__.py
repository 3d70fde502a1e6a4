"""pipframe - reproducing pairs, partial inner product spaces and their numerical checks"""
__version__ = "1.0.0"
