"""
hyperconv: bancada de aritmética exata para espaços de aproximação de
convergência e seus hiperespaços em carriers finitos.
"""
__version__ = "0.1.0"

REPORT_SCHEMA_VERSION = 1
