"""
Global mixedideals settings and flags.
"""
DEBUG = False
VERBOSE = False
QUIET = False
