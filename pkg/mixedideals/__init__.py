"""
mixedideals - invariants of mixed product monomial ideals
"""

__version__ = '0.1.0'
