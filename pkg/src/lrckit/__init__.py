"""
LRC toolkit - locally repairable codes over finite fields.

Constructs linear codes with all-symbol (r, delta)-locality, transforms
them (enlarge, puncture) and verifies distance, locality and optimality
by exact enumeration.
"""

__version__ = "0.1.0"
__author__ = "LRC toolkit contributors"
