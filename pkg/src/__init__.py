"""
Kawamata blow-up engine
Kawamata blow-ups of Fano weighted complete intersections and their 2-ray games
"""

__version__ = "1.0.0"
__author__ = "Kawamata blow-up engine"
