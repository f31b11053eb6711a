"""Crossed bimodules, butterflies and categorical rings over finite Z-algebras."""

from .algebra import AlgExtension, Bimodule, FinRing, RingHom
from .butterfly import Butterfly, ButterflyMorphism, check_butterfly, compose, find_isomorphisms, fraction
from .crossed import CrossedBimodule, Homotopy, XbmMorphism, check_crossed, pi0, pi1
from .report import Report
from .zmod import FinAbGroup, GroupHom

__version__ = "0.1.0"

__all__ = [
    "AlgExtension", "Bimodule", "Butterfly", "ButterflyMorphism", "CrossedBimodule", "FinAbGroup",
    "FinRing", "GroupHom", "Homotopy", "Report", "RingHom", "XbmMorphism", "check_butterfly",
    "check_crossed", "compose", "find_isomorphisms", "fraction", "pi0", "pi1",
]
