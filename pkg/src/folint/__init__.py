"""Exact decision of rational first integrals for plane algebraic foliations.

The package decides, in exact arithmetic over Q or a simple number field,
whether a foliation of the projective plane given by a projective 1-form
admits a rational first integral, and computes a primitive one when it does.
"""

from .cluster import Configuration, DivisorClass, load_configuration
from .engine import Caps, IndependentSystem, Verdict, pipeline
from .numfield import NumberField, QQ
from .polyforms import HomogeneousForm, ProjectiveOneForm, parse_form
from .resolve import build_configuration

__version__ = "0.1.0"

__all__ = [
    "Caps", "Configuration", "DivisorClass", "HomogeneousForm",
    "IndependentSystem", "NumberField", "ProjectiveOneForm", "QQ", "Verdict",
    "build_configuration", "load_configuration", "parse_form", "pipeline",
]
