"""chordlab: exact enumeration of chord diagrams, the functional identities
and bijections relating their subclasses, the factorially divergent
asymptotics of the connected and 2-connected counts, and the tree-level
cancellation of transformed free field theories."""

from .chord import ChordDiagram, census, enumerate_diagrams
from .fps import FormalPowerSeries
from .gfseries import named_series, verify_identity
from .bijections import nabla, nabla_inv, phi, phi_inv, theta, theta_inv
from .asymptotics import asymptotic_fit
from .yukawa import TadpoleGraph, enumerate_tadpoles, lambda_bij, psi, psi_inv

__version__ = "0.1.0"

__all__ = [
    "ChordDiagram",
    "FormalPowerSeries",
    "TadpoleGraph",
    "asymptotic_fit",
    "census",
    "enumerate_diagrams",
    "enumerate_tadpoles",
    "lambda_bij",
    "nabla",
    "nabla_inv",
    "named_series",
    "phi",
    "phi_inv",
    "psi",
    "psi_inv",
    "theta",
    "theta_inv",
    "verify_identity",
    "__version__",
]
