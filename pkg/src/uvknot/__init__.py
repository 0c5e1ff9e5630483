"""uvknot: bigraded knot invariants over F[U,V]/(UV) from bridge diagrams.

The invariant of an oriented knot is the homology of a chain complex
built by tensoring elementary slice bimodules (crossings, maxima,
minima) down a bridge-position diagram; its generators correspond to
Kauffman states.  Derived invariants: the hat-flavor homology table,
the symmetrized Alexander polynomial and the concordance-type integers
tau, nu, epsilon and nu_p.
"""

__version__ = "0.1.0"

from uvknot.diagram import Diagram, OrientedDiagram, mirror, orient, parse_diagram, reverse
from uvknot.homology import invariants
from uvknot.rings import ring_from_spec
from uvknot.tensor import pipeline

__all__ = [
    "Diagram",
    "OrientedDiagram",
    "parse_diagram",
    "orient",
    "mirror",
    "reverse",
    "pipeline",
    "invariants",
    "ring_from_spec",
    "__version__",
]
