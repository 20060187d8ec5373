"""Annular Khovanov homology of links in the thickened annulus.

Diagrams are slice words (see :mod:`annular_khovanov.diagram`); the main
entry points are :func:`akh`, :func:`kh`, :func:`tkh`, the certificates and
the spectral-sequence tools in :mod:`annular_khovanov.spectral`.
"""

from .apps import (Verdict, akh, braid_certificate, colored_khr, kh, mirror_duality_report, tkh,
                   unlink_certificate)
from .cube import Cube, edge_incidence, resolve
from .diagram import (DiagramError, braid_to_sliceword, Kind, Slice, SliceSyntaxError, SliceWord, WidthError, cable,
                      disjoint_union, mirror, parse_braid_spec, parse_slice_word, seam_rotate,
                      serialize, word)
from .homology import QQ, ZZ, Coefficients, GradedGroup, homology, snf
from .spectral import (check_anticommutation, cube_filtration, khovanov_cube, pages,
                       winding_filtration)
from .tqft import ANNULAR, PLAIN, assemble

__version__ = "0.1.0"

__all__ = [
    "ANNULAR", "PLAIN", "QQ", "ZZ", "Coefficients", "Cube", "DiagramError", "GradedGroup",
    "Kind", "Slice", "SliceSyntaxError", "SliceWord", "Verdict", "WidthError", "akh",
    "assemble", "braid_certificate", "braid_to_sliceword", "cable", "check_anticommutation", "colored_khr",
    "cube_filtration", "disjoint_union", "edge_incidence", "homology", "kh", "khovanov_cube",
    "mirror", "mirror_duality_report", "pages", "parse_braid_spec", "parse_slice_word",
    "resolve", "seam_rotate", "serialize", "snf", "tkh", "unlink_certificate",
    "winding_filtration", "word",
]
