"""Numerical verification of Lagrangian surface geometry in S^2 x S^2.

Thin python layer over the C++ core: catalog surfaces, pointwise analyzers,
sinh-Gordon utilities, and the Laplace spectrum / index machinery.
"""

import json as _json

try:
    from ._s2xs2 import *  # installed package layout
    from ._s2xs2 import __version__
except ImportError:  # build-tree layout: extension module on PYTHONPATH
    from _s2xs2 import *
    from _s2xs2 import __version__

from ._wrappers import analyze, spectrum, verify

__all__ = [
    "__version__",
    "complete_K", "complete_E", "jacobi", "jacobi_derivatives",
    "catalog", "surface_point", "lagrangian_residual", "associated_jacobian",
    "area", "degree", "analyze", "analyze_json", "export_field",
    "sg_residual", "integrate_reduced", "reconstruct", "lawson_solution",
    "spectrum", "spectrum_json", "verify", "verify_json", "set_workers",
]
