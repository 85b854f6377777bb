"""Multilinear algebra over Z/p on wedge-3 and S^2 of wedge-2, and the invariant solver."""

from .invariants import InvariantProblem, builtin_action, invariant_space
from .lie import TensorHL3, jacobi_element, pi_map
from .wedge import (
    Sym2Elem,
    WedgeVector3,
    chi,
    contraction_C,
    form_d,
    form_J,
    form_Jt,
    form_Q,
    form_Theta,
    map_u,
)

__all__ = [
    "InvariantProblem",
    "Sym2Elem",
    "TensorHL3",
    "WedgeVector3",
    "builtin_action",
    "chi",
    "contraction_C",
    "form_J",
    "form_Jt",
    "form_Q",
    "form_Theta",
    "form_d",
    "invariant_space",
    "jacobi_element",
    "map_u",
    "pi_map",
]
