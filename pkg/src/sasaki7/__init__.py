"""Exact verification of the G2 geometry of the 3-Sasakian space Sp(2)/Sp(1)."""

from __future__ import annotations

from .clifford import CliffordRep, build_rep, canonical_spinor, induced_g2_form, spin_lift
from .coset import CosetSpace, ConnectionMap, curvature, d_invariant, holonomy_closure, levi_civita, validate
from .exterior import Form, Metric, eta, form_inner, hodge, interior, wedge
from .sasaki import SasakiModel, build_model, canonical_omega, characteristic_torsion, type_split
from .scalars import ExactField, FloatField, Surd, make_field

__all__ = [
    "CliffordRep", "ConnectionMap", "CosetSpace", "ExactField", "FloatField", "Form", "Metric",
    "SasakiModel", "Surd", "build_model", "build_rep", "canonical_omega", "canonical_spinor",
    "characteristic_torsion", "curvature", "d_invariant", "eta", "form_inner", "hodge",
    "holonomy_closure", "induced_g2_form", "interior", "levi_civita", "make_field", "spin_lift",
    "type_split", "validate", "wedge",
]
