"""Numeric policy: every tolerance used by the library lives here.

All residual checks in the package read their thresholds from a single
:class:`Tolerances` instance so that a verification run can report the exact
numeric policy it was executed under.  The module-level default can be
replaced globally (the CLI does this for ``--tol`` overrides) or a custom
instance can be passed explicitly to the functions that accept one.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    """Thresholds for the residual checks, keyed by what they gate.

    ``matrix`` gates exact linear-algebra identities (Hermiticity,
    involutions, anticommutation, projector algebra).  ``positivity`` is a
    lower bound for smallest eigenvalues of operators that are positive
    definite in exact arithmetic.  ``rank`` is the singular-value threshold
    for subspace dimension counts.  The remaining entries correspond one to
    one with the residual names that appear in reports.
    """

    matrix: float = 1e-12
    positivity: float = 1e-10
    rank: float = 1e-10
    green: float = 1e-10
    theta: float = 1e-12
    weyl: float = 1e-12
    j_unitary: float = 1e-12
    membership: float = 1e-10
    intertwine: float = 1e-12
    c_square: float = 1e-10
    jc_positivity: float = 1e-10
    commutator_a: float = 1e-10
    commutator_s: float = 1e-10
    cm_span: float = 1e-10
    similarity: float = 1e-8
    eigen: float = 1e-12
    pairing: float = 1e-10

    def replace(self, **kwargs: float) -> "Tolerances":
        return dataclasses.replace(self, **kwargs)

    def as_dict(self) -> dict[str, float]:
        return {_REPORT_KEYS[f.name]: getattr(self, f.name) for f in dataclasses.fields(self)}


# Report/CLI key -> dataclass field.  The camelCase spellings are the ones
# emitted in JSON reports and accepted by ``--tol key=value``.
_REPORT_KEYS = {
    "matrix": "matrix",
    "positivity": "positivity",
    "rank": "rank",
    "green": "green",
    "theta": "theta",
    "weyl": "weyl",
    "j_unitary": "jUnitary",
    "membership": "membership",
    "intertwine": "intertwine",
    "c_square": "cSquare",
    "jc_positivity": "jcPositivity",
    "commutator_a": "commutatorA",
    "commutator_s": "commutatorS",
    "cm_span": "cmSpan",
    "similarity": "similarity",
    "eigen": "eigen",
    "pairing": "pairing",
}
_FIELD_BY_KEY = {v: k for k, v in _REPORT_KEYS.items()}
# snake_case spellings are accepted too
_FIELD_BY_KEY.update({k: k for k in _REPORT_KEYS})

_default = Tolerances()


def get_tolerances() -> Tolerances:
    """Return the tolerance set currently in force."""
    return _default


def set_tolerances(tol: Tolerances) -> None:
    """Replace the global tolerance set (affects defaulted arguments)."""
    global _default
    _default = tol


def override(base: Tolerances, overrides: dict[str, float]) -> Tolerances:
    """Apply ``{key: value}`` overrides, accepting report or field names.

    Raises ``KeyError`` for an unknown tolerance name.
    """
    fields = {}
    for key, value in overrides.items():
        if key not in _FIELD_BY_KEY:
            raise KeyError(f"unknown tolerance name: {key!r}")
        fields[_FIELD_BY_KEY[key]] = float(value)
    return base.replace(**fields)
