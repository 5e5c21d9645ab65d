"""Self-contained certificates embedded in reports, and their re-verification.

A certificate names its ring by expression and its elements by literal, so
it can be checked again from the JSON alone.
"""

from __future__ import annotations

import numpy as np

from .errors import RingError
from .idem_ops import _direct_sum
from .recognizer import KINDS, MatrixUnitSystem, Witness, _identity_codes, m2_isomorphism, matmul_codes
from .rings import build_ring
from .structure import left_ideal_codes, right_ideal_codes


def property_pair(R, prop: str, e, e2) -> dict:
    return {"type": "property_pair", "ring": str(R.expr), "property": prop, "e": str(e), "e'": str(e2)}


def similarity(R, source, target, conjugator) -> dict:
    return {"type": "similarity", "ring": str(R.expr), "source": str(source), "target": str(target),
            "conjugator": str(conjugator)}


def direct_sum(R, e, e2) -> dict:
    return {"type": "direct_sum", "ring": str(R.expr), "e": str(e), "e'": str(e2)}


def matrix_units(mus: MatrixUnitSystem) -> dict:
    return {"type": "matrix_units", "ring": str(mus.E11.ring.expr), **mus.to_dict()}


def witness(w: Witness) -> dict:
    return {"type": "witness", "ring": str(w.ring.expr), "kind": w.kind,
            "elements": {k: str(v) for k, v in w.elements.items()}}


def two_units(T, a, b) -> dict:
    return {"type": "two_units", "ring": str(T.expr), "a": str(a), "b": str(b)}


def henriksen(result) -> dict:
    d = result.to_dict()
    return {"type": "henriksen", "ring": d["base"], "m": d["m"], "U": d["U"], "V": d["V"],
            "U_inv": d["U_inv"], "V_inv": d["V_inv"]}


def cardinality_obstruction(R) -> dict:
    return {"type": "not_m2", "ring": str(R.expr), "cardinality": R.card}


def _check(cert: dict, max_card: int | None, seed: int) -> None:
    kind = cert["type"]
    R = build_ring(cert["ring"], max_card) if max_card else build_ring(cert["ring"])
    if kind == "property_pair":
        e, e2 = R(cert["e"]), R(cert["e'"])
        val = e * e2 - e2 * e if cert["property"] == "K" else e * e2 + e2 * e
        assert e.is_idempotent() and e2.is_idempotent(), "not idempotents"
        assert val.is_unit(), "not a unit"
    elif kind == "similarity":
        s, t, u = R(cert["source"]), R(cert["target"]), R(cert["conjugator"])
        assert u.is_unit(), "conjugator is not a unit"
        assert u.inverse() * s * u == t, "conjugation fails"
    elif kind == "direct_sum":
        e, e2 = R(cert["e"]), R(cert["e'"])
        assert _direct_sum(R, right_ideal_codes(R, e), right_ideal_codes(R, e2)), "eR + e'R is not direct"
    elif kind == "matrix_units":
        mus = MatrixUnitSystem(*(R(cert[k]) for k in ("E11", "E12", "E21", "E22")))
        m2_isomorphism(R, mus, seed=seed)
    elif kind == "witness":
        names = KINDS[cert["kind"]][0]
        Witness(cert["kind"], {n: R(cert["elements"][n]) for n in names})
    elif kind == "two_units":
        a, b = R(cert["a"]), R(cert["b"])
        assert a.is_unit() and b.is_unit() and a + b == R.one, "not units summing to 1"
    elif kind == "henriksen":
        m = cert["m"]
        codes = {k: np.array([[R(x).code for x in row] for row in cert[k]]) for k in ("U", "V", "U_inv", "V_inv")}
        I = _identity_codes(R, m)
        for A, B in (("U", "U_inv"), ("V", "V_inv")):
            assert np.array_equal(matmul_codes(R, codes[A], codes[B]), I), f"{A} {B} != I"
            assert np.array_equal(matmul_codes(R, codes[B], codes[A]), I), f"{B} {A} != I"
        assert np.array_equal(R._add(codes["U"], codes["V"]), I), "U + V != I"
    elif kind == "not_m2":
        n = R.card
        assert n == cert["cardinality"], "cardinality changed"
        r = round(n ** 0.25)
        assert all((r + d) ** 4 != n for d in (-1, 0, 1)), "cardinality is a fourth power"
    else:
        raise ValueError(f"unknown certificate type {kind!r}")


def collect(obj) -> list[dict]:
    """All certificates found anywhere inside a report payload."""
    out = []
    if isinstance(obj, dict):
        if obj.get("type") in CERT_TYPES and "ring" in obj:
            out.append(obj)
        else:
            for v in obj.values():
                out.extend(collect(v))
    elif isinstance(obj, list):
        for v in obj:
            out.extend(collect(v))
    return out


CERT_TYPES = {"property_pair", "similarity", "direct_sum", "matrix_units", "witness", "two_units",
              "henriksen", "not_m2"}


def recheck(report: dict, max_card: int | None = None, seed: int = 0) -> list[dict]:
    """Re-verify every certificate in a report; returns one record per certificate."""
    results = []
    for cert in collect(report.get("payload", report)):
        try:
            _check(cert, max_card, seed)
            results.append({"type": cert["type"], "ring": cert["ring"], "ok": True})
        except (AssertionError, RingError, ValueError, KeyError) as err:
            results.append({"type": cert["type"], "ring": cert["ring"], "ok": False, "error": str(err)})
    return results
