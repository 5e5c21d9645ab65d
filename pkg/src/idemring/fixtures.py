"""Small fixed examples that delimit the theory: elements that look like
witnesses but are not, one-sided conditions, and obstructions."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .idem_ops import bott_duffin, find_conjugator
from .recognizer import (Witness, commutator_one_search, idempotent_witness_to_squarezero, mod_two_recognition,
                         not_m2_certificate)
from .rings import build_ring
from .structure import matrix_unit


@dataclass
class FixtureResult:
    name: str
    ring: str
    passed: bool
    checks: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)

    def to_dict(self):
        return {"name": self.name, "ring": self.ring, "passed": self.passed,
                "checks": dict(self.checks), "details": dict(self.details)}


def _result(name, R, checks, **details):
    checks = {k: bool(v) for k, v in checks.items()}
    return FixtureResult(name, str(R.expr), all(checks.values()), checks, details)


def _comm(x, y):
    return x * y - y * x


def tripotent_completable_3x3(ring="M(3,Z(2))") -> FixtureResult:
    """w^3 = w and [w, w1] a unit, yet |R| rules out a 2 x 2 matrix structure."""
    R = build_ring(ring)
    w = R([[1, 1, 0], [0, 0, 1], [0, 0, -1]])
    w1 = R([[1, 0, 0], [0, 0, 0], [1, 1, 0]])
    c = _comm(w, w1)
    cert = not_m2_certificate(R)
    return _result("tripotent_completable_3x3", R, {
        "w^3 = w": w * w * w == w,
        "[w,w1] as expected": c == R([[0, -1, 0], [1, 1, 0], [-2, -2, -1]]),
        "[w,w1] unit": c.is_unit(),
        "not a 2x2 matrix ring": cert is not None,
    }, commutator=str(c), obstruction=cert)


def nilpotent_completable_3x3(ring="M(3,Z(2))") -> FixtureResult:
    R = build_ring(ring)
    w = R([[0, 1, 0], [0, 0, 1], [0, 0, 0]])
    w2 = R([[0, 0, 0], [1, 0, 1], [1, 0, 0]])
    c = _comm(w, w2)
    cert = not_m2_certificate(R)
    return _result("nilpotent_completable_3x3", R, {
        "w^3 = 0": w * w * w == R.zero,
        "w^2 != 0": w * w != R.zero,
        "[w,w2] as expected": c == R([[1, 0, 1], [1, -1, 0], [0, -1, 0]]),
        "[w,w2] unit": c.is_unit(),
        "not a 2x2 matrix ring": cert is not None,
    }, commutator=str(c), obstruction=cert)


def similar_without_unit_commutator(ring="M(2,Z(2))") -> FixtureResult:
    """E11, E22 are pairwise similar with complements, but [E11,E22] = 0; and
    [E11, E12+E21] is a unit although E11 (E12+E21) E11 = 0."""
    R = build_ring(ring)
    e, e2 = matrix_unit(R, 1, 1), matrix_unit(R, 2, 2)
    four = {"e": e, "e'": e2, "f": R.one - e, "f'": R.one - e2}
    names = list(four)
    conj = {}
    for i, s in enumerate(names):
        for t in names[i + 1:]:
            u = find_conjugator(R, four[s], four[t])
            conj[f"{s}->{t}"] = None if u is None else str(u)
    r = matrix_unit(R, 1, 2) + matrix_unit(R, 2, 1)
    return _result("similar_without_unit_commutator", R, {
        "pairwise similar": all(v is not None for v in conj.values()),
        "[e,e'] = 0": _comm(e, e2) == R.zero,
        "ee'e = 0": e * e2 * e == R.zero,
        "e' not Bott-Duffin invertible relative to e": not bott_duffin(R, e2, e).invertible,
        "[e,r] unit": _comm(e, r).is_unit(),
        "[e,r] = E12 - E21": _comm(e, r) == matrix_unit(R, 1, 2) - matrix_unit(R, 2, 1),
        "ere = 0": e * r * e == R.zero,
        "r not Bott-Duffin invertible relative to e": not bott_duffin(R, r, e).invertible,
    }, conjugators=conj)


def one_sided_bd_invertibility(ring="M(2,Z(2))") -> FixtureResult:
    """e' = 1 is Bott-Duffin invertible relative to e = E11 but not conversely."""
    R = build_ring(ring)
    e, e2 = matrix_unit(R, 1, 1), R.one
    return _result("one_sided_bd_invertibility", R, {
        "e' relative to e": bott_duffin(R, e2, e).invertible,
        "not e relative to e'": not bott_duffin(R, e, e2).invertible,
        "1-e-e' = -e": R.one - e - e2 == -e,
        "1-e-e' not a unit": not (R.one - e - e2).is_unit(),
    })


def sum_unit_difference_zero(ring="Z(5)") -> FixtureResult:
    """e = e' = 1 with 2 a unit: e + e' = 2 is a unit, e - e' = 0 is not."""
    R = build_ring(ring)
    e = R.one
    return _result("sum_unit_difference_zero", R, {
        "e+e' unit": (e + e).is_unit(),
        "e-e' = 0": e - e == R.zero,
        "e-e' not a unit": not (e - e).is_unit(),
    })


TRACE_BASES = ("Z(2)", "Z(3)", "Z(4)", "GF(2,[1,1,1])", "Prod(Z(2),Z(2))")


def trace_obstruction(base="Z(3)") -> FixtureResult:
    """Over commutative S every commutator in M_2(S) has trace 0 while tr(I) = 2,
    so [p,q] = 1 is impossible when 2 != 0 in S.  When 2 = 0 the argument gives
    nothing and [E12, E21] = E11 - E22 = 1 does occur; the exhaustive search
    must agree with this prediction."""
    S = build_ring(base)
    R = build_ring(f"M(2,{base})")
    two_zero = bool(S._from_int(2) == S.zero_code)
    allc = np.arange(R.card, dtype=np.int64)
    traces_zero = True
    for x in allc:
        c = R._sub(R._mul(x, allc), R._mul(allc, x))
        m = R._decode(c)
        tr = S._add(m[..., 0, 0], m[..., 1, 1])
        traces_zero &= bool(np.all(tr == S.zero_code))
    found = commutator_one_search(R)
    return _result("trace_obstruction", R, {
        "commutators have zero trace": traces_zero,
        "search agrees with trace prediction": (found is not None) == two_zero,
    }, two_is_zero=two_zero, solution=None if found is None else [str(found[0]), str(found[1])],
        obstruction_applies=not two_zero)


def completable_idempotent_variants(ring="M(2,Z(5))") -> FixtureResult:
    """e = E11 completed by r with r^2 = 1, r^2 = -1, r^3 = 1 and r^2 = 0."""
    R = build_ring(ring)
    e = matrix_unit(R, 1, 1)
    r2 = R([[0, 1], [1, 0]])
    r3 = R([[0, 1], [-1, 0]])
    r4 = R([[-1, 1], [-1, 0]])
    r7 = R([[1, 1], [-1, -1]])
    h = idempotent_witness_to_squarezero(R, e, r3)
    checks = {
        "r2^2 = 1": r2 * r2 == R.one,
        "r3^2 = -1": r3 * r3 == -R.one,
        "r4^3 = 1": r4 * r4 * r4 == R.one,
        "r7^2 = 0": r7 * r7 == R.zero,
        "r3 gives p = E12": h["p"] == matrix_unit(R, 1, 2),
        "r3 gives q = E21": h["q"] == matrix_unit(R, 2, 1),
    }
    for name, r in (("r2", r2), ("r3", r3), ("r4", r4), ("r7", r7)):
        checks[f"[e,{name}] unit"] = _comm(e, r).is_unit()
        Witness("IDEM", {"e": e, "r": r})
    return _result("completable_idempotent_variants", R, checks, h_witness=h.to_dict())


def anticommutator_mod_two(ring="M(2,Z(6))") -> FixtureResult:
    """An idempotent e and r with <e,r> a unit make R/2R a 2 x 2 matrix ring."""
    R = build_ring(ring)
    out = mod_two_recognition(R)
    if out is None:
        return _result("anticommutator_mod_two", R, {"anti-commutator witness exists": False})
    cert = out["certificate"]
    return _result("anticommutator_mod_two", R, {
        "anti-commutator witness exists": True,
        "bijection verified": cert.bijection_verified,
        "homomorphism verified": cert.homomorphism_verified,
    }, e=str(out["e"]), r=str(out["r"]), quotient=str(out["quotient"].expr),
        quotient_cardinality=out["quotient"].card, certificate=cert.to_dict())


def run_fixtures() -> list[FixtureResult]:
    out = [
        tripotent_completable_3x3("M(3,Z(2))"),
        tripotent_completable_3x3("M(3,Z(3))"),
        nilpotent_completable_3x3("M(3,Z(2))"),
        nilpotent_completable_3x3("M(3,Z(3))"),
        similar_without_unit_commutator("M(2,Z(2))"),
        similar_without_unit_commutator("M(2,Z(3))"),
        one_sided_bd_invertibility("M(2,Z(2))"),
        sum_unit_difference_zero("Z(5)"),
        sum_unit_difference_zero("M(2,Z(3))"),
        completable_idempotent_variants("M(2,Z(5))"),
        anticommutator_mod_two("M(2,Z(6))"),
        anticommutator_mod_two("M(2,Z(3))"),
    ]
    out += [trace_obstruction(b) for b in TRACE_BASES]
    return out
