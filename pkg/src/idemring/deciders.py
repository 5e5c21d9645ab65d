"""Deciding Property K (some commutator of idempotents is a unit) and
Property K-bar (some anti-commutator of idempotents is a unit).

Three independent routes are offered and cross-checked in the tests:
brute force over idempotent pairs, the unit characterizations (a unit
difference/sum of idempotents with extra unit conditions), and the
classification rules for matrix, triangular, product and abelian rings.
"""

from __future__ import annotations

import itertools
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import expr as ex
from .errors import CapExceeded, ConsistencyViolation, NotAKWitness, NotApplicable, NotCommutativeBase, NotIdealError
from .rings import CHUNK, Element, FiniteRing, MatrixRing, build_ring
from .structure import (IdealSet, det, ideal_closure, is_abelian, is_local, jacobson_radical, quotient,
                        trace)

DEFAULT_MAX_PAIRS = 5_000_000
IDEAL_LATTICE_CAP = 64

K, KBAR = "K", "Kbar"
_I64 = np.int64


def _norm_property(prop: str) -> str:
    p = prop.lower().replace("-", "").replace("_", "")
    if p == "k":
        return K
    if p in ("kbar", "kb"):
        return KBAR
    raise ValueError(f"unknown property {prop!r} (expected 'k' or 'kbar')")


@dataclass
class PropertyVerdict:
    property: str
    ring: str
    holds: bool
    witness: Optional[tuple[Element, Element]]
    method: str  # "brute", "units" or "theorem"
    stats: dict = field(default_factory=dict)
    certificate: dict = field(default_factory=dict)
    elapsed_ms: float = 0.0

    def __post_init__(self):
        if self.witness is None:
            return
        e, e2 = self.witness
        if not (e.is_idempotent() and e2.is_idempotent()):
            raise ConsistencyViolation(f"witness of {self.ring} is not a pair of idempotents")
        value = e * e2 - e2 * e if self.property == K else e * e2 + e2 * e
        if not value.is_unit():
            raise ConsistencyViolation(f"witness ({e}, {e2}) of {self.ring} does not give a unit")

    def to_dict(self) -> dict:
        # timing is left out so reports stay reproducible
        return {
            "property": self.property,
            "ring": self.ring,
            "holds": self.holds,
            "witness": None if self.witness is None else [str(x) for x in self.witness],
            "method": self.method,
            "stats": dict(self.stats),
            "certificate": dict(self.certificate),
        }


# ---------------------------------------------------------------------------
# brute force


def _row_hits(R: FiniteRing, prop: str, E: np.ndarray, lo: int, hi: int):
    """Least (i, j) with lo <= i < hi such that the pair (E[i], E[j]) works."""
    n = len(E)
    block = max(1, CHUNK // max(n, 1))
    col = E[None, :]
    for start in range(lo, hi, block):
        rows = E[start:min(hi, start + block), None]
        a, b = R._mul(rows, col), R._mul(col, rows)
        val = R._sub(a, b) if prop == K else R._add(a, b)
        hit = R.unit_mask[val]
        if hit.any():
            i, j = np.unravel_index(int(np.argmax(hit)), hit.shape)
            return start + int(i), int(j)
    return None


def _worker(expr_text: str, max_card: int, prop: str, lo: int, hi: int):
    R = build_ring(expr_text, max_card)
    return _row_hits(R, prop, R.idempotent_codes, lo, hi)


def _pair_budget(R: FiniteRing, max_pairs: int) -> int:
    n = len(R.idempotent_codes)
    if n * n > max_pairs:
        raise CapExceeded(f"{R.expr} has {n} idempotents; {n * n} pairs exceed the budget {max_pairs}")
    return n


def _brute(R: FiniteRing, prop: str, max_pairs: int, jobs: int, max_card: int) -> PropertyVerdict:
    t0 = time.perf_counter()
    n = _pair_budget(R, max_pairs)
    E = R.idempotent_codes
    if jobs <= 1 or n < 2:
        hit = _row_hits(R, prop, E, 0, n)
    else:
        bounds = np.linspace(0, n, min(n, 4 * jobs) + 1).astype(int)
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futs = [pool.submit(_worker, str(R.expr), max_card, prop, int(lo), int(hi))
                    for lo, hi in zip(bounds[:-1], bounds[1:]) if hi > lo]
            hits = [f.result() for f in futs]
        found = [h for h in hits if h is not None]
        # row-major order over sorted codes is lexicographic order
        hit = min(found) if found else None
    witness = None
    examined = n * n
    if hit is not None:
        i, j = hit
        witness = (Element(R, int(E[i])), Element(R, int(E[j])))
        examined = i * n + j + 1
    return PropertyVerdict(
        property=prop, ring=str(R.expr), holds=hit is not None, witness=witness, method="brute",
        stats={"idempotents": n, "pairs_examined": examined},
        elapsed_ms=1000 * (time.perf_counter() - t0),
    )


def has_property_k(R: FiniteRing, max_pairs: int = DEFAULT_MAX_PAIRS, jobs: int = 1,
                   max_card: int | None = None) -> PropertyVerdict:
    """Exhaustive search for idempotents e, e' with ee' - e'e a unit."""
    from .rings import DEFAULT_MAX_CARD
    return _brute(R, K, max_pairs, jobs, max_card or max(DEFAULT_MAX_CARD, R.card))


def has_property_kbar(R: FiniteRing, max_pairs: int = DEFAULT_MAX_PAIRS, jobs: int = 1,
                      max_card: int | None = None) -> PropertyVerdict:
    """Exhaustive search for idempotents e, e' with ee' + e'e a unit."""
    from .rings import DEFAULT_MAX_CARD
    return _brute(R, KBAR, max_pairs, jobs, max_card or max(DEFAULT_MAX_CARD, R.card))


# ---------------------------------------------------------------------------
# unit characterizations


def _via_units(R: FiniteRing, prop: str, max_pairs: int) -> PropertyVerdict:
    """K: a unit v = e - e' with 1 + v and 1 - v units.
    K-bar: a unit u = e + e' with 1 - u a unit.

    The least such v (resp. u) by code is reported together with the
    least decomposition into idempotents.
    """
    t0 = time.perf_counter()
    n = _pair_budget(R, max_pairs)
    E = R.idempotent_codes
    unit = R.unit_mask
    one = R.one_code
    good = np.zeros(R.card, dtype=bool)
    block = max(1, CHUNK // max(n, 1))
    for start in range(0, n, block):
        rows = E[start:start + block, None]
        if prop == K:
            v = R._sub(rows, E[None, :])
            ok = unit[v] & unit[R._add(one, v)] & unit[R._sub(one, v)]
        else:
            v = R._add(rows, E[None, :])
            ok = unit[v] & unit[R._sub(one, v)]
        good[v[ok]] = True
    hits = np.flatnonzero(good)
    witness, cert = None, {}
    if len(hits):
        target = int(hits[0])
        for i in range(n):
            v = R._sub(E[i], E) if prop == K else R._add(E[i], E)
            j = np.flatnonzero(v == target)
            if len(j):
                witness = (Element(R, int(E[i])), Element(R, int(E[j[0]])))
                break
        cert = {"v" if prop == K else "u": R.render(target), "candidates": int(len(hits))}
    return PropertyVerdict(
        property=prop, ring=str(R.expr), holds=bool(len(hits)), witness=witness, method="units",
        stats={"idempotents": n, "pairs_examined": n * n}, certificate=cert,
        elapsed_ms=1000 * (time.perf_counter() - t0),
    )


def property_k_via_units(R: FiniteRing, max_pairs: int = DEFAULT_MAX_PAIRS) -> PropertyVerdict:
    return _via_units(R, K, max_pairs)


def property_kbar_via_units(R: FiniteRing, max_pairs: int = DEFAULT_MAX_PAIRS) -> PropertyVerdict:
    return _via_units(R, KBAR, max_pairs)


# ---------------------------------------------------------------------------
# classification rules


def one_sum_two_units(T: FiniteRing) -> Optional[tuple[Element, Element]]:
    """Least pair of units (a, b) with a + b = 1, or None."""
    U = np.flatnonzero(T.unit_mask).astype(_I64)
    b = T._sub(T.one_code, U)
    ok = T.unit_mask[b]
    if not ok.any():
        return None
    i = int(np.argmax(ok))
    return Element(T, int(U[i])), Element(T, int(b[i]))


def _two_is_unit(T: FiniteRing) -> bool:
    return bool(T.unit_mask[T._from_int(2)])


def classify_matrix_ring(n: int, T: FiniteRing) -> tuple[PropertyVerdict, PropertyVerdict]:
    """Predicted K and K-bar for the n x n matrix ring over a local or commutative T.

    K holds iff n is even and at least 4, or n = 2 and 1 is a sum of two
    units of T.  K-bar additionally holds when n is odd and 2 is a unit.
    """
    name = str(ex.Mat(n, T.expr))
    if T.card == 1:
        rule = "zero ring"
        return (PropertyVerdict(K, name, True, None, "theorem", certificate={"rule": rule}),
                PropertyVerdict(KBAR, name, True, None, "theorem", certificate={"rule": rule}))
    if not (T.is_commutative or is_local(T)):
        raise NotApplicable(
            f"{T.expr} is neither local nor commutative; the matrix classification can fail over such rings")
    pair = one_sum_two_units(T) if n == 2 else None
    two = _two_is_unit(T)
    if n % 2 == 0 and n >= 4:
        k, kb, rule = True, True, "n even and n >= 4"
    elif n == 2:
        k = kb = pair is not None
        rule = "n = 2 and 1 is a sum of two units" if k else "n = 2 and 1 is not a sum of two units"
    else:
        k, kb = False, two
        rule = "n odd and 2 is a unit" if two else "n odd and 2 is not a unit"
    cert = {"rule": rule}
    if pair is not None:
        cert["units"] = [str(pair[0]), str(pair[1])]
    return (PropertyVerdict(K, name, k, None, "theorem", certificate=dict(cert)),
            PropertyVerdict(KBAR, name, kb, None, "theorem", certificate=dict(cert)))


def _predict(R: FiniteRing) -> tuple[bool, bool, str]:
    e = R.expr
    if R.card == 1:
        return True, True, "zero ring"
    if isinstance(e, ex.Mat):
        k, kb = classify_matrix_ring(e.size, R.base)
        return k.holds, kb.holds, k.certificate["rule"]
    if isinstance(e, ex.UpperTri):
        k, kb, rule = _predict(R.base)
        return k, kb, f"upper triangular over base ({rule})"
    if isinstance(e, ex.Prod):
        parts = [_predict(f) for f in R.factors]
        return all(p[0] for p in parts), all(p[1] for p in parts), "componentwise over factors"
    if is_abelian(R):
        # abelian: commutators of idempotents vanish, and <1,1> = 2
        return False, _two_is_unit(R), "abelian ring"
    raise NotApplicable(f"no classification rule covers {e}")


def property_via_theorem(R: FiniteRing, prop: str) -> PropertyVerdict:
    """Prediction from the classification rules (no pair search)."""
    prop = _norm_property(prop)
    t0 = time.perf_counter()
    k, kb, rule = _predict(R)
    return PropertyVerdict(prop, str(R.expr), k if prop == K else kb, None, "theorem",
                           certificate={"rule": rule}, elapsed_ms=1000 * (time.perf_counter() - t0))


METHODS = ("brute", "units", "theorem")


def decide(R: FiniteRing, prop: str, methods=("brute",), max_pairs: int = DEFAULT_MAX_PAIRS,
           jobs: int = 1) -> tuple[list[PropertyVerdict], bool]:
    """Run the requested methods; returns the verdicts and whether they agree."""
    prop = _norm_property(prop)
    out = []
    for m in methods:
        if m == "brute":
            out.append(_brute(R, prop, max_pairs, jobs, max(R.card, 1)))
        elif m == "units":
            out.append(_via_units(R, prop, max_pairs))
        elif m == "theorem":
            out.append(property_via_theorem(R, prop))
        else:
            raise ValueError(f"unknown method {m!r}")
    return out, len({v.holds for v in out}) <= 1


# ---------------------------------------------------------------------------
# determinant and trace criteria for 2 x 2 matrices


def _two_by_two(R: FiniteRing) -> MatrixRing:
    if not (isinstance(R, MatrixRing) and R.k == 2 and not R.upper):
        raise NotApplicable(f"{R.expr} is not a 2 x 2 matrix ring")
    if not R.base.is_commutative:
        raise NotCommutativeBase(f"{R.base.expr} is not commutative")
    return R


def det_sum_identity_check(R: FiniteRing, A: Element, B: Element) -> bool:
    """det(A+B) + det(A-B) == 2(det A + det B) over a commutative base."""
    _two_by_two(R)
    lhs = det(R, A + B) + det(R, A - B)
    return lhs == 2 * (det(R, A) + det(R, B))


def trace_criterion_check(R: FiniteRing, e: Element, e2: Element) -> bool:
    """For a K-witness in a 2 x 2 matrix ring: tr(ee') and 1 - tr(ee') are units."""
    _two_by_two(R)
    if not (e.is_idempotent() and e2.is_idempotent() and (e * e2 - e2 * e).is_unit()):
        raise NotAKWitness(f"({e}, {e2}) is not a pair of idempotents with unit commutator")
    t = trace(R, e * e2)
    return t.is_unit() and (1 - t).is_unit()


# ---------------------------------------------------------------------------
# 2 x 2 matrices over commutative rings: equivalent criteria


def ideals(T: FiniteRing, cap: int = IDEAL_LATTICE_CAP) -> list[IdealSet]:
    """All ideals generated by at most two elements (distinct member sets)."""
    if T.card > cap:
        raise CapExceeded(f"ideal enumeration is limited to rings of at most {cap} elements")
    seen: dict[bytes, IdealSet] = {}
    for size in (1, 2):
        for gens in itertools.combinations(range(T.card), size):
            J = ideal_closure(T, [T.element(g) for g in gens])
            seen.setdefault(J.members.tobytes(), J)
    return sorted(seen.values(), key=lambda J: (len(J.members), J.members.tolist()))


def has_index_two_ideal(T: FiniteRing, cap: int = IDEAL_LATTICE_CAP) -> Optional[IdealSet]:
    for J in ideals(T, cap):
        if 2 * len(J.members) == T.card:
            return J
    return None


def diagonalizable_codes(R: MatrixRing) -> np.ndarray:
    """Codes of u diag(s, t) u^-1 over all units u and all s, t."""
    T = R.base
    s, t = np.meshgrid(np.arange(T.card), np.arange(T.card), indexing="ij")
    z = np.full(s.size, T.zero_code)
    D = R._enc(np.stack([np.stack([s.ravel(), z], -1), np.stack([z, t.ravel()], -1)], -2))
    U = np.flatnonzero(R.unit_mask).astype(_I64)
    Uinv = R.inverse_codes[U]
    out = R._mul(R._mul(U[:, None], D[None, :]), Uinv[:, None])
    return np.unique(out)


def matrix_criteria_2x2(T: FiniteRing, cap: int = IDEAL_LATTICE_CAP) -> dict:
    """Evaluate four equivalent statements about M_2(T), T commutative:

    1. 1 is a sum of two units of T;
    2. [e, d] is a unit for some idempotent e and diagonalizable d;
    3. <e, d> is a unit for some idempotent e and diagonalizable d;
    4. T has no ideal I with |T/I| = 2 (finite rings satisfy the exchange
       hypothesis this statement needs).
    """
    if not T.is_commutative:
        raise NotCommutativeBase(f"{T.expr} is not commutative")
    R = build_ring(ex.Mat(2, T.expr), max(T.card ** 4, 1))
    pair = one_sum_two_units(T)
    delta = diagonalizable_codes(R)
    found = {2: None, 3: None}
    for e in R.idempotent_codes:
        a, b = R._mul(e, delta), R._mul(delta, e)
        for key, val in ((2, R._sub(a, b)), (3, R._add(a, b))):
            if found[key] is None:
                hit = np.flatnonzero(R.unit_mask[val])
                if len(hit):
                    found[key] = (R.render(e), R.render(delta[hit[0]]))
        if found[2] is not None and found[3] is not None:
            break
    bad_ideal = has_index_two_ideal(T, cap)
    statements = {
        1: pair is not None,
        2: found[2] is not None,
        3: found[3] is not None,
        4: bad_ideal is None,
    }
    return {
        "ring": str(T.expr),
        "statements": statements,
        "agree": len(set(statements.values())) == 1,
        "witnesses": {
            "units": None if pair is None else [str(pair[0]), str(pair[1])],
            "commutator": found[2],
            "anti_commutator": found[3],
            "index_two_ideal": None if bad_ideal is None else bad_ideal.literals(),
        },
        "diagonalizable": int(len(delta)),
    }


def k_iff_kbar_check(T: FiniteRing, max_pairs: int = DEFAULT_MAX_PAIRS) -> bool:
    """Brute K and brute K-bar agree on M_2(T) for commutative T."""
    if not T.is_commutative:
        raise NotCommutativeBase(f"{T.expr} is not commutative")
    R = build_ring(ex.Mat(2, T.expr), max(T.card ** 4, 1))
    return has_property_k(R, max_pairs).holds == has_property_kbar(R, max_pairs).holds


# ---------------------------------------------------------------------------
# passing to quotients


@dataclass
class TransferReport:
    ring: str
    quotient: str
    reason: str  # "nil" or "radical"
    ring_k: bool
    ring_kbar: bool
    quotient_k: bool
    quotient_kbar: bool

    @property
    def agree(self) -> bool:
        return self.ring_k == self.quotient_k and self.ring_kbar == self.quotient_kbar

    def to_dict(self):
        return {"ring": self.ring, "quotient": self.quotient, "reason": self.reason,
                "ring_k": self.ring_k, "ring_kbar": self.ring_kbar,
                "quotient_k": self.quotient_k, "quotient_kbar": self.quotient_kbar, "agree": self.agree}


def idempotents_lift(R: FiniteRing, Q: FiniteRing, proj) -> bool:
    images = np.unique(proj.codes(R.idempotent_codes))
    return bool(np.array_equal(images, Q.idempotent_codes))


def quotient_transfer(R: FiniteRing, J: IdealSet, max_pairs: int = DEFAULT_MAX_PAIRS) -> TransferReport:
    """K and K-bar verdicts of R and R/J for J nil, or inside the radical with lifting."""
    if not J.is_ideal():
        raise NotIdealError("J is not an ideal")
    Q, proj = quotient(R, J)
    if bool(R.nilpotent_mask[J.members].all()):
        reason = "nil"
    else:
        rad = jacobson_radical(R)
        if not bool(rad.mask()[J.members].all()) or not idempotents_lift(R, Q, proj):
            raise NotApplicable("J is neither nil nor inside the radical with idempotents lifting")
        reason = "radical"
    return TransferReport(
        ring=str(R.expr), quotient=str(Q.expr), reason=reason,
        ring_k=has_property_k(R, max_pairs).holds, ring_kbar=has_property_kbar(R, max_pairs).holds,
        quotient_k=has_property_k(Q, max_pairs).holds, quotient_kbar=has_property_kbar(Q, max_pairs).holds,
    )


def quotient_transfer_check(R: FiniteRing, J: IdealSet, max_pairs: int = DEFAULT_MAX_PAIRS) -> bool:
    return quotient_transfer(R, J, max_pairs).agree
