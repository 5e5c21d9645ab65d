"""Commutators of idempotents, Bott-Duffin invertibility and the classical
idempotent identities, both for single pairs and as exhaustive sweeps.

All identity helpers are written with ring operators so that the same code
evaluates one pair (``Element``) or a whole vector of partners
(``Elements``, yielding boolean arrays).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import ConsistencyViolation, MixedRingError, NotIdempotentError, VerificationFailed
from .rings import Element, Elements, FiniteRing
from .structure import corner, left_ideal_codes, right_ideal_codes

_I64 = np.int64


def _own(R: FiniteRing, *xs):
    for x in xs:
        if x.ring is not R:
            raise MixedRingError(f"element of {x.ring.expr} passed with ring {R.expr}")


def _need_idempotent(R: FiniteRing, *es: Element):
    _own(R, *es)
    for e in es:
        if not e.is_idempotent():
            raise NotIdempotentError(f"{e} is not an idempotent of {R.expr}")


def commutator(R: FiniteRing, x, y):
    """xy - yx."""
    _own(R, x, y)
    return x * y - y * x


def anti_commutator(R: FiniteRing, x, y):
    """xy + yx."""
    _own(R, x, y)
    return x * y + y * x


def _chain_eq(*values):
    ok = values[0] == values[1]
    for a, b in zip(values[1:], values[2:]):
        ok = ok & (a == b)
    return ok


# ---------------------------------------------------------------------------
# Bott-Duffin invertibility


@dataclass
class BottDuffin:
    invertible: bool
    bd_inverse: Optional[Element]
    condition_bits: tuple[bool, bool, bool, bool]


def _corner_unit(R: FiniteRing, e: Element, x) -> np.ndarray | bool:
    """Whether x (already inside eRe) is a unit of the corner ring eRe."""
    if e.code == R.one_code:
        return R.unit_mask[x.code]
    S = corner(R, e)
    return S.unit_mask[S.index(x.code)]


def bd_condition_bits(R: FiniteRing, a, e: Element):
    """The four equivalent conditions, as booleans or boolean arrays:

    eae is a unit of eRe; 1-e+ae, 1-e+ea and 1-e+eae are units of R.
    """
    f = R.one - e
    eae = e * a * e
    return (
        _corner_unit(R, e, eae),
        (f + a * e).is_unit(),
        (f + e * a).is_unit(),
        (f + eae).is_unit(),
    )


def bott_duffin(R: FiniteRing, a: Element, e: Element) -> BottDuffin:
    """Bott-Duffin invertibility of ``a`` relative to the idempotent ``e``."""
    _need_idempotent(R, e)
    _own(R, a)
    bits = tuple(bool(b) for b in bd_condition_bits(R, a, e))
    if len(set(bits)) != 1:
        raise ConsistencyViolation(f"Bott-Duffin conditions disagree for a={a}, e={e}: {bits}")
    inverse = None
    if bits[0]:
        eae = e * a * e
        if e.code == R.one_code:
            inverse = eae.inverse()
        else:
            S = corner(R, e)
            inv = int(S.inverse_codes[S.index(eae.code)])
            inverse = Element(R, int(S.members[inv]))
        if not (eae * inverse == e and inverse * eae == e):
            raise VerificationFailed("corner inverse check failed")
    return BottDuffin(bits[0], inverse, bits)


# ---------------------------------------------------------------------------
# identities


def kato_identities(R: FiniteRing, e, e2) -> dict:
    one = R.one
    d = e - e2
    c = one - e - e2
    plus = e + e2
    two_minus = 2 - e - e2
    r = one - e + e2 * e
    s = one - e2 + e * e2
    return {
        "kato_squares": d * d + c * c == one,
        "kato_factorization": _chain_eq(d * d, plus * two_minus, two_minus * plus),
        "kato_rs": _chain_eq(r * s, s * r, (one + e - e2) * (one - e + e2), c * c),
    }


def kr_identities(R: FiniteRing, e, e2) -> dict:
    f = R.one - e
    return {
        "kr_commutator": _chain_eq(e * e2 - e2 * e, (e - e2) * (e2 - f), (f - e2) * (e - e2)),
        "kr_anticommutator": _chain_eq(e * e2 + e2 * e, (e + e2) * (e2 - f), (e2 - f) * (e + e2)),
    }


def check_kato(R: FiniteRing, e: Element, e2: Element) -> dict[str, bool]:
    """Evaluate the three Kato identities for one idempotent pair."""
    _need_idempotent(R, e, e2)
    return {k: bool(v) for k, v in kato_identities(R, e, e2).items()}


def check_kr(R: FiniteRing, e: Element, e2: Element) -> dict[str, bool]:
    """Evaluate the Koliha-Rakočević factorizations for one idempotent pair."""
    _need_idempotent(R, e, e2)
    return {k: bool(v) for k, v in kr_identities(R, e, e2).items()}


def jacobson_lemma_check(R: FiniteRing, x, y):
    """(1 - xy is a unit) == (1 - yx is a unit)."""
    _own(R, x, y)
    return (R.one - x * y).is_unit() == (R.one - y * x).is_unit()


# ---------------------------------------------------------------------------
# similarity


def similarity_witness(R: FiniteRing, e: Element, e2: Element) -> Optional[Element]:
    """If u = e - e' is a unit, return u (then e = u^-1 (1-e') u)."""
    _need_idempotent(R, e, e2)
    u = e - e2
    if not u.is_unit():
        return None
    if u.inverse() * (R.one - e2) * u != e:
        raise VerificationFailed(f"conjugation by e-e' failed for e={e}, e'={e2}")
    return u


def find_conjugator(R: FiniteRing, a: Element, b: Element) -> Optional[Element]:
    """Least-code unit u with u^-1 a u = b, by exhaustive search."""
    _own(R, a, b)
    U = R.vector(np.flatnonzero(R.unit_mask))
    hits = np.flatnonzero(U.inverse() * a * U == b)
    return U[int(hits[0])] if len(hits) else None


@dataclass
class Similarity:
    source: str
    target: str
    conjugator: Element  # target = u^-1 * source * u
    path: str  # "constructive", "composed" or "search"

    def to_dict(self):
        return {"source": self.source, "target": self.target, "conjugator": str(self.conjugator), "path": self.path}


def _four_similarities(R: FiniteRing, named: dict[str, Element]) -> dict[tuple[str, str], Similarity]:
    """Conjugators between e, e', 1-e, 1-e' from differences that are units.

    For idempotents a, b with a - b a unit u, a = u^-1 (1-b) u.  Known edges
    are then composed along shortest paths; anything still missing falls back
    to exhaustive search.
    """
    one = R.one
    comp = {"e": "f", "f": "e", "e'": "f'", "f'": "e'"}
    edges: dict[tuple[str, str], Element] = {}
    for a in ("e", "f"):
        for b in ("e'",):
            for x, y in ((a, b), (b, a)):
                u = named[x] - named[y]
                if u.is_unit():
                    # named[x] = u^-1 named[comp[y]] u
                    edges[(comp[y], x)] = u
                    edges[(x, comp[y])] = u.inverse()
    names = list(named)
    found: dict[tuple[str, str], Similarity] = {}
    for i, s in enumerate(names):
        for t in names[i + 1:]:
            if (s, t) in edges:
                found[(s, t)] = Similarity(s, t, edges[(s, t)], "constructive")
                continue
            # BFS through the edge graph composing conjugators
            queue = deque([(s, one)])
            seen = {s}
            while queue:
                node, acc = queue.popleft()
                if node == t:
                    found[(s, t)] = Similarity(s, t, acc, "composed")
                    break
                for (x, y), u in edges.items():
                    if x == node and y not in seen:
                        seen.add(y)
                        queue.append((y, acc * u))
            if (s, t) not in found:
                u = find_conjugator(R, named[s], named[t])
                if u is not None:
                    found[(s, t)] = Similarity(s, t, u, "search")
    for (s, t), sim in found.items():
        u = sim.conjugator
        if u.inverse() * named[s] * u != named[t]:
            raise VerificationFailed(f"similarity {s} -> {t} does not verify")
    return found


# ---------------------------------------------------------------------------
# pair report


@dataclass
class PairReport:
    ring: FiniteRing
    e: Element
    e2: Element
    f: Element
    f2: Element
    comm: Element
    anti: Element
    r: Element
    s: Element
    comm_unit: bool
    anti_unit: bool
    diff_unit: bool
    sum_unit: bool
    fdiff_unit: bool
    one_minus_sum_unit: bool
    mutually_bd_invertible: bool
    kato: dict[str, bool]
    kr: dict[str, bool]
    similarities: dict[tuple[str, str], Similarity] = field(default_factory=dict)
    direct_sum: Optional[bool] = None
    left_direct_sum: Optional[bool] = None

    @property
    def all_similar(self) -> bool:
        return len(self.similarities) == 6

    def to_dict(self) -> dict:
        out = {
            "e": str(self.e), "e'": str(self.e2), "f": str(self.f), "f'": str(self.f2),
            "commutator": str(self.comm), "anti_commutator": str(self.anti),
            "r": str(self.r), "s": str(self.s),
            "flags": {
                "comm_unit": self.comm_unit, "anti_unit": self.anti_unit,
                "diff_unit": self.diff_unit, "sum_unit": self.sum_unit,
                "fdiff_unit": self.fdiff_unit, "one_minus_sum_unit": self.one_minus_sum_unit,
                "mutually_bd_invertible": self.mutually_bd_invertible,
            },
            "identities": {**self.kato, **self.kr},
        }
        if self.comm_unit:
            out["similarities"] = [s.to_dict() for s in self.similarities.values()]
            out["direct_sum"] = self.direct_sum
            out["left_direct_sum"] = self.left_direct_sum
        return out


DIRECT_SUM_ENUM_CAP = 16_384  # above this, A + B = R follows from counting


def _direct_sum(R: FiniteRing, A: np.ndarray, B: np.ndarray) -> bool:
    """Whether the additive subgroups A, B (sorted codes) satisfy A + B = R, A ∩ B = 0."""
    if len(np.intersect1d(A, B, assume_unique=True)) != 1:
        return False
    if len(A) * len(B) != R.card:
        return False
    if R.card > DIRECT_SUM_ENUM_CAP:
        # |A + B| = |A||B| / |A ∩ B| for subgroups, so A + B = R already
        return True
    sums = np.unique(R._add(A[:, None], B[None, :]))
    return len(sums) == R.card


def pair_report(R: FiniteRing, e: Element, e2: Element) -> PairReport:
    """Full diagnostic for an idempotent pair.

    When the commutator is a unit, additionally produces conjugators between
    all of e, e', 1-e, 1-e' and checks R = eR ⊕ e'R = Re ⊕ Re' as sets.
    """
    _need_idempotent(R, e, e2)
    one = R.one
    f, f2 = one - e, one - e2
    comm = commutator(R, e, e2)
    anti = anti_commutator(R, e, e2)
    bd_12 = bott_duffin(R, e2, e).invertible
    bd_21 = bott_duffin(R, e, e2).invertible
    rep = PairReport(
        ring=R, e=e, e2=e2, f=f, f2=f2, comm=comm, anti=anti,
        r=one - e + e2 * e, s=one - e2 + e * e2,
        comm_unit=comm.is_unit(), anti_unit=anti.is_unit(),
        diff_unit=(e - e2).is_unit(), sum_unit=(e + e2).is_unit(),
        fdiff_unit=(f - e2).is_unit(), one_minus_sum_unit=(one - e - e2).is_unit(),
        mutually_bd_invertible=bd_12 and bd_21,
        kato=check_kato(R, e, e2), kr=check_kr(R, e, e2),
    )
    if rep.comm_unit != (rep.diff_unit and rep.fdiff_unit) or \
            rep.anti_unit != (rep.sum_unit and rep.fdiff_unit) or \
            (rep.comm_unit and not rep.anti_unit):
        raise ConsistencyViolation(f"unit flags inconsistent for e={e}, e'={e2}")
    if rep.comm_unit:
        rep.similarities = _four_similarities(R, {"e": e, "e'": e2, "f": f, "f'": f2})
        rep.direct_sum = _direct_sum(R, right_ideal_codes(R, e), right_ideal_codes(R, e2))
        rep.left_direct_sum = _direct_sum(R, left_ideal_codes(R, e), left_ideal_codes(R, e2))
    return rep


# ---------------------------------------------------------------------------
# sweeps


@dataclass
class SweepResult:
    name: str
    checked: int = 0
    violations: int = 0
    first_violation: Optional[tuple] = None

    def add(self, ok, context):
        ok = np.atleast_1d(np.asarray(ok, dtype=bool))
        self.checked += ok.size
        bad = int((~ok).sum())
        if bad and self.first_violation is None:
            self.first_violation = context(int(np.flatnonzero(~ok)[0]))
        self.violations += bad

    @property
    def passed(self) -> bool:
        return self.violations == 0

    def to_dict(self):
        return {"name": self.name, "checked": self.checked, "violations": self.violations,
                "first_violation": self.first_violation}


def _idem_vector(R: FiniteRing) -> Elements:
    return R.vector(R.idempotent_codes)


def sweep_identities(R: FiniteRing) -> dict[str, SweepResult]:
    """Kato and Koliha-Rakočević identities over all ordered idempotent pairs."""
    E = _idem_vector(R)
    out: dict[str, SweepResult] = {}
    for e in E:
        ctx = lambda j, e=e: (str(e), str(E[j]))
        for name, ok in {**kato_identities(R, e, E), **kr_identities(R, e, E)}.items():
            out.setdefault(name, SweepResult(name)).add(ok, ctx)
    return out


def sweep_bott_duffin(R: FiniteRing) -> SweepResult:
    """Agreement of the four Bott-Duffin conditions over all (a, e), e idempotent."""
    res = SweepResult("bott_duffin_conditions")
    A = R.all()
    for e in _idem_vector(R):
        b1, b2, b3, b4 = bd_condition_bits(R, A, e)
        res.add((b1 == b2) & (b2 == b3) & (b3 == b4), lambda j, e=e: (str(A[j]), str(e)))
    return res


def sweep_jacobson(R: FiniteRing) -> SweepResult:
    """Jacobson's lemma over all pairs (x, y) in R x R."""
    res = SweepResult("jacobson_lemma")
    Y = R.all()
    for x in R.elements():
        res.add(jacobson_lemma_check(R, x, Y), lambda j, x=x: (str(x), str(Y[j])))
    return res


def sweep_pair_logic(R: FiniteRing) -> dict[str, SweepResult]:
    """Unit-flag equivalences over all ordered idempotent pairs.

    comm_unit <=> diff & fdiff; anti_unit <=> sum & fdiff; comm => anti;
    diff <=> sum & (f+f') ; 1-e-e' unit <=> mutual Bott-Duffin invertibility;
    diff <=> sum & (1-ee') unit.
    """
    E = _idem_vector(R)
    n = len(E)
    one = R.one
    # bd[i, j]: E[j] is Bott-Duffin invertible relative to E[i]
    bd = np.zeros((n, n), dtype=bool)
    for i, e in enumerate(E):
        bd[i] = bd_condition_bits(R, E, e)[0]
    names = ["comm_iff_diff_and_fdiff", "anti_iff_sum_and_fdiff", "comm_implies_anti",
             "diff_iff_sum_and_fsum", "one_minus_sum_iff_mutual_bd", "diff_iff_sum_and_one_minus_product"]
    out = {k: SweepResult(k) for k in names}
    for i, e in enumerate(E):
        f = one - e
        comm = (e * E - E * e).is_unit()
        anti = (e * E + E * e).is_unit()
        diff = (e - E).is_unit()
        plus = (e + E).is_unit()
        fdiff = (f - E).is_unit()
        fsum = (f + (one - E)).is_unit()
        oms = (one - e - E).is_unit()
        omp = (one - e * E).is_unit()
        ctx = lambda j, e=e: (str(e), str(E[j]))
        out[names[0]].add(comm == (diff & fdiff), ctx)
        out[names[1]].add(anti == (plus & fdiff), ctx)
        out[names[2]].add(~comm | anti, ctx)
        out[names[3]].add(diff == (plus & fsum), ctx)
        out[names[4]].add(oms == (bd[i] & bd[:, i]), ctx)
        out[names[5]].add(diff == (plus & omp), ctx)
    return out
