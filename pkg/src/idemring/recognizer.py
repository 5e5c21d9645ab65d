"""Recognizing 2 x 2 matrix rings from a single witness.

A witness is a small tuple of elements (square-zero elements, units, an
idempotent or an involution) satisfying one of the equivalent conditions for
R to be a 2 x 2 matrix ring.  Witnesses are converted into one another along
fixed constructive steps until a pair (p, r) with p^2 = 0 and pr + rp = 1 is
reached; that pair yields matrix units and an explicit isomorphism
R -> M_2(E11 R E11), which is verified.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import expr as ex
from .errors import (MNotSupported, MixedRingError, NoPathError, NotAKWitness, NotCompletable,
                     NotCompletableInvolution, NotUnitsSummingToOne, SearchFailed, VerificationFailed,
                     WitnessError)
from .rings import Element, FiniteRing, MatrixRing, build_ring
from .structure import corner, ideal_closure, quotient, verify_homomorphism

_I64 = np.int64

# ---------------------------------------------------------------------------
# witnesses

# kind -> (element names, description)
KINDS = {
    "B": (("p", "q"), "p^2 = q^2 = 0 and <p,q> = 1"),
    "C": (("p", "q"), "p^2 = q^2 = 0 and <p,q> a unit"),
    "D": (("p", "v"), "v a unit, p^2 = 0 and <p,v> = 1"),
    "E": (("p", "v"), "v a unit, p^2 = 0 and <p,v> a unit"),
    "F": (("p", "r"), "p^2 = 0 and <p,r> = 1"),
    "G": (("p", "r"), "p^2 = 0 and <p,r> a unit"),
    "H": (("p", "q"), "p^2 = q^2 = 0 and p + q a unit"),
    "I": (("p", "q"), "p^2 = q^2 = 0 and [p,q] a unit"),
    "J": (("p", "v"), "v a unit, p^2 = 0 and [p,v] a unit"),
    "K": (("p", "r"), "p^2 = 0 and [p,r] a unit"),
    "IDEM": (("e", "r"), "e idempotent and [e,r] a unit"),
    "INVOL": (("u", "r"), "u^2 = 1 and [u,r] a unit"),
}


def _anti(x, y):
    return x * y + y * x


def _comm(x, y):
    return x * y - y * x


def _clause_holds(kind: str, el: dict) -> bool:
    sq0 = lambda x: (x * x).code == x.ring.zero_code
    one = next(iter(el.values())).ring.one
    if kind in ("B", "C", "H", "I"):
        p, q = el["p"], el["q"]
        if not (sq0(p) and sq0(q)):
            return False
        val = {"B": _anti(p, q), "C": _anti(p, q), "H": p + q, "I": _comm(p, q)}[kind]
        return val == one if kind == "B" else val.is_unit()
    if kind in ("D", "E", "J"):
        p, v = el["p"], el["v"]
        if not (sq0(p) and v.is_unit()):
            return False
        if kind == "D":
            return _anti(p, v) == one
        return (_anti(p, v) if kind == "E" else _comm(p, v)).is_unit()
    if kind in ("F", "G", "K"):
        p, r = el["p"], el["r"]
        if not sq0(p):
            return False
        if kind == "F":
            return _anti(p, r) == one
        return (_anti(p, r) if kind == "G" else _comm(p, r)).is_unit()
    if kind == "IDEM":
        return el["e"].is_idempotent() and _comm(el["e"], el["r"]).is_unit()
    if kind == "INVOL":
        return el["u"] * el["u"] == one and _comm(el["u"], el["r"]).is_unit()
    raise ValueError(f"unknown witness kind {kind!r}")


@dataclass
class Witness:
    kind: str
    elements: dict[str, Element]
    path: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown witness kind {self.kind!r}")
        names = KINDS[self.kind][0]
        if set(self.elements) != set(names):
            raise WitnessError(f"kind {self.kind} needs elements {names}")
        rings = {id(x.ring) for x in self.elements.values()}
        if len(rings) != 1:
            raise MixedRingError("witness elements live in different rings")
        if not _clause_holds(self.kind, self.elements):
            raise WitnessError(f"elements do not satisfy {self.kind}: {KINDS[self.kind][1]}")
        if not self.path:
            self.path = [self.kind]

    @property
    def ring(self) -> FiniteRing:
        return next(iter(self.elements.values())).ring

    def __getitem__(self, name):
        return self.elements[name]

    def to_dict(self):
        return {"kind": self.kind, "elements": {k: str(v) for k, v in self.elements.items()},
                "path": list(self.path), "notes": list(self.notes)}


def make_witness(R: FiniteRing, kind: str, *elements) -> Witness:
    """Witness from elements given in the order of KINDS (literals allowed)."""
    kind = kind.upper()
    names = KINDS[kind][0]
    if len(elements) != len(names):
        raise WitnessError(f"kind {kind} needs {len(names)} elements ({', '.join(names)})")
    return Witness(kind, {n: R(x) for n, x in zip(names, elements)})


# each step mirrors one implication; the result is re-validated by Witness
def _b_to_c(w):
    return {"p": w["p"], "q": w["q"]}, None


def _c_to_h(w):
    # (p + q)^2 = <p, q>
    return {"p": w["p"], "q": w["q"]}, None


def _h_to_d(w):
    # v = (p + q)^-1 satisfies vq = pv, so <p, v> = vu = 1
    return {"p": w["p"], "v": (w["p"] + w["q"]).inverse()}, None


def _d_to_g(w):
    return {"p": w["p"], "r": w["v"]}, None


def _d_to_e(w):
    return {"p": w["p"], "v": w["v"]}, None


def _e_to_d(w):
    s = _anti(w["p"], w["v"])
    return {"p": w["p"], "v": s.inverse() * w["v"]}, None


def _g_to_f(w):
    # s = <p, r> commutes with p, so 1 = <p, s^-1 r>
    s = _anti(w["p"], w["r"])
    return {"p": w["p"], "r": s.inverse() * w["r"]}, None


def _i_to_c(w):
    # s = [p, q] anti-commutes with p and q, and <p, s^-1 q> = -1
    s = _comm(w["p"], w["q"])
    q = s.inverse() * w["q"]
    if _anti(w["p"], q) != -w.ring.one:
        raise VerificationFailed("<p, s^-1 q> is not -1")
    return {"p": w["p"], "q": -q}, "sign normalized: (p, s^-1 q) has <,> = -1, returned (p, -s^-1 q) with <,> = 1"


def _j_to_k(w):
    return {"p": w["p"], "r": w["v"]}, None


def _k_to_g(w):
    # s = [p, r] anti-commutes with p, and <p, s^-1 r> = -1
    s = _comm(w["p"], w["r"])
    r = s.inverse() * w["r"]
    if _anti(w["p"], r) != -w.ring.one:
        raise VerificationFailed("<p, s^-1 r> is not -1")
    return {"p": w["p"], "r": r}, None


def _idem_to_h(w):
    e, r = w["e"], w["r"]
    f = w.ring.one - e
    return {"p": e * r * f, "q": -(f * r * e)}, None


EDGES = {
    ("B", "C"): _b_to_c,
    ("C", "H"): _c_to_h,
    ("H", "D"): _h_to_d,
    ("D", "G"): _d_to_g,
    ("D", "E"): _d_to_e,
    ("E", "D"): _e_to_d,
    ("G", "F"): _g_to_f,
    ("I", "C"): _i_to_c,
    ("J", "K"): _j_to_k,
    ("K", "G"): _k_to_g,
    ("IDEM", "H"): _idem_to_h,
}


def _route(source: str, target: str) -> list[str]:
    prev = {source: None}
    queue = deque([source])
    while queue:
        node = queue.popleft()
        if node == target:
            break
        for (a, b) in sorted(EDGES):
            if a == node and b not in prev:
                prev[b] = node
                queue.append(b)
    if target not in prev:
        raise NoPathError(f"no construction leads from {source} to {target}")
    path = [target]
    while prev[path[-1]] is not None:
        path.append(prev[path[-1]])
    return path[::-1]


def transform_witness(R: FiniteRing, w: Witness, target: str) -> Witness:
    """Convert ``w`` into a witness of kind ``target`` along the fixed steps."""
    if w.ring is not R:
        raise MixedRingError("witness belongs to another ring")
    target = target.upper()
    route = _route(w.kind, target)
    cur = w
    for a, b in zip(route, route[1:]):
        elements, note = EDGES[(a, b)](cur)
        try:
            cur = Witness(b, elements, path=cur.path + [b], notes=cur.notes + ([note] if note else []))
        except WitnessError as err:
            raise VerificationFailed(f"step {a} -> {b} produced an invalid witness: {err}") from err
    return cur


# ---------------------------------------------------------------------------
# matrix units and the isomorphism


@dataclass
class MatrixUnitSystem:
    E11: Element
    E12: Element
    E21: Element
    E22: Element

    def units(self) -> dict[tuple[int, int], Element]:
        return {(1, 1): self.E11, (1, 2): self.E12, (2, 1): self.E21, (2, 2): self.E22}

    def relations(self) -> dict[str, bool]:
        """All sixteen product rules E_ij E_kl = delta_jk E_il, plus E11 + E22 = 1."""
        U = self.units()
        R = self.E11.ring
        out = {}
        for (i, j), a in U.items():
            for (k, l), b in U.items():
                want = U[(i, l)] if j == k else R.zero
                out[f"E{i}{j}E{k}{l}"] = a * b == want
        out["E11+E22=1"] = self.E11 + self.E22 == R.one
        return out

    def verify(self):
        bad = [k for k, ok in self.relations().items() if not ok]
        if bad:
            raise VerificationFailed(f"matrix unit relations fail: {', '.join(bad)}")
        return self

    def to_dict(self):
        return {k: str(v) for k, v in (("E11", self.E11), ("E12", self.E12), ("E21", self.E21), ("E22", self.E22))}


def matrix_units_from_f_witness(R: FiniteRing, p: Element, r: Element) -> MatrixUnitSystem:
    """From p^2 = 0 and pr + rp = 1: E11 = rp, E22 = pr, E21 = p, E12 = E11 r E22."""
    Witness("F", {"p": R(p), "r": R(r)})
    if p * r * p != p:
        raise VerificationFailed("p != prp")
    e, f = r * p, p * r
    return MatrixUnitSystem(E11=e, E12=e * r * f, E21=p, E22=f).verify()


@dataclass
class IsoCertificate:
    mus: MatrixUnitSystem
    corner: FiniteRing
    target: MatrixRing
    images: np.ndarray  # image code in ``target`` for each code of R
    homomorphism_verified: bool
    bijection_verified: bool
    pairs_checked: int
    exhaustive: bool

    @property
    def ring(self) -> FiniteRing:
        return self.mus.E11.ring

    def map(self, x: Element) -> list[list[Element]]:
        codes = self.target.matrix_codes(int(self.images[x.code]))
        return [[Element(self.corner, c) for c in row] for row in codes]

    def to_dict(self):
        return {
            "matrix_units": self.mus.to_dict(),
            "corner": str(self.corner.expr),
            "corner_cardinality": self.corner.card,
            "ring_cardinality": self.ring.card,
            "homomorphism_verified": self.homomorphism_verified,
            "bijection_verified": self.bijection_verified,
            "pairs_checked": self.pairs_checked,
            "exhaustive": self.exhaustive,
        }


def m2_isomorphism(R: FiniteRing, mus: MatrixUnitSystem, exhaustive_limit: int = 10_000,
                   samples: int = 20_000, seed: int = 0) -> IsoCertificate:
    """The map x -> [E1i x Ej1] from R to 2 x 2 matrices over E11 R E11, verified."""
    mus.verify()
    if mus.E11.ring is not R:
        raise MixedRingError("matrix units belong to another ring")
    S = corner(R, mus.E11)
    M = MatrixRing(2, S)
    left = {1: mus.E11.code, 2: mus.E12.code}   # E_1i
    right = {1: mus.E11.code, 2: mus.E21.code}  # E_j1

    def phi(codes):
        codes = np.asarray(codes, dtype=_I64)
        m = np.empty(codes.shape + (2, 2), dtype=_I64)
        for i in (1, 2):
            for j in (1, 2):
                m[..., i - 1, j - 1] = S.index(R._mul(R._mul(left[i], codes), right[j]))
        return M._enc(m)

    images = phi(np.arange(R.card, dtype=_I64))
    bijective = S.card ** 4 == R.card and len(np.unique(images)) == R.card
    if not bijective:
        raise VerificationFailed(f"map is not a bijection (|corner| = {S.card}, |R| = {R.card})")
    lut = lambda c: images[np.asarray(c, dtype=_I64)]
    checked = verify_homomorphism(R, M, lut, exhaustive_limit=exhaustive_limit, samples=samples, seed=seed)
    return IsoCertificate(mus, S, M, images, True, True, checked, R.card <= exhaustive_limit)


# ---------------------------------------------------------------------------
# property K and the base ring


def _matrix_ring_over(S: FiniteRing, n: int) -> MatrixRing:
    R = build_ring(ex.Mat(n, S.expr), max(S.card ** (n * n), 1))
    if R.base is not S:
        R = MatrixRing(n, S)
    return R


def k_witness_from_sum(S: FiniteRing, a: Element, b: Element):
    """From units a + b = 1 of S: e = [[a,b],[a,b]] and E11 in M_2(S) have a unit commutator."""
    a, b = S(a), S(b)
    if not (a.is_unit() and b.is_unit() and a + b == S.one):
        raise NotUnitsSummingToOne(f"{a}, {b} are not units of {S.expr} summing to 1")
    R = _matrix_ring_over(S, 2)
    e = Element(R, R.from_matrix_codes([[a.code, b.code], [a.code, b.code]]))
    e2 = Element(R, R.unit_matrix(0, 0))
    if not (e.is_idempotent() and _comm(e, e2).is_unit()):
        raise VerificationFailed("constructed pair is not a K-witness")
    return R, e, e2


def base_ring_from_k_witness(R: FiniteRing, e: Element, e2: Element):
    """For [e, e'] a unit: eRe with the units ee'e and e(1-e')e summing to e."""
    if not (e.is_idempotent() and e2.is_idempotent() and _comm(e, e2).is_unit()):
        raise NotAKWitness(f"({e}, {e2}) is not a pair of idempotents with unit commutator")
    S = corner(R, e)
    x = e * e2 * e
    y = e * (R.one - e2) * e
    a, b = Element(S, S.index(x.code)), Element(S, S.index(y.code))
    if not (a.is_unit() and b.is_unit() and a + b == S.one):
        raise VerificationFailed("corner parts are not units summing to the identity")
    return S, (a, b)


def completable_idempotent_from_k_pair(R: FiniteRing, e: Element, e2: Element) -> Witness:
    """[e, e - e'] = -[e, e'], so e is completable by the unit v = e - e'."""
    if not (e.is_idempotent() and e2.is_idempotent() and _comm(e, e2).is_unit()):
        raise NotAKWitness(f"({e}, {e2}) is not a pair of idempotents with unit commutator")
    v = e - e2
    if not v.is_unit():
        raise VerificationFailed("e - e' is not a unit")
    return Witness("IDEM", {"e": e, "r": v})


def idempotent_witness_to_squarezero(R: FiniteRing, e: Element, r: Element) -> Witness:
    """p = er(1-e), q = -(1-e)re: square-zero with p + q = [e, r]."""
    e, r = R(e), R(r)
    if not (e.is_idempotent() and _comm(e, r).is_unit()):
        raise NotCompletable(f"{e} is not an idempotent completed by {r}")
    return transform_witness(R, Witness("IDEM", {"e": e, "r": r}), "H")


def recognize(R: FiniteRing, w: Witness, **iso_kw):
    """Witness -> F-witness -> matrix units -> verified isomorphism."""
    if w.kind == "INVOL":
        mus = involution_witness_to_matrix_units(R, w["u"], w["r"])
        fw = w
    else:
        fw = transform_witness(R, w, "F")
        mus = matrix_units_from_f_witness(R, fw["p"], fw["r"])
    return fw, mus, m2_isomorphism(R, mus, **iso_kw)


def k_pipeline(R: FiniteRing, e: Element, e2: Element, **iso_kw) -> dict:
    """K-witness -> completable idempotent -> H -> D -> G -> F -> matrix units -> isomorphism."""
    idem = completable_idempotent_from_k_pair(R, e, e2)
    fw, mus, cert = recognize(R, idem, **iso_kw)
    return {"idempotent_witness": idem, "f_witness": fw, "matrix_units": mus, "certificate": cert}


# ---------------------------------------------------------------------------
# involutions


def involution_witness_to_matrix_units(R: FiniteRing, u: Element, r: Element) -> MatrixUnitSystem:
    """From u^2 = 1 and v = [u, r] a unit: e = (1-u)v^-1 r, f = -v^-1 r(1+u),
    then the least a in eRf, b in fRe with ab = e and ba = f."""
    u, r = R(u), R(r)
    one = R.one
    if u * u != one or not _comm(u, r).is_unit():
        raise NotCompletableInvolution(f"{u} is not an involution completed by {r}")
    vi = _comm(u, r).inverse()
    e = (one - u) * vi * r
    f = -(vi * r * (one + u))
    if not (e + f == one and (f * e).code == R.zero_code and e.is_idempotent() and f.is_idempotent()):
        raise VerificationFailed("e, f do not form complementary idempotents")
    allc = np.arange(R.card, dtype=_I64)
    A = np.unique(R._mul(R._mul(e.code, allc), f.code))
    B = np.unique(R._mul(R._mul(f.code, allc), e.code))
    for a in A:
        hit = (R._mul(a, B) == e.code) & (R._mul(B, a) == f.code)
        if hit.any():
            b = int(B[int(np.argmax(hit))])
            return MatrixUnitSystem(E11=e, E12=Element(R, int(a)), E21=Element(R, b), E22=f).verify()
    raise SearchFailed("no a in eRf, b in fRe with ab = e and ba = f")


# ---------------------------------------------------------------------------
# identity as a sum of two units in M_m(T)


def _int_det(m: list[list[int]]) -> int:
    """Fraction-free (Bareiss) determinant of an integer matrix."""
    a = [row[:] for row in m]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _int_adjugate(m: list[list[int]]) -> list[list[int]]:
    n = len(m)
    if n == 1:
        return [[1]]
    adj = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [row[:j] + row[j + 1:] for k, row in enumerate(m) if k != i]
            adj[j][i] = (-1) ** (i + j) * _int_det(minor)
    return adj


def companion(coeffs: list[int]) -> list[list[int]]:
    """Companion matrix of the monic x^m + c_{m-1} x^{m-1} + ... + c_0."""
    m = len(coeffs)
    c = [[0] * m for _ in range(m)]
    for i in range(1, m):
        c[i][i - 1] = 1
    for i in range(m):
        c[i][m - 1] = -coeffs[i]
    return c


@dataclass
class TwoUnits:
    m: int
    base: FiniteRing
    U: list[list[Element]]
    V: list[list[Element]]
    U_inv: list[list[Element]]
    V_inv: list[list[Element]]
    det_U: int  # over the integers
    det_V: int

    def to_dict(self):
        show = lambda M: [[str(x) for x in row] for row in M]
        return {"m": self.m, "base": str(self.base.expr), "U": show(self.U), "V": show(self.V),
                "U_inv": show(self.U_inv), "V_inv": show(self.V_inv),
                "det_U": self.det_U, "det_V": self.det_V}


def _codes(T: FiniteRing, m: list[list[int]]) -> np.ndarray:
    return np.array([[T._from_int(v) for v in row] for row in m], dtype=_I64)


def matmul_codes(T: FiniteRing, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Product of square matrices of base codes."""
    prod = T._mul(A[:, :, None], B[None, :, :])
    acc = prod[:, 0, :]
    for t in range(1, A.shape[1]):
        acc = T._add(acc, prod[:, t, :])
    return acc


def _identity_codes(T: FiniteRing, m: int) -> np.ndarray:
    I = np.full((m, m), T.zero_code, dtype=_I64)
    np.fill_diagonal(I, T.one_code)
    return I


def henriksen_two_units(m: int, T: FiniteRing) -> TwoUnits:
    """I = U + V in M_m(T) with U the companion of x^m + x - 1 and V = I - U.

    Over the integers det U = +-1 and det(I - U) = p(1) = 1, so both are
    invertible over every T; inverses are det * adjugate.
    """
    if m < 2:
        raise MNotSupported("the two-unit construction needs m >= 2")
    coeffs = [-1, 1] + [0] * (m - 2)
    U = companion(coeffs)
    V = [[(1 if i == j else 0) - U[i][j] for j in range(m)] for i in range(m)]
    dU, dV = _int_det(U), _int_det(V)
    if dU not in (1, -1) or dV not in (1, -1):
        raise VerificationFailed(f"integer determinants are {dU}, {dV}")
    Ui = [[dU * x for x in row] for row in _int_adjugate(U)]
    Vi = [[dV * x for x in row] for row in _int_adjugate(V)]
    cU, cV, cUi, cVi = (_codes(T, M) for M in (U, V, Ui, Vi))
    I = _identity_codes(T, m)
    for A, B in ((cU, cUi), (cV, cVi)):
        if not (np.array_equal(matmul_codes(T, A, B), I) and np.array_equal(matmul_codes(T, B, A), I)):
            raise VerificationFailed("integer inverse does not invert over the base ring")
    if not np.array_equal(T._add(cU, cV), I):
        raise VerificationFailed("U + V != I")
    el = lambda M: [[Element(T, int(c)) for c in row] for row in M]
    return TwoUnits(m, T, el(cU), el(cV), el(cUi), el(cVi), dU, dV)


# ---------------------------------------------------------------------------
# obstructions


def _is_fourth_power(n: int) -> bool:
    r = math.isqrt(math.isqrt(n))
    return any((r + d) ** 4 == n for d in (-1, 0, 1) if r + d >= 0)


def not_m2_certificate(R: FiniteRing) -> Optional[dict]:
    """If |R| is not a fourth power, R is not M_2(S) for any S."""
    if _is_fourth_power(R.card):
        return None
    r = math.isqrt(math.isqrt(R.card))
    return {"cardinality": R.card,
            "reason": f"{R.card} is not a fourth power ({r}^4 < {R.card} < {r + 1}^4)"}


def squarezero_codes(R: FiniteRing) -> np.ndarray:
    return np.flatnonzero(R._map_all(lambda c: R._mul(c, c) == R.zero_code)).astype(_I64)


def commutator_one_search(R: FiniteRing) -> Optional[tuple[Element, Element]]:
    """Least (p, q), both square-zero, with [p, q] = 1."""
    N = squarezero_codes(R)
    for p in N:
        hit = np.flatnonzero(R._sub(R._mul(p, N), R._mul(N, p)) == R.one_code)
        if len(hit):
            return Element(R, int(p)), Element(R, int(N[hit[0]]))
    return None


# ---------------------------------------------------------------------------
# anti-commutators modulo 2


def least_anticommutator_pair(R: FiniteRing) -> Optional[tuple[Element, Element]]:
    """Least (e, r), e idempotent, with er + re a unit."""
    allc = np.arange(R.card, dtype=_I64)
    for e in R.idempotent_codes:
        hit = np.flatnonzero(R.unit_mask[R._add(R._mul(e, allc), R._mul(allc, e))])
        if len(hit):
            return Element(R, int(e)), Element(R, int(hit[0]))
    return None


def mod_two_recognition(R: FiniteRing, e: Element | None = None, r: Element | None = None) -> Optional[dict]:
    """If <e, r> is a unit, then in R/2R the commutator [e, r] is a unit and
    R/2R is recognized as a 2 x 2 matrix ring."""
    if e is None:
        found = least_anticommutator_pair(R)
        if found is None:
            return None
        e, r = found
    if not (e.is_idempotent() and _anti(e, r).is_unit()):
        raise WitnessError(f"<{e}, {r}> is not a unit with {e} idempotent")
    J = ideal_closure(R, [R.one + R.one])
    Q, proj = quotient(R, J)
    w = Witness("IDEM", {"e": proj(e), "r": proj(r)})
    fw, mus, cert = recognize(Q, w)
    return {"e": e, "r": r, "quotient": Q, "witness": w, "f_witness": fw, "matrix_units": mus, "certificate": cert}
