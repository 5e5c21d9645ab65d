"""Structural queries on finite rings: units, idempotents, radical, ideals,
quotients, corners, ring predicates and 2x2-style determinant helpers."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from . import expr as ex
from .errors import (
    CapExceeded,
    MixedRingError,
    NotCommutativeBase,
    NotIdealError,
    NotIdempotentError,
    VerificationFailed,
)
from .rings import (
    additive_image,
    AXIOM_CHECK_CAP,
    CornerRing,
    Element,
    Elements,
    FiniteRing,
    MatrixRing,
    QuotientRing,
    greedy_generators,
    subgroup_closure,
)

_I64 = np.int64


def units(R: FiniteRing) -> dict[Element, Element]:
    """Map each unit of R to its inverse."""
    inv = R.inverse_codes
    return {Element(R, int(u)): Element(R, int(inv[u])) for u in np.flatnonzero(R.unit_mask)}


def idempotents(R: FiniteRing) -> list[Element]:
    """Idempotents of R in code order."""
    return [Element(R, int(c)) for c in R.idempotent_codes]


@dataclass(frozen=True, eq=False)
class IdealSet:
    """A two-sided ideal, stored as sorted member codes."""

    ring: FiniteRing
    members: np.ndarray
    generators: tuple[int, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "members", np.unique(np.asarray(self.members, dtype=_I64)))

    def __len__(self):
        return len(self.members)

    def __contains__(self, x: Element) -> bool:
        if x.ring is not self.ring:
            raise MixedRingError("element of another ring")
        i = np.searchsorted(self.members, x.code)
        return bool(i < len(self.members) and self.members[i] == x.code)

    def __iter__(self):
        for c in self.members:
            yield Element(self.ring, int(c))

    def mask(self) -> np.ndarray:
        m = np.zeros(self.ring.card, dtype=bool)
        m[self.members] = True
        return m

    def generator_codes(self) -> tuple[int, ...]:
        if self.generators:
            return self.generators
        return tuple(greedy_generators(self.ring, self.members))

    def is_ideal(self) -> bool:
        R = self.ring
        m = self.mask()
        if not m[R.zero_code]:
            return False
        gens = np.asarray(self.generator_codes(), dtype=_I64)
        if len(gens) == 0:
            return True
        # a subgroup spanned by gens is closed iff translating by every
        # generator stays inside; ideal iff generator products stay inside
        if not m[R._add(self.members[:, None], gens[None, :])].all():
            return False
        if not m[R._neg(self.members)].all():
            return False
        # members must be exactly the span of the generators
        span = np.array([R.zero_code], dtype=_I64)
        for g in gens:
            span = subgroup_closure(R, span, int(g))
        if len(span) != len(self.members):
            return False
        rg = np.asarray(R.additive_generators, dtype=_I64)
        if len(rg) == 0:
            return True
        left = R._mul(rg[:, None], gens[None, :])
        right = R._mul(gens[:, None], rg[None, :])
        return bool(m[left].all() and m[right].all())

    def literals(self) -> list[str]:
        return [self.ring.render(c) for c in self.generator_codes()]


def ideal_closure(R: FiniteRing, gens: Iterable[Element]) -> IdealSet:
    """Smallest two-sided ideal containing ``gens`` (worklist closure)."""
    todo = []
    for g in gens:
        if g.ring is not R:
            raise MixedRingError("generator from another ring")
        todo.append(g.code)
    rg = list(R.additive_generators)
    span = np.array([R.zero_code], dtype=_I64)
    mask = np.zeros(R.card, dtype=bool)
    mask[R.zero_code] = True
    used = []
    while todo:
        g = todo.pop()
        if mask[g]:
            continue
        used.append(g)
        span = subgroup_closure(R, span, g)
        mask[span] = True
        if len(span) > R.card:
            raise CapExceeded("ideal closure exceeded the ring")
        for r in rg:
            todo.append(int(R._mul(r, g)))
            todo.append(int(R._mul(g, r)))
    return IdealSet(R, span, tuple(sorted(used)))


def principal_ideal_of(R: FiniteRing, codes: Sequence[int]) -> IdealSet:
    return ideal_closure(R, [Element(R, c) for c in codes])


def jacobson_radical(R: FiniteRing) -> IdealSet:
    """{x : 1 - xy is a unit for every y}.

    Candidates are pruned by necessary conditions (x nilpotent, and x·g, g·x
    nilpotent for each additive generator g) before the full check.
    """
    cached = R.__dict__.get("_radical")
    if cached is not None:
        return cached
    nil = R.nilpotent_mask
    cand = np.flatnonzero(nil).astype(_I64)
    for g in R.additive_generators:
        if len(cand) == 0:
            break
        keep = nil[R._mul(cand, g)] & nil[R._mul(g, cand)]
        cand = cand[keep]
    all_codes = np.arange(R.card, dtype=_I64)
    members = []
    for x in cand:
        if R.unit_mask[R._sub(R.one_code, R._mul(x, all_codes))].all():
            members.append(int(x))
    if R.zero_code not in members:
        members.append(R.zero_code)
    rad = IdealSet(R, np.array(members, dtype=_I64))
    R.__dict__["_radical"] = rad
    return rad


def quotient(R: FiniteRing, J: IdealSet, verify_limit: int = AXIOM_CHECK_CAP):
    """Coset ring R/J and the projection map (a surjective ring homomorphism).

    Returns ``(Q, proj)`` where ``proj`` maps Elements or Element vectors of R
    into Q.  The homomorphism property is checked on all pairs when
    ``|R| <= verify_limit``.
    """
    if J.ring is not R:
        raise MixedRingError("ideal of another ring")
    if not J.is_ideal():
        raise NotIdealError(f"the given set is not an ideal of {R.expr}")
    gens = tuple(R.render(c) for c in J.generator_codes()) or (R.render(R.zero_code),)
    Q = QuotientRing(R, J.members, ex.Quot(R.expr, gens))
    proj = Projection(R, Q)
    if R.card <= verify_limit:
        verify_homomorphism(R, Q, proj.codes)
    return Q, proj


class Projection:
    """Element-wise map R -> R/J."""

    def __init__(self, R: FiniteRing, Q: QuotientRing):
        self.source = R
        self.target = Q

    def codes(self, c):
        return self.target.proj[np.asarray(c, dtype=_I64)]

    def __call__(self, x):
        if x.ring is not self.source:
            raise MixedRingError("projection applied to an element of another ring")
        return self.target.vector(self.codes(x.code)) if isinstance(x, Elements) else \
            Element(self.target, int(self.codes(x.code)))


def verify_homomorphism(R: FiniteRing, S: FiniteRing, phi: Callable, exhaustive_limit: int = 10_000,
                        samples: int = 20_000, seed: int = 0) -> int:
    """Check phi(x+y)=phi(x)+phi(y), phi(xy)=phi(x)phi(y), phi(1)=1.

    ``phi`` maps code arrays of R to code arrays of S.  All pairs are checked
    when |R| <= exhaustive_limit, else a seeded random sample.  Returns the
    number of pairs checked.
    """
    if int(phi(np.asarray(R.one_code))) != S.one_code:
        raise VerificationFailed("map does not send 1 to 1")
    all_codes = np.arange(R.card, dtype=_I64)
    images = phi(all_codes)
    checked = 0

    def check(x, y):
        add_ok = images[R._add(x, y)] == S._add(images[x], images[y])
        mul_ok = images[R._mul(x, y)] == S._mul(images[x], images[y])
        if not (np.all(add_ok) and np.all(mul_ok)):
            raise VerificationFailed("map is not a ring homomorphism")

    if R.card <= exhaustive_limit:
        rows = max(1, (1 << 20) // max(R.card, 1))
        for start in range(0, R.card, rows):
            x = all_codes[start:start + rows, None]
            check(x, all_codes[None, :])
            checked += x.size * R.card
    else:
        rng = np.random.default_rng(seed)
        x = rng.integers(0, R.card, samples)
        y = rng.integers(0, R.card, samples)
        check(x, y)
        checked = samples
    return checked


def corner(R: FiniteRing, e: Element) -> CornerRing:
    """The corner ring eRe, with identity e."""
    R._check_owner(e)
    if not e.is_idempotent():
        raise NotIdempotentError(f"{e} is not idempotent")
    cached = R._corner_cache.get(e.code)
    if cached is None:
        cached = CornerRing(R, e.code, ex.Corner(R.expr, str(e)))
        R._corner_cache[e.code] = cached
    return cached


def right_ideal_codes(R: FiniteRing, e: Element) -> np.ndarray:
    """Sorted codes of eR."""
    key = ("R", e.code)
    got = R._right_ideal_cache.get(key)
    if got is None:
        got = additive_image(R, lambda c: R._mul(e.code, c))
        R._right_ideal_cache[key] = got
    return got


def left_ideal_codes(R: FiniteRing, e: Element) -> np.ndarray:
    """Sorted codes of Re."""
    key = ("L", e.code)
    got = R._right_ideal_cache.get(key)
    if got is None:
        got = additive_image(R, lambda c: R._mul(c, e.code))
        R._right_ideal_cache[key] = got
    return got


# ---------------------------------------------------------------------------
# predicates


def is_commutative(R: FiniteRing) -> bool:
    # commutativity of an additive generating set is equivalent to the pair sweep
    return R.is_commutative


def is_abelian(R: FiniteRing) -> bool:
    """Every idempotent is central."""
    g = np.asarray(R.additive_generators, dtype=_I64)
    if len(g) == 0:
        return True
    E = R.idempotent_codes
    return bool(np.all(R._mul(E[:, None], g[None, :]) == R._mul(g[None, :], E[:, None])))


def is_connected(R: FiniteRing) -> bool:
    """idem(R) = {0, 1}."""
    return set(R.idempotent_codes.tolist()) <= {R.zero_code, R.one_code}


def is_local(R: FiniteRing) -> bool:
    """R/rad(R) is a division ring, i.e. every element outside rad(R) is a unit."""
    if R.card == 1:
        return False
    rad = jacobson_radical(R)
    return int(R.unit_mask.sum()) == R.card - len(rad)


def is_zero_ring(R: FiniteRing) -> bool:
    return R.card == 1


# ---------------------------------------------------------------------------
# matrices over commutative bases


def _matrix_ring(R: FiniteRing) -> MatrixRing:
    if not isinstance(R, MatrixRing) or R.upper:
        raise TypeError(f"{R.expr} is not a full matrix ring")
    if not R.base.is_commutative:
        raise NotCommutativeBase(f"base ring {R.base.expr} is not commutative")
    return R


def det(R: FiniteRing, m: Element) -> Element:
    """Determinant of m in M_k(T), T commutative, k <= 4."""
    M = _matrix_ring(R)
    R._check_owner(m)
    if M.k > 4:
        raise ValueError("determinant is limited to k <= 4")
    return Element(M.base, int(M.det_codes(m.code)))


def trace(R: FiniteRing, m: Element) -> Element:
    M = _matrix_ring(R)
    R._check_owner(m)
    rows = M.matrix_codes(m.code)
    acc = M.base.zero_code
    for i in range(M.k):
        acc = int(M.base._add(acc, rows[i][i]))
    return Element(M.base, acc)


def matrix(R: MatrixRing, rows) -> Element:
    """Element of a matrix ring from rows of base Elements or base literals."""
    codes = [[v.code if isinstance(v, Element) else R.base._encode(v) for v in row] for row in rows]
    return Element(R, R.from_matrix_codes(codes))


def matrix_unit(R: MatrixRing, i: int, j: int) -> Element:
    """E_ij with 1-based indices."""
    return Element(R, R.unit_matrix(i - 1, j - 1))


def entries(R: MatrixRing, m: Element) -> list[list[Element]]:
    return [[Element(R.base, c) for c in row] for row in R.matrix_codes(m.code)]


def diagonal(R: MatrixRing, diag: Sequence[Element]) -> Element:
    k = R.k
    rows = [[diag[i] if i == j else R.base.zero for j in range(k)] for i in range(k)]
    return matrix(R, rows)


# ---------------------------------------------------------------------------
# axioms


def verify_axioms(R: FiniteRing, cap: int = AXIOM_CHECK_CAP, samples: int = 4096, seed: int = 0) -> int:
    """Check the ring axioms; exhaustive over all triples when |R| <= cap.

    Raises VerificationFailed naming the failing law; returns triples checked.
    """
    n = R.card
    z, one = R.zero_code, R.one_code
    codes = np.arange(n, dtype=_I64)

    def laws(a, b, c):
        checks = {
            "additive associativity": R._add(R._add(a, b), c) == R._add(a, R._add(b, c)),
            "additive commutativity": R._add(a, b) == R._add(b, a),
            "multiplicative associativity": R._mul(R._mul(a, b), c) == R._mul(a, R._mul(b, c)),
            "left distributivity": R._mul(a, R._add(b, c)) == R._add(R._mul(a, b), R._mul(a, c)),
            "right distributivity": R._mul(R._add(a, b), c) == R._add(R._mul(a, c), R._mul(b, c)),
        }
        for name, ok in checks.items():
            if not np.all(ok):
                raise VerificationFailed(f"{R.expr}: {name} fails")

    if not np.all(R._add(codes, z) == codes):
        raise VerificationFailed(f"{R.expr}: zero is not an additive identity")
    if not np.all(R._add(codes, R._neg(codes)) == z):
        raise VerificationFailed(f"{R.expr}: negation is not an additive inverse")
    if not (np.all(R._mul(codes, one) == codes) and np.all(R._mul(one, codes) == codes)):
        raise VerificationFailed(f"{R.expr}: one is not a multiplicative identity")

    if n <= cap:
        b = codes[:, None]
        c = codes[None, :]
        for a in codes:
            laws(a, b, c)
        return n ** 3
    rng = np.random.default_rng(seed)
    a, b, c = (rng.integers(0, n, samples) for _ in range(3))
    laws(a, b, c)
    return samples


def describe(R: FiniteRing) -> dict:
    """Summary used by reports."""
    return {
        "expr": str(R.expr),
        "cardinality": R.card,
        "units": int(R.unit_mask.sum()),
        "idempotents": len(R.idempotent_codes),
        "radical": len(jacobson_radical(R)),
        "flags": {
            "abelian": is_abelian(R),
            "connected": is_connected(R),
            "local": is_local(R),
            "commutative": is_commutative(R),
        },
    }
