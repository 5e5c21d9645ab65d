"""Finite rings with exact, vectorized arithmetic on integer element codes.

Every element of a ring ``R`` is identified with a canonical code in
``range(R.card)``.  The private ``_add``/``_neg``/``_mul`` methods act on numpy
``int64`` arrays of codes (any broadcastable shapes), which is what makes
exhaustive sweeps over idempotent pairs affordable.  :class:`Element` and
:class:`Elements` wrap codes with operator overloading for readable formulas.
"""

from __future__ import annotations

import itertools
import math
from functools import cached_property
from typing import Iterator, Sequence

import numpy as np

from . import expr as ex
from .errors import (
    CapExceeded,
    IrreduciblePolyError,
    MixedRingError,
    NotIdempotentError,
    ParseError,
    RingError,
)

DEFAULT_MAX_CARD = 2_000_000
AXIOM_CHECK_CAP = 256
# Rings without a structural unit test fall back to an O(|R|^2) search.
GENERIC_UNIT_CAP = 16_384
CHUNK = 1 << 18

_I64 = np.int64


def _arr(x) -> np.ndarray:
    return np.asarray(x, dtype=_I64)


class FiniteRing:
    """Abstract finite ring; subclasses supply arithmetic on code arrays."""

    expr: ex.RingExpr
    card: int
    zero_code: int = 0
    one_code: int

    # -- arithmetic on code arrays (override) --------------------------

    def _add(self, a, b) -> np.ndarray:
        raise NotImplementedError

    def _neg(self, a) -> np.ndarray:
        raise NotImplementedError

    def _mul(self, a, b) -> np.ndarray:
        raise NotImplementedError

    def _sub(self, a, b) -> np.ndarray:
        return self._add(a, self._neg(b))

    # -- literals (override) --------------------------------------------

    def _encode(self, lit: ex.Literal) -> int:
        raise NotImplementedError

    def _literal(self, code: int) -> ex.Literal:
        raise NotImplementedError

    # -- structural hints (override when cheap) ---------------------------

    def _additive_generators(self) -> list[int]:
        return greedy_generators(self, np.arange(self.card, dtype=_I64))

    def _structural_unit_mask(self) -> np.ndarray | None:
        return None

    def _structurally_commutative(self) -> bool | None:
        return None

    # -- public surface ------------------------------------------------

    def __len__(self):
        return self.card

    def __repr__(self):
        return f"<FiniteRing {self.expr} card={self.card}>"

    def __call__(self, value) -> "Element":
        """Element from a literal (text or nested ints/lists/tuples)."""
        if isinstance(value, Element):
            self._check_owner(value)
            return value
        if isinstance(value, str):
            value = ex.parse_literal(value)
        return Element(self, self._encode(value))

    def element(self, code: int) -> "Element":
        if not 0 <= code < self.card:
            raise ValueError(f"code {code} out of range for {self}")
        return Element(self, int(code))

    def vector(self, codes) -> "Elements":
        return Elements(self, _arr(codes))

    def elements(self) -> Iterator["Element"]:
        for c in range(self.card):
            yield Element(self, c)

    def all(self) -> "Elements":
        return Elements(self, np.arange(self.card, dtype=_I64))

    @property
    def zero(self) -> "Element":
        return Element(self, self.zero_code)

    @property
    def one(self) -> "Element":
        return Element(self, self.one_code)

    def literal(self, code: int) -> ex.Literal:
        return self._literal(int(code))

    def render(self, code: int) -> str:
        return ex.render_literal(self._literal(int(code)))

    def _check_owner(self, x: "Element"):
        if x.ring is not self:
            raise MixedRingError(f"element of {x.ring.expr} used in {self.expr}")

    def _from_int(self, k: int) -> int:
        """Code of k·1."""
        acc = _arr(self.zero_code)
        base = _arr(self.one_code) if k >= 0 else self._neg(self.one_code)
        k = abs(k)
        while k:
            if k & 1:
                acc = self._add(acc, base)
            base = self._add(base, base)
            k >>= 1
        return int(acc)

    def _map_all(self, fn, dtype=bool) -> np.ndarray:
        """Evaluate ``fn(codes)`` over every code in chunks."""
        out = np.empty(self.card, dtype=dtype)
        for start in range(0, self.card, CHUNK):
            codes = np.arange(start, min(self.card, start + CHUNK), dtype=_I64)
            out[start:start + len(codes)] = fn(codes)
        return out

    def _pow(self, a, n: int) -> np.ndarray:
        result = np.full(np.shape(a), self.one_code, dtype=_I64)
        base = _arr(a)
        while n:
            if n & 1:
                result = self._mul(result, base)
            base = self._mul(base, base)
            n >>= 1
        return result

    # -- cached structure ------------------------------------------------

    @cached_property
    def unit_mask(self) -> np.ndarray:
        mask = self._structural_unit_mask()
        if mask is None:
            mask, _ = self._generic_units()
        return mask

    @cached_property
    def inverse_codes(self) -> np.ndarray:
        """Inverse code for each unit, -1 elsewhere."""
        inv = np.full(self.card, -1, dtype=_I64)
        units = np.flatnonzero(self.unit_mask).astype(_I64)
        if len(units):
            # units form a finite group of order |U|, so x^(|U|-1) = x^-1
            inv[units] = self._pow(units, len(units) - 1)
        return inv

    @cached_property
    def idempotent_codes(self) -> np.ndarray:
        mask = self._map_all(lambda c: self._mul(c, c) == c)
        return np.flatnonzero(mask).astype(_I64)

    @cached_property
    def nilpotent_mask(self) -> np.ndarray:
        steps = max(1, math.ceil(math.log2(max(self.card, 2))))

        def nil(c):
            z = c
            for _ in range(steps):
                z = self._mul(z, z)
            return z == self.zero_code

        return self._map_all(nil)

    @cached_property
    def additive_generators(self) -> tuple[int, ...]:
        gens = [g for g in self._additive_generators() if g != self.zero_code]
        return tuple(dict.fromkeys(gens))

    @cached_property
    def is_commutative(self) -> bool:
        hint = self._structurally_commutative()
        if hint is not None:
            return hint
        g = _arr(self.additive_generators)
        if len(g) == 0:
            return True
        return bool(np.all(self._mul(g[:, None], g[None, :]) == self._mul(g[None, :], g[:, None])))

    def _generic_units(self):
        if self.card > GENERIC_UNIT_CAP:
            raise CapExceeded(
                f"no structural unit test for {self.expr}; generic search is capped at "
                f"{GENERIC_UNIT_CAP} elements (ring has {self.card})"
            )
        codes = np.arange(self.card, dtype=_I64)
        mask = np.zeros(self.card, dtype=bool)
        inv = np.full(self.card, -1, dtype=_I64)
        rows = max(1, min(self.card, (1 << 22) // max(self.card, 1)))
        for start in range(0, self.card, rows):
            x = codes[start:start + rows]
            prod = self._mul(x[:, None], codes[None, :])
            hit = prod == self.one_code
            has = hit.any(axis=1)
            y = hit.argmax(axis=1)
            ok = has & (self._mul(y, x) == self.one_code)
            mask[start:start + len(x)] = ok
            inv[start:start + len(x)][ok] = y[ok]
        return mask, inv

    # corner rings of one ring are reused by sweeps
    @cached_property
    def _corner_cache(self) -> dict:
        return {}

    @cached_property
    def _right_ideal_cache(self) -> dict:
        return {}


# ---------------------------------------------------------------------------
# concrete rings


class ZnRing(FiniteRing):
    def __init__(self, n: int):
        if n < 1:
            raise RingError("modulus must be positive")
        self.expr = ex.Zn(n)
        self.n = n
        self.card = n
        self.one_code = 1 % n

    def _add(self, a, b):
        return (_arr(a) + _arr(b)) % self.n

    def _neg(self, a):
        return (-_arr(a)) % self.n

    def _mul(self, a, b):
        return (_arr(a) * _arr(b)) % self.n

    def _encode(self, lit):
        if not isinstance(lit, int) or isinstance(lit, bool):
            raise ParseError(f"Z({self.n}) elements are integers, got {ex.render_literal(lit)}")
        return lit % self.n

    def _literal(self, code):
        return int(code)

    def _from_int(self, k):
        return k % self.n

    def _additive_generators(self):
        return [1 % self.n]

    def _structural_unit_mask(self):
        c = np.arange(self.n, dtype=_I64)
        return np.gcd(c, self.n) == 1 if self.n > 1 else np.ones(1, dtype=bool)

    def _structurally_commutative(self):
        return True


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, math.isqrt(p) + 1))


def _poly_mod(a: list[int], m: list[int], p: int) -> list[int]:
    """Remainder of a modulo the monic polynomial m (coefficients low first)."""
    a = [c % p for c in a]
    dm = len(m) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i]
        if c:
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * m[j]) % p
    return a[:dm]


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Trial division of a monic polynomial by every monic of lower degree."""
    poly = [c % p for c in poly]
    d = len(poly) - 1
    for k in range(1, d // 2 + 1):
        for low in itertools.product(range(p), repeat=k):
            divisor = list(low) + [1]
            if not any(_poly_mod(poly, divisor, p)):
                return False
    return True


class GFRing(FiniteRing):
    """Z_p[x]/(poly) for a monic irreducible poly; code = sum c_i p^i."""

    def __init__(self, p: int, poly: Sequence[int]):
        if not _is_prime(p):
            raise RingError(f"GF characteristic {p} is not prime")
        poly = [c % p for c in poly]
        if len(poly) < 2 or poly[-1] != 1:
            raise RingError("GF modulus must be monic of degree >= 1")
        if not is_irreducible(poly, p):
            raise IrreduciblePolyError(f"{poly} factors over Z_{p}")
        self.expr = ex.GFp(p, tuple(poly))
        self.p = p
        self.poly = poly
        self.d = len(poly) - 1
        self.card = p ** self.d
        self.one_code = 1
        self._weights = p ** np.arange(self.d, dtype=_I64)

    def _decode(self, a):
        a = _arr(a)
        return (a[..., None] // self._weights) % self.p

    def _enc(self, coeffs):
        return (coeffs * self._weights).sum(axis=-1)

    def _add(self, a, b):
        return self._enc((self._decode(a) + self._decode(b)) % self.p)

    def _neg(self, a):
        return self._enc((-self._decode(a)) % self.p)

    def _mul(self, a, b):
        x, y = np.broadcast_arrays(self._decode(a), self._decode(b))
        d, p = self.d, self.p
        prod = np.zeros(x.shape[:-1] + (2 * d - 1,), dtype=_I64)
        for i in range(d):
            for j in range(d):
                prod[..., i + j] += x[..., i] * y[..., j]
        prod %= p
        for i in range(2 * d - 2, d - 1, -1):
            c = prod[..., i].copy()
            for j in range(d + 1):
                prod[..., i - d + j] = (prod[..., i - d + j] - c * self.poly[j]) % p
        return self._enc(prod[..., :d])

    def _encode(self, lit):
        if isinstance(lit, int):
            return lit % self.p
        if isinstance(lit, list) and all(isinstance(c, int) for c in lit):
            coeffs = _poly_mod(list(lit), self.poly, self.p) if len(lit) > self.d else [c % self.p for c in lit]
            coeffs += [0] * (self.d - len(coeffs))
            return int(sum(c * self.p ** i for i, c in enumerate(coeffs)))
        raise ParseError(f"GF element literal must be an int or coefficient list, got {ex.render_literal(lit)}")

    def _literal(self, code):
        coeffs = [(code // self.p ** i) % self.p for i in range(self.d)]
        if not any(coeffs[1:]):
            return coeffs[0]
        return coeffs

    def _additive_generators(self):
        return [self.p ** i for i in range(self.d)]

    def _structural_unit_mask(self):
        mask = np.ones(self.card, dtype=bool)
        mask[0] = False
        return mask

    def _structurally_commutative(self):
        return True


class MatrixRing(FiniteRing):
    """k x k matrices over a base ring, optionally only the upper triangular ones.

    Codes are mixed radix over the stored positions in row-major order, the
    (0, 0) entry being the most significant digit.
    """

    def __init__(self, k: int, base: FiniteRing, upper: bool = False):
        if k < 1:
            raise RingError("matrix size must be positive")
        self.k = k
        self.base = base
        self.upper = upper
        self.expr = (ex.UpperTri if upper else ex.Mat)(k, base.expr)
        self.positions = [(i, j) for i in range(k) for j in range(k) if not upper or i <= j]
        self.card = base.card ** len(self.positions)
        b = base.card
        n = len(self.positions)
        self._weights = np.array([b ** (n - 1 - t) for t in range(n)], dtype=_I64)
        self._rows = np.array([i for i, _ in self.positions])
        self._cols = np.array([j for _, j in self.positions])
        ident = np.full((k, k), base.zero_code, dtype=_I64)
        np.fill_diagonal(ident, base.one_code)
        self.one_code = int(self._enc(ident))
        zero = np.full((k, k), base.zero_code, dtype=_I64)
        self.zero_code = int(self._enc(zero))
        self._fast = isinstance(base, ZnRing)

    def _decode(self, a) -> np.ndarray:
        a = _arr(a)
        digits = (a[..., None] // self._weights) % self.base.card
        if not self.upper:
            return digits.reshape(a.shape + (self.k, self.k))
        out = np.full(a.shape + (self.k, self.k), self.base.zero_code, dtype=_I64)
        out[..., self._rows, self._cols] = digits
        return out

    def _enc(self, m) -> np.ndarray:
        digits = m[..., self._rows, self._cols]
        return (digits * self._weights).sum(axis=-1)

    def _add(self, a, b):
        return self._enc(self.base._add(self._decode(a), self._decode(b)))

    def _neg(self, a):
        return self._enc(self.base._neg(self._decode(a)))

    def _mul(self, a, b):
        x, y = self._decode(a), self._decode(b)
        if self._fast:
            return self._enc(np.matmul(x, y) % self.base.n)
        x, y = np.broadcast_arrays(x, y)
        out = np.empty(x.shape, dtype=_I64)
        B = self.base
        for i in range(self.k):
            for j in range(self.k):
                if self.upper and j < i:
                    out[..., i, j] = B.zero_code
                    continue
                acc = B._mul(x[..., i, 0], y[..., 0, j])
                for t in range(1, self.k):
                    acc = B._add(acc, B._mul(x[..., i, t], y[..., t, j]))
                out[..., i, j] = acc
        return self._enc(out)

    def matrix_codes(self, code: int) -> list[list[int]]:
        m = self._decode(code)
        return [[int(m[i, j]) for j in range(self.k)] for i in range(self.k)]

    def from_matrix_codes(self, rows) -> int:
        m = _arr(rows)
        if self.upper:
            below = m[np.tril_indices(self.k, -1)]
            if np.any(below != self.base.zero_code):
                raise ParseError("upper triangular ring: entries below the diagonal must be zero")
        return int(self._enc(m))

    def unit_matrix(self, i: int, j: int, entry: int | None = None) -> int:
        """Code of the matrix with ``entry`` (default 1) at (i, j), zero elsewhere."""
        m = np.full((self.k, self.k), self.base.zero_code, dtype=_I64)
        m[i, j] = self.base.one_code if entry is None else entry
        return self.from_matrix_codes(m)

    def _encode(self, lit):
        if isinstance(lit, int):
            return self._from_int(lit)
        if not (isinstance(lit, list) and len(lit) == self.k
                and all(isinstance(row, list) and len(row) == self.k for row in lit)):
            raise ParseError(f"{self.expr} elements are {self.k}x{self.k} lists of rows")
        return self.from_matrix_codes([[self.base._encode(v) for v in row] for row in lit])

    def _literal(self, code):
        return [[self.base._literal(v) for v in row] for row in self.matrix_codes(code)]

    def _additive_generators(self):
        return [self.unit_matrix(i, j, g) for (i, j) in self.positions for g in self.base.additive_generators]

    def det_codes(self, a) -> np.ndarray:
        """Leibniz determinant (base must be commutative)."""
        m = self._decode(a)
        B = self.base
        total = np.full(m.shape[:-2], B.zero_code, dtype=_I64)
        for perm in itertools.permutations(range(self.k)):
            term = m[..., 0, perm[0]]
            for i in range(1, self.k):
                term = B._mul(term, m[..., i, perm[i]])
            inversions = sum(1 for s in range(self.k) for t in range(s + 1, self.k) if perm[s] > perm[t])
            total = B._sub(total, term) if inversions % 2 else B._add(total, term)
        return total

    def _structural_unit_mask(self):
        if self.upper:
            def diag_units(c):
                m = self._decode(c)
                ok = np.ones(c.shape, dtype=bool)
                for i in range(self.k):
                    ok &= self.base.unit_mask[m[..., i, i]]
                return ok
            return self._map_all(diag_units)
        if self.base.is_commutative and self.k <= 4:
            return self._map_all(lambda c: self.base.unit_mask[self.det_codes(c)])
        return None

    def _structurally_commutative(self):
        if self.base.card == 1:
            return True
        if self.k == 1:
            return self.base.is_commutative
        return False


class ProductRing(FiniteRing):
    def __init__(self, factors: Sequence[FiniteRing]):
        if len(factors) < 1:
            raise RingError("empty product")
        self.factors = list(factors)
        self.expr = ex.Prod(tuple(f.expr for f in factors))
        cards = [f.card for f in factors]
        self.card = math.prod(cards)
        self._weights = [math.prod(cards[i + 1:]) for i in range(len(cards))]
        self.one_code = self._join([f.one_code for f in factors])
        self.zero_code = self._join([f.zero_code for f in factors])

    def _split(self, a):
        a = _arr(a)
        return [(a // w) % f.card for w, f in zip(self._weights, self.factors)]

    def _join(self, parts):
        total = 0
        for w, part in zip(self._weights, parts):
            total = total + _arr(part) * w
        return _arr(total) if not isinstance(total, int) else total

    def _add(self, a, b):
        return _arr(self._join([f._add(x, y) for f, x, y in zip(self.factors, self._split(a), self._split(b))]))

    def _neg(self, a):
        return _arr(self._join([f._neg(x) for f, x in zip(self.factors, self._split(a))]))

    def _mul(self, a, b):
        return _arr(self._join([f._mul(x, y) for f, x, y in zip(self.factors, self._split(a), self._split(b))]))

    def component_codes(self, code: int) -> list[int]:
        return [int(c) for c in self._split(code)]

    def _encode(self, lit):
        if isinstance(lit, int):
            return self._from_int(lit)
        if not (isinstance(lit, tuple) and len(lit) == len(self.factors)):
            raise ParseError(f"{self.expr} elements are {len(self.factors)}-tuples")
        return int(self._join([f._encode(v) for f, v in zip(self.factors, lit)]))

    def _literal(self, code):
        return tuple(f._literal(int(c)) for f, c in zip(self.factors, self._split(code)))

    def _additive_generators(self):
        gens = []
        for i, f in enumerate(self.factors):
            for g in f.additive_generators:
                parts = [h.zero_code for h in self.factors]
                parts[i] = g
                gens.append(int(self._join(parts)))
        return gens

    def _structural_unit_mask(self):
        def ok(c):
            res = np.ones(c.shape, dtype=bool)
            for f, part in zip(self.factors, self._split(c)):
                res &= f.unit_mask[part]
            return res
        return self._map_all(ok)

    def _structurally_commutative(self):
        return all(f.is_commutative for f in self.factors)


class QuotientRing(FiniteRing):
    """R/J; each coset is coded by the rank of its least member code."""

    def __init__(self, base: FiniteRing, ideal_codes: np.ndarray, expr: ex.RingExpr):
        self.base = base
        self.expr = expr
        J = np.unique(_arr(ideal_codes))
        self.ideal_codes = J
        all_codes = np.arange(base.card, dtype=_I64)
        if len(J) * len(J) <= base.card:
            rep = np.full(base.card, np.iinfo(_I64).max, dtype=_I64)
            for j in J:
                rep = np.minimum(rep, base._add(all_codes, j))
        else:
            rep = np.full(base.card, -1, dtype=_I64)
            for x in range(base.card):
                if rep[x] < 0:
                    rep[base._add(x, J)] = x
        self.reps = np.unique(rep)
        self.proj = np.searchsorted(self.reps, rep).astype(_I64)
        self.card = len(self.reps)
        self.one_code = int(self.proj[base.one_code])
        self.zero_code = int(self.proj[base.zero_code])

    def _add(self, a, b):
        return self.proj[self.base._add(self.reps[_arr(a)], self.reps[_arr(b)])]

    def _neg(self, a):
        return self.proj[self.base._neg(self.reps[_arr(a)])]

    def _mul(self, a, b):
        return self.proj[self.base._mul(self.reps[_arr(a)], self.reps[_arr(b)])]

    def _encode(self, lit):
        return int(self.proj[self.base._encode(lit)])

    def _literal(self, code):
        return self.base._literal(int(self.reps[code]))

    def _from_int(self, k):
        return int(self.proj[self.base._from_int(k)])

    def _additive_generators(self):
        return [int(self.proj[g]) for g in self.base.additive_generators]

    def _structurally_commutative(self):
        return True if self.base.is_commutative else None


class CornerRing(FiniteRing):
    """eRe with identity e; codes are ranks of the member codes in R."""

    def __init__(self, base: FiniteRing, e_code: int, expr: ex.RingExpr):
        self.base = base
        self.e_code = int(e_code)
        self.expr = expr
        self.members = additive_image(base, lambda c: base._mul(base._mul(self.e_code, c), self.e_code))
        self.card = len(self.members)
        self.one_code = self.index(self.e_code)
        self.zero_code = self.index(base.zero_code)

    def index(self, base_codes):
        base_codes = _arr(base_codes)
        idx = np.searchsorted(self.members, base_codes)
        if np.any(idx >= self.card) or np.any(self.members[np.minimum(idx, self.card - 1)] != base_codes):
            raise ValueError("element is not in the corner ring")
        return idx.astype(_I64) if idx.ndim else int(idx)

    def _add(self, a, b):
        return _arr(self.index(self.base._add(self.members[_arr(a)], self.members[_arr(b)])))

    def _neg(self, a):
        return _arr(self.index(self.base._neg(self.members[_arr(a)])))

    def _mul(self, a, b):
        return _arr(self.index(self.base._mul(self.members[_arr(a)], self.members[_arr(b)])))

    def _encode(self, lit):
        code = self.base._encode(lit)
        if (self.base._mul(self.base._mul(self.e_code, code), self.e_code)) != code:
            raise ParseError(f"{ex.render_literal(lit)} is not in the corner ring eRe")
        return self.index(code)

    def _literal(self, code):
        return self.base._literal(int(self.members[code]))

    def _additive_generators(self):
        e = self.e_code
        return [self.index(self.base._mul(self.base._mul(e, g), e)) for g in self.base.additive_generators]

    def _structurally_commutative(self):
        return True if self.base.is_commutative else None


class TableRing(FiniteRing):
    """Ring given by explicit addition and multiplication tables."""

    def __init__(self, add_table, mul_table, one: int, expr: ex.RingExpr):
        self.add_table = _arr(add_table)
        self.mul_table = _arr(mul_table)
        self.card = len(self.add_table)
        self.one_code = int(one)
        self.expr = expr
        zeros = [z for z in range(self.card) if np.all(self.add_table[z] == np.arange(self.card))]
        if not zeros:
            raise ParseError("table has no additive identity")
        self.zero_code = zeros[0]
        neg = np.full(self.card, -1, dtype=_I64)
        hit = self.add_table == self.zero_code
        if not hit.any(axis=1).all():
            raise ParseError("table has an element without additive inverse")
        neg[:] = hit.argmax(axis=1)
        self.neg_table = neg

    def _add(self, a, b):
        return self.add_table[_arr(a), _arr(b)]

    def _neg(self, a):
        return self.neg_table[_arr(a)]

    def _mul(self, a, b):
        return self.mul_table[_arr(a), _arr(b)]

    def _encode(self, lit):
        if not isinstance(lit, int) or not 0 <= lit < self.card:
            raise ParseError(f"table ring elements are indices 0..{self.card - 1}")
        return lit

    def _literal(self, code):
        return int(code)

    def _from_int(self, k):
        return FiniteRing._from_int(self, k)


# ---------------------------------------------------------------------------
# element wrappers


class _Value:
    __slots__ = ()

    def _other(self, other):
        if isinstance(other, _Value):
            if other.ring is not self.ring:
                raise MixedRingError(f"cannot combine elements of {self.ring.expr} and {other.ring.expr}")
            return other.code
        if isinstance(other, (int, np.integer)) and not isinstance(other, bool):
            return self.ring._from_int(int(other))
        return None

    def _wrap(self, codes):
        codes = _arr(codes)
        if codes.ndim == 0:
            return Element(self.ring, int(codes))
        return Elements(self.ring, codes)

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is None else self._wrap(self.ring._add(self.code, o))

    def __radd__(self, other):
        o = self._other(other)
        return NotImplemented if o is None else self._wrap(self.ring._add(o, self.code))

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is None else self._wrap(self.ring._sub(self.code, o))

    def __rsub__(self, other):
        o = self._other(other)
        return NotImplemented if o is None else self._wrap(self.ring._sub(o, self.code))

    def __neg__(self):
        return self._wrap(self.ring._neg(self.code))

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is None else self._wrap(self.ring._mul(self.code, o))

    def __rmul__(self, other):
        o = self._other(other)
        return NotImplemented if o is None else self._wrap(self.ring._mul(o, self.code))

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return self._wrap(self.ring._pow(self.code, n))

    def is_unit(self):
        return self.ring.unit_mask[self.code]

    def is_idempotent(self):
        return self.ring._mul(self.code, self.code) == self.code

    def is_nilpotent(self):
        return self.ring.nilpotent_mask[self.code]


class Element(_Value):
    """A single element, identified by its code inside ``ring``."""

    __slots__ = ("ring", "code")

    def __init__(self, ring: FiniteRing, code: int):
        self.ring = ring
        self.code = int(code)

    def __eq__(self, other):
        if isinstance(other, Elements):
            return other == self
        if isinstance(other, Element):
            return self.ring is other.ring and self.code == other.code
        return NotImplemented

    def __hash__(self):
        return hash((id(self.ring), self.code))

    def __lt__(self, other):
        return self.code < other.code

    def is_unit(self) -> bool:
        return bool(self.ring.unit_mask[self.code])

    def is_idempotent(self) -> bool:
        return bool(super().is_idempotent())

    def is_nilpotent(self) -> bool:
        return bool(self.ring.nilpotent_mask[self.code])

    def inverse(self) -> "Element":
        inv = int(self.ring.inverse_codes[self.code])
        if inv < 0:
            raise ZeroDivisionError(f"{self} is not a unit of {self.ring.expr}")
        return Element(self.ring, inv)

    def literal(self) -> ex.Literal:
        return self.ring.literal(self.code)

    def __str__(self):
        return self.ring.render(self.code)

    def __repr__(self):
        return f"Element({self}, code={self.code})"


class Elements(_Value):
    """A numpy-backed vector of elements; comparisons return boolean arrays."""

    __slots__ = ("ring", "code")
    __hash__ = None

    def __init__(self, ring: FiniteRing, codes: np.ndarray):
        self.ring = ring
        self.code = _arr(codes)

    def __eq__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return np.asarray(self.code == o)

    def __ne__(self, other):
        return ~self.__eq__(other)

    def __len__(self):
        return len(self.code)

    def __getitem__(self, i):
        return self._wrap(self.code[i])

    def __iter__(self):
        for c in self.code:
            yield Element(self.ring, int(c))

    def inverse(self) -> "Elements":
        inv = self.ring.inverse_codes[self.code]
        if np.any(inv < 0):
            raise ZeroDivisionError("not all elements are units")
        return Elements(self.ring, inv)

    def __repr__(self):
        return f"Elements({self.ring.expr}, n={len(self.code)})"


# ---------------------------------------------------------------------------
# additive subgroups


def subgroup_closure(R: FiniteRing, members: np.ndarray, g: int) -> np.ndarray:
    """Members of H + <g> for an additive subgroup H given as sorted codes."""
    H = _arr(members)
    if H[np.searchsorted(H, g) % len(H)] == g:
        return H
    # doubling: S_k = H + {0, g, ..., (2^k - 1) g}; stops once it is closed
    S, step = H, _arr(g)
    while True:
        grown = np.union1d(S, R._add(S, step))
        if len(grown) == len(S):
            return S
        S, step = grown, R._add(step, step)


def additive_image(R: FiniteRing, fn) -> np.ndarray:
    """Sorted codes of the image of an additive map ``fn`` on R.

    The image is the subgroup generated by the images of the additive
    generators, which avoids evaluating ``fn`` on every element.
    """
    span = np.array([R.zero_code], dtype=_I64)
    gens = np.asarray(fn(np.array(R.additive_generators, dtype=_I64)), dtype=_I64).reshape(-1)
    for g in gens:
        span = subgroup_closure(R, span, int(g))
    return span


def greedy_generators(R: FiniteRing, members: np.ndarray) -> list[int]:
    """A generating set of the additive subgroup formed by ``members``."""
    span = np.array([R.zero_code], dtype=_I64)
    mask = np.zeros(R.card, dtype=bool)
    mask[R.zero_code] = True
    gens = []
    for x in _arr(members):
        if not mask[x]:
            gens.append(int(x))
            span = subgroup_closure(R, span, int(x))
            mask[span] = True
    return gens


# ---------------------------------------------------------------------------
# construction


def read_table(path: str):
    """Parse a table-ring file into (order, add, mul, one)."""
    try:
        with open(path) as fh:
            lines = [ln.split() for ln in fh if ln.strip()]
    except OSError as err:
        raise ParseError(f"cannot read table file {path}: {err}") from err
    if not lines or lines[0][0] != "order" or len(lines[0]) != 2:
        raise ParseError(f"{path}: first line must be 'order N'")
    try:
        n = int(lines[0][1])
        if n < 1:
            raise ValueError
        add = np.full((n, n), -1, dtype=_I64)
        mul = np.full((n, n), -1, dtype=_I64)
        body = lines[1:]
        if len(body) != 2 * n * n + 1:
            raise ParseError(f"{path}: expected {2 * n * n + 1} lines after the header, got {len(body)}")
        for kind, table, rows in (("add", add, body[:n * n]), ("mul", mul, body[n * n:2 * n * n])):
            for row in rows:
                if len(row) != 4 or row[0] != kind:
                    raise ParseError(f"{path}: expected '{kind} i j k', got {' '.join(row)!r}")
                i, j, k = (int(v) for v in row[1:])
                if not (0 <= i < n and 0 <= j < n and 0 <= k < n):
                    raise ParseError(f"{path}: index out of range in {' '.join(row)!r}")
                table[i, j] = k
        last = body[-1]
        if len(last) != 2 or last[0] != "one":
            raise ParseError(f"{path}: last line must be 'one u'")
        one = int(last[1])
        if not 0 <= one < n:
            raise ParseError(f"{path}: identity index out of range")
    except ValueError as err:
        raise ParseError(f"{path}: malformed number ({err})") from err
    if (add < 0).any() or (mul < 0).any():
        raise ParseError(f"{path}: tables are incomplete")
    return n, add, mul, one


def write_table(R: FiniteRing, path: str) -> None:
    """Write R in the table-ring file format (indices are element codes)."""
    codes = np.arange(R.card, dtype=_I64)
    add = R._add(codes[:, None], codes[None, :])
    mul = R._mul(codes[:, None], codes[None, :])
    with open(path, "w") as fh:
        fh.write(f"order {R.card}\n")
        for name, table in (("add", add), ("mul", mul)):
            for i in range(R.card):
                fh.write("".join(f"{name} {i} {j} {table[i, j]}\n" for j in range(R.card)))
        fh.write(f"one {R.one_code}\n")


def expected_card(e: ex.RingExpr) -> int | None:
    """Cardinality computable without building (None for quotients etc.)."""
    if isinstance(e, ex.Zn):
        return e.modulus
    if isinstance(e, ex.GFp):
        return e.prime ** (len(e.poly) - 1)
    if isinstance(e, (ex.Mat, ex.UpperTri)):
        b = expected_card(e.base)
        if b is None:
            return None
        n = e.size * e.size if isinstance(e, ex.Mat) else e.size * (e.size + 1) // 2
        return b ** n
    if isinstance(e, ex.Prod):
        cards = [expected_card(f) for f in e.factors]
        return None if None in cards else math.prod(cards)
    return None


_CACHE: dict = {}


def build_ring(e: ex.RingExpr | str, max_card: int = DEFAULT_MAX_CARD, *, verify: bool = False) -> FiniteRing:
    """Construct the ring described by ``e``.

    Rings are immutable and memoized per (expression, cap).  With ``verify``
    the ring axioms are checked (exhaustively up to the axiom cap).
    """
    if isinstance(e, str):
        e = ex.parse_ring(e)
    key = (e, max_card)
    R = _CACHE.get(key)
    if R is None:
        R = _build(e, max_card)
        _CACHE[key] = R
    if verify:
        from .structure import verify_axioms
        verify_axioms(R)
    return R


def _check_card(e, card, max_card):
    if card > max_card:
        raise CapExceeded(f"{e} has {card} elements, over the enumeration cap {max_card}")


def _build(e: ex.RingExpr, max_card: int) -> FiniteRing:
    card = expected_card(e)
    if card is not None:
        _check_card(e, card, max_card)
    if isinstance(e, ex.Zn):
        return ZnRing(e.modulus)
    if isinstance(e, ex.GFp):
        return GFRing(e.prime, e.poly)
    if isinstance(e, (ex.Mat, ex.UpperTri)):
        return MatrixRing(e.size, build_ring(e.base, max_card), upper=isinstance(e, ex.UpperTri))
    if isinstance(e, ex.Prod):
        return ProductRing([build_ring(f, max_card) for f in e.factors])
    if isinstance(e, ex.Quot):
        from .structure import ideal_closure
        base = build_ring(e.base, max_card)
        gens = [base(g) for g in e.ideal_gens]
        J = ideal_closure(base, gens)
        return QuotientRing(base, J.members, e)
    if isinstance(e, ex.Corner):
        base = build_ring(e.base, max_card)
        idem = base(e.idem)
        if not idem.is_idempotent():
            raise NotIdempotentError(f"{e.idem} is not an idempotent of {e.base}")
        return CornerRing(base, idem.code, e)
    if isinstance(e, ex.Table):
        n, add, mul, one = read_table(e.source)
        _check_card(e, n, max_card)
        R = TableRing(add, mul, one, e)
        from .errors import VerificationFailed
        from .structure import verify_axioms
        try:
            verify_axioms(R)
        except VerificationFailed as err:
            raise ParseError(f"{e.source}: table rejected, {err}") from err
        return R
    raise TypeError(f"not a ring expression: {e!r}")
