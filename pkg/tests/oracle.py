"""Independent pure-Python ring arithmetic used as a test oracle.

Nothing here touches the package's numpy encodings; elements are plain
ints, tuples and nested tuples, and conversion goes through the rendered
literal text only.
"""

import ast
import itertools


class OZn:
    def __init__(self, n):
        self.n = n
        self.zero, self.one = 0, 1 % n

    def elements(self):
        return list(range(self.n))

    def add(self, a, b):
        return (a + b) % self.n

    def neg(self, a):
        return (-a) % self.n

    def mul(self, a, b):
        return (a * b) % self.n

    def lit(self, v):
        return v % self.n


class OGF:
    """Z_p[x]/(poly), poly monic, coefficients low degree first."""

    def __init__(self, p, poly):
        self.p, self.poly, self.d = p, list(poly), len(poly) - 1
        self.zero = (0,) * self.d
        self.one = (1,) + (0,) * (self.d - 1)

    def elements(self):
        return [tuple(c) for c in itertools.product(range(self.p), repeat=self.d)]

    def add(self, a, b):
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def neg(self, a):
        return tuple((-x) % self.p for x in a)

    def mul(self, a, b):
        prod = [0] * (2 * self.d - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                prod[i + j] += x * y
        for k in range(len(prod) - 1, self.d - 1, -1):
            c = prod[k] % self.p
            if c:
                for i in range(self.d + 1):
                    prod[k - self.d + i] -= c * self.poly[i]
        return tuple(c % self.p for c in prod[:self.d])

    def lit(self, v):
        if isinstance(v, int):
            return (v % self.p,) + (0,) * (self.d - 1)
        v = list(v) + [0] * (self.d - len(v))
        return tuple(c % self.p for c in v)


class OMat:
    def __init__(self, k, base, upper=False):
        self.k, self.base, self.upper = k, base, upper
        z, o = base.zero, base.one
        self.zero = tuple(tuple(z for _ in range(k)) for _ in range(k))
        self.one = tuple(tuple(o if i == j else z for j in range(k)) for i in range(k))

    def elements(self):
        slots = [(i, j) for i in range(self.k) for j in range(self.k) if not self.upper or j >= i]
        out = []
        for vals in itertools.product(self.base.elements(), repeat=len(slots)):
            m = [[self.base.zero] * self.k for _ in range(self.k)]
            for (i, j), v in zip(slots, vals):
                m[i][j] = v
            out.append(tuple(tuple(r) for r in m))
        return out

    def add(self, a, b):
        return tuple(tuple(self.base.add(x, y) for x, y in zip(r, s)) for r, s in zip(a, b))

    def neg(self, a):
        return tuple(tuple(self.base.neg(x) for x in r) for r in a)

    def mul(self, a, b):
        B = self.base
        out = []
        for i in range(self.k):
            row = []
            for j in range(self.k):
                acc = B.zero
                for t in range(self.k):
                    acc = B.add(acc, B.mul(a[i][t], b[t][j]))
                row.append(acc)
            out.append(tuple(row))
        return tuple(out)

    def lit(self, v):
        return tuple(tuple(self.base.lit(x) for x in r) for r in v)


class OProd:
    def __init__(self, *factors):
        self.factors = factors
        self.zero = tuple(f.zero for f in factors)
        self.one = tuple(f.one for f in factors)

    def elements(self):
        return [tuple(t) for t in itertools.product(*(f.elements() for f in self.factors))]

    def add(self, a, b):
        return tuple(f.add(x, y) for f, x, y in zip(self.factors, a, b))

    def neg(self, a):
        return tuple(f.neg(x) for f, x in zip(self.factors, a))

    def mul(self, a, b):
        return tuple(f.mul(x, y) for f, x, y in zip(self.factors, a, b))

    def lit(self, v):
        return tuple(f.lit(x) for f, x in zip(self.factors, v))


# ---------------------------------------------------------------------------
# helpers


def sub(O, a, b):
    return O.add(a, O.neg(b))


def from_text(O, text):
    """Oracle element from a rendered literal."""
    return O.lit(ast.literal_eval(text))


def units(O):
    els = O.elements()
    return {x for x in els if any(O.mul(x, y) == O.one and O.mul(y, x) == O.one for y in els)}


def idempotents(O):
    return {x for x in O.elements() if O.mul(x, x) == x}


def radical(O):
    """x with 1 - xy a unit for every y."""
    els, U = O.elements(), units(O)
    return {x for x in els if all(sub(O, O.one, O.mul(x, y)) in U for y in els)}


def commutator(O, x, y):
    return sub(O, O.mul(x, y), O.mul(y, x))


def anti_commutator(O, x, y):
    return O.add(O.mul(x, y), O.mul(y, x))


def has_pair(O, op):
    """Least-free existence check: idempotents e, e2 with op(e, e2) a unit."""
    U, I = units(O), sorted(idempotents(O))
    return any(op(O, e, f) in U for e in I for f in I)


def ring_from_text(text):
    """A handful of constructors, enough for the test matrix."""
    return _build(ast.parse(text.replace("UT(", "UT_(").replace("M(", "M_("), mode="eval").body)


def _build(node):
    name = node.func.id
    args = node.args
    if name == "Z":
        return OZn(args[0].value)
    if name == "GF":
        return OGF(args[0].value, [c.value for c in args[1].elts])
    if name in ("M_", "UT_"):
        return OMat(args[0].value, _build(args[1]), upper=name == "UT_")
    if name == "Prod":
        return OProd(*(_build(a) for a in args))
    raise ValueError(name)
