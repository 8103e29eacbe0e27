"""Exact linear algebra over the integers and rationals.

Scalars are Python ints and ``fractions.Fraction``; a matrix is stored
as integer entries over a single positive denominator, normalized so
that the gcd of all entries with the denominator is 1.  Equality is
exact entrywise equality and nothing here ever touches floating point.

Besides the ``Vec``/``Mat`` containers this module provides the three
integral workhorses used everywhere else: Smith normal form with
unimodular transforms, integer linear solving, and exact congruence
diagonalization of symmetric matrices.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

from orthlat import kernels
from orthlat.errors import DegenerateFormError

Scalar = int | Fraction


def as_scalar(x) -> Scalar:
    """Coerce to an exact scalar, collapsing Fractions with denominator 1."""
    if isinstance(x, int) and not isinstance(x, bool):
        return x
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else x
    raise TypeError(f"expected int or Fraction, got {type(x).__name__}")


def _den(x: Scalar) -> int:
    return x.denominator if isinstance(x, Fraction) else 1


class Vec(tuple):
    """Immutable exact vector with componentwise arithmetic."""

    def __new__(cls, entries):
        return super().__new__(cls, (as_scalar(e) for e in entries))

    @classmethod
    def zero(cls, n: int) -> "Vec":
        return cls([0] * n)

    @classmethod
    def unit(cls, n: int, i: int) -> "Vec":
        return cls(1 if j == i else 0 for j in range(n))

    def __add__(self, other):
        return Vec(a + b for a, b in zip(self, other, strict=True))

    def __radd__(self, other):
        return self.__add__(other)

    def __sub__(self, other):
        return Vec(a - b for a, b in zip(self, other, strict=True))

    def __neg__(self):
        return Vec(-a for a in self)

    def __mul__(self, c):
        c = as_scalar(c)
        return Vec(a * c for a in self)

    __rmul__ = __mul__

    def __truediv__(self, c):
        c = as_scalar(c)
        return Vec(Fraction(a) / c for a in self)

    def is_zero(self) -> bool:
        return not any(self)

    def is_integral(self) -> bool:
        return all(_den(a) == 1 for a in self)

    def content(self) -> int:
        """gcd of the entries (integral vectors only)."""
        g = 0
        for a in self:
            g = gcd(g, a)
        return g

    def __repr__(self):
        return f"Vec({list(self)!r})"


class Mat:
    """Dense exact matrix: integer entries over one positive denominator."""

    __slots__ = ("n", "m", "_ents", "_den")

    def __init__(self, rows):
        rows = [[as_scalar(x) for x in row] for row in rows]
        n = len(rows)
        m = len(rows[0]) if n else 0
        if any(len(r) != m for r in rows):
            raise ValueError("ragged rows")
        den = 1
        for row in rows:
            for x in row:
                den = lcm(den, _den(x))
        ents = []
        for row in rows:
            for x in row:
                ents.append(int(x * den))
        self.n, self.m = n, m
        self._ents, self._den = self._normalize(ents, den)

    @staticmethod
    def _normalize(ents, den):
        g = den
        for e in ents:
            g = gcd(g, e)
            if g == 1:
                break
        if g > 1:
            ents = [e // g for e in ents]
            den //= g
        return tuple(ents), den

    @classmethod
    def _raw(cls, n, m, ents, den):
        self = object.__new__(cls)
        self.n, self.m = n, m
        self._ents, self._den = cls._normalize(list(ents), den)
        return self

    @classmethod
    def identity(cls, n: int) -> "Mat":
        return cls._raw(n, n, [1 if i == j else 0 for i in range(n) for j in range(n)], 1)

    @classmethod
    def zero(cls, n: int, m: int) -> "Mat":
        return cls._raw(n, m, [0] * (n * m), 1)

    @classmethod
    def diag(cls, values) -> "Mat":
        values = [as_scalar(v) for v in values]
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def from_cols(cls, cols) -> "Mat":
        cols = [list(c) for c in cols]
        return cls([[c[i] for c in cols] for i in range(len(cols[0]))])

    @property
    def shape(self):
        return (self.n, self.m)

    def __getitem__(self, ij) -> Scalar:
        i, j = ij
        return as_scalar(Fraction(self._ents[i * self.m + j], self._den))

    def row(self, i: int) -> Vec:
        d = self._den
        return Vec(Fraction(e, d) for e in self._ents[i * self.m:(i + 1) * self.m])

    def col(self, j: int) -> Vec:
        d = self._den
        return Vec(Fraction(self._ents[i * self.m + j], d) for i in range(self.n))

    def rows(self):
        return [self.row(i) for i in range(self.n)]

    def is_integral(self) -> bool:
        return self._den == 1

    def int_rows(self) -> list[list[int]]:
        if self._den != 1:
            raise ValueError("matrix is not integral")
        m = self.m
        return [list(self._ents[i * m:(i + 1) * m]) for i in range(self.n)]

    def is_symmetric(self) -> bool:
        if self.n != self.m:
            return False
        e, m = self._ents, self.m
        return all(e[i * m + j] == e[j * m + i] for i in range(self.n) for j in range(i))

    def transpose(self) -> "Mat":
        n, m, e = self.n, self.m, self._ents
        ents = [e[i * m + j] for j in range(m) for i in range(n)]
        return Mat._raw(m, n, ents, self._den)

    def __eq__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        return (self.n, self.m, self._den, self._ents) == (other.n, other.m, other._den, other._ents)

    def __hash__(self):
        return hash((self.n, self.m, self._den, self._ents))

    def __neg__(self):
        return Mat._raw(self.n, self.m, [-e for e in self._ents], self._den)

    def __add__(self, other):
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        d = lcm(self._den, other._den)
        a, b = d // self._den, d // other._den
        ents = [x * a + y * b for x, y in zip(self._ents, other._ents)]
        return Mat._raw(self.n, self.m, ents, d)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        c = Fraction(as_scalar(c))
        return Mat._raw(self.n, self.m,
                        [e * c.numerator for e in self._ents],
                        self._den * c.denominator)

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, Mat):
            if self.m != other.n:
                raise ValueError("shape mismatch")
            ents = kernels.imat_mul(list(self._ents), list(other._ents),
                                    self.n, self.m, other.m)
            return Mat._raw(self.n, other.m, ents, self._den * other._den)
        if isinstance(other, (Vec, tuple, list)):
            return self.apply(other)
        return NotImplemented

    def apply(self, v) -> Vec:
        """Matrix times column vector."""
        if len(v) != self.m:
            raise ValueError("shape mismatch")
        d = 1
        for x in v:
            d = lcm(d, _den(as_scalar(x)))
        w = [int(as_scalar(x) * d) for x in v]
        m, e = self.m, self._ents
        out = []
        for i in range(self.n):
            base = i * m
            acc = 0
            for j in range(m):
                acc += e[base + j] * w[j]
            out.append(Fraction(acc, self._den * d))
        return Vec(out)

    def det(self) -> Scalar:
        """Exact determinant (Bareiss on the integer numerators)."""
        if self.n != self.m:
            raise ValueError("determinant of a non-square matrix")
        n = self.n
        if n == 0:
            return 1
        a = [list(self._ents[i * n:(i + 1) * n]) for i in range(n)]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k]:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return as_scalar(Fraction(sign * a[n - 1][n - 1], self._den ** n))

    def inv(self) -> "Mat":
        """Exact inverse by Gauss-Jordan elimination."""
        if self.n != self.m:
            raise ValueError("inverse of a non-square matrix")
        n = self.n
        d = self._den
        a = [[Fraction(self._ents[i * n + j], d) for j in range(n)] for i in range(n)]
        b = [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
        for k in range(n):
            piv = None
            for i in range(k, n):
                if a[i][k]:
                    piv = i
                    break
            if piv is None:
                raise ValueError("singular matrix")
            if piv != k:
                a[k], a[piv] = a[piv], a[k]
                b[k], b[piv] = b[piv], b[k]
            p = a[k][k]
            a[k] = [x / p for x in a[k]]
            b[k] = [x / p for x in b[k]]
            for i in range(n):
                if i != k and a[i][k]:
                    f = a[i][k]
                    a[i] = [x - f * y for x, y in zip(a[i], a[k])]
                    b[i] = [x - f * y for x, y in zip(b[i], b[k])]
        return Mat(b)

    def __repr__(self):
        return f"Mat({[list(self.row(i)) for i in range(self.n)]!r})"


def smith_normal_form(m: Mat) -> tuple[Mat, Mat, Mat]:
    """Smith normal form with transforms: U @ M @ V == S.

    U and V are unimodular, S is diagonal with non-negative entries in a
    divisibility chain d1 | d2 | ...  Pivoting is deterministic: the
    smallest nonzero entry by absolute value, ties broken by lowest
    (row, col).
    """
    if not m.is_integral():
        raise ValueError("Smith normal form needs an integer matrix")
    a = m.int_rows()
    n, cols = m.n, m.m
    u = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    v = [[1 if i == j else 0 for j in range(cols)] for i in range(cols)]

    def row_sub(i, k, q):
        # row_i -= q * row_k
        a[i] = [x - q * y for x, y in zip(a[i], a[k])]
        u[i] = [x - q * y for x, y in zip(u[i], u[k])]

    def col_sub(j, k, q):
        for r in a:
            r[j] -= q * r[k]
        for r in v:
            r[j] -= q * r[k]

    def swap_rows(i, k):
        a[i], a[k] = a[k], a[i]
        u[i], u[k] = u[k], u[i]

    def swap_cols(j, k):
        for r in a:
            r[j], r[k] = r[k], r[j]
        for r in v:
            r[j], r[k] = r[k], r[j]

    t = 0
    while t < min(n, cols):
        # deterministic pivot: min |value|, then lowest (row, col)
        piv = None
        for i in range(t, n):
            for j in range(t, cols):
                x = a[i][j]
                if x and (piv is None or abs(x) < abs(a[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        if piv[0] != t:
            swap_rows(piv[0], t)
        if piv[1] != t:
            swap_cols(piv[1], t)
        dirty = False
        for i in range(t + 1, n):
            if a[i][t]:
                q = a[i][t] // a[t][t]
                row_sub(i, t, q)
                if a[i][t]:
                    dirty = True
        for j in range(t + 1, cols):
            if a[t][j]:
                q = a[t][j] // a[t][t]
                col_sub(j, t, q)
                if a[t][j]:
                    dirty = True
        if dirty:
            continue
        d = a[t][t]
        culprit = None
        for i in range(t + 1, n):
            for j in range(t + 1, cols):
                if a[i][j] % d:
                    culprit = i
                    break
            if culprit is not None:
                break
        if culprit is not None:
            # pull the offending row up so the pivot shrinks to the gcd
            row_sub(t, culprit, -1)
            continue
        t += 1

    for i in range(min(n, cols)):
        if a[i][i] < 0:
            a[i] = [-x for x in a[i]]
            u[i] = [-x for x in u[i]]
    return Mat(u), Mat(a), Mat(v)


def invariant_factors(m: Mat) -> list[int]:
    _, s, _ = smith_normal_form(m)
    return [int(s[i, i]) for i in range(min(m.n, m.m))]


def solve_linear(a: Mat, b) -> Vec | None:
    """An integer solution x of A x = b, or None when none exists."""
    if not a.is_integral():
        raise ValueError("solve_linear needs an integer matrix")
    b = [int(x) for x in b]
    if len(b) != a.n:
        raise ValueError("shape mismatch")
    u, s, v = smith_normal_form(a)
    c = u.apply(b)
    y = [0] * a.m
    for i in range(a.n):
        ci = int(c[i])
        d = int(s[i, i]) if i < min(a.n, a.m) else 0
        if d == 0:
            if ci != 0:
                return None
        else:
            if ci % d:
                return None
            y[i] = ci // d
    return Vec(int(x) for x in v.apply(y))


def congruence_diagonalize(g: Mat) -> tuple[Mat, Mat]:
    """P, D with P^T G P == D diagonal, over the rationals.

    Symmetric Gaussian elimination; when every remaining diagonal entry
    is zero, a hyperbolic column/row addition creates a pivot first.
    Raises DegenerateFormError when det G == 0.
    """
    if not g.is_symmetric():
        raise ValueError("congruence diagonalization needs a symmetric matrix")
    n = g.n
    if g.det() == 0:
        raise DegenerateFormError("form is degenerate")
    a = [[Fraction(g[i, j]) for j in range(n)] for i in range(n)]
    p = [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]

    def col_add(dst, src, f):
        # col_dst += f * col_src, same on rows of a to keep symmetry
        for i in range(n):
            a[i][dst] += f * a[i][src]
        for j in range(n):
            a[dst][j] += f * a[src][j]
        for i in range(n):
            p[i][dst] += f * p[i][src]

    def col_swap(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        a[i], a[j] = a[j], a[i]
        for r in p:
            r[i], r[j] = r[j], r[i]

    for k in range(n):
        if a[k][k] == 0:
            piv = next((i for i in range(k + 1, n) if a[i][i]), None)
            if piv is not None:
                col_swap(k, piv)
            else:
                hyp = None
                for i in range(k, n):
                    for j in range(i + 1, n):
                        if a[i][j]:
                            hyp = (i, j)
                            break
                    if hyp:
                        break
                if hyp is None:
                    raise DegenerateFormError("form is degenerate")
                col_add(hyp[0], hyp[1], Fraction(1))
                if hyp[0] != k:
                    col_swap(k, hyp[0])
        piv = a[k][k]
        for j in range(k + 1, n):
            if a[k][j]:
                col_add(j, k, -a[k][j] / piv)
    return Mat(p), Mat(a)


def signature_of(g: Mat) -> tuple[int, int]:
    """Sign counts (positives, negatives) of the diagonalized form."""
    _, d = congruence_diagonalize(g)
    pos = sum(1 for i in range(g.n) if d[i, i] > 0)
    return pos, g.n - pos
