"""Isometries of a lattice and of its rational span.

Matrices act on column vectors and a product g*h applies h first.  The
module provides reflections and Eichler transvections, a deterministic
Cartan-Dieudonne decomposition into reflections over Q, spinor norms
valued in square classes, and the membership flags for the subgroup
lattice around the stable orthogonal group.

Group elements that need to certify *how* they were made are carried
as words: sequences of reflection/transvection atoms with an exact
evaluation map.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from orthlat import discform
from orthlat.errors import (
    IsotropicMirrorError,
    NotIsometryError,
    NotIsotropicError,
    NotOrthogonalError,
)
from orthlat.lattice import Lattice
from orthlat.linalg import Mat, Vec, as_scalar


class Isometry:
    """An exact matrix preserving the bilinear form of its lattice."""

    __slots__ = ("lattice", "mat", "_det")

    def __init__(self, lattice: Lattice, mat: Mat, _checked: bool = False):
        if not _checked:
            if mat.shape != (lattice.rank, lattice.rank):
                raise NotIsometryError("wrong shape")
            if mat.transpose() @ lattice.gram @ mat != lattice.gram:
                raise NotIsometryError("matrix does not preserve the form")
        self.lattice = lattice
        self.mat = mat
        self._det = None

    @classmethod
    def _trusted(cls, lattice: Lattice, mat: Mat) -> "Isometry":
        return cls(lattice, mat, _checked=True)

    @classmethod
    def identity(cls, lattice: Lattice) -> "Isometry":
        return cls._trusted(lattice, Mat.identity(lattice.rank))

    def det(self) -> int:
        if self._det is None:
            self._det = int(self.mat.det())
        return self._det

    def is_integral(self) -> bool:
        return self.mat.is_integral()

    def apply(self, v) -> Vec:
        return self.mat.apply(v)

    def __mul__(self, other: "Isometry") -> "Isometry":
        """Composition: self after other."""
        if self.lattice != other.lattice:
            raise ValueError("isometries live on different lattices")
        return Isometry._trusted(self.lattice, self.mat @ other.mat)

    def inverse(self) -> "Isometry":
        return Isometry._trusted(self.lattice, self.mat.inv())

    def __eq__(self, other):
        return isinstance(other, Isometry) and self.mat == other.mat \
            and self.lattice == other.lattice

    def __hash__(self):
        return hash(self.mat)

    def __repr__(self):
        return f"Isometry({self.mat!r})"


def reflection(lattice: Lattice, a) -> Isometry:
    """Reflection in the mirror a: v -> v - 2(a,v)/(a,a) a."""
    a = Vec(a)
    aa = lattice.norm(a)
    if aa == 0:
        raise IsotropicMirrorError("mirror vector is isotropic")
    cols = []
    for i in range(lattice.rank):
        b = lattice.basis_vector(i)
        cols.append(b - (Fraction(2 * lattice.inner(a, b)) / aa) * a)
    return Isometry._trusted(lattice, Mat.from_cols(cols))


def transvection(lattice: Lattice, e, a) -> Isometry:
    """Unipotent map v -> v - (a,v)e + (e,v)a - (a,a)/2 (e,v)e for
    isotropic e and a orthogonal to e.  Rational e, a are allowed."""
    e, a = Vec(e), Vec(a)
    if lattice.norm(e) != 0:
        raise NotIsotropicError("base vector must be isotropic")
    if lattice.inner(e, a) != 0:
        raise NotOrthogonalError("(e, a) must vanish")
    half_aa = Fraction(lattice.norm(a)) / 2
    cols = []
    for i in range(lattice.rank):
        v = lattice.basis_vector(i)
        av = lattice.inner(a, v)
        ev = lattice.inner(e, v)
        cols.append(v - av * e + ev * a - (half_aa * ev) * e)
    return Isometry._trusted(lattice, Mat.from_cols(cols))


# ---------------------------------------------------------------------
# words of generators

@dataclass(frozen=True)
class ReflectionAtom:
    mirror: Vec

    def to_isometry(self, lattice: Lattice) -> Isometry:
        return reflection(lattice, self.mirror)

    def inverse(self) -> "ReflectionAtom":
        return self

    def to_json(self) -> dict:
        return {"type": "reflection", "mirror": [str(x) for x in self.mirror]}


@dataclass(frozen=True)
class TransvectionAtom:
    e: Vec
    a: Vec

    def to_isometry(self, lattice: Lattice) -> Isometry:
        return transvection(lattice, self.e, self.a)

    def inverse(self) -> "TransvectionAtom":
        return TransvectionAtom(self.e, -self.a)

    def is_integral(self) -> bool:
        return self.e.is_integral() and self.a.is_integral()

    def to_json(self) -> dict:
        return {
            "type": "transvection",
            "e": [str(x) for x in self.e],
            "a": [str(x) for x in self.a],
        }


@dataclass(frozen=True)
class InverseAtom:
    atom: "Atom"

    def to_isometry(self, lattice: Lattice) -> Isometry:
        return self.atom.to_isometry(lattice).inverse()

    def inverse(self) -> "Atom":
        return self.atom

    def to_json(self) -> dict:
        return {"type": "inverse", "atom": self.atom.to_json()}


Atom = ReflectionAtom | TransvectionAtom | InverseAtom


def atom_from_json(data: dict) -> Atom:
    kind = data["type"]
    if kind == "reflection":
        return ReflectionAtom(Vec(_parse_scalar(x) for x in data["mirror"]))
    if kind == "transvection":
        return TransvectionAtom(
            Vec(_parse_scalar(x) for x in data["e"]),
            Vec(_parse_scalar(x) for x in data["a"]),
        )
    if kind == "inverse":
        return InverseAtom(atom_from_json(data["atom"]))
    raise ValueError(f"unknown atom type {kind!r}")


def _parse_scalar(s: str):
    if "/" in s:
        p, q = s.split("/", 1)
        return Fraction(int(p), int(q))
    return int(s)


class GroupWord:
    """A word g1 g2 ... gk of atoms acting as v -> g1(g2(...gk(v))),
    i.e. the rightmost atom applies first."""

    __slots__ = ("lattice", "atoms")

    def __init__(self, lattice: Lattice, atoms=()):
        self.lattice = lattice
        self.atoms = tuple(atoms)

    def __len__(self):
        return len(self.atoms)

    def evaluate(self) -> Isometry:
        out = Isometry.identity(self.lattice)
        for atom in self.atoms:
            out = out * atom.to_isometry(self.lattice)
        return out

    def inverse(self) -> "GroupWord":
        return GroupWord(self.lattice, tuple(a.inverse() for a in reversed(self.atoms)))

    def then(self, other: "GroupWord") -> "GroupWord":
        """Word equal to self applied after other."""
        return GroupWord(self.lattice, self.atoms + other.atoms)

    def apply(self, v) -> Vec:
        v = Vec(v)
        for atom in reversed(self.atoms):
            v = atom.to_isometry(self.lattice).apply(v)
        return v

    def is_integral(self) -> bool:
        return all(
            isinstance(a, TransvectionAtom) and a.is_integral()
            or isinstance(a, ReflectionAtom) and a.mirror.is_integral()
            for a in self.atoms
        )

    def to_json(self) -> list:
        return [a.to_json() for a in self.atoms]

    @classmethod
    def from_json(cls, lattice: Lattice, data: list) -> "GroupWord":
        return cls(lattice, [atom_from_json(d) for d in data])

    def __repr__(self):
        return f"GroupWord({len(self.atoms)} atoms)"


# ---------------------------------------------------------------------
# Cartan-Dieudonne decomposition and spinor norms

def _orthogonal_basis(lattice: Lattice, order=None) -> list[Vec]:
    """An orthogonal rational basis, from symmetric elimination of the
    Gram matrix; ``order`` permutes the starting basis first."""
    from orthlat.linalg import congruence_diagonalize

    n = lattice.rank
    if order is None:
        order = range(n)
    perm = Mat.from_cols([Vec.unit(n, i) for i in order])
    g = perm.transpose() @ lattice.gram @ perm
    p, _ = congruence_diagonalize(g)
    full = perm @ p
    return [full.col(j) for j in range(n)]


def cartan_dieudonne(g: Isometry, order=None) -> list[Vec]:
    """Mirror vectors v1, ..., vm with g == s_{v1} * ... * s_{vm}.

    Walks a fixed orthogonal basis; each step fixes one more basis
    vector, reflecting by w - g(w) when that is anisotropic and falling
    back to the two-mirror step (by w + g(w), then w) otherwise.  At
    most 2*rank mirrors, all anisotropic, fully deterministic.
    """
    lattice = g.lattice
    mirrors: list[Vec] = []
    h = g
    for w in _orthogonal_basis(lattice, order):
        hw = h.apply(w)
        if hw == w:
            continue
        d = w - hw
        if lattice.norm(d) != 0:
            h = reflection(lattice, d) * h
            mirrors.append(d)
        else:
            s = w + hw
            h = reflection(lattice, w) * reflection(lattice, s) * h
            mirrors.append(s)
            mirrors.append(w)
    if h.mat != Mat.identity(lattice.rank):
        raise NotIsometryError("decomposition failed to terminate at the identity")
    # s_{m_k} ... s_{m_1} g = 1, so g = s_{m_1} ... s_{m_k}
    return mirrors


def squarefree_class(x) -> int:
    """Canonical representative of x in Q*/(Q*)^2: a signed squarefree
    integer, computed by clearing the denominator and stripping square
    factors by trial division."""
    x = Fraction(as_scalar(x))
    if x == 0:
        raise ValueError("0 has no square class")
    n = x.numerator * x.denominator
    sign = -1 if n < 0 else 1
    n = abs(n)
    out = 1
    f = 2
    while f * f <= n:
        e = 0
        while n % f == 0:
            n //= f
            e += 1
        if e % 2:
            out *= f
        f += 1 if f == 2 else 2
    return sign * out * n


def class_mul(a: int, b: int) -> int:
    return squarefree_class(a * b)


def spinor_norm_q(g: Isometry, order=None) -> int:
    """Spinor norm over Q as a signed squarefree integer: the product of
    -(v,v)/2 over any reflection decomposition."""
    acc = Fraction(1)
    for m in cartan_dieudonne(g, order):
        acc *= -Fraction(g.lattice.norm(m)) / 2
    return squarefree_class(acc)


def spinor_norm_r(g: Isometry) -> int:
    """Real spinor norm: +1 or -1, the sign of the rational one."""
    return 1 if spinor_norm_q(g) > 0 else -1


# ---------------------------------------------------------------------
# membership flags

@dataclass(frozen=True)
class Membership:
    in_o: bool
    in_so: bool
    in_o_plus: bool
    in_stable: bool
    in_stable_plus: bool
    in_stable_so_plus: bool
    in_spinorial_kernel: bool

    def to_json(self) -> dict:
        return {
            "inO": self.in_o,
            "inSO": self.in_so,
            "inOplus": self.in_o_plus,
            "inStable": self.in_stable,
            "inStablePlus": self.in_stable_plus,
            "inStableSOplus": self.in_stable_so_plus,
            "inSpinorialKernel": self.in_spinorial_kernel,
        }


_ALL_FALSE = Membership(False, False, False, False, False, False, False)


def membership(lattice: Lattice, mat: Mat) -> Membership:
    """Subgroup flags for an arbitrary matrix; all False when it is not
    an integral isometry of the lattice."""
    if mat.shape != (lattice.rank, lattice.rank):
        return _ALL_FALSE
    if not mat.is_integral():
        return _ALL_FALSE
    if mat.transpose() @ lattice.gram @ mat != lattice.gram:
        return _ALL_FALSE
    g = Isometry._trusted(lattice, mat)
    so = g.det() == 1
    sn_q = spinor_norm_q(g)
    o_plus = sn_q > 0
    stable = discform.is_stable(lattice, mat)
    return Membership(
        in_o=True,
        in_so=so,
        in_o_plus=o_plus,
        in_stable=stable,
        in_stable_plus=stable and o_plus,
        in_stable_so_plus=stable and o_plus and so,
        in_spinorial_kernel=so and sn_q == 1,
    )
