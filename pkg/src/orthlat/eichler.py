"""Transvection groups attached to a hyperbolic splitting L = U + U1 + L0.

Everything here produces *words* in the transvections t(e, a), t(f, a)
with a in L1 = U1 + L0, so that each result certifies its own subgroup
membership: moving a vector into L1 by Euclidean reduction of its
2x2 plane coordinates, deciding equivalence of primitive vectors by
(norm, discriminant class), transporting one vector to another,
trimming an isometry down to the complement of U, rewriting an
arbitrary root reflection against a fixed anchor mirror, and a census
of roots by orbit invariant.
"""

from __future__ import annotations

from dataclasses import dataclass

from orthlat.discform import DiscElement, class_of
from orthlat.errors import (
    EquivalenceFailsError,
    InternalSolveFailureError,
    MissingSplittingError,
    NotIntegralIsometryError,
    NotPrimitiveError,
    NotRootError,
    UnsupportedCoordinatesError,
)
from orthlat.isometry import (
    GroupWord,
    Isometry,
    TransvectionAtom,
    reflection,
)
from orthlat.lattice import Lattice
from orthlat.linalg import Mat, Vec, solve_linear


class HyperbolicSplitting:
    """Indices of one or two unimodular hyperbolic planes inside a
    lattice basis, with the complement(s) they leave."""

    __slots__ = ("lattice", "u_idx", "u1_idx", "e", "f", "e1", "f1",
                 "l1_indices", "l0_indices")

    def __init__(self, lattice: Lattice, u_idx: tuple[int, int],
                 u1_idx: tuple[int, int] | None = None):
        self.lattice = lattice
        self.u_idx = tuple(u_idx)
        self.u1_idx = tuple(u1_idx) if u1_idx is not None else None
        self._check_plane(self.u_idx)
        self.e = lattice.basis_vector(self.u_idx[0])
        self.f = lattice.basis_vector(self.u_idx[1])
        if self.u1_idx is not None:
            self._check_plane(self.u1_idx)
            self.e1 = lattice.basis_vector(self.u1_idx[0])
            self.f1 = lattice.basis_vector(self.u1_idx[1])
        else:
            self.e1 = self.f1 = None
        used = set(self.u_idx)
        self.l1_indices = tuple(i for i in range(lattice.rank) if i not in used)
        if self.u1_idx is not None:
            used |= set(self.u1_idx)
        self.l0_indices = tuple(i for i in range(lattice.rank) if i not in used)

    def _check_plane(self, idx):
        g = self.lattice.gram
        i, j = idx
        if int(g[i, i]) or int(g[j, j]) or int(g[i, j]) != 1:
            raise MissingSplittingError(f"indices {idx} do not span a unimodular plane")
        for k in range(self.lattice.rank):
            if k not in idx and (int(g[i, k]) or int(g[j, k])):
                raise MissingSplittingError(f"plane {idx} is not an orthogonal summand")

    @property
    def has_u1(self) -> bool:
        return self.u1_idx is not None

    def require_u1(self):
        if not self.has_u1:
            raise MissingSplittingError("a second hyperbolic plane is required")

    def l1_basis(self) -> list[Vec]:
        return [self.lattice.basis_vector(i) for i in self.l1_indices]

    def l0_basis(self) -> list[Vec]:
        return [self.lattice.basis_vector(i) for i in self.l0_indices]

    def in_l1(self, v) -> bool:
        """Supported away from the first plane."""
        return all(self.lattice.inner(v, w) == 0 for w in (self.e, self.f))


def standard_splitting(lattice: Lattice) -> HyperbolicSplitting:
    """Splitting along the first two unscaled U blocks of a built lattice."""
    planes = [(b.start, b.start + 1) for b in lattice.blocks
              if b.kind == "U" and b.scale == 1]
    if not planes:
        raise MissingSplittingError("lattice has no unimodular hyperbolic block")
    u1 = planes[1] if len(planes) > 1 else None
    return HyperbolicSplitting(lattice, planes[0], u1)


# ---------------------------------------------------------------------
# SO(2,2) reduction: Euclidean elimination of the U-coordinates

def _nearest_quotient(a: int, b: int) -> int:
    """q minimizing |a - q b|, ties toward the smaller quotient."""
    q = a // b
    r = a - q * b
    if 2 * abs(r) > abs(b):
        q += 1 if b > 0 else -1
    return q


class _PlaneReducer:
    """Tracks the 2x2 coordinate matrix [[x1, x], [y, -y1]] of a vector
    under the four plane transvections, recording each atom applied."""

    def __init__(self, split: HyperbolicSplitting, v: Vec):
        split.require_u1()
        self.split = split
        lat = split.lattice
        self.x = lat.inner(v, split.f)
        self.y = lat.inner(v, split.e)
        self.x1 = lat.inner(v, split.f1)
        self.y1 = lat.inner(v, split.e1)
        self.applied: list[TransvectionAtom] = []

    # the four generators, with integer multiplicity k
    def left_upper(self, k):    # t(e, k e1): row1 += k row2
        s = self.split
        self.applied.append(TransvectionAtom(s.e, k * s.e1))
        self.x1 += k * self.y
        self.x += k * (-self.y1)

    def left_lower(self, k):    # t(f, -k f1): row2 += k row1
        s = self.split
        self.applied.append(TransvectionAtom(s.f, -k * s.f1))
        self.y += k * self.x1
        self.y1 -= k * self.x

    def right_col2(self, k):    # t(e, -k f1): col2 += k col1
        s = self.split
        self.applied.append(TransvectionAtom(s.e, -k * s.f1))
        self.x += k * self.x1
        self.y1 -= k * self.y

    def right_col1(self, k):    # t(f, k e1): col1 += k col2
        s = self.split
        self.applied.append(TransvectionAtom(s.f, k * s.e1))
        self.x1 += k * self.x
        self.y += k * (-self.y1)

    def rotate_rows(self):
        # [[0,-1],[1,0]] on the left
        self.left_upper(-1)
        self.left_lower(1)
        self.left_upper(-1)

    def rotate_cols(self):
        self.right_col1(1)
        self.right_col2(-1)
        self.right_col1(1)

    def run(self):
        while self.x != 0 or self.y != 0:
            if self.x1 == 0:
                if self.y != 0:
                    self.rotate_rows()
                else:
                    self.rotate_cols()
                continue
            if self.y != 0:
                q = _nearest_quotient(self.y, self.x1)
                if q:
                    self.left_lower(-q)
                if self.y != 0:
                    self.rotate_rows()
                    continue
            if self.x != 0:
                q = _nearest_quotient(self.x, self.x1)
                if q:
                    self.right_col2(-q)
                if self.x != 0:
                    self.rotate_cols()


def _reduce_into_l1(split: HyperbolicSplitting, v: Vec) -> tuple[list[TransvectionAtom], Vec]:
    """Atoms (in application order) taking v into the complement of U."""
    red = _PlaneReducer(split, v)
    red.run()
    image = Vec(v)
    for atom in red.applied:
        image = atom.to_isometry(split.lattice).apply(image)
    if not split.in_l1(image):
        raise InternalSolveFailureError("plane reduction failed")
    return red.applied, image


def so22_reduce(split: HyperbolicSplitting, v) -> tuple[GroupWord, Vec]:
    """Word in the four plane transvections mapping v (supported on
    U + U1) into U1; the image has the same norm."""
    split.require_u1()
    v = Vec(v)
    lat = split.lattice
    span = {*split.u_idx, *split.u1_idx}
    if any(v[i] != 0 for i in range(lat.rank) if i not in span):
        raise UnsupportedCoordinatesError("vector is not supported on the two planes")
    applied, image = _reduce_into_l1(split, v)
    return GroupWord(lat, tuple(reversed(applied))), image


# ---------------------------------------------------------------------
# the equivalence criterion and its constructive witness

@dataclass(frozen=True)
class OrbitInvariant:
    norm: int
    disc_class: DiscElement
    divisor: int

    def key(self):
        return (self.norm, self.disc_class.coords)


def orbit_invariant(lattice: Lattice, v) -> OrbitInvariant:
    v = Vec(v)
    cls = class_of(lattice, v)
    return OrbitInvariant(int(lattice.norm(v)), cls, lattice.divisor(v))


def eichler_equivalent(split: HyperbolicSplitting, u, v) -> bool:
    """Same norm and same class of u*/v* in D(L)."""
    split.require_u1()
    lat = split.lattice
    u, v = Vec(u), Vec(v)
    if not (lat.is_primitive(u) and lat.is_primitive(v)):
        raise NotPrimitiveError("equivalence applies to primitive vectors")
    return lat.norm(u) == lat.norm(v) and class_of(lat, u) == class_of(lat, v)


def transport_witness(split: HyperbolicSplitting, u, v) -> GroupWord:
    """A word of integral transvections t(e|f, a in L1) mapping u to v.

    Both vectors are first pushed into L1 by plane reduction; the
    residual translation by (u - v)/div happens there via three
    transvections, using solved auxiliary vectors u', v' pairing to the
    common divisor.
    """
    lat = split.lattice
    u, v = Vec(u), Vec(v)
    if not eichler_equivalent(split, u, v):
        raise EquivalenceFailsError("vectors differ in norm or discriminant class")
    if u == v:
        return GroupWord(lat)
    d = lat.divisor(u)
    if lat.divisor(v) != d:
        raise EquivalenceFailsError("divisors differ")

    au, u1 = _reduce_into_l1(split, u)
    av, v1 = _reduce_into_l1(split, v)

    l1_basis = split.l1_basis()

    def pair_to_d(x: Vec) -> Vec:
        row = [lat.inner(x, b) for b in l1_basis]
        sol = solve_linear(Mat([row]), [d])
        if sol is None:
            raise InternalSolveFailureError("no vector pairing to the divisor")
        out = Vec.zero(lat.rank)
        for c, b in zip(sol, l1_basis):
            out = out + c * b
        return out

    up = pair_to_d(u1)
    vp = pair_to_d(v1)
    w = (u1 - v1) / d
    if not w.is_integral():
        raise InternalSolveFailureError("translation step is not integral")

    middle = [TransvectionAtom(split.e, up),
              TransvectionAtom(split.f, Vec(w)),
              TransvectionAtom(split.e, -vp)]
    applied = list(au) + middle + [a.inverse() for a in reversed(av)]
    applied = [a for a in applied if not a.a.is_zero()]
    word = GroupWord(lat, tuple(reversed(applied)))
    if word.apply(u) != v:
        raise InternalSolveFailureError("transport witness failed to verify")
    return word


def stabilize_plane(split: HyperbolicSplitting, g: Isometry) -> tuple[GroupWord, Isometry]:
    """tau with eval(tau) * g acting as the identity on U; the second
    return is that product, an isometry supported on the complement."""
    split.require_u1()
    lat = split.lattice
    if not g.is_integral():
        raise NotIntegralIsometryError("stabilization needs an integral isometry")
    tau = transport_witness(split, g.apply(split.e), split.e)
    g1 = tau.evaluate() * g
    ftilde = g1.apply(split.f)
    alpha = lat.inner(split.f, ftilde)
    beta = lat.inner(split.e, ftilde)
    if beta != 1:
        raise InternalSolveFailureError("pairing with e was not preserved")
    b = ftilde - alpha * split.e - split.f
    if 2 * alpha != -lat.norm(b):
        raise InternalSolveFailureError("complement component has wrong square")
    if not b.is_zero():
        tau = GroupWord(lat, (TransvectionAtom(split.e, -b),) + tau.atoms)
    h = tau.evaluate() * g
    if h.apply(split.e) != split.e or h.apply(split.f) != split.f:
        raise InternalSolveFailureError("stabilization failed to fix the plane")
    return tau, h


def rewrite_reflection(split: HyperbolicSplitting, r, mirror=None) -> GroupWord:
    """rho in the transvection group with s_r == eval(rho) * s_mirror.

    The anchor mirror defaults to e - f.  The root is first moved into
    L1, where its reflection factors through three transvections times
    the anchor; conjugating back keeps every atom a transvection.
    """
    split.require_u1()
    lat = split.lattice
    r = Vec(r)
    if lat.norm(r) != -2:
        raise NotRootError("rewrite applies to vectors of square -2")
    anchor = split.e - split.f if mirror is None else Vec(mirror)
    if anchor == split.e - split.f:
        rho = _rewrite_against_ef(split, r)
    else:
        if lat.norm(anchor) != -2:
            raise NotRootError("anchor mirror must have square -2")
        rho_r = _rewrite_against_ef(split, r)
        rho_m = _rewrite_against_ef(split, anchor)
        rho = rho_r.then(rho_m.inverse())
    if rho.evaluate() * reflection(lat, anchor) != reflection(lat, r):
        raise InternalSolveFailureError("reflection rewrite failed to verify")
    return rho


def _rewrite_against_ef(split: HyperbolicSplitting, r: Vec) -> GroupWord:
    lat = split.lattice
    if r == split.e - split.f or r == split.f - split.e:
        return GroupWord(lat)
    applied, a = _reduce_into_l1(split, r)
    tau = GroupWord(lat, tuple(reversed(applied)))

    def swap_ef(atom: TransvectionAtom) -> TransvectionAtom:
        if atom.e == split.e:
            return TransvectionAtom(split.f, atom.a)
        if atom.e == split.f:
            return TransvectionAtom(split.e, atom.a)
        raise InternalSolveFailureError("unexpected base vector in plane word")

    conj = GroupWord(lat, tuple(swap_ef(at) for at in tau.atoms))
    three = GroupWord(lat, (TransvectionAtom(split.f, a),
                            TransvectionAtom(split.e, -a),
                            TransvectionAtom(split.f, a)))
    return tau.inverse().then(three).then(conj)


# ---------------------------------------------------------------------
# census of roots by invariant

@dataclass(frozen=True)
class CensusEntry:
    invariant: OrbitInvariant
    count: int
    witness: Vec


@dataclass(frozen=True)
class CensusReport:
    box: int
    entries: tuple[CensusEntry, ...]

    def class_count(self) -> int:
        return len(self.entries)


def root_orbit_census(split: HyperbolicSplitting, box: int) -> CensusReport:
    """Group the roots found in the coordinate box by orbit invariant.

    Exhaustive only within the box; by the equivalence criterion the
    number of distinct invariants is a lower bound for the number of
    stable-group orbits of roots.
    """
    split.require_u1()
    lat = split.lattice
    buckets: dict[tuple, list] = {}
    for r in lat.enumerate_vectors(-2, box):
        inv = orbit_invariant(lat, r)
        buckets.setdefault(inv.key(), [0, r, inv])
        buckets[inv.key()][0] += 1
    entries = tuple(
        CensusEntry(invariant=val[2], count=val[0], witness=val[1])
        for _, val in sorted(buckets.items(), key=lambda kv: (kv[1][2].divisor, kv[0]))
    )
    return CensusReport(box=box, entries=entries)
