"""Seeded random generators shared by the identity suite and the tests.

Every function takes an explicit ``random.Random`` so that runs are
reproducible from a single seed.
"""

from __future__ import annotations

from fractions import Fraction
from random import Random

from orthlat.eichler import HyperbolicSplitting
from orthlat.isometry import (
    GroupWord,
    Isometry,
    ReflectionAtom,
    TransvectionAtom,
)
from orthlat.lattice import Lattice
from orthlat.linalg import Vec

_DENOMS = (1, 1, 1, 2, 3)


def rational(rng: Random, bound: int = 4, dens=_DENOMS) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.choice(dens))


def nonzero_rational(rng: Random, bound: int = 4, dens=_DENOMS) -> Fraction:
    while True:
        x = rational(rng, bound, dens)
        if x:
            return x


def rational_vector(lat: Lattice, rng: Random, bound: int = 3, dens=_DENOMS) -> Vec:
    return Vec(rational(rng, bound, dens) for _ in range(lat.rank))


def l1_vector(split: HyperbolicSplitting, rng: Random, bound: int = 3,
              dens=_DENOMS) -> Vec:
    """Random rational vector supported away from the first plane."""
    out = [Fraction(0)] * split.lattice.rank
    for i in split.l1_indices:
        out[i] = rational(rng, bound, dens)
    return Vec(out)


def l0_vector(split: HyperbolicSplitting, rng: Random, bound: int = 3,
              dens=_DENOMS) -> Vec:
    out = [Fraction(0)] * split.lattice.rank
    for i in split.l0_indices:
        out[i] = rational(rng, bound, dens)
    return Vec(out)


def integral_l1_vector(split: HyperbolicSplitting, rng: Random, bound: int = 3) -> Vec:
    out = [0] * split.lattice.rank
    for i in split.l1_indices:
        out[i] = rng.randint(-bound, bound)
    return Vec(out)


def integral_transvection_atom(split: HyperbolicSplitting, rng: Random,
                               bound: int = 2) -> TransvectionAtom:
    base = split.e if rng.random() < 0.5 else split.f
    return TransvectionAtom(base, integral_l1_vector(split, rng, bound))


def transvection_word(split: HyperbolicSplitting, rng: Random, length: int,
                      bound: int = 2) -> GroupWord:
    """Word of integral transvections based at e or f."""
    return GroupWord(split.lattice, tuple(
        integral_transvection_atom(split, rng, bound) for _ in range(length)))


def mixed_word(split: HyperbolicSplitting, rng: Random, length: int,
               roots=None, bound: int = 2) -> GroupWord:
    """Word mixing integral transvections with root reflections."""
    lat = split.lattice
    if roots is None:
        roots = lat.enumerate_vectors(-2, 1) or lat.enumerate_vectors(-2, 2)
    atoms = []
    for _ in range(length):
        if roots and rng.random() < 0.4:
            atoms.append(ReflectionAtom(rng.choice(roots)))
        else:
            atoms.append(integral_transvection_atom(split, rng, bound))
    return GroupWord(lat, tuple(atoms))


def integral_isometry(split: HyperbolicSplitting, rng: Random,
                      length: int = 4) -> Isometry:
    return mixed_word(split, rng, length).evaluate()


def isotropic_vector(split: HyperbolicSplitting, rng: Random) -> Vec:
    """Random rational isotropic vector: a rescaled image of e or f
    under a random integral isometry."""
    g = integral_isometry(split, rng, rng.randint(0, 4))
    base = split.e if rng.random() < 0.5 else split.f
    return nonzero_rational(rng, 3) * g.apply(base)


def orthogonal_to(lat: Lattice, rng: Random, e: Vec, bound: int = 3,
                  anisotropic: bool = False) -> Vec:
    """Random rational vector orthogonal to e (nondegeneracy supplies a
    pairing vector to project along)."""
    h = next(lat.basis_vector(i) for i in range(lat.rank)
             if lat.inner(lat.basis_vector(i), e) != 0)
    he = Fraction(lat.inner(h, e))
    while True:
        w = rational_vector(lat, rng, bound)
        a = w - (Fraction(lat.inner(w, e)) / he) * h
        if not anisotropic or lat.norm(a) != 0:
            return a
