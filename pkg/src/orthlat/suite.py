"""Batch identity suite: every displayed relation the library is built
on, run over seeded random instances, with a machine-readable report.

The report is deterministic for a fixed seed (single-threaded, fixed
check order, sorted JSON keys downstream).
"""

from __future__ import annotations

from fractions import Fraction
from random import Random

from orthlat import commutators, jacobi, sampling
from orthlat.eichler import standard_splitting
from orthlat.isometry import Isometry, reflection, transvection
from orthlat.lattice import build

IDENTITY_LATTICES = ("2U+A2", "2U+<-2>", "2U+<-4>", "2U+<-6>", "2U+<-8>", "2U+<-10>")


def _check(name, trials, ok, note=""):
    return {"name": name, "trials": trials, "pass": bool(ok), "note": note}


def _eafor(split, rng):
    e = sampling.isotropic_vector(split, rng)
    a = sampling.orthogonal_to(split.lattice, rng, e)
    return e, a


def run_additivity(split, rng, trials) -> dict:
    lat = split.lattice
    ok = True
    for _ in range(trials):
        e, a = _eafor(split, rng)
        b = sampling.orthogonal_to(lat, rng, e)
        if transvection(lat, e, a) * transvection(lat, e, b) != transvection(lat, e, a + b):
            ok = False
            break
        if transvection(lat, e, a).inverse() != transvection(lat, e, -a):
            ok = False
            break
    return _check("transvection additivity and inverse", trials, ok)


def run_conjugation(split, rng, trials) -> dict:
    lat = split.lattice
    ok = True
    for _ in range(trials):
        e, a = _eafor(split, rng)
        g = sampling.integral_isometry(split, rng, rng.randint(1, 4))
        lhs = g * transvection(lat, e, a) * g.inverse()
        if lhs != transvection(lat, g.apply(e), g.apply(a)):
            ok = False
            break
    return _check("transvection conjugation", trials, ok,
                  note="second argument transported alongside the base vector")


def run_rescaling(split, rng, trials) -> dict:
    lat = split.lattice
    ok = True
    for _ in range(trials):
        e, a = _eafor(split, rng)
        x = sampling.nonzero_rational(rng)
        if transvection(lat, x * e, a) != transvection(lat, e, x * a):
            ok = False
            break
        if transvection(lat, e, x * e) != Isometry.identity(lat):
            ok = False
            break
    return _check("transvection rescaling", trials, ok)


def run_two_reflection_form(split, rng, trials) -> dict:
    lat = split.lattice
    ok = True
    for _ in range(trials):
        e = sampling.isotropic_vector(split, rng)
        a = sampling.orthogonal_to(lat, rng, e, anisotropic=True)
        second = a + (Fraction(lat.norm(a)) / 2) * e
        if reflection(lat, a) * reflection(lat, second) != transvection(lat, e, a):
            ok = False
            break
    return _check("two-reflection factorization", trials, ok,
                  note="mirror a applied last under the column convention")


def run_reflection_pair(split, rng, trials) -> dict:
    lat = split.lattice
    e, f = split.e, split.f
    ok = True
    for _ in range(trials):
        a = sampling.l1_vector(split, rng)
        n = lat.norm(a)
        if n == 0:
            continue
        beta = Fraction(2, n)
        lhs = (transvection(lat, f, a) * transvection(lat, e, beta * a)
               * transvection(lat, f, a))
        if lhs != reflection(lat, a) * reflection(lat, e + (Fraction(n) / 2) * f):
            ok = False
            break
    return _check("three-transvection reflection pair", trials, ok,
                  note="second mirror e + ((a,a)/2) f")


def run_identity_block(spec: str, rng, trials: int) -> list[dict]:
    split = standard_splitting(build(spec))
    checks = [
        run_additivity(split, rng, trials),
        run_conjugation(split, rng, trials),
        run_rescaling(split, rng, trials),
        run_two_reflection_form(split, rng, trials),
        run_reflection_pair(split, rng, trials),
    ]
    for c in checks:
        c["lattice"] = spec
    return checks


def run_jacobi_block(rng) -> list[dict]:
    lat, split = jacobi.jacobi_lattice(build("A2"))
    vectors = [[rng.randint(-3, 3), rng.randint(-3, 3)] for _ in range(10)]
    out = [
        _check(f"jacobi: {c.name}", 1, c.holds, c.note)
        for c in jacobi.verify_plane_identities(split, vectors)
    ]
    for t in (1, 2, 5):
        for c in jacobi.paramodular_flip_check(t):
            out.append(_check(f"jacobi: {c.name}", 1, c.holds))
    return out


def run_commutator_block(rng) -> list[dict]:
    split = standard_splitting(build("2U+A2"))
    lat = split.lattice
    out = []

    ok = True
    ran = 0
    while ran < 50:
        w = sampling.l1_vector(split, rng)
        s = sampling.rational(rng, 3)
        if 1 - s * Fraction(lat.norm(w)) / 2 == 0:
            continue
        ran += 1
        if not commutators.verify_master_identity(split, w, s):
            ok = False
            break
    out.append(_check("master scaling rule", ran, ok))

    cert = commutators.certificate_p4(split)
    out.append(_check("four-transvection word for P(4)", 1,
                      cert.verify() and cert.target == commutators.p_map(split, 4)))

    pword = commutators.p_reflection_word(split, 4)
    out.append(_check("P(s) as two reflections", 1,
                      pword.evaluate() == commutators.p_map(split, 4),
                      note="mirror e - s f applied second"))

    ok = True
    for _ in range(20):
        u = sampling.l1_vector(split, rng)
        c = commutators.certificate_transvection(split, u)
        if not (c.verify() and c.groups_are_commutators()
                and c.target.det() == 1):
            ok = False
            break
    out.append(_check("transvection commutator certificates", 20, ok))

    ok = True
    for _ in range(20):
        u = sampling.l0_vector(split, rng)
        v = sampling.l0_vector(split, rng)
        s = sampling.rational(rng, 3)
        ch = commutators.heisenberg_commutator(split, s, u)
        ct = commutators.triple_product(split, s, u, v)
        if not (ch.verify() and ct.verify() and ct.groups_are_commutators()):
            ok = False
            break
    out.append(_check("plane commutator identities", 20, ok,
                      note="third factor of the triple product inverted"))
    return out


def run_suite(seed: int = 0) -> dict:
    rng = Random(seed)
    checks = []
    checks.extend(run_identity_block("2U+A2", rng, 50))
    for spec in IDENTITY_LATTICES[1:]:
        checks.extend(run_identity_block(spec, rng, 10))
    checks.extend(run_jacobi_block(rng))
    checks.extend(run_commutator_block(rng))
    return {
        "seed": seed,
        "checks": checks,
        "allPass": all(c["pass"] for c in checks),
    }
