"""Even integral lattices: builders, arithmetic invariants and
bounded vector enumeration.

A lattice is a symmetric integer Gram matrix with even diagonal and
nonzero determinant, plus optional basis labels.  Builders assemble
block sums from the standard pieces (hyperbolic plane U, rank-one
even forms, A2, E8, and rescalings); the block structure is remembered
so that root-existence checks can short-circuit on known witnesses.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from orthlat import kernels
from orthlat.errors import (
    DegenerateFormError,
    OddDiagonalError,
    SpecParseError,
    ZeroVectorError,
)
from orthlat.linalg import Mat, Vec, signature_of, smith_normal_form

# Gram of the E8 root basis (Bourbaki node numbering: chain
# 1-3-4-5-6-7-8 with node 2 hanging off node 4).
_E8_BONDS = ((1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4))
_E8_GRAM = [[2 if i == j else 0 for j in range(8)] for i in range(8)]
for _i, _j in _E8_BONDS:
    _E8_GRAM[_i - 1][_j - 1] = _E8_GRAM[_j - 1][_i - 1] = -1


@dataclass(frozen=True)
class Block:
    """One direct summand of a built lattice."""
    kind: str          # "U", "A2", "E8", "gen" (rank-one)
    start: int
    size: int
    scale: int


class Lattice:
    """Even lattice with immutable Gram matrix and cached invariants."""

    __slots__ = ("gram", "rank", "labels", "blocks", "_cache")

    def __init__(self, gram: Mat, labels=None, blocks=()):
        if not gram.is_integral():
            raise ValueError("Gram matrix must be integral")
        if not gram.is_symmetric():
            raise ValueError("Gram matrix must be symmetric")
        for i in range(gram.n):
            if int(gram[i, i]) % 2:
                raise OddDiagonalError(f"odd diagonal entry at index {i}")
        if gram.det() == 0:
            raise DegenerateFormError("Gram matrix is singular")
        self.gram = gram
        self.rank = gram.n
        if labels is None:
            labels = tuple(f"b{i}" for i in range(gram.n))
        self.labels = tuple(labels)
        self.blocks = tuple(blocks)
        self._cache = {}

    # -- identity -----------------------------------------------------
    def __eq__(self, other):
        return isinstance(other, Lattice) and self.gram == other.gram

    def __hash__(self):
        return hash(self.gram)

    def __repr__(self):
        return f"Lattice(rank={self.rank}, det={self.det()})"

    # -- basic bilinear data ------------------------------------------
    def inner(self, u, v):
        """Bilinear form (u, v) of two coordinate vectors."""
        gu = self.gram.apply(u)
        acc = 0
        for a, b in zip(gu, v, strict=True):
            acc += a * b
        return acc if isinstance(acc, int) else (int(acc) if acc.denominator == 1 else acc)

    def norm(self, v):
        return self.inner(v, v)

    def basis_vector(self, i: int) -> Vec:
        return Vec.unit(self.rank, i)

    def det(self) -> int:
        if "det" not in self._cache:
            self._cache["det"] = int(self.gram.det())
        return self._cache["det"]

    def signature(self) -> tuple[int, int]:
        if "sig" not in self._cache:
            self._cache["sig"] = signature_of(self.gram)
        return self._cache["sig"]

    def snf(self):
        if "snf" not in self._cache:
            self._cache["snf"] = smith_normal_form(self.gram)
        return self._cache["snf"]

    def rank_p(self, p: int) -> int:
        """Rank of the Gram matrix over F_p (equivalently, the number of
        Smith invariant factors coprime to p)."""
        a = [[x % p for x in row] for row in self.gram.int_rows()]
        n = self.rank
        r = 0
        col = 0
        for col in range(n):
            piv = next((i for i in range(r, n) if a[i][col]), None)
            if piv is None:
                continue
            a[r], a[piv] = a[piv], a[r]
            inv = pow(a[r][col], -1, p)
            a[r] = [(x * inv) % p for x in a[r]]
            for i in range(n):
                if i != r and a[i][col]:
                    f = a[i][col]
                    a[i] = [(x - f * y) % p for x, y in zip(a[i], a[r])]
            r += 1
        return r

    # -- divisors and primitivity -------------------------------------
    def divisor(self, v) -> int:
        """Positive generator of the ideal of inner products (v, L)."""
        v = Vec(v)
        if v.is_zero():
            raise ZeroVectorError("divisor of the zero vector")
        return Vec(self.gram.apply(v)).content()

    def is_primitive(self, v) -> bool:
        v = Vec(v)
        return v.content() == 1

    # -- enumeration ----------------------------------------------------
    def enumerate_vectors(self, norm: int, box: int) -> list[Vec]:
        """All v with coordinates in [-box, box]^rank and (v, v) == norm,
        in ascending lexicographic order."""
        flat = [x for row in self.gram.int_rows() for x in row]
        hits = kernels.enum_norm_vectors(flat, self.rank, int(norm), int(box))
        return [Vec(h) for h in hits]

    # -- root existence -------------------------------------------------
    def find_root_witness(self, search_box: int):
        """A vector of square -2, from block shortcuts when possible and
        otherwise by exhaustive box search.  Returns (vec | None, box)."""
        for blk in self.blocks:
            if blk.kind == "U" and blk.scale == 1:
                v = [0] * self.rank
                v[blk.start], v[blk.start + 1] = 1, -1
                return Vec(v), 0
        for i in range(self.rank):
            if int(self.gram[i, i]) == -2:
                return self.basis_vector(i), 0
        hits = self.enumerate_vectors(-2, search_box)
        if hits:
            return hits[0], search_box
        return None, search_box

    def kneser_check(self, search_box: int = 2) -> "KneserReport":
        p, q = self.signature()
        found, box = self.find_root_witness(search_box)
        return KneserReport(
            even_ok=True,
            witt_ok=min(p, q) >= 2,
            rank2_ok=self.rank_p(2) >= 6,
            rank3_ok=self.rank_p(3) >= 5,
            minus2_vector=found,
            search_box=box,
        )


@dataclass(frozen=True)
class KneserReport:
    even_ok: bool
    witt_ok: bool
    rank2_ok: bool
    rank3_ok: bool
    minus2_vector: Vec | None
    search_box: int

    @property
    def represents_minus2(self) -> bool:
        return self.minus2_vector is not None

    def all_pass(self) -> bool:
        return (self.even_ok and self.witt_ok and self.rank2_ok
                and self.rank3_ok and self.represents_minus2)


# ---------------------------------------------------------------------
# builders

def _block_gram(kind: str, param: int | None, scale: int):
    if kind == "U":
        base, labels = [[0, 1], [1, 0]], ("e", "f")
    elif kind == "A2":
        base, labels = [[2, -1], [-1, 2]], ("a", "b")
    elif kind == "E8":
        base, labels = _E8_GRAM, tuple(f"r{i+1}" for i in range(8))
    elif kind == "gen":
        if param % 2:
            raise OddDiagonalError(f"<{param}> is not even")
        base, labels = [[param]], ("g",)
    else:
        raise SpecParseError(f"unknown block {kind!r}")
    if scale != 1:
        base = [[scale * x for x in row] for row in base]
    return base, labels


def build_blocks(blocks: list[tuple[str, int | None, int]]) -> Lattice:
    """Assemble a lattice from (kind, param, scale) block descriptors."""
    grams, labels, descs = [], [], []
    start = 0
    counts: dict[str, int] = {}
    for kind, param, scale in blocks:
        if scale == 0:
            raise SpecParseError("zero rescaling")
        g, ls = _block_gram(kind, param, scale)
        k = counts.get(kind, 0)
        counts[kind] = k + 1
        suffix = "" if k == 0 else str(k)
        grams.append(g)
        labels.extend(l + suffix for l in ls)
        descs.append(Block(kind, start, len(g), scale))
        start += len(g)
    n = start
    full = [[0] * n for _ in range(n)]
    pos = 0
    for g in grams:
        for i, row in enumerate(g):
            for j, x in enumerate(row):
                full[pos + i][pos + j] = x
        pos += len(g)
    return Lattice(Mat(full), labels, descs)


_TERM_RE = re.compile(
    r"^(?:(\d*)\s*(U|A2|E8)\s*(?:\(\s*(-?\d+)\s*\))?|(\d*)\s*<\s*(-?\d+)\s*>)$"
)


def parse_block_spec(spec: str) -> Lattice:
    """Parse the block mini-language, e.g. "2U+2E8(-1)+<-6>"."""
    blocks = []
    for term in spec.split("+"):
        term = term.strip()
        m = _TERM_RE.match(term)
        if not m:
            raise SpecParseError(f"cannot parse block term {term!r}")
        if m.group(2):
            count = int(m.group(1) or "1")
            scale = int(m.group(3) or "1")
            blocks.extend((m.group(2), None, scale) for _ in range(count))
        else:
            count = int(m.group(4) or "1")
            blocks.extend(("gen", int(m.group(5)), 1) for _ in range(count))
    if not blocks:
        raise SpecParseError("empty lattice spec")
    return build_blocks(blocks)


def build(spec: str) -> Lattice:
    return parse_block_spec(spec)


def hyperbolic_plane() -> Lattice:
    return build("U")


def rescale(lat: Lattice, m: int) -> Lattice:
    """The same module with the form multiplied by m."""
    if m == 0:
        raise SpecParseError("zero rescaling")
    blocks = tuple(Block(b.kind, b.start, b.size, b.scale * m) for b in lat.blocks)
    return Lattice(m * lat.gram, lat.labels, blocks)


# ---------------------------------------------------------------------
# JSON round-trip

def lattice_to_json(lat: Lattice) -> dict:
    return {
        "gram": [[str(x) for x in row] for row in lat.gram.int_rows()],
        "labels": list(lat.labels),
    }


def lattice_from_json(data: dict) -> Lattice:
    gram = Mat([[int(x) for x in row] for row in data["gram"]])
    labels = data.get("labels")
    return Lattice(gram, labels)
