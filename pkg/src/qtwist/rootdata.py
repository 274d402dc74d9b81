"""Cartan data, root data in explicit lattice coordinates, and weights.

A root datum is given by integer coordinate matrices for the simple roots
(in X), the coroots and the fundamental coweights (in Y), together with a
pairing matrix Y x X -> Z.  The loader and the built-ins insist on the
regularity condition <coweight_i, alpha_j> = delta_ij, which is what every
weight-indexed scalar in this package is built from.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

Weight = tuple  # integer coordinate vector in X


class DatumError(Exception):
    """A root datum failed validation or could not be parsed."""


@dataclass(frozen=True)
class CartanDatum:
    """Finite index set with a symmetric even pairing i.j."""

    dot: tuple  # n x n tuple of tuples of ints

    @property
    def n(self) -> int:
        return len(self.dot)

    @property
    def index_set(self):
        return range(self.n)

    def d(self, i: int) -> int:
        return self.dot[i][i] // 2

    def a(self, i: int, j: int) -> int:
        # 2(i.j)/(i.i); validate() guarantees integrality
        return 2 * self.dot[i][j] // self.dot[i][i]

    def serre_exponent(self, i: int, j: int) -> int:
        if i == j:
            raise ValueError("Serre exponent needs i != j")
        return 1 - self.a(i, j)

    def validate(self) -> list:
        errs = []
        n = self.n
        for i in range(n):
            if len(self.dot[i]) != n:
                errs.append("dot matrix row %d has wrong length" % i)
                return errs
        for i in range(n):
            if self.dot[i][i] <= 0 or self.dot[i][i] % 2 != 0:
                errs.append("i.i must be a positive even integer at i=%d" % i)
            for j in range(n):
                if self.dot[i][j] != self.dot[j][i]:
                    errs.append("dot matrix not symmetric at (%d,%d)" % (i, j))
                if i != j and self.dot[i][j] > 0:
                    errs.append("i.j must be <= 0 for i != j at (%d,%d)" % (i, j))
                if i != j and (2 * self.dot[i][j]) % self.dot[i][i] != 0:
                    errs.append("a(%d,%d) = 2(i.j)/(i.i) is not an integer" % (i, j))
        if not errs:
            for i in range(n):
                for j in range(n):
                    if self.d(i) * self.a(i, j) != self.d(j) * self.a(j, i):
                        errs.append("symmetrizability d_i a_ij = d_j a_ji fails at (%d,%d)" % (i, j))
        return errs


@dataclass(frozen=True)
class RootDatum:
    """Cartan datum plus explicit lattice coordinates.

    alpha[i] are the simple roots in X, coroot[i] and coweight[i] live in Y,
    and pairing is the matrix of <.,.> : Y x X -> Z (identity by default).
    """

    cartan: CartanDatum
    x_rank: int
    alpha: tuple    # n rows of length x_rank
    coroot: tuple   # n rows
    coweight: tuple  # n rows
    pairing: tuple  # x_rank x x_rank
    name: str = ""

    @property
    def n(self) -> int:
        return self.cartan.n

    @property
    def index_set(self):
        return range(self.n)

    def pair(self, y: Sequence, x: Sequence) -> int:
        return sum(
            y[a] * self.pairing[a][b] * x[b]
            for a in range(self.x_rank)
            for b in range(self.x_rank)
        )

    def lambda_i(self, lam: Weight, i: int) -> int:
        """<coroot_i, lam>."""
        return self.pair(self.coroot[i], lam)

    def lambda_paren(self, lam: Weight, i: int) -> int:
        """<coweight_i, lam>."""
        return self.pair(self.coweight[i], lam)

    def add_root(self, lam: Weight, i: int, sign: int = 1) -> Weight:
        return tuple(lam[k] + sign * self.alpha[i][k] for k in range(self.x_rank))

    def zero_weight(self) -> Weight:
        return (0,) * self.x_rank

    def weights_box(self, box: int) -> list:
        """All weights with coordinates in [-box, box], in lexicographic order."""
        coords = range(-box, box + 1)
        out = [()]
        for _ in range(self.x_rank):
            out = [w + (c,) for w in out for c in coords]
        return sorted(out)

    def validate(self) -> list:
        errs = list(self.cartan.validate())
        n = self.n
        for label, rows in (("alpha", self.alpha), ("coroot", self.coroot), ("coweight", self.coweight)):
            if len(rows) != n or any(len(r) != self.x_rank for r in rows):
                errs.append("%s must be %d rows of length %d" % (label, n, self.x_rank))
                return errs
        if len(self.pairing) != self.x_rank or any(len(r) != self.x_rank for r in self.pairing):
            errs.append("pairing must be %d x %d" % (self.x_rank, self.x_rank))
            return errs
        for i in range(n):
            for j in range(n):
                got = self.pair(self.coroot[i], self.alpha[j])
                want = self.cartan.a(i, j)
                if got != want:
                    errs.append("<coroot_%d, alpha_%d> = %d, expected a_ij = %d" % (i, j, got, want))
                got = self.pair(self.coweight[i], self.alpha[j])
                want = 1 if i == j else 0
                if got != want:
                    errs.append("<coweight_%d, alpha_%d> = %d, expected %d" % (i, j, got, want))
        if _rank([[Fraction(x) for x in row] for row in self.alpha]) != n:
            errs.append("simple roots are not linearly independent in X")
        return errs


def _rank(rows) -> int:
    rows = [row[:] for row in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    col = 0
    for col in range(ncols):
        pivot = None
        for r in range(rank, len(rows)):
            if rows[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        pr = rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][col] != 0:
                f = rows[r][col] / pr[col]
                rows[r] = [a - f * b for a, b in zip(rows[r], pr)]
        rank += 1
    return rank


def _identity(k):
    return tuple(tuple(1 if a == b else 0 for b in range(k)) for a in range(k))


# Built-in data.  Types A1 and A2 use gl-style lattices (X = Z^2, Z^3 with
# roots e_i - e_{i+1}) so the fundamental coweights are integral and the
# familiar string/natural modules have integral weights; the others use the
# root-lattice coordinates alpha_j = e_j.
_BUILTINS = {
    "a1": dict(
        dot=((2,),),
        x_rank=2,
        alpha=((1, -1),),
        coroot=((1, -1),),
        coweight=((1, 0),),
    ),
    "a1xa1": dict(
        dot=((2, 0), (0, 2)),
        x_rank=2,
        alpha=((1, 0), (0, 1)),
        coroot=((2, 0), (0, 2)),
        coweight=((1, 0), (0, 1)),
    ),
    "a2": dict(
        dot=((2, -1), (-1, 2)),
        x_rank=3,
        alpha=((1, -1, 0), (0, 1, -1)),
        coroot=((1, -1, 0), (0, 1, -1)),
        coweight=((1, 0, 0), (1, 1, 0)),
    ),
    "b2": dict(
        # long root first: d = (2, 1), a_12 = -1, a_21 = -2
        dot=((4, -2), (-2, 2)),
        x_rank=2,
        alpha=((1, 0), (0, 1)),
        coroot=((2, -1), (-2, 2)),
        coweight=((1, 0), (0, 1)),
    ),
    "g2": dict(
        # short root first: d = (1, 3), a_12 = -3, a_21 = -1
        dot=((2, -3), (-3, 6)),
        x_rank=2,
        alpha=((1, 0), (0, 1)),
        coroot=((2, -3), (-1, 2)),
        coweight=((1, 0), (0, 1)),
    ),
}


def builtin(name: str) -> RootDatum:
    key = name.lower().replace("x", "x")
    if key not in _BUILTINS:
        raise DatumError("unknown built-in root datum %r (have %s)" % (name, sorted(_BUILTINS)))
    entry = _BUILTINS[key]
    rd = RootDatum(
        cartan=CartanDatum(dot=entry["dot"]),
        x_rank=entry["x_rank"],
        alpha=entry["alpha"],
        coroot=entry["coroot"],
        coweight=entry["coweight"],
        pairing=_identity(entry["x_rank"]),
        name=key,
    )
    errs = rd.validate()
    if errs:  # would be a table bug, not a user error
        raise DatumError("built-in %s failed validation: %s" % (key, errs))
    return rd


def from_dict(data: dict, name: str = "") -> RootDatum:
    """Build and validate a root datum from a parsed config mapping."""
    try:
        n = int(data["I_size"])
        dot = tuple(tuple(int(x) for x in row) for row in data["dot"])
        x_rank = int(data["X_rank"])
        alpha = tuple(tuple(int(x) for x in row) for row in data["alpha"])
        coroot = tuple(tuple(int(x) for x in row) for row in data["coroot"])
        coweight = tuple(tuple(int(x) for x in row) for row in data["coweight"])
        if "pairing" in data:
            pairing = tuple(tuple(int(x) for x in row) for row in data["pairing"])
        else:
            pairing = _identity(x_rank)
    except (KeyError, TypeError, ValueError) as exc:
        raise DatumError("malformed root datum config: %s" % exc)
    if len(dot) != n:
        raise DatumError("dot matrix size disagrees with I_size")
    rd = RootDatum(CartanDatum(dot), x_rank, alpha, coroot, coweight, pairing, name=name or "file")
    errs = rd.validate()
    if errs:
        raise DatumError("root datum rejected: " + "; ".join(errs))
    return rd


def load(path: str) -> RootDatum:
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    return from_dict(data, name=path)
