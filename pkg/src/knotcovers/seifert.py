"""Seifert matrices, the symmetrized Alexander polynomial, equivariant
signatures, and the Hermitian clover form attached to a genus-g surface.

Conventions
-----------
A Seifert matrix here is an integer 2g x 2g matrix A, given in a banded
surface basis x_1..x_g, y_1..y_g, so the intersection pairing A - A^T is
the standard symplectic matrix [[0, I], [-I, 0]] (validation only requires
det(A - A^T) = 1; the banded block structure is what makes the clover
form Hermitian and is checked at construction).

* ``alexander(A)`` = t^-g det(A - t A^T), which is automatically
  bar-symmetric and takes the value 1 at t = 1.
* ``signature_function(A, k, p)`` is the signature of
  (1 - conj(w)) A + (1 - w) A^T at w = e^(2 pi i k / p); w = 1 is a
  removable but excluded point (AtOne).
* ``clover_matrix(A)`` is the 2g x 2g Hermitian Lambda-matrix
  [[Lxx, (1 - t^-1) Lxy - I], [(1 - t) Lyx - I, (2 - t - t^-1) Lyy]]
  built from the block decomposition L of A with Lyx = Ayx + I.
  ``congruence_identity_check`` verifies, exactly, that conjugating the
  clover form by diag((1 - t) I, I) recovers
  (1 - t^-1) A + (1 - t) A^T, which is why the clover form computes both
  the Alexander polynomial and the signature function.

Knot records (name + Seifert matrix + optional 2-loop class) are the JSON
interchange format; a small bundled corpus ships with the package.
"""

from __future__ import annotations

import cmath
import json
import random
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from typing import Sequence

import numpy as np

from .exactalg import LaurentPoly
from .lambdamat import (
    AtOne,
    LambdaMatrix,
    NotHermitian,
    SingularEvaluation,
    complex_signature,
    rational_det,
)
from .theta import ThetaClass

__all__ = [
    "OddSize",
    "NotUnimodularAtOne",
    "validate_seifert",
    "seifert_genus",
    "alexander",
    "canonical_symmetric",
    "clover_matrix",
    "congruence_identity_check",
    "signature_function",
    "sigma_at_omega",
    "random_seifert",
    "KnotRecord",
    "corpus_records",
    "load_record",
]


class OddSize(ValueError):
    """Seifert matrices must have even size."""


class NotUnimodularAtOne(ValueError):
    """det(A - A^T) must be exactly 1."""


def validate_seifert(A: Sequence[Sequence[int]]) -> list[list[int]]:
    """Check and normalize a Seifert matrix: square, even size, integer
    entries, det(A - A^T) = 1.  Returns the matrix as lists of ints."""
    rows = [list(r) for r in A]
    n = len(rows)
    for r in rows:
        if len(r) != n:
            raise ValueError("Seifert matrix must be square")
        for x in r:
            if isinstance(x, Fraction):
                if x.denominator != 1:
                    raise ValueError("Seifert matrix must be integral")
            elif not isinstance(x, int) or isinstance(x, bool):
                raise ValueError("Seifert matrix entries must be ints")
    rows = [[int(x) for x in r] for r in rows]
    if n % 2 != 0:
        raise OddSize("Seifert matrix has odd size %d" % n)
    skew = [[rows[i][j] - rows[j][i] for j in range(n)] for i in range(n)]
    if rational_det(skew) != 1:
        raise NotUnimodularAtOne("det(A - A^T) != 1")
    return rows

def seifert_genus(A: Sequence[Sequence[int]]) -> int:
    return len(A) // 2


def alexander(A: Sequence[Sequence[int]]) -> LaurentPoly:
    """Symmetrized Alexander polynomial t^-g det(A - t A^T).

    With det(A - A^T) = 1 this normalization satisfies alexander(1) = 1
    and bar-symmetry on the nose, no further unit fixing needed.
    """
    A = validate_seifert(A)
    n = len(A)
    g = n // 2
    t = LaurentPoly.t()
    M = LambdaMatrix([[A[i][j] - t * A[j][i] for j in range(n)] for i in range(n)])
    d = M.det().shift(-g)
    assert d.eval_one() == 1, "det(A - A^T) = 1 forces value 1 at t = 1"
    assert d.is_bar_symmetric, "t^-g det(A - t A^T) must be bar-symmetric"
    return d


def canonical_symmetric(f: LaurentPoly) -> LaurentPoly:
    """The representative of f's unit class { +-t^k f } that is
    bar-symmetric with positive value at 1.  Raises if none exists."""
    if f.is_zero:
        return f
    s = f.min_exp + f.max_exp
    if s % 2 != 0:
        raise ValueError("no symmetric representative: odd exponent span")
    g = f.shift(-s // 2)
    v = g.eval_one()
    if v < 0:
        g = -g
    if not g.is_bar_symmetric:
        raise ValueError("unit class contains no bar-symmetric element")
    return g


def clover_matrix(A: Sequence[Sequence[int]]) -> LambdaMatrix:
    """Hermitian clover form of a banded-basis Seifert matrix.

    Raises NotHermitian when A is valid but not in the banded basis
    (the construction needs Axy^T = Ayx + I and symmetric diagonal
    blocks).
    """
    A = validate_seifert(A)
    g = len(A) // 2
    t = LaurentPoly.t()
    ti = t ** -1
    one = LaurentPoly.one()
    lxx = [[LaurentPoly.const(A[i][j]) for j in range(g)] for i in range(g)]
    lxy = [[A[i][g + j] for j in range(g)] for i in range(g)]
    lyx = [[A[g + i][j] + (1 if i == j else 0) for j in range(g)] for i in range(g)]
    lyy = [[A[g + i][g + j] for j in range(g)] for i in range(g)]
    rows = []
    for i in range(g):
        row = list(lxx[i])
        for j in range(g):
            e = (one - ti) * lxy[i][j]
            if i == j:
                e = e - one
            row.append(e)
        rows.append(row)
    for i in range(g):
        row = []
        for j in range(g):
            e = (one - t) * lyx[i][j]
            if i == j:
                e = e - one
            row.append(e)
        for j in range(g):
            row.append((2 - t - ti) * lyy[i][j])
        rows.append(row)
    W = LambdaMatrix(rows)
    if not W.is_hermitian:
        raise NotHermitian(
            "Seifert matrix is not in a banded surface basis; clover form degenerates"
        )
    assert abs(rational_det(W.eval_at_one())) == 1, "clover form must be unimodular at 1"
    return W


def congruence_identity_check(A: Sequence[Sequence[int]]) -> bool:
    """Exact check that diag((1-t) I, I) W diag((1-t^-1) I, I) equals
    (1 - t^-1) A + (1 - t) A^T for the clover form W of A."""
    A = validate_seifert(A)
    n = len(A)
    g = n // 2
    W = clover_matrix(A)
    t = LaurentPoly.t()
    ti = t ** -1
    one = LaurentPoly.one()
    zero = LaurentPoly.zero()
    P = LambdaMatrix(
        [
            [(one - t if i < g else one) if i == j else zero for j in range(n)]
            for i in range(n)
        ]
    )
    lhs = P @ W @ P.bar_transpose()
    rhs = LambdaMatrix(
        [
            [(one - ti) * A[i][j] + (one - t) * A[j][i] for j in range(n)]
            for i in range(n)
        ]
    )
    return lhs == rhs


def sigma_at_omega(A: Sequence[Sequence[int]], omega: complex, tol: float = 1e-9) -> int:
    """Signature of (1 - conj(w)) A + (1 - w) A^T at a unit-circle w != 1."""
    A = validate_seifert(A)
    n = len(A)
    if n == 0:
        return 0
    wbar = complex(omega).conjugate()
    M = np.empty((n, n), dtype=complex)
    for i in range(n):
        for j in range(n):
            M[i, j] = (1 - wbar) * A[i][j] + (1 - omega) * A[j][i]
    return complex_signature(M, tol)


def signature_function(A: Sequence[Sequence[int]], k: int, p: int, tol: float = 1e-9) -> int:
    """Equivariant signature at w = e^(2 pi i k / p).

    Raises AtOne for k = 0 mod p (the form vanishes identically there)
    and SingularEvaluation at roots of the Alexander polynomial.
    """
    if p < 1:
        raise ValueError("p must be a positive integer")
    if k % p == 0:
        raise AtOne("signature function is excluded at w = 1")
    return sigma_at_omega(A, cmath.exp(2j * cmath.pi * (k % p) / p), tol)


def random_seifert(g: int, rng: random.Random, bound: int = 3) -> list[list[int]]:
    """Random valid banded-basis Seifert matrix of genus g.

    The skew part is pinned to the standard symplectic form by starting
    from the strictly-upper block [[0, I], [0, 0]] and adding a random
    symmetric integer matrix, so det(A - A^T) = 1 holds by construction
    and the clover form is Hermitian.
    """
    n = 2 * g
    S = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            v = rng.randint(-bound, bound)
            S[i][j] = v
            S[j][i] = v
    for i in range(g):
        S[i][g + i] += 1
    return S


# ---------------------------------------------------------------------------
# knot records and the bundled corpus


@dataclass
class KnotRecord:
    """A named knot presented by a Seifert matrix, with an optional
    2-loop class used by the Casson-Walker computations."""

    name: str
    seifert: list[list[int]]
    q2loop: "ThetaClass | None" = None
    provenance: str | None = None

    def __post_init__(self):
        self.seifert = validate_seifert(self.seifert)

    def to_json(self) -> dict:
        obj: dict = {"name": self.name, "seifert": self.seifert}
        if self.q2loop is not None:
            obj["q2loop"] = self.q2loop.to_json()
        if self.provenance is not None:
            obj["provenance"] = self.provenance
        return obj

    @classmethod
    def from_json(cls, obj: dict) -> "KnotRecord":
        q = obj.get("q2loop")
        return cls(
            name=str(obj["name"]),
            seifert=obj["seifert"],
            q2loop=ThetaClass.from_json(q) if q is not None else None,
            provenance=obj.get("provenance"),
        )


def load_record(path) -> KnotRecord:
    with open(path, "r", encoding="utf-8") as fh:
        return KnotRecord.from_json(json.load(fh))


def corpus_records() -> list[KnotRecord]:
    """All knot records bundled with the package, standard knots first."""
    pkg = resources.files(__package__) / "corpus"
    out = []
    for entry in sorted(pkg.iterdir(), key=lambda e: e.name):
        if entry.name.endswith(".json"):
            data = json.loads(entry.read_text(encoding="utf-8"))
            records = data if isinstance(data, list) else [data]
            out.extend(KnotRecord.from_json(r) for r in records)
    order = {"unknot": 0, "trefoil": 1, "figure8": 2}
    out.sort(key=lambda r: (order.get(r.name, 10), r.name))
    return out
