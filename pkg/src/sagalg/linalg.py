"""Exact sparse linear algebra over the ground field.

Vectors are dicts ``{column: scalar}`` with no stored zeros.  Over the
rationals elimination runs on ``Fraction`` values; over a prime field the
dense modular kernel in ``_kernels`` does the work.
"""
from __future__ import annotations

import numpy as np

from ._kernels import rref_mod_p
from .field import QQ, PrimeField

CERT_PRIME = 2147483647  # 2**31 - 1


class RowSpace:
    """Incrementally maintained reduced row echelon basis of a subspace."""

    def __init__(self, field=QQ):
        self.field = field
        self.rows: dict[int, dict] = {}

    def reduce(self, vec: dict) -> dict:
        v = {k: x for k, x in vec.items() if x != 0}
        for piv in [c for c in v if c in self.rows]:
            x = v.get(piv)
            if not x:
                continue
            for k, y in self.rows[piv].items():
                nv = v.get(k, 0) - x * y
                if nv == 0:
                    v.pop(k, None)
                else:
                    v[k] = nv
        return v

    def add(self, vec: dict) -> bool:
        """Insert ``vec``; return True when it enlarged the span."""
        v = self.reduce(vec)
        if not v:
            return False
        piv = min(v)
        inv = self.field.one / v[piv]
        v = {k: x * inv for k, x in v.items()}
        for row in self.rows.values():
            x = row.get(piv)
            if x:
                for k, y in v.items():
                    nv = row.get(k, 0) - x * y
                    if nv == 0:
                        row.pop(k, None)
                    else:
                        row[k] = nv
        self.rows[piv] = v
        return True

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def basis(self) -> list[dict]:
        return [dict(self.rows[p]) for p in sorted(self.rows)]


def rref(rows: list[dict], ncols: int | None = None, field=QQ) -> RowSpace:
    if isinstance(field, PrimeField) and rows:
        return _rref_prime(rows, ncols, field)
    space = RowSpace(field)
    for r in rows:
        space.add(r)
    return space


def _rref_prime(rows, ncols, field) -> RowSpace:
    if ncols is None:
        ncols = 1 + max((max(r) for r in rows if r), default=-1)
    space = RowSpace(field)
    if ncols == 0:
        return space
    dense = np.zeros((len(rows), ncols), dtype=np.int64)
    for i, r in enumerate(rows):
        for k, x in r.items():
            dense[i, k] = field.to_int(x)
    red, piv = rref_mod_p(dense, field.p)
    for i, c in enumerate(piv):
        row = red[i]
        nz = np.nonzero(row)[0]
        space.rows[int(c)] = {int(k): field(int(row[k])) for k in nz}
    return space


def nullspace(rows: list[dict], ncols: int, field=QQ) -> list[dict]:
    """Basis of ``{x : r . x = 0 for all rows r}``, one vector per free column.

    Each basis vector has a 1 in its own free column and 0 in every other free
    column, so coordinates of a kernel element are read off the free columns.
    """
    return nullspace_with_free(rows, ncols, field)[0]


def nullspace_with_free(rows: list[dict], ncols: int, field=QQ) -> tuple[list[dict], list[int]]:
    """``nullspace`` together with the free column of each basis vector."""
    space = rref(rows, ncols, field)
    pivots = space.rows
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = {f: field.one}
        for p, row in pivots.items():
            x = row.get(f)
            if x:
                v[p] = -x
        basis.append(v)
    return basis, free


def rank(rows: list[dict], ncols: int | None = None, field=QQ) -> int:
    return rref(rows, ncols, field).rank


def dense_rank(matrix: list[list], field=QQ) -> int:
    rows = [{j: x for j, x in enumerate(r) if x != 0} for r in matrix]
    ncols = len(matrix[0]) if matrix else 0
    return rank(rows, ncols, field)


def is_invertible(matrix: list[list], field=QQ) -> bool:
    n = len(matrix)
    if any(len(r) != n for r in matrix):
        return False
    if n == 0:
        return True
    return dense_rank(matrix, field) == n


def integer_certificate_invertible(matrix: list[list[int]]) -> bool:
    """Sound one-sided test: full rank modulo a prime implies full rank over QQ."""
    n = len(matrix)
    if n == 0:
        return True
    if any(len(r) != n for r in matrix):
        return False
    dense = np.array([[int(x) % CERT_PRIME for x in r] for r in matrix], dtype=np.int64)
    return rref_mod_p(dense, CERT_PRIME)[1].size == n


def mat_mul(a: list[list], b: list[list], zero) -> list[list]:
    n = len(a)
    m = len(b[0]) if b else 0
    k = len(b)
    out = [[zero] * m for _ in range(n)]
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for t in range(k):
            x = ai[t]
            if x:
                bt = b[t]
                for j in range(m):
                    y = bt[j]
                    if y:
                        oi[j] = oi[j] + x * y
    return out
