"""Chain maps between projective complexes, endomorphism rings and isomorphism tests.

A chain map ``φ: C -> D`` is a family of matrices ``φ_j`` whose entries are
combinations of paths from the ``C^j`` vertex to the ``D^j`` vertex.  With row
vectors and right actions the chain condition reads ``∂_C^j φ_{j+1} = φ_j ∂_D^j``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from .complexes import PathCombo, ProjComplex, combo_matrix_product, factor_list
from .errors import SolverBoundError, ValidationError
from .field import PrimeField
from .linalg import RowSpace, is_invertible, nullspace, nullspace_with_free
from .quiver import BoundQuiver

MAX_VARIABLES = 20000
GENERIC_TRIES = 8


@dataclass
class ChainMapSpace:
    """Basis of ``Hom(C, D)`` in the category of complexes."""

    A: BoundQuiver
    C: ProjComplex
    D: ProjComplex
    variables: list  # (degree, row, col, path)
    vectors: list[dict]  # basis vectors over the variables
    free: list[int]  # free column of each basis vector

    @property
    def dimension(self) -> int:
        return len(self.vectors)

    @property
    def basis(self) -> list[dict]:
        return [self.chain_map(v) for v in self.vectors]

    def chain_map(self, vec: dict) -> dict:
        """``{degree: {(r, c): PathCombo}}`` for a vector over the variables."""
        out: dict[int, dict] = {}
        for k, x in vec.items():
            j, r, c, p = self.variables[k]
            m = out.setdefault(j, {})
            m[(r, c)] = m.get((r, c), PathCombo()) + PathCombo.single(p, x)
        return {j: {rc: e for rc, e in m.items() if e} for j, m in out.items()}

    def vector(self, phi: dict) -> dict:
        index = {v: k for k, v in enumerate(self.variables)}
        vec = {}
        for j, m in phi.items():
            for (r, c), e in m.items():
                for p, x in e.terms.items():
                    try:
                        vec[index[(j, r, c, p)]] = x
                    except KeyError:
                        raise ValidationError(f"term {p} is not a valid morphism entry") from None
        return vec

    def coordinates(self, phi: dict) -> list:
        """Coordinates of a chain map in the basis (read off the free columns)."""
        vec = self.vector(phi)
        coords = [vec.get(f, self.C.field.zero) for f in self.free]
        back = self.combination(coords)
        if self.vector(back) != {k: x for k, x in vec.items() if x != 0}:
            raise ValidationError("not a chain map")
        return coords

    def combination(self, coords) -> dict:
        vec: dict = {}
        for x, b in zip(coords, self.vectors):
            if x == 0:
                continue
            for k, y in b.items():
                vec[k] = vec.get(k, 0) + x * y
        return self.chain_map({k: v for k, v in vec.items() if v != 0})

    def to_dict(self) -> dict:
        A, field = self.A, self.C.field
        basis = []
        for phi in self.basis:
            basis.append({str(j): [{"row": r, "col": c,
                                    "terms": [[list(p.arrows) or p.source, field.format(x)]
                                              for p, x in e.sorted_terms(A)]}
                                   for (r, c), e in sorted(m.items())]
                          for j, m in sorted(phi.items())})
        return {"dimension": self.dimension, "basis": basis}


def hom_space(A: BoundQuiver, C: ProjComplex, D: ProjComplex,
              max_variables: int = MAX_VARIABLES) -> ChainMapSpace:
    """All chain maps ``C -> D`` by exact linear solving."""
    field = C.field
    if D.field != field:
        raise ValidationError("complexes live over different fields")
    variables = []
    for j in sorted(set(C.degrees) & set(D.degrees)):
        for r, u in enumerate(C.objects(j)):
            for c, v in enumerate(D.objects(j)):
                for p in A.paths_between(u, v):
                    variables.append((j, r, c, p))
    if len(variables) > max_variables:
        raise SolverBoundError(f"{len(variables)} unknowns exceed the bound {max_variables}")
    by_degree: dict[int, list[int]] = {}
    for k, (j, *_rest) in enumerate(variables):
        by_degree.setdefault(j, []).append(k)

    eqs: dict[tuple, dict] = {}

    def add(key, k, x):
        row = eqs.setdefault(key, {})
        nv = row.get(k, 0) + x
        if nv == 0:
            row.pop(k, None)
        else:
            row[k] = nv

    for j in C.degrees:
        if not D.objects(j + 1):
            continue
        dc_by_col: dict[int, list] = {}
        for (r, k2), e in C.diff(j).items():
            dc_by_col.setdefault(k2, []).append((r, e))
        for k in by_degree.get(j + 1, ()):
            _, k2, c, p = variables[k]
            for r, e in dc_by_col.get(k2, ()):
                for q, x in e.mul(A, PathCombo.single(p, field.one)).terms.items():
                    add((j, r, c, q), k, x)
        dd_by_row: dict[int, list] = {}
        for (k2, c), e in D.diff(j).items():
            dd_by_row.setdefault(k2, []).append((c, e))
        for k in by_degree.get(j, ()):
            _, r, k2, p = variables[k]
            for c, e in dd_by_row.get(k2, ()):
                for q, x in PathCombo.single(p, field.one).mul(A, e).terms.items():
                    add((j, r, c, q), k, -x)
    rows = [row for row in eqs.values() if row]
    vectors, free = nullspace_with_free(rows, len(variables), field)
    return ChainMapSpace(A, C, D, variables, vectors, free)


def compose(A: BoundQuiver, phi: dict, psi: dict) -> dict:
    """``φ`` then ``ψ``: degree-wise matrix product ``φ_j ψ_j``."""
    out = {}
    for j in set(phi) & set(psi):
        m = combo_matrix_product(A, phi[j], psi[j])
        if m:
            out[j] = m
    return out


def identity_map(A: BoundQuiver, C: ProjComplex) -> dict:
    return {j: {(r, r): PathCombo.single(A.trivial(v), C.field.one)
                for r, v in enumerate(C.objects(j))} for j in C.degrees}


def is_chain_map(A: BoundQuiver, C: ProjComplex, D: ProjComplex, phi: dict) -> bool:
    for j in sorted(set(C.degrees) | set(D.degrees)):
        lhs = combo_matrix_product(A, C.diff(j), phi.get(j + 1, {}))
        rhs = combo_matrix_product(A, phi.get(j, {}), D.diff(j))
        keys = set(lhs) | set(rhs)
        if any(lhs.get(k, PathCombo()) != rhs.get(k, PathCombo()) for k in keys):
            return False
    return True


# ---------------------------------------------------------------- End algebras
class EndAlgebra:
    """``End(C)`` as a finite-dimensional algebra with structure constants.

    ``mult[a][b]`` holds the coordinates of ``b_a`` followed by ``b_b``.
    """

    def __init__(self, A: BoundQuiver, C: ProjComplex, space: ChainMapSpace | None = None):
        self.A = A
        self.C = C
        self.field = C.field
        self.space = space or hom_space(A, C, C)
        basis = self.space.basis
        self.dim = len(basis)
        self.mult = [[self.space.coordinates(compose(A, x, y)) for y in basis] for x in basis]
        self.unit = self.space.coordinates(identity_map(A, C))

    def product(self, x, y) -> list:
        z = [self.field.zero] * self.dim
        for a, xa in enumerate(x):
            if xa == 0:
                continue
            for b, yb in enumerate(y):
                if yb == 0:
                    continue
                c = xa * yb
                for k, m in enumerate(self.mult[a][b]):
                    if m != 0:
                        z[k] += c * m
        return z

    def radical(self) -> list[dict]:
        """Basis of the Jacobson radical via the trace form of the regular representation."""
        n = self.dim
        if isinstance(self.field, PrimeField) and self.field.p <= n:
            raise SolverBoundError(
                f"trace-form radical needs characteristic 0 or p > {n}; got p = {self.field.p}")
        traces = [sum((self.mult[a][b][b] for b in range(n)), self.field.zero) for a in range(n)]
        gram = [[sum((self.mult[a][b][k] * traces[k] for k in range(n)), self.field.zero)
                 for b in range(n)] for a in range(n)]
        rows = [{a: gram[a][b] for a in range(n) if gram[a][b] != 0} for b in range(n)]
        return nullspace(rows, n, self.field)

    def top_is_division_algebra(self, seed: int = 0) -> bool:
        """Whether ``End/rad`` is a division algebra (i.e. ``End`` is local).

        A noncommutative semisimple top is reported as not local.
        """
        n = self.dim
        rad = RowSpace(self.field)
        for v in self.radical():
            rad.add(v)
        q = n - rad.rank
        if q == 1:
            return True
        if q == 0:
            return False
        basis = [[self.field.one if i == a else self.field.zero for i in range(n)]
                 for a in range(n)]
        for a in range(n):
            for b in range(a + 1, n):
                comm = [x - y for x, y in zip(self.product(basis[a], basis[b]),
                                              self.product(basis[b], basis[a]))]
                if rad.reduce(_sparse(comm)):
                    return False
        rng = random.Random(seed)
        for _ in range(GENERIC_TRIES):
            x = [self.field(rng.randint(-50, 50)) for _ in range(n)]
            poly = self._min_poly_mod(x, rad)
            factors = factor_list(poly, self.field)
            if len(factors) > 1 or factors[0][1] > 1:
                return False  # zero divisors in the top
            if len(poly) - 1 == q:
                return True
        raise SolverBoundError("no primitive element found for the semisimple top")

    def _min_poly_mod(self, x, rad: RowSpace) -> list:
        """Monic minimal polynomial (low to high) of ``x`` in ``End/rad``."""
        powers = [list(self.unit)]
        space = RowSpace(self.field)
        space.add(rad.reduce(_sparse(powers[0])))
        while True:
            nxt = self.product(powers[-1], x)
            powers.append(nxt)
            red = [rad.reduce(_sparse(p)) for p in powers]
            if not space.add(red[-1]):
                k = len(powers)
                rows = []
                for i in range(self.dim):
                    row = {j: red[j].get(i, 0) for j in range(k) if red[j].get(i, 0) != 0}
                    if row:
                        rows.append(row)
                (rel,) = nullspace(rows, k, self.field)
                lead = rel[k - 1]
                return [rel.get(j, self.field.zero) / lead for j in range(k)]


def _sparse(v) -> dict:
    return {i: x for i, x in enumerate(v) if x != 0}


def end_algebra(A: BoundQuiver, C: ProjComplex) -> EndAlgebra:
    return EndAlgebra(A, C)


def is_indecomposable(A: BoundQuiver, C: ProjComplex) -> bool:
    """``C`` is indecomposable iff ``End(C)`` is local."""
    if C.is_zero:
        raise ValidationError("the zero complex is not indecomposable")
    return end_algebra(A, C).top_is_division_algebra()


# ---------------------------------------------------------------- isomorphism
def _top_matrices(A: BoundQuiver, C: ProjComplex, D: ProjComplex, phi: dict) -> list[list[list]]:
    """Per degree, the scalar matrix of trivial-path coefficients of ``φ_j``."""
    field = C.field
    out = []
    for j in C.degrees:
        rows, cols = C.objects(j), D.objects(j)
        m = [[field.zero] * len(cols) for _ in rows]
        for (r, c), e in phi.get(j, {}).items():
            if rows[r] == cols[c]:
                m[r][c] = e.coefficient(A.trivial(rows[r]))
        out.append(m)
    return out


def is_isomorphism(A: BoundQuiver, C: ProjComplex, D: ProjComplex, phi: dict) -> bool:
    """A chain map is invertible iff every ``φ_j`` is invertible modulo the radical."""
    if C.summand_multiset() != D.summand_multiset():
        return False
    return all(is_invertible(m, C.field) for m in _top_matrices(A, C, D, phi))


def are_isomorphic(A: BoundQuiver, C: ProjComplex, D: ProjComplex, seed: int = 0) -> bool:
    """Chain isomorphism test by a seeded generic element of ``Hom(C, D)``.

    ``True`` is certified by an explicit invertible chain map.  ``False`` means
    several generic combinations all failed, which is exact except on a
    measure-zero set of unlucky draws.
    """
    if C.summand_multiset() != D.summand_multiset():
        return False
    if C.is_zero:
        return True
    H = hom_space(A, C, D)
    if not H.dimension:
        return False
    rng = random.Random(seed)
    for _ in range(GENERIC_TRIES):
        coords = [C.field(rng.randint(-10**6, 10**6)) for _ in range(H.dimension)]
        if is_isomorphism(A, C, D, H.combination(coords)):
            return True
    return False


def find_isomorphism(A: BoundQuiver, C: ProjComplex, D: ProjComplex, seed: int = 0):
    """An explicit chain isomorphism ``C -> D``, or ``None``."""
    if C.summand_multiset() != D.summand_multiset():
        return None
    H = hom_space(A, C, D)
    rng = random.Random(seed)
    for _ in range(GENERIC_TRIES if H.dimension else 0):
        coords = [C.field(rng.randint(-10**6, 10**6)) for _ in range(H.dimension)]
        phi = H.combination(coords)
        if is_isomorphism(A, C, D, phi):
            return phi
    return None
