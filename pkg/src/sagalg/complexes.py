"""Complexes of indecomposable projectives with path-combination differentials.

A degree-``j`` object is an ordered list of vertices (one ``P_v`` each).  The
differential ``∂^j`` is stored sparsely as ``{(row, col): PathCombo}`` with rows
indexing degree ``j`` and columns degree ``j+1``.  Elements are row vectors and
maps act on the right, so "f then g" is the matrix product ``F·G``.
"""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

import sympy

from .errors import ParseError, ValidationError
from .field import QQ, PrimeField
from .linalg import nullspace, rank
from .quiver import BoundQuiver, Path
from .walks import GenWalk, is_generalized_band, is_generalized_string, mu

MAX_POLY_DEGREE = 8


class PathCombo:
    """A finite linear combination of basis paths with a common source and target."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms: dict[Path, object] = {p: c for p, c in (terms or {}).items() if c != 0}

    @classmethod
    def single(cls, p: Path, c=1) -> "PathCombo":
        return cls({p: c})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, PathCombo):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "PathCombo") -> "PathCombo":
        t = dict(self.terms)
        for p, c in other.terms.items():
            t[p] = t.get(p, 0) + c
        return PathCombo(t)

    def __neg__(self) -> "PathCombo":
        return PathCombo({p: -c for p, c in self.terms.items()})

    def __sub__(self, other: "PathCombo") -> "PathCombo":
        return self + (-other)

    def scale(self, c) -> "PathCombo":
        if c == 0:
            return PathCombo()
        return PathCombo({p: x * c for p, x in self.terms.items()})

    def mul(self, A: BoundQuiver, other: "PathCombo") -> "PathCombo":
        t: dict[Path, object] = {}
        for p, c in self.terms.items():
            for q, d in other.terms.items():
                r = A.multiply(p, q)
                if r is not None:
                    t[r] = t.get(r, 0) + c * d
        return PathCombo(t)

    def coefficient(self, p: Path):
        return self.terms.get(p, 0)

    def sorted_terms(self, A: BoundQuiver):
        return sorted(self.terms.items(), key=lambda kv: A.key(kv[0]))

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for p, c in self.terms.items():
            parts.append(str(p) if c == 1 else f"{c}*{p}")
        return " + ".join(parts)


def combo_matrix_product(A: BoundQuiver, left: dict, right: dict) -> dict:
    """Product of sparse matrices ``{(r, c): PathCombo}``."""
    by_row: dict[int, list] = {}
    for (k, c), e in right.items():
        by_row.setdefault(k, []).append((c, e))
    out: dict[tuple[int, int], PathCombo] = {}
    for (r, k), e in left.items():
        for c, f in by_row.get(k, ()):
            prod = e.mul(A, f)
            if prod:
                cur = out.get((r, c))
                out[(r, c)] = prod if cur is None else cur + prod
    return {k: v for k, v in out.items() if v}


class ProjComplex:
    """A bounded complex of indecomposable projectives."""

    def __init__(self, summands: dict, differentials: dict | None = None, field=QQ):
        self.field = field
        self.summands: dict[int, tuple[str, ...]] = {
            int(d): tuple(str(v) for v in vs) for d, vs in summands.items() if vs}
        diffs = {}
        for d, m in (differentials or {}).items():
            m = {(int(r), int(c)): e for (r, c), e in m.items() if e}
            if m:
                diffs[int(d)] = m
        self.differentials: dict[int, dict[tuple[int, int], PathCombo]] = diffs

    @property
    def degrees(self) -> list[int]:
        return sorted(self.summands)

    @property
    def is_zero(self) -> bool:
        return not self.summands

    @property
    def min_degree(self) -> int:
        return min(self.summands)

    @property
    def max_degree(self) -> int:
        return max(self.summands)

    def objects(self, j: int) -> tuple[str, ...]:
        return self.summands.get(j, ())

    def diff(self, j: int) -> dict:
        return self.differentials.get(j, {})

    def matrix(self, j: int) -> list[list[PathCombo]]:
        rows, cols = len(self.objects(j)), len(self.objects(j + 1))
        m = [[PathCombo() for _ in range(cols)] for _ in range(rows)]
        for (r, c), e in self.diff(j).items():
            m[r][c] = e
        return m

    def summand_multiset(self) -> dict[int, Counter]:
        return {d: Counter(vs) for d, vs in self.summands.items()}

    def __eq__(self, other) -> bool:
        return (isinstance(other, ProjComplex) and self.summands == other.summands
                and self.differentials == other.differentials)

    def __repr__(self) -> str:
        parts = [f"{d}:[{','.join('P' + v for v in vs)}]" for d, vs in sorted(self.summands.items())]
        return "ProjComplex(" + " ".join(parts) + ")"

    # ---------------------------------------------------------- serialization
    def to_dict(self, A: BoundQuiver | None = None) -> dict:
        key = A.key if A is not None else (lambda p: (len(p.arrows), p.arrows))
        diffs = {}
        for d in sorted(self.differentials):
            entries = []
            for (r, c) in sorted(self.differentials[d]):
                e = self.differentials[d][(r, c)]
                terms = [[list(p.arrows), self.field.format(x)]
                         for p, x in sorted(e.terms.items(), key=lambda kv: key(kv[0]))]
                entries.append([r, c, terms])
            diffs[str(d)] = entries
        return {
            "schema": "1",
            "field": self.field.name,
            "degrees": {str(d): list(self.summands[d]) for d in self.degrees},
            "differentials": diffs,
        }

    def to_json(self, A: BoundQuiver | None = None) -> str:
        return json.dumps(self.to_dict(A), indent=2, sort_keys=False)

    @classmethod
    def from_dict(cls, A: BoundQuiver, data: dict, field=QQ) -> "ProjComplex":
        try:
            summands = {int(d): [str(v) for v in vs] for d, vs in data["degrees"].items()}
            diffs = {}
            for d, entries in data.get("differentials", {}).items():
                d = int(d)
                m = {}
                for r, c, terms in entries:
                    t = {}
                    for arrows, x in terms:
                        if arrows:
                            p = A.try_path(arrows)
                            if p is None:
                                raise ParseError(f"path {arrows} lies in the ideal")
                        else:
                            p = A.trivial(summands[d][int(r)])
                        t[p] = t.get(p, 0) + field.parse(str(x))
                    m[(int(r), int(c))] = PathCombo(t)
                diffs[d] = m
        except (KeyError, TypeError, ValueError, IndexError) as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(f"malformed complex description: {exc}") from exc
        return cls(summands, diffs, field)


@dataclass
class VerificationReport:
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def __bool__(self) -> bool:
        return self.ok


def verify_complex(A: BoundQuiver, C: ProjComplex) -> VerificationReport:
    rep = VerificationReport()
    for d, m in sorted(C.differentials.items()):
        src, tgt = C.objects(d), C.objects(d + 1)
        for (r, c), e in sorted(m.items()):
            if r >= len(src) or c >= len(tgt):
                rep.failures.append(f"∂^{d}[{r},{c}] is outside the {len(src)}x{len(tgt)} matrix")
                continue
            for p in e.terms:
                if p.source != src[r] or p.target != tgt[c]:
                    rep.failures.append(
                        f"∂^{d}[{r},{c}] term {p} does not run from {src[r]} to {tgt[c]}")
                if p.is_trivial:
                    rep.failures.append(f"∂^{d}[{r},{c}] has trivial term {p} (not radical)")
                elif A.try_path(p.arrows) != p:
                    rep.failures.append(f"∂^{d}[{r},{c}] term {p} is not a basis path")
    for d in sorted(C.differentials):
        if d + 1 in C.differentials:
            sq = combo_matrix_product(A, C.differentials[d], C.differentials[d + 1])
            for (r, c), e in sorted(sq.items()):
                rep.failures.append(f"(∂^{d}∂^{d + 1})[{r},{c}] = {e} ≠ 0")
    return rep


# -------------------------------------------------------------------- polynomials
def factor_list(coeffs, field=QQ) -> list:
    """Irreducible factors (with multiplicity) of the polynomial with low-to-high ``coeffs``."""
    x = sympy.Symbol("x")
    if isinstance(field, PrimeField):
        poly = sympy.Poly([int(c) for c in reversed(coeffs)], x, modulus=field.p)
    else:
        poly = sympy.Poly([sympy.Rational(Fraction(c).numerator, Fraction(c).denominator)
                           for c in reversed(coeffs)], x, domain=sympy.QQ)
    return poly.factor_list()[1]


class IndecPoly:
    """Monic ``f = α_1 + α_2 x + ... + α_d x^{d-1} + x^d``, a power of one irreducible."""

    def __init__(self, alphas, field=QQ):
        self.field = field
        self.alphas = tuple(field(a) for a in alphas)
        d = len(self.alphas)
        if d < 1:
            raise ValidationError("polynomial must have degree at least 1")
        if d > MAX_POLY_DEGREE:
            raise ValidationError(f"polynomial degree {d} exceeds {MAX_POLY_DEGREE}")
        if self.alphas[0] == 0:
            raise ValidationError("constant term is zero: f is divisible by x")
        if not self._irreducible_power():
            raise ValidationError(f"{self} is not a power of a single irreducible polynomial")

    @classmethod
    def parse(cls, text: str, field=QQ) -> "IndecPoly":
        """Coefficients low to high, leading 1 included: ``"1,0,1"`` is ``x^2 + 1``."""
        try:
            cs = [field.parse(t) for t in text.split(",")]
        except ParseError:
            raise
        if len(cs) < 2:
            raise ParseError("polynomial needs at least two coefficients")
        if cs[-1] != 1:
            raise ParseError("polynomial must be monic (last coefficient 1)")
        return cls(cs[:-1], field)

    @property
    def degree(self) -> int:
        return len(self.alphas)

    def coefficients(self) -> list:
        """Low to high, including the leading 1."""
        return list(self.alphas) + [self.field.one]

    def _irreducible_power(self) -> bool:
        return len(factor_list(self.coefficients(), self.field)) == 1

    def companion(self) -> list[list]:
        """Row ``j`` maps ``v_j`` to ``v_{j+1}``; the last row is ``-α``."""
        d = self.degree
        z, o = self.field.zero, self.field.one
        m = [[z] * d for _ in range(d)]
        for j in range(d - 1):
            m[j][j + 1] = o
        for r in range(d):
            m[d - 1][r] = -self.alphas[r]
        return m

    def __eq__(self, other) -> bool:
        return isinstance(other, IndecPoly) and self.alphas == other.alphas

    def __hash__(self):
        return hash(self.alphas)

    def __str__(self) -> str:
        terms = []
        for k, c in enumerate(self.coefficients()):
            if c == 0:
                continue
            mon = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            if not mon:
                terms.append(self.field.format(c))
            elif c == 1:
                terms.append(mon)
            else:
                terms.append(f"{self.field.format(c)}*{mon}")
        return " + ".join(reversed(terms))


# ----------------------------------------------------------------- constructions
def _positions_by_degree(degs):
    """Map each position to (degree, index within that degree), indices ascending."""
    counters: Counter = Counter()
    out = []
    for d in degs:
        out.append((d, counters[d]))
        counters[d] += 1
    return out


def string_complex(A: BoundQuiver, w: GenWalk, field=QQ) -> ProjComplex:
    if w.is_trivial:
        return ProjComplex({0: [w.vertex]}, {}, field)
    if not is_generalized_string(A, w):
        raise ValidationError(f"{w} is not a generalized string")
    prof = mu(w).values
    verts = [w.source] + [x.target for x in w.letters]
    place = _positions_by_degree(prof)
    summands: dict[int, list[str]] = {}
    for (d, _), v in zip(place, verts):
        summands.setdefault(d, []).append(v)
    diffs: dict[int, dict] = {}
    one = field.one
    for k, x in enumerate(w.letters, start=1):
        (d0, i0), (d1, i1) = place[k - 1], place[k]
        if x.inverse:
            diffs.setdefault(d1, {})[(i1, i0)] = PathCombo.single(x.path, one)
        else:
            diffs.setdefault(d0, {})[(i0, i1)] = PathCombo.single(x.path, one)
    return ProjComplex(summands, diffs, field)


def band_complex(A: BoundQuiver, w: GenWalk, f: IndecPoly) -> ProjComplex:
    field = f.field
    if not is_generalized_band(A, w):
        raise ValidationError(f"{w} is not a generalized band")
    n, dim = len(w), f.degree
    prof = mu(w).values[:n]
    verts = [w.source] + [x.target for x in w.letters[:-1]]
    place = _positions_by_degree(prof)
    summands: dict[int, list[str]] = {}
    for (dg, _), v in zip(place, verts):
        summands.setdefault(dg, []).extend([v] * dim)
    ident = [[field.one if a == b else field.zero for b in range(dim)] for a in range(dim)]
    frob = f.companion()
    diffs: dict[int, dict] = {}
    for k, x in enumerate(w.letters, start=1):
        block = frob if k == n else ident
        j0, j1 = k - 1, k % n
        if x.inverse:
            j0, j1 = j1, j0
        (d0, i0), (_, i1) = place[j0], place[j1]
        m = diffs.setdefault(d0, {})
        for a in range(dim):
            for b in range(dim):
                if block[a][b] != 0:
                    # two-letter bands hit the same block twice, so accumulate
                    key = (i0 * dim + a, i1 * dim + b)
                    m[key] = m.get(key, PathCombo()) + PathCombo.single(x.path, block[a][b])
    return ProjComplex(summands, diffs, field)


def translate(C: ProjComplex, i: int) -> ProjComplex:
    """Move the degree-``j`` term to degree ``j + i``; no signs are introduced."""
    return ProjComplex({d + i: vs for d, vs in C.summands.items()},
                       {d + i: m for d, m in C.differentials.items()}, C.field)


def direct_sum(C: ProjComplex, D: ProjComplex) -> ProjComplex:
    summands = {}
    for d in set(C.summands) | set(D.summands):
        summands[d] = list(C.objects(d)) + list(D.objects(d))
    diffs = {}
    for d in set(C.differentials) | set(D.differentials):
        m = dict(C.diff(d))
        ro, co = len(C.objects(d)), len(C.objects(d + 1))
        for (r, c), e in D.diff(d).items():
            m[(r + ro, c + co)] = e
        diffs[d] = m
    return ProjComplex(summands, diffs, C.field)


# ------------------------------------------------------------ k-linear structure
def coordinates(A: BoundQuiver, vertices) -> list[tuple[int, Path]]:
    """k-basis of ``⊕ P_{v_i}``: pairs (summand index, path ending at v_i)."""
    return [(i, u) for i, v in enumerate(vertices) for u in A.paths_ending_at(v)]


def linear_map_rows(A: BoundQuiver, C: ProjComplex, j: int):
    """Equations of ``ker ∂^j``: one row per codomain coordinate, over domain coordinates."""
    dom = coordinates(A, C.objects(j))
    cod = coordinates(A, C.objects(j + 1))
    cidx = {c: k for k, c in enumerate(cod)}
    by_row: dict[int, list] = {}
    for (r, c), e in C.diff(j).items():
        by_row.setdefault(r, []).append((c, e))
    eqs: dict[int, dict] = {}
    for di, (r, u) in enumerate(dom):
        for c, e in by_row.get(r, ()):
            for p, x in e.terms.items():
                q = A.multiply(u, p)
                if q is not None:
                    row = eqs.setdefault(cidx[(c, q)], {})
                    nv = row.get(di, 0) + x
                    if nv == 0:
                        row.pop(di, None)
                    else:
                        row[di] = nv
    return dom, cod, [r for r in eqs.values() if r]


def kernel_basis(A: BoundQuiver, C: ProjComplex, j: int) -> tuple[list, list[dict]]:
    dom, _, eqs = linear_map_rows(A, C, j)
    return dom, nullspace(eqs, len(dom), C.field)


def differential_rank(A: BoundQuiver, C: ProjComplex, j: int) -> int:
    dom, _, eqs = linear_map_rows(A, C, j)
    return rank(eqs, len(dom), C.field)


def cohomology_dims(A: BoundQuiver, C: ProjComplex) -> dict[int, int]:
    out = {}
    for d in C.degrees:
        dim = len(coordinates(A, C.objects(d)))
        ker = dim - differential_rank(A, C, d)
        img = differential_rank(A, C, d - 1) if (d - 1) in C.summands else 0
        out[d] = ker - img
    return out


def brutal_truncation(A: BoundQuiver, C: ProjComplex, s: int | None = None) -> ProjComplex:
    """Drop every term in degree below ``s``.

    Without ``s``, the complex is read as a right-bounded complex cut off at its
    lowest degree: ``s`` is the largest degree with ``C^s ≠ 0`` such that the
    cohomology vanishes at every degree strictly between the lowest one and
    ``s`` inclusive.
    """
    if C.is_zero:
        raise ValidationError("brutal truncation of the zero complex")
    if s is None:
        h = cohomology_dims(A, C)
        s = C.min_degree
        for d in range(C.min_degree + 1, C.max_degree + 1):
            if h.get(d, 0) != 0:
                break
            if C.objects(d):
                s = d
    return ProjComplex({d: vs for d, vs in C.summands.items() if d >= s},
                       {d: m for d, m in C.differentials.items() if d >= s}, C.field)


def bottom_kernel(A: BoundQuiver, C: ProjComplex):
    """``ker ∂^t`` at the lowest nonzero degree ``t``, as a KernelModule."""
    from .submodules import KernelModule

    if C.is_zero:
        raise ValidationError("bottom kernel of the zero complex")
    t = C.min_degree
    dom, basis = kernel_basis(A, C, t)
    return KernelModule.from_basis(A, C.objects(t), basis, C.field, degree=t)
