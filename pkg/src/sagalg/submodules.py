"""Submodules of finite direct sums of indecomposable projectives.

An element of ``⊕ P_{v_i}`` is a sparse vector over the coordinates
``(i, u)`` with ``u`` a basis path ending at ``v_i``; the algebra acts by left
multiplication ``p·(i, u) = (i, pu)``.
"""
from __future__ import annotations

from .complexes import PathCombo, coordinates
from .field import QQ
from .linalg import RowSpace
from .quiver import BoundQuiver, Path


class KernelModule:
    """A submodule ``K`` of ``⊕ P_{ambient_i}`` with a k-basis and minimal generators."""

    def __init__(self, A: BoundQuiver, ambient, k_basis, generators, field=QQ, degree=None):
        self.A = A
        self.ambient = tuple(ambient)
        self.coords = coordinates(A, self.ambient)
        self.index = {c: k for k, c in enumerate(self.coords)}
        self.k_basis = list(k_basis)
        self.generators = list(generators)
        self.field = field
        self.degree = degree

    @classmethod
    def from_basis(cls, A, ambient, basis, field=QQ, degree=None) -> "KernelModule":
        mod = cls(A, ambient, [], [], field, degree)
        space = RowSpace(field)
        for v in basis:
            space.add(v)
        mod.k_basis = space.basis()
        mod.generators = mod._minimal_generators()
        return mod

    # ----------------------------------------------------------------- action
    def left_multiply(self, p: Path, vec: dict) -> dict:
        out: dict[int, object] = {}
        for k, c in vec.items():
            i, u = self.coords[k]
            q = self.A.multiply(p, u)
            if q is not None:
                j = self.index[(i, q)]
                nv = out.get(j, 0) + c
                if nv == 0:
                    out.pop(j, None)
                else:
                    out[j] = nv
        return out

    def project(self, v, vec: dict) -> dict:
        """``e_v · vec``: keep the terms whose path starts at ``v``."""
        return {k: c for k, c in vec.items() if self.coords[k][1].source == v}

    def _minimal_generators(self) -> list[dict]:
        A = self.A
        rad = []
        for a in A.arrows:
            p = Path(a.source, a.target, (a.name,))
            for x in self.k_basis:
                y = self.left_multiply(p, x)
                if y:
                    rad.append(y)
        gens = []
        for v in A.vertices:
            part = RowSpace(self.field)
            for x in self.k_basis:
                part.add(self.project(v, x))
            if not part.rank:
                continue
            rad_v = RowSpace(self.field)
            for y in rad:
                rad_v.add(self.project(v, y))
            chosen = RowSpace(self.field)
            for b in part.basis():
                r = rad_v.reduce(b)
                if r and chosen.add(r):
                    lead = r[min(r)]
                    gens.append({k: c / lead for k, c in r.items()})
                    rad_v.add(r)
        return gens

    # ------------------------------------------------------------ inspection
    @property
    def dim(self) -> int:
        return len(self.k_basis)

    @property
    def is_zero(self) -> bool:
        return not self.k_basis

    def element(self, vec: dict) -> tuple[PathCombo, ...]:
        parts: list[dict] = [{} for _ in self.ambient]
        for k, c in vec.items():
            i, u = self.coords[k]
            parts[i][u] = c
        return tuple(PathCombo(t) for t in parts)

    def terms(self, vec: dict) -> list[tuple[int, Path, object]]:
        return [(self.coords[k][0], self.coords[k][1], c) for k, c in sorted(vec.items())]

    def generator_source(self, g: dict) -> str:
        srcs = {self.coords[k][1].source for k in g}
        if len(srcs) != 1:
            raise AssertionError("generator is not uniform")
        return srcs.pop()

    def generator_paths(self, g: dict) -> frozenset[Path]:
        return frozenset(self.coords[k][1] for k in g)

    def cyclic_dim(self, g: dict) -> int:
        """``dim A·g``."""
        v = self.generator_source(g)
        space = RowSpace(self.field)
        for p in self.A.paths_ending_at(v):
            space.add(self.left_multiply(p, g))
        return space.rank

    def annihilator_dim(self, g: dict) -> int:
        v = self.generator_source(g)
        return self.A.dim_projective(v) - self.cyclic_dim(g)

    def is_direct_sum_of_generators(self) -> bool:
        return sum(self.cyclic_dim(g) for g in self.generators) == self.dim

    def describe(self) -> list[dict]:
        out = []
        for g in self.generators:
            out.append({
                "source": self.generator_source(g),
                "terms": [{"summand": i, "path": list(u.arrows) or [], "vertex": u.source,
                           "coefficient": self.field.format(c)} for i, u, c in self.terms(g)],
            })
        return out
