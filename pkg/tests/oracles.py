"""Independent reference computations used to check the library.

Everything here works on raw quiver descriptions (vertex list, arrow triples,
relation tuples) and plain tuples of arrow names, so it shares no code with
``sagalg`` beyond the fixture data.
"""
from __future__ import annotations

from fractions import Fraction

import sympy


class RawQuiver:
    def __init__(self, desc):
        self.vertices = [str(v) for v in desc["vertices"]]
        self.src = {a["name"]: str(a["source"]) for a in desc["arrows"]}
        self.tgt = {a["name"]: str(a["target"]) for a in desc["arrows"]}
        self.arrows = [a["name"] for a in desc["arrows"]]
        self.rels = [tuple(r) for r in desc.get("relations", [])]

    def zero(self, seq) -> bool:
        """Whether the arrow sequence contains a relation as a contiguous block."""
        seq = tuple(seq)
        for r in self.rels:
            for i in range(len(seq) - len(r) + 1):
                if seq[i:i + len(r)] == r:
                    return True
        return False

    def composable(self, seq) -> bool:
        return all(self.tgt[x] == self.src[y] for x, y in zip(seq, seq[1:]))

    def source(self, seq, v=None):
        return self.src[seq[0]] if seq else v

    def target(self, seq, v=None):
        return self.tgt[seq[-1]] if seq else v

    def nontrivial_paths(self, cap=40):
        """All nonzero arrow sequences, by breadth-first extension."""
        out, layer = [], [(a,) for a in self.arrows]
        for _ in range(cap):
            if not layer:
                return out
            out.extend(layer)
            layer = [p + (b,) for p in layer for b in self.arrows
                     if self.tgt[p[-1]] == self.src[b] and not self.zero(p + (b,))]
        raise AssertionError("path enumeration did not stop")

    def maximal(self):
        ps = set(self.nontrivial_paths())
        out = []
        for p in ps:
            if any((a,) + p in ps or p + (a,) in ps for a in self.arrows):
                continue
            out.append(p)
        return set(out)

    # -------------------------------------------------------------- annihilators
    def kills(self, q, p) -> bool:
        """``q p = 0`` for composable nonzero paths."""
        return self.zero(q + p)

    def min_annihilators(self, targets):
        """Paths ``q`` ending at the common source with ``q t = 0`` for all targets,
        no proper nontrivial suffix of ``q`` doing the same."""
        v = self.src[targets[0][0]]
        out = []
        for q in self.nontrivial_paths():
            if self.tgt[q[-1]] != v or not all(self.kills(q, t) for t in targets):
                continue
            if any(all(self.kills(q[i:], t) for t in targets) for i in range(1, len(q))):
                continue
            out.append(q)
        return out

    def annihilator_edges(self):
        return {p: self.min_annihilators([p]) for p in self.nontrivial_paths()}

    def pa_c_by_pruning(self):
        """Nodes of the annihilator graph that survive repeated removal of sinks."""
        edges = {p: set(qs) for p, qs in self.annihilator_edges().items()}
        alive = set(edges)
        changed = True
        while changed:
            changed = False
            for p in list(alive):
                if not (edges[p] & alive):
                    alive.discard(p)
                    changed = True
        return alive

    def qc_arrows(self):
        """Arrows on a closed chain ``a_1 ... a_m`` with every consecutive product zero."""
        succ = {a: {b for b in self.arrows if self.tgt[a] == self.src[b] and self.zero((a, b))}
                for a in self.arrows}
        out = set()
        for a in self.arrows:
            seen, stack = set(), list(succ[a])
            while stack:
                b = stack.pop()
                if b == a:
                    out.add(a)
                    break
                if b not in seen:
                    seen.add(b)
                    stack.extend(succ[b])
        return out

    # ----------------------------------------------------------- linear algebra
    def projective_basis(self, v):
        return [()] + [p for p in self.nontrivial_paths() if self.tgt[p[-1]] == v]

    def right_mult_rank(self, w) -> int:
        """Rank of ``u -> u w`` on the projective at the source of ``w``."""
        v = self.src[w[0]]
        dom = [u for u in self.projective_basis(v)]
        cod = {p: i for i, p in enumerate(self.projective_basis(self.tgt[w[-1]]))}
        rows = []
        for u in dom:
            row = [0] * len(cod)
            prod = u + w
            if not self.zero(prod):
                row[cod[prod]] = 1
            rows.append(row)
        return sympy.Matrix(rows).rank() if rows and cod else 0

    def module_dim_generated(self, q) -> int:
        """``dim A q``: paths ``u q`` that are nonzero, ``u`` trivial included."""
        return 1 + sum(1 for u in self.nontrivial_paths()
                       if self.tgt[u[-1]] == self.src[q[0]] and not self.zero(u + q))

    # ------------------------------------------------------------ resolutions
    def simple_projective_dimension(self, v, cap=200):
        """Projective dimension of the simple at ``v`` (``None`` when infinite).

        Syzygies of monomial string algebras are direct sums of cyclic modules
        ``A p``; the next syzygy of ``A p`` is generated by the minimal
        annihilators of ``p``.  The state is a multiset of such ``p``.
        """
        state = [(a,) for a in self.arrows if self.tgt[a] == v]
        seen = set()
        n = 1
        while state:
            key = tuple(sorted(state))
            if key in seen or n > cap:
                return None
            seen.add(key)
            state = [q for p in state for q in self.min_annihilators([p])]
            n += 1
        return n - 1 if n > 1 else 0

    def global_dimension(self):
        vals = [self.simple_projective_dimension(v) for v in self.vertices]
        return None if any(x is None for x in vals) else max(vals)


# ------------------------------------------------------------------ walks
def raw_mu(signs):
    """Height profile of a sequence of ``+1``/``-1`` letter directions."""
    vals = [0]
    for s in signs:
        vals.append(vals[-1] + s)
    return vals


def raw_generalized_string(Q: RawQuiver, letters) -> bool:
    """Letters are ``(arrow tuple, inverse flag)``; checks every junction directly."""
    for p, _ in letters:
        if not p or not Q.composable(p) or Q.zero(p):
            return False
    for (p, ip), (q, iq) in zip(letters, letters[1:]):
        end = Q.src[p[0]] if ip else Q.tgt[p[-1]]
        start = Q.tgt[q[-1]] if iq else Q.src[q[0]]
        if end != start:
            return False
        if not ip and not iq and not Q.zero(p + q):
            return False
        if ip and iq and not Q.zero(q + p):
            return False
        if not ip and iq and p[-1] == q[-1]:
            return False
        if ip and not iq and p[0] == q[0]:
            return False
    return True


def string_summands(Q: RawQuiver, letters):
    """Degree -> multiset of vertices ``c(j)`` with ``μ(j)`` equal to that degree."""
    signs = [-1 if inv else 1 for _, inv in letters]
    prof = raw_mu(signs)
    verts = []
    first, inv = letters[0]
    verts.append(Q.tgt[first[-1]] if inv else Q.src[first[0]])
    for p, inv in letters:
        verts.append(Q.src[p[0]] if inv else Q.tgt[p[-1]])
    out = {}
    for h, v in zip(prof, verts):
        out.setdefault(h, []).append(v)
    return {d: sorted(vs) for d, vs in out.items()}


def frac(x) -> Fraction:
    return Fraction(str(x))
