"""The poset with involution attached to an algebra, its block matrices and the functor F.

Poset elements are triples ``(i, m, k)``: degree ``i``, index ``m`` of a maximal
path and prefix length ``k``.  Tuple order is the anti-lexicographic order, so
elements sort correctly as plain tuples.  Vertices lying on no maximal path get
a one-element chain of their own so that every projective is represented.

A Y-matrix stores, for every element, a block size and sparse entries between
``(element, row)`` and ``(element, col)`` positions.  Morphisms ``T: B -> C``
are upper block triangular, agree on σ-paired diagonal blocks and satisfy
``B T = T C`` (rows act first, matching chain maps).
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field

from .complexes import IndecPoly, ProjComplex
from .errors import SolverBoundError, UnsupportedAlgebraError, ValidationError
from .field import QQ
from .linalg import is_invertible, nullspace_with_free
from .quiver import BoundQuiver, Path, classify, unique_maximal_arrow_property
from .walks import GenWalk, is_generalized_band, is_generalized_string, mu

MAX_UNKNOWNS = 40000
GENERIC_TRIES = 8


# --------------------------------------------------------------------- the poset
class YPoset:
    """Linearly ordered set ``(∪ Y_m) × window`` with its involution σ."""

    def __init__(self, A: BoundQuiver, window: tuple[int, int], fibre_classes: bool = False):
        lo, hi = int(window[0]), int(window[1])
        if lo > hi:
            raise ValidationError(f"empty window [{lo}, {hi}]")
        rep = classify(A)
        if not rep.string:
            raise UnsupportedAlgebraError("the poset needs a string algebra")
        if not rep.sag and not unique_maximal_arrow_property(A)[0]:
            raise UnsupportedAlgebraError(
                "the poset needs a SAG algebra or every arrow on a unique maximal path")
        self.A = A
        self.window = (lo, hi)
        # diagnostic mode: classes are whole fibres of t(u) instead of σ-orbits
        self.fibre_classes = fibre_classes
        self.chains: list[Path] = list(A.maximal_paths)
        covered = {p.source for p in self.chains} | {
            A.arrow[x].target for p in self.chains for x in p.arrows}
        for v in A.vertices:
            if v not in covered:
                self.chains.append(A.trivial(v))
        self.prefixes: list[list[Path]] = []
        for m in self.chains:
            ps = [A.trivial(m.source)]
            for k in range(1, len(m.arrows) + 1):
                ps.append(A.try_path(m.arrows[:k]))
            self.prefixes.append(ps)
        self.elements = [(i, m, k) for i in range(lo, hi + 1)
                         for m in range(len(self.chains))
                         for k in range(len(self.prefixes[m]))]
        self.index = {e: n for n, e in enumerate(self.elements)}
        self._pairing = self._build_sigma()

    # ---------------------------------------------------------------- queries
    def path(self, e) -> Path:
        return self.prefixes[e[1]][e[2]]

    def target(self, e) -> str:
        return self.path(e).target

    def sigma(self, e):
        return (e[0],) + self._pairing[(e[1], e[2])]

    def class_members(self, e) -> list:
        if self.fibre_classes:
            v = self.target(e)
            return [(e[0], m, k) for (m, k) in self._fibres[v]]
        return sorted({e, self.sigma(e)})

    def cls(self, e):
        """Representative (the smallest element) of the class of ``e``."""
        return min(self.class_members(e))

    def contains(self, e) -> bool:
        return e in self.index

    def label(self, e) -> str:
        p = self.path(e)
        chain = self.chains[e[1]]
        if p.is_trivial:
            name = f"e{p.source}" if chain.is_trivial else f"e{p.source}<{chain}>"
        else:
            dup = sum(1 for ps in self.prefixes for q in ps if q == p) > 1
            name = f"{p}<{chain}>" if dup else str(p)
        return f"[{name},{e[0]}]"

    def element_for(self, m: int, u: Path, i: int):
        """The element ``[u, i]`` inside chain ``m``."""
        k = len(u.arrows)
        if k >= len(self.prefixes[m]) or self.prefixes[m][k] != u:
            raise ValidationError(f"{u} is not a prefix of {self.chains[m]}")
        return (i, m, k)

    # ------------------------------------------------------------------ sigma
    def _build_sigma(self) -> dict:
        groups: dict[str, list[tuple[int, int]]] = {}
        for m, ps in enumerate(self.prefixes):
            for k, p in enumerate(ps):
                groups.setdefault(p.target, []).append((m, k))
        self._fibres = {v: sorted(g) for v, g in groups.items()}
        pairing = {}
        for v, g in groups.items():
            if len(g) == 1:
                pairing[g[0]] = g[0]
            elif len(g) == 2:
                pairing[g[0]], pairing[g[1]] = g[1], g[0]
            elif len(g) == 3:
                triv = [x for x in g if x[1] == 0]
                non = [x for x in g if x[1] != 0]
                pair, alone = (triv, non) if len(triv) == 2 else (non, triv)
                if len(pair) != 2 or len(alone) != 1:
                    raise UnsupportedAlgebraError(
                        f"three poset elements end at {v} in an unsupported pattern")
                pairing[pair[0]], pairing[pair[1]] = pair[1], pair[0]
                pairing[alone[0]] = alone[0]
            else:
                raise UnsupportedAlgebraError(f"{len(g)} poset elements end at vertex {v}")
        return pairing

    def describe(self) -> dict:
        return {
            "window": list(self.window),
            "chains": [str(m) for m in self.chains],
            "elements": [{"label": self.label(e), "degree": e[0], "chain": e[1],
                          "prefix_length": e[2], "sigma": self.label(self.sigma(e))}
                         for e in self.elements],
        }


def build_poset(A: BoundQuiver, window: tuple[int, int], fibre_classes: bool = False) -> YPoset:
    return YPoset(A, window, fibre_classes)


# --------------------------------------------------------------------- Y-matrices
@dataclass
class YMatrix:
    """A square block matrix over the poset; entries keyed by ``((e, r), (f, c))``."""

    poset: YPoset
    sizes: dict
    entries: dict = dc_field(default_factory=dict)
    field: object = QQ

    def __post_init__(self):
        self.sizes = {e: n for e, n in self.sizes.items() if n}
        self.entries = {k: x for k, x in self.entries.items() if x != 0}

    @property
    def dimension(self) -> int:
        return sum(self.sizes.values())

    @property
    def is_empty(self) -> bool:
        return not self.sizes

    def positions(self) -> list:
        return [(e, r) for e in sorted(self.sizes) for r in range(self.sizes[e])]

    def block(self, e, f) -> list[list]:
        z = self.field.zero
        out = [[z] * self.sizes.get(f, 0) for _ in range(self.sizes.get(e, 0))]
        for ((a, r), (b, c)), x in self.entries.items():
            if a == e and b == f:
                out[r][c] = x
        return out

    def dense(self) -> list[list]:
        pos = self.positions()
        idx = {p: n for n, p in enumerate(pos)}
        z = self.field.zero
        out = [[z] * len(pos) for _ in pos]
        for (p, q), x in self.entries.items():
            out[idx[p]][idx[q]] = x
        return out

    def square(self) -> dict:
        by_row: dict = {}
        for (p, q), x in self.entries.items():
            by_row.setdefault(p, []).append((q, x))
        out: dict = {}
        for (p, q), x in self.entries.items():
            for s, y in by_row.get(q, ()):
                out[(p, s)] = out.get((p, s), 0) + x * y
        return {k: v for k, v in out.items() if v != 0}

    def violations(self) -> list[str]:
        P = self.poset
        bad = []
        for e, n in self.sizes.items():
            if not P.contains(e):
                bad.append(f"{e} is outside the poset window")
            elif any(self.sizes.get(f, 0) != n for f in P.class_members(e)):
                bad.append(f"σ-paired sizes differ at {P.label(e)}")
        for (p, q) in self.entries:
            if p[1] >= self.sizes.get(p[0], 0) or q[1] >= self.sizes.get(q[0], 0):
                bad.append(f"entry {p}->{q} outside its block")
        if self.square():
            bad.append("B^2 is not zero")
        return bad

    def validate(self) -> None:
        bad = self.violations()
        if bad:
            raise ValidationError("; ".join(bad))

    def direct_sum(self, other: "YMatrix") -> "YMatrix":
        sizes = dict(self.sizes)
        for e, n in other.sizes.items():
            sizes[e] = sizes.get(e, 0) + n
        ent = dict(self.entries)
        off = self.sizes
        for ((a, r), (b, c)), x in other.entries.items():
            ent[((a, r + off.get(a, 0)), (b, c + off.get(b, 0)))] = x
        return YMatrix(self.poset, sizes, ent, self.field)

    def __eq__(self, other) -> bool:
        return (isinstance(other, YMatrix) and self.sizes == other.sizes
                and self.entries == other.entries)

    def to_dict(self) -> dict:
        P = self.poset
        els = sorted(self.sizes)
        return {
            "elements": [{"label": P.label(e), "size": self.sizes[e],
                          "sigma": P.label(P.sigma(e))} for e in els],
            "entries": [{"row": [P.label(a), r], "col": [P.label(b), c],
                         "value": self.field.format(x)}
                        for ((a, r), (b, c)), x in sorted(self.entries.items())],
        }

    def table(self) -> list[list[str]]:
        """Dense table with element labels as headers, for display."""
        P = self.poset
        pos = self.positions()
        head = [""] + [P.label(e) for e, _ in pos]
        rows = [head]
        for (e, _), row in zip(pos, self.dense()):
            rows.append([P.label(e)] + [self.field.format(x) for x in row])
        return rows


# --------------------------------------------------------------------- functor F
def _window_for(*complexes: ProjComplex) -> tuple[int, int]:
    degs = [d for C in complexes for d in C.degrees]
    if not degs:
        return (0, 0)
    return (min(degs) - 1, max(degs) + 1)


def _occurrences(A: BoundQuiver, P: YPoset, w: Path, i: int, j: int):
    """Pairs ``([u, i], [uw, j])`` with ``u`` and ``uw`` prefixes of one chain."""
    out = []
    for ch, ps in enumerate(P.prefixes):
        for k, u in enumerate(ps):
            if u.target != w.source:
                continue
            n = k + len(w.arrows)
            if n < len(ps) and ps[n] == A.multiply(u, w):
                out.append(((i, ch, k), (j, ch, n)))
    return out


def functor_F_obj(A: BoundQuiver, C: ProjComplex, P: YPoset | None = None) -> YMatrix:
    """Block ``([u, i], [uw, i+1])`` carries the coefficient matrix of ``p(w)`` in ``∂^i``."""
    P = P or build_poset(A, _window_for(C))
    field = C.field
    # copy index of each summand among the summands at the same vertex
    copy: dict[tuple[int, int], int] = {}
    dims: dict[tuple[int, str], int] = {}
    for j in C.degrees:
        for r, v in enumerate(C.objects(j)):
            copy[(j, r)] = dims.get((j, v), 0)
            dims[(j, v)] = copy[(j, r)] + 1
    sizes = {}
    for e in P.elements:
        n = dims.get((e[0], P.target(e)), 0)
        if n:
            sizes[e] = n
    for (j, v) in dims:
        if not any(e[0] == j and P.target(e) == v for e in sizes):
            raise ValidationError(f"degree {j} lies outside the poset window")
    entries = {}
    for j in C.degrees:
        for (r, c), e in C.diff(j).items():
            for w, x in e.terms.items():
                if w.is_trivial:
                    raise ValidationError("differential has a trivial-path term")
                for src, tgt in _occurrences(A, P, w, j, j + 1):
                    entries[((src, copy[(j, r)]), (tgt, copy[(j + 1, c)]))] = x
    return YMatrix(P, sizes, entries, field)


def functor_F_mor(A: BoundQuiver, C: ProjComplex, D: ProjComplex, phi: dict,
                  P: YPoset | None = None) -> dict:
    """Morphism blocks: ``φ_{w,i}`` at ``([u,i],[uw,i])`` for ``u, uw`` in one chain.

    Returns the sparse entries ``{((e, r), (f, c)): scalar}``.
    """
    from .linhom import is_chain_map

    if not is_chain_map(A, C, D, phi):
        raise ValidationError("not a chain map")
    P = P or build_poset(A, _window_for(C, D))

    def copies(X):
        out, cnt = {}, {}
        for j in X.degrees:
            for r, v in enumerate(X.objects(j)):
                out[(j, r)] = cnt.get((j, v), 0)
                cnt[(j, v)] = out[(j, r)] + 1
        return out

    cc, cd = copies(C), copies(D)
    entries = {}
    for j, m in phi.items():
        for (r, c), e in m.items():
            for w, x in e.terms.items():
                for src, tgt in _occurrences(A, P, w, j, j):
                    key = ((src, cc[(j, r)]), (tgt, cd[(j, c)]))
                    entries[key] = entries.get(key, 0) + x
    return {k: x for k, x in entries.items() if x != 0}


# ---------------------------------------------------------------- morphism space
@dataclass
class YHomSpace:
    source: YMatrix
    target: YMatrix
    variables: list
    vectors: list[dict]

    @property
    def dimension(self) -> int:
        return len(self.vectors)

    def morphism(self, coords) -> dict:
        out: dict = {}
        for x, v in zip(coords, self.vectors):
            if x == 0:
                continue
            for k, y in v.items():
                out[self.variables[k]] = out.get(self.variables[k], 0) + x * y
        return {k: x for k, x in out.items() if x != 0}


def y_hom_space(B: YMatrix, C: YMatrix, max_unknowns: int = MAX_UNKNOWNS,
                block_diagonal: bool = False) -> YHomSpace:
    """All ``T`` with ``B T = T C``, upper block triangular, σ-equal diagonal blocks.

    ``block_diagonal`` keeps only the blocks ``T[e, e]``.
    """
    P = B.poset
    field = B.field
    rows_pos = B.positions()
    cols_pos = C.positions()
    if block_diagonal:
        variables = [(p, q) for p in rows_pos for q in cols_pos if p[0] == q[0]]
    else:
        variables = [(p, q) for p in rows_pos for q in cols_pos if p[0] <= q[0]]
    if len(variables) > max_unknowns:
        raise SolverBoundError(f"{len(variables)} unknowns exceed the bound {max_unknowns}")
    vidx = {v: n for n, v in enumerate(variables)}
    eqs: dict = {}

    def add(key, k, x):
        row = eqs.setdefault(key, {})
        nv = row.get(k, 0) + x
        if nv == 0:
            row.pop(k, None)
        else:
            row[k] = nv

    # (B T)[p, q] = sum_s B[p, s] T[s, q]
    for (p, s), x in B.entries.items():
        for q in cols_pos:
            k = vidx.get((s, q))
            if k is not None:
                add((p, q), k, x)
    # (T C)[p, q] = sum_s T[p, s] C[s, q]
    for (s, q), x in C.entries.items():
        for p in rows_pos:
            k = vidx.get((p, s))
            if k is not None:
                add((p, q), k, -x)
    # σ-paired diagonal blocks coincide
    for e in sorted(B.sizes):
        for f in P.class_members(e):
            if f <= e or B.sizes.get(f) != B.sizes[e]:
                continue
            for r in range(B.sizes[e]):
                for c in range(C.sizes.get(e, 0)):
                    k1 = vidx.get(((e, r), (e, c)))
                    k2 = vidx.get(((f, r), (f, c)))
                    if k1 is not None and k2 is not None:
                        eqs[("sigma", e, f, r, c)] = {k1: field.one, k2: -field.one}
    vectors, _ = nullspace_with_free([r for r in eqs.values() if r], len(variables), field)
    return YHomSpace(B, C, variables, vectors)


def is_y_morphism(B: YMatrix, C: YMatrix, T: dict) -> bool:
    """Check the morphism conditions on sparse entries ``{((e, r), (f, c)): x}``."""
    P = B.poset
    for (p, q), x in T.items():
        if x != 0 and q[0] < p[0]:
            return False
    lhs: dict = {}
    by_row: dict = {}
    for (s, q), x in T.items():
        by_row.setdefault(s, []).append((q, x))
    for (p, s), x in B.entries.items():
        for q, y in by_row.get(s, ()):
            lhs[(p, q)] = lhs.get((p, q), 0) + x * y
    rhs: dict = {}
    c_by_row: dict = {}
    for (s, q), x in C.entries.items():
        c_by_row.setdefault(s, []).append((q, x))
    for (p, s), x in T.items():
        for q, y in c_by_row.get(s, ()):
            rhs[(p, q)] = rhs.get((p, q), 0) + x * y
    keys = set(lhs) | set(rhs)
    if any(lhs.get(k, 0) != rhs.get(k, 0) for k in keys):
        return False
    for e in B.sizes:
        for f in P.class_members(e):
            for r in range(B.sizes[e]):
                for c in range(C.sizes.get(e, 0)):
                    if T.get(((e, r), (e, c)), 0) != T.get(((f, r), (f, c)), 0):
                        return False
    return True


def _diagonal_invertible(B: YMatrix, C: YMatrix, T: dict) -> bool:
    for e, n in B.sizes.items():
        if C.sizes.get(e, 0) != n:
            return False
        m = [[T.get(((e, r), (e, c)), B.field.zero) for c in range(n)] for r in range(n)]
        if not is_invertible(m, B.field):
            return False
    return True


def y_isomorphic(B: YMatrix, C: YMatrix, seed: int = 0,
                 max_unknowns: int = MAX_UNKNOWNS) -> bool:
    """Isomorphism in the Y-matrix category via a seeded generic morphism.

    ``True`` is certified by an explicit morphism with invertible diagonal blocks.
    """
    if B.sizes != C.sizes:
        return False
    if B.is_empty:
        return True
    H = y_hom_space(B, C, max_unknowns)
    rng = random.Random(seed)
    for _ in range(GENERIC_TRIES if H.dimension else 0):
        coords = [B.field(rng.randint(-10**6, 10**6)) for _ in range(H.dimension)]
        if _diagonal_invertible(B, C, H.morphism(coords)):
            return True
    return False


# --------------------------------------------------------------- Y-strings/bands
@dataclass(frozen=True)
class YLetter:
    """The arrow ``(alpha, beta)`` of the poset quiver, possibly inverted."""

    alpha: tuple
    beta: tuple
    inverse: bool = False

    def p1(self):
        return self.beta if self.inverse else self.alpha

    def p2(self):
        return self.alpha if self.inverse else self.beta


@dataclass(frozen=True)
class YWord:
    """A Y-string (or band when closed); ``letters == ()`` means a single class."""

    letters: tuple[YLetter, ...] = ()
    start: tuple | None = None

    def __len__(self) -> int:
        return len(self.letters)


def _src_cls(P: YPoset, x: YLetter):
    return P.cls(x.p1())


def _tgt_cls(P: YPoset, x: YLetter):
    return P.cls(x.p2())


def is_y_string(P: YPoset, u: YWord) -> bool:
    if not u.letters:
        return u.start is not None and P.contains(u.start)
    for x in u.letters:
        if not (P.contains(x.alpha) and P.contains(x.beta)):
            return False
    for x, y in zip(u.letters, u.letters[1:]):
        if _tgt_cls(P, x) != _src_cls(P, y) or x.p2() == y.p1():
            return False
    return True


def is_y_band(P: YPoset, u: YWord) -> bool:
    if not u.letters or not is_y_string(P, u):
        return False
    first, last = u.letters[0], u.letters[-1]
    if _tgt_cls(P, last) != _src_cls(P, first) or last.p2() == first.p1():
        return False
    n = len(u)
    return not any(n % d == 0 and all(u.letters[i] == u.letters[i % d] for i in range(n))
                   for d in range(1, n))


def _word_classes(P: YPoset, u: YWord) -> list:
    if not u.letters:
        return [P.cls(u.start)]
    return [_src_cls(P, u.letters[0])] + [_tgt_cls(P, x) for x in u.letters]


def _layout(P: YPoset, classes: list, copies: int):
    """Row index of basis vector ``(i, j)`` inside each element block of its class."""
    slot: dict = {}
    where = {}
    for i, c in enumerate(classes):
        for j in range(copies):
            where[(i, j)] = slot.get(c, 0)
            slot[c] = where[(i, j)] + 1
    sizes = {}
    for c, n in slot.items():
        for e in P.class_members(c):
            sizes[e] = n
    return where, sizes


def y_string_matrix(P: YPoset, u: YWord, field=QQ) -> YMatrix:
    """``B_u``: ``v_i -> v_{i+1}`` along forward letters, ``v_i -> v_{i-1}`` along inverse ones."""
    if not is_y_string(P, u):
        raise ValidationError("not a valid Y-string")
    classes = _word_classes(P, u)
    where, sizes = _layout(P, classes, 1)
    entries = {}
    for i, x in enumerate(u.letters, start=1):
        a, b = (i - 1, i) if not x.inverse else (i, i - 1)
        entries[((x.alpha, where[(a, 0)]), (x.beta, where[(b, 0)]))] = field.one
    return YMatrix(P, sizes, entries, field)


def y_band_matrix(P: YPoset, u: YWord, f: IndecPoly) -> YMatrix:
    """``B_{u,f}`` on ``v_{ij}``, the closing letter carrying the companion twist."""
    if not is_y_band(P, u):
        raise ValidationError("not a valid Y-band")
    field = f.field
    n, d = len(u), f.degree
    classes = _word_classes(P, u)[:n]
    where, sizes = _layout(P, classes, d)
    entries: dict = {}

    def put(x, a, ja, b, jb, val):
        key = ((x.alpha, where[(a, ja)]), (x.beta, where[(b, jb)]))
        entries[key] = entries.get(key, 0) + val

    for i, x in enumerate(u.letters, start=1):
        last = i == n
        for j in range(d):
            if not last:
                a, b = (i - 1, i) if not x.inverse else (i, i - 1)
                put(x, a, j, b, j, field.one)
            elif not x.inverse:
                # v_{n-1, j} -> v_{0, j+1}, the last one wraps with -alpha
                if j < d - 1:
                    put(x, n - 1, j, 0, j + 1, field.one)
                else:
                    for r in range(d):
                        put(x, n - 1, j, 0, r, -f.alphas[r])
            else:
                if j < d - 1:
                    put(x, 0, j, n - 1, j + 1, field.one)
                else:
                    for r in range(d):
                        put(x, 0, j, n - 1, r, -f.alphas[r])
    return YMatrix(P, sizes, entries, field)


# ----------------------------------------------------------------------- rho
def _rho_letters(A: BoundQuiver, P: YPoset, w: GenWalk, m: int) -> tuple[YLetter, ...]:
    prof = mu(w).values
    out = []
    for i, x in enumerate(w.letters, start=1):
        ch, u = A.completion(x.path)
        full = A.multiply(u, x.path)
        if not x.inverse:
            a = P.element_for(ch, u, prof[i - 1] + m)
            b = P.element_for(ch, full, prof[i] + m)
        else:
            a = P.element_for(ch, u, prof[i] + m)
            b = P.element_for(ch, full, prof[i - 1] + m)
        out.append(YLetter(a, b, x.inverse))
    return tuple(out)


def _trivial_element(P: YPoset, v: str, i: int):
    for e in P.elements:
        if e[0] == i and e[2] == 0 and P.target(e) == v:
            return e
    for e in P.elements:
        if e[0] == i and P.target(e) == v:
            return e
    raise ValidationError(f"no poset element at vertex {v} in degree {i}")


def rho(A: BoundQuiver, w: GenWalk, m: int = 0, P: YPoset | None = None) -> YWord:
    """Image of a generalized string as a Y-string, shifted by ``m``."""
    if not is_generalized_string(A, w):
        raise ValidationError(f"{w} is not a generalized string")
    if P is None:
        prof = mu(w).values
        P = build_poset(A, (min(prof) + m - 1, max(prof) + m + 1))
    if w.is_trivial:
        return YWord((), _trivial_element(P, w.vertex, m))
    return YWord(_rho_letters(A, P, w, m))


def rho_band(A: BoundQuiver, w: GenWalk, m: int = 0, P: YPoset | None = None) -> YWord:
    if not is_generalized_band(A, w):
        raise ValidationError(f"{w} is not a generalized band")
    if P is None:
        prof = mu(w).values
        P = build_poset(A, (min(prof) + m - 1, max(prof) + m + 1))
    return YWord(_rho_letters(A, P, w, m))


def format_y_word(P: YPoset, u: YWord) -> str:
    if not u.letters:
        return P.label(u.start)
    parts = []
    for x in u.letters:
        s = f"({P.label(x.alpha)},{P.label(x.beta)})"
        parts.append(s + ("^-1" if x.inverse else ""))
    return ".".join(parts)


def padding_summands(B: YMatrix, C: YMatrix) -> YMatrix | None:
    """Trivial Y-strings making up the size excess of ``B`` over ``C``, if any.

    Returns ``None`` when some block of ``C`` is larger than in ``B``.
    """
    P = B.poset
    sizes = {}
    for e in set(B.sizes) | set(C.sizes):
        extra = B.sizes.get(e, 0) - C.sizes.get(e, 0)
        if extra < 0:
            return None
        if extra:
            sizes[e] = extra
    return YMatrix(P, sizes, {}, B.field)

