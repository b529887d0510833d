"""Bound quivers with monomial relations, their path bases and classification.

Paths compose left to right: ``uw`` is "u then w" and needs ``t(u) = s(w)``.
The indecomposable projective ``P_i`` has basis the paths ending at ``i`` and
``p(w): P_{s(w)} -> P_{t(w)}`` sends ``u`` to ``uw``.
"""
from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations

import networkx as nx

from .errors import AmbiguityError, ParseError, ValidationError

FORBIDDEN_NAME_CHARS = set(".,()^")


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


@dataclass(frozen=True)
class Path:
    """A basis path: trivial at ``source`` when ``arrows`` is empty."""

    source: str
    target: str
    arrows: tuple[str, ...] = ()

    @property
    def length(self) -> int:
        return len(self.arrows)

    @property
    def is_trivial(self) -> bool:
        return not self.arrows

    def __str__(self) -> str:
        if not self.arrows:
            return f"e{self.source}"
        if all(len(a) == 1 for a in self.arrows):
            return "".join(self.arrows)
        if len(self.arrows) == 1:
            return self.arrows[0]
        return "(" + ",".join(self.arrows) + ")"

    def __repr__(self) -> str:
        return f"Path({self})"


@dataclass(frozen=True)
class ClassificationReport:
    special_biserial: bool
    string: bool
    almost_gentle: bool
    sag: bool
    gentle: bool
    unique_maximal_arrow: bool
    violations: tuple[str, ...] = field(default_factory=tuple)

    def as_dict(self) -> dict:
        return {
            "special_biserial": self.special_biserial,
            "string": self.string,
            "almost_gentle": self.almost_gentle,
            "sag": self.sag,
            "gentle": self.gentle,
            "unique_maximal_arrow": self.unique_maximal_arrow,
            "violations": list(self.violations),
        }


class BoundQuiver:
    """A finite quiver with monomial relations; the algebra ``kQ/I``."""

    def __init__(self, vertices, arrows, relations):
        self.vertices: tuple[str, ...] = tuple(str(v) for v in vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise ValidationError("duplicate vertex id")
        vset = set(self.vertices)
        arrs = []
        for a in arrows:
            if isinstance(a, Arrow):
                arr = a
            elif isinstance(a, dict):
                arr = Arrow(str(a["name"]), str(a["source"]), str(a["target"]))
            else:
                arr = Arrow(*(str(x) for x in a))
            if not arr.name or FORBIDDEN_NAME_CHARS & set(arr.name) or arr.name != arr.name.strip():
                raise ValidationError(f"illegal arrow name {arr.name!r}")
            if arr.source not in vset or arr.target not in vset:
                raise ValidationError(f"arrow {arr.name} uses an unknown vertex")
            arrs.append(arr)
        self.arrows: tuple[Arrow, ...] = tuple(arrs)
        self.arrow: dict[str, Arrow] = {}
        for a in self.arrows:
            if a.name in self.arrow:
                raise ValidationError(f"duplicate arrow name {a.name}")
            self.arrow[a.name] = a
        self.arrow_index = {a.name: i for i, a in enumerate(self.arrows)}
        self.vertex_index = {v: i for i, v in enumerate(self.vertices)}
        rels = []
        for r in relations:
            r = tuple(str(x) for x in r)
            if len(r) < 2:
                raise ValidationError(f"relation {list(r)} has length < 2")
            for x in r:
                if x not in self.arrow:
                    raise ValidationError(f"relation {list(r)} names unknown arrow {x}")
            for x, y in zip(r, r[1:]):
                if self.arrow[x].target != self.arrow[y].source:
                    raise ValidationError(f"relation {list(r)} is not composable")
            if r not in rels:
                rels.append(r)
        self.relations: tuple[tuple[str, ...], ...] = tuple(rels)
        self._relset = frozenset(self.relations)
        self._rel_lengths = sorted({len(r) for r in self.relations})
        self.out_arrows: dict[str, list[Arrow]] = defaultdict(list)
        self.in_arrows: dict[str, list[Arrow]] = defaultdict(list)
        for a in self.arrows:
            self.out_arrows[a.source].append(a)
            self.in_arrows[a.target].append(a)
        self._check_finite_dimensional()

    # ------------------------------------------------------------------ paths
    def _ends_with_relation(self, seq: tuple[str, ...]) -> bool:
        n = len(seq)
        for ln in self._rel_lengths:
            if ln > n:
                break
            if seq[n - ln:] in self._relset:
                return True
        return False

    def _starts_with_relation(self, seq: tuple[str, ...]) -> bool:
        n = len(seq)
        for ln in self._rel_lengths:
            if ln > n:
                break
            if seq[:ln] in self._relset:
                return True
        return False

    def contains_relation(self, seq) -> bool:
        seq = tuple(seq)
        return any(self._ends_with_relation(seq[: i + 1]) for i in range(len(seq)))

    def _check_finite_dimensional(self) -> None:
        # States: current vertex plus the last (L-1) arrows read, L the longest
        # relation; every relation ending at the next arrow is visible from there.
        window = max(self._rel_lengths, default=1) - 1
        graph = nx.DiGraph()
        start = [(v, ()) for v in self.vertices]
        seen = set(start)
        stack = list(start)
        while stack:
            v, tail = stack.pop()
            graph.add_node((v, tail))
            for a in self.out_arrows.get(v, ()):
                seq = tail + (a.name,)
                if self._ends_with_relation(seq):
                    continue
                nxt = (a.target, seq[len(seq) - window:] if window else ())
                graph.add_edge((v, tail), nxt)
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        if not nx.is_directed_acyclic_graph(graph):
            cyc = nx.find_cycle(graph)
            arrows = [e[1][1][-1] if e[1][1] else "?" for e in cyc]
            raise ValidationError(
                "algebra is infinite-dimensional: relation-avoiding cycle through "
                + ",".join(arrows))

    def trivial(self, v) -> Path:
        v = str(v)
        if v not in self.vertex_index:
            raise ValidationError(f"unknown vertex {v}")
        return Path(v, v, ())

    def try_path(self, seq) -> Path | None:
        """The basis path with arrow sequence ``seq``, or None if it is zero."""
        seq = tuple(seq)
        if not seq:
            raise ValueError("use trivial() for trivial paths")
        for x in seq:
            if x not in self.arrow:
                raise ValidationError(f"unknown arrow {x}")
        for x, y in zip(seq, seq[1:]):
            if self.arrow[x].target != self.arrow[y].source:
                raise ValidationError(f"arrows {x},{y} are not composable")
        if self.contains_relation(seq):
            return None
        return Path(self.arrow[seq[0]].source, self.arrow[seq[-1]].target, seq)

    def path(self, *seq) -> Path:
        """Basis path from arrow names; ``path("a","b")`` or ``path("ab")`` for one-letter names."""
        if len(seq) == 1 and isinstance(seq[0], (list, tuple)):
            seq = tuple(seq[0])
        if len(seq) == 1 and seq[0] not in self.arrow and all(c in self.arrow for c in seq[0]):
            seq = tuple(seq[0])
        p = self.try_path(seq)
        if p is None:
            raise ValidationError(f"{''.join(seq)} lies in the ideal")
        return p

    def multiply(self, u: Path, w: Path) -> Path | None:
        """The product ``uw`` in the algebra; None when it is zero."""
        if u.target != w.source:
            return None
        if u.is_trivial:
            return w
        if w.is_trivial:
            return u
        seq = u.arrows + w.arrows
        # only relations straddling the junction can appear
        lu = len(u.arrows)
        for ln in self._rel_lengths:
            lo = max(0, lu - ln + 1)
            hi = min(lu - 1, len(seq) - ln)
            for st in range(lo, hi + 1):
                if seq[st:st + ln] in self._relset:
                    return None
        return Path(u.source, w.target, seq)

    def key(self, p: Path):
        """Fixed linear order: length, then arrow declaration indices."""
        if p.is_trivial:
            return (0, (self.vertex_index[p.source],))
        return (len(p.arrows), tuple(self.arrow_index[a] for a in p.arrows))

    @cached_property
    def basis_paths(self) -> tuple[Path, ...]:
        out = [self.trivial(v) for v in self.vertices]
        frontier = [Path(a.source, a.target, (a.name,)) for a in self.arrows]
        guard = 0
        while frontier:
            guard += 1
            if guard > 10_000:
                raise ValidationError("basis path enumeration did not terminate")
            out.extend(frontier)
            nxt = []
            for p in frontier:
                for a in self.out_arrows.get(p.target, ()):
                    seq = p.arrows + (a.name,)
                    if not self._ends_with_relation(seq):
                        nxt.append(Path(p.source, a.target, seq))
            frontier = nxt
        return tuple(sorted(out, key=self.key))

    @cached_property
    def nontrivial_paths(self) -> tuple[Path, ...]:
        return tuple(p for p in self.basis_paths if not p.is_trivial)

    @cached_property
    def _paths_ending(self) -> dict[str, tuple[Path, ...]]:
        d = defaultdict(list)
        for p in self.basis_paths:
            d[p.target].append(p)
        return {v: tuple(d[v]) for v in self.vertices}

    @cached_property
    def _paths_between(self) -> dict[tuple[str, str], tuple[Path, ...]]:
        d = defaultdict(list)
        for p in self.basis_paths:
            d[(p.source, p.target)].append(p)
        return {k: tuple(v) for k, v in d.items()}

    def paths_ending_at(self, v) -> tuple[Path, ...]:
        """k-basis of the projective ``P_v``."""
        return self._paths_ending[str(v)]

    def paths_between(self, s, t) -> tuple[Path, ...]:
        """k-basis of ``Hom(P_s, P_t)``: paths from ``s`` to ``t``."""
        return self._paths_between.get((str(s), str(t)), ())

    def dim_projective(self, v) -> int:
        return len(self._paths_ending[str(v)])

    # ---------------------------------------------------------- maximal paths
    def left_extensions(self, p: Path) -> list[Arrow]:
        out = []
        for a in self.in_arrows.get(p.source, ()):
            seq = (a.name,) + p.arrows
            if not self._starts_with_relation(seq):
                out.append(a)
        return out

    def right_extensions(self, p: Path) -> list[Arrow]:
        out = []
        for a in self.out_arrows.get(p.target, ()):
            if not self._ends_with_relation(p.arrows + (a.name,)):
                out.append(a)
        return out

    @cached_property
    def maximal_paths(self) -> tuple[Path, ...]:
        return tuple(p for p in self.nontrivial_paths
                     if not self.left_extensions(p) and not self.right_extensions(p))

    def left_completion(self, w: Path) -> Path:
        """The longest ``u`` with ``uw`` a basis path, built arrow by arrow."""
        if w.is_trivial:
            raise ValidationError("left completion needs a nontrivial path")
        cur = w
        while True:
            ext = self.left_extensions(cur)
            if len(ext) > 1:
                raise AmbiguityError(
                    f"left completion of {w} is ambiguous: {', '.join(a.name for a in ext)}"
                    f" extend {cur}")
            if not ext:
                break
            a = ext[0]
            cur = Path(a.source, cur.target, (a.name,) + cur.arrows)
        k = len(cur.arrows) - len(w.arrows)
        if k == 0:
            return self.trivial(w.source)
        return Path(cur.source, w.source, cur.arrows[:k])

    def right_completion(self, w: Path) -> Path:
        cur = w
        while True:
            ext = self.right_extensions(cur)
            if len(ext) > 1:
                raise AmbiguityError(
                    f"right completion of {w} is ambiguous: {', '.join(a.name for a in ext)}")
            if not ext:
                break
            a = ext[0]
            cur = Path(cur.source, a.target, cur.arrows + (a.name,))
        return cur

    def completion(self, w: Path) -> tuple[int, Path]:
        """Index in ``maximal_paths`` of the maximal path through ``w`` and ``û``."""
        u = self.left_completion(w)
        full = self.right_completion(Path(u.source, w.target, u.arrows + w.arrows))
        idx = self.maximal_paths.index(full)
        return idx, u

    # ------------------------------------------------------------------- misc
    def describe(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "arrows": [{"name": a.name, "source": a.source, "target": a.target}
                       for a in self.arrows],
            "relations": [list(r) for r in self.relations],
        }

    def __repr__(self) -> str:
        return (f"BoundQuiver({len(self.vertices)} vertices, {len(self.arrows)} arrows, "
                f"{len(self.relations)} relations)")


def load_bound_quiver(description) -> BoundQuiver:
    """Build a validated quiver from a dict, a JSON string or a file path."""
    if isinstance(description, BoundQuiver):
        return description
    if isinstance(description, str):
        text = description
        if not text.lstrip().startswith("{"):
            try:
                with open(text, encoding="utf-8") as fh:
                    text = fh.read()
            except OSError as exc:
                raise ParseError(f"cannot read quiver file {description}: {exc}") from exc
        try:
            description = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"quiver description is not valid JSON: {exc}") from exc
    if not isinstance(description, dict):
        raise ParseError("quiver description must be an object")
    try:
        vertices = description["vertices"]
        arrows = description["arrows"]
        relations = description.get("relations", [])
        for a in arrows:
            if not isinstance(a, dict) or not {"name", "source", "target"} <= set(a):
                raise ParseError(f"malformed arrow entry {a!r}")
        if not all(isinstance(r, list) for r in relations):
            raise ParseError("relations must be lists of arrow names")
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed quiver description: {exc}") from exc
    return BoundQuiver(vertices, arrows, relations)


def enumerate_basis_paths(A: BoundQuiver) -> tuple[Path, ...]:
    return A.basis_paths


def maximal_paths(A: BoundQuiver) -> tuple[Path, ...]:
    return A.maximal_paths


def left_completion(A: BoundQuiver, w: Path) -> Path:
    return A.left_completion(w)


def unique_maximal_arrow_property(A: BoundQuiver):
    """``(True, None)`` or ``(False, (arrow, first maximal path, second))``."""
    holders = defaultdict(list)
    for m in A.maximal_paths:
        for x in dict.fromkeys(m.arrows):
            holders[x].append(m)
    for a in A.arrows:
        ms = holders.get(a.name, [])
        if len(ms) != 1:
            if len(ms) >= 2:
                return False, (a.name, ms[0], ms[1])
            return False, (a.name, None, None)
    return True, None


def _in_ideal(A: BoundQuiver, a: Arrow, b: Arrow) -> bool:
    return (a.name, b.name) in A._relset


def classify(A: BoundQuiver) -> ClassificationReport:
    violations = []
    sb = True
    for v in A.vertices:
        if len(A.in_arrows.get(v, ())) > 2:
            sb = False
            violations.append(f"vertex {v} has in-degree {len(A.in_arrows[v])} > 2")
        if len(A.out_arrows.get(v, ())) > 2:
            sb = False
            violations.append(f"vertex {v} has out-degree {len(A.out_arrows[v])} > 2")
    continuation = True
    for a in A.arrows:
        nxt = [b.name for b in A.out_arrows.get(a.target, ()) if not _in_ideal(A, a, b)]
        if len(nxt) > 1:
            continuation = False
            violations.append(f"arrow {a.name} continues by {', '.join(nxt)} outside I")
        prv = [c.name for c in A.in_arrows.get(a.source, ()) if not _in_ideal(A, c, a)]
        if len(prv) > 1:
            continuation = False
            violations.append(f"arrow {a.name} is preceded by {', '.join(prv)} outside I")
    special_biserial = sb and continuation
    # every representable ideal is monomial
    string = special_biserial
    quadratic = all(len(r) == 2 for r in A.relations)
    if not quadratic:
        long = [r for r in A.relations if len(r) != 2]
        violations.append("relations of length > 2: " + ", ".join("".join(r) for r in long))
    almost_gentle = quadratic and continuation
    sag = string and almost_gentle
    dual = True
    for a in A.arrows:
        z = [b.name for b in A.out_arrows.get(a.target, ()) if _in_ideal(A, a, b)]
        if len(z) > 1:
            dual = False
            violations.append(f"arrow {a.name} has zero compositions with {', '.join(z)}")
        z = [c.name for c in A.in_arrows.get(a.source, ()) if _in_ideal(A, c, a)]
        if len(z) > 1:
            dual = False
            violations.append(f"arrows {', '.join(z)} compose to zero with {a.name}")
    gentle = sag and dual
    uniq, wit = unique_maximal_arrow_property(A)
    if not uniq:
        violations.append(
            f"arrow {wit[0]} lies in " + (f"maximal paths {wit[1]} and {wit[2]}" if wit[1] else
                                          "no maximal path"))
    return ClassificationReport(special_biserial, string, almost_gentle, sag, gentle, uniq,
                                tuple(violations))


def require_string(A: BoundQuiver, what: str) -> None:
    from .errors import UnsupportedAlgebraError

    if not classify(A).string:
        raise UnsupportedAlgebraError(f"{what} needs a string algebra")


def shared_arrow_pairs(A: BoundQuiver):
    """Pairs of distinct maximal paths with a common arrow."""
    return [(m, n) for m, n in combinations(A.maximal_paths, 2) if set(m.arrows) & set(n.arrows)]
