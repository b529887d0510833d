"""Generalized walks: strings and bands whose letters are basis paths or inverses."""
from __future__ import annotations

from dataclasses import dataclass

from .errors import ParseError, ValidationError
from .quiver import BoundQuiver, Path


@dataclass(frozen=True)
class Letter:
    path: Path
    inverse: bool = False

    @property
    def source(self) -> str:
        return self.path.target if self.inverse else self.path.source

    @property
    def target(self) -> str:
        return self.path.source if self.inverse else self.path.target

    def inverted(self) -> "Letter":
        return Letter(self.path, not self.inverse)

    def __str__(self) -> str:
        return format_letter(self)


@dataclass(frozen=True)
class GenWalk:
    """A generalized walk; ``letters == ()`` means the trivial walk at ``vertex``."""

    letters: tuple[Letter, ...] = ()
    vertex: str | None = None

    def __post_init__(self):
        if not self.letters and self.vertex is None:
            raise ValidationError("a walk needs letters or a vertex")
        for x, y in zip(self.letters, self.letters[1:]):
            if x.target != y.source:
                raise ValidationError(f"letters {x} and {y} are not composable")

    @property
    def is_trivial(self) -> bool:
        return not self.letters

    def __len__(self) -> int:
        return len(self.letters)

    @property
    def source(self) -> str:
        return self.letters[0].source if self.letters else self.vertex

    @property
    def target(self) -> str:
        return self.letters[-1].target if self.letters else self.vertex

    def __str__(self) -> str:
        return format_walk(self)


@dataclass(frozen=True)
class MuProfile:
    values: tuple[int, ...]

    @property
    def minimum(self) -> int:
        return min(self.values)


def trivial_walk(v) -> GenWalk:
    return GenWalk((), str(v))


def walk(*letters: Letter) -> GenWalk:
    return GenWalk(tuple(letters))


def inverse(w: GenWalk) -> GenWalk:
    if w.is_trivial:
        return w
    return GenWalk(tuple(x.inverted() for x in reversed(w.letters)))


def rotation(w: GenWalk, j: int) -> GenWalk:
    """``w[j] = w_{j+1} ... w_n w_1 ... w_j`` for a closed walk."""
    n = len(w)
    j %= n
    return GenWalk(w.letters[j:] + w.letters[:j])


def mu(w: GenWalk) -> MuProfile:
    vals = [0]
    for x in w.letters:
        vals.append(vals[-1] + (-1 if x.inverse else 1))
    return MuProfile(tuple(vals))


# ------------------------------------------------------------------ conditions
def junction_ok(A: BoundQuiver, x: Letter, y: Letter) -> bool:
    """The generalized-string condition between consecutive letters ``x y``."""
    if x.target != y.source:
        return False
    if not x.inverse and not y.inverse:
        return A.multiply(x.path, y.path) is None
    if x.inverse and y.inverse:
        return A.multiply(y.path, x.path) is None
    if not x.inverse:
        # p q^{-1}: no backtracking at the shared target
        return x.path.arrows[-1] != y.path.arrows[-1]
    # p^{-1} q: no backtracking at the shared source
    return x.path.arrows[0] != y.path.arrows[0]


def is_generalized_string(A: BoundQuiver, w: GenWalk) -> bool:
    if w.is_trivial:
        return w.vertex in A.vertex_index
    for x in w.letters:
        if x.path.is_trivial or A.try_path(x.path.arrows) != x.path:
            return False
    return all(junction_ok(A, x, y) for x, y in zip(w.letters, w.letters[1:]))


def is_string(A: BoundQuiver, w: GenWalk) -> bool:
    """Ordinary string condition for walks whose letters are single arrows."""
    if w.is_trivial:
        return True
    for x in w.letters:
        if x.path.length != 1:
            raise ValidationError(f"letter {x} is not a single arrow")
    ls = w.letters
    for x, y in zip(ls, ls[1:]):
        if x.path == y.path and x.inverse != y.inverse:
            return False
    run: list[str] = []
    run_inv = None
    for x in ls + (None,):
        if x is not None and x.inverse == run_inv:
            run.append(x.path.arrows[0])
            continue
        if run:
            seq = tuple(reversed(run)) if run_inv else tuple(run)
            if A.contains_relation(seq):
                return False
        if x is not None:
            run, run_inv = [x.path.arrows[0]], x.inverse
    return True


def is_primitive(w: GenWalk) -> bool:
    n = len(w)
    for d in range(1, n):
        if n % d == 0 and all(w.letters[i] == w.letters[i % d] for i in range(n)):
            return False
    return True


def is_generalized_band(A: BoundQuiver, w: GenWalk) -> bool:
    if w.is_trivial or w.source != w.target:
        return False
    if not is_generalized_string(A, w):
        return False
    if not junction_ok(A, w.letters[-1], w.letters[0]):
        return False
    if mu(w).values[-1] != 0:
        return False
    return is_primitive(w)


# --------------------------------------------------------------- canonical forms
def letter_key(A: BoundQuiver, x: Letter):
    return (A.key(x.path), x.inverse)


def walk_key(A: BoundQuiver, w: GenWalk):
    if w.is_trivial:
        return (0, A.vertex_index[w.vertex])
    return (len(w), tuple(letter_key(A, x) for x in w.letters))


def canonical_string(A: BoundQuiver, w: GenWalk) -> GenWalk:
    if w.is_trivial:
        return w
    v = inverse(w)
    return min(w, v, key=lambda z: walk_key(A, z))


def canonical_band(A: BoundQuiver, w: GenWalk) -> GenWalk:
    cands = []
    for base in (w, inverse(w)):
        cands.extend(rotation(base, j) for j in range(len(base)))
    return min(cands, key=lambda z: walk_key(A, z))


# ------------------------------------------------------------------ enumeration
def _letters(A: BoundQuiver):
    out: dict[str, list[Letter]] = {v: [] for v in A.vertices}
    for p in A.nontrivial_paths:
        for inv in (False, True):
            x = Letter(p, inv)
            out[x.source].append(x)
    return out


def _walks(A: BoundQuiver, max_letters: int):
    by_source = _letters(A)
    if max_letters < 1:
        return
    stack = [(x,) for v in A.vertices for x in by_source[v]]
    while stack:
        ls = stack.pop()
        yield ls
        if len(ls) < max_letters:
            last = ls[-1]
            for y in by_source[last.target]:
                if junction_ok(A, last, y):
                    stack.append(ls + (y,))


def enumerate_generalized_strings(A: BoundQuiver, max_letters: int) -> list[GenWalk]:
    if max_letters < 0:
        raise ValidationError("max_letters must be non-negative")
    found = {}
    for ls in _walks(A, max_letters):
        w = canonical_string(A, GenWalk(ls))
        found[w] = None
    out = sorted(found, key=lambda z: walk_key(A, z))
    return [trivial_walk(v) for v in A.vertices] + out


def enumerate_generalized_bands(A: BoundQuiver, max_letters: int) -> list[GenWalk]:
    found = {}
    for ls in _walks(A, max_letters):
        w = GenWalk(ls)
        if w.source == w.target and is_generalized_band(A, w):
            found[canonical_band(A, w)] = None
    return sorted(found, key=lambda z: walk_key(A, z))


# ---------------------------------------------------------------------- grammar
def format_path_letter(p: Path) -> str:
    if len(p.arrows) == 1:
        return p.arrows[0]
    return "(" + ",".join(p.arrows) + ")"


def format_letter(x: Letter) -> str:
    return format_path_letter(x.path) + ("^-1" if x.inverse else "")


def format_walk(w: GenWalk) -> str:
    if w.is_trivial:
        return f"e({w.vertex})"
    return ".".join(format_letter(x) for x in w.letters)


def _parse_pathseq(A: BoundQuiver, tok: str) -> Path:
    if tok.startswith("("):
        if not tok.endswith(")"):
            raise ParseError(f"unbalanced parenthesis in {tok!r}")
        names = [s.strip() for s in tok[1:-1].split(",")]
    elif tok in A.arrow:
        names = [tok]
    elif tok and all(c in A.arrow for c in tok):
        # juxtaposed one-character arrow names, e.g. "bc"
        names = list(tok)
    else:
        raise ParseError(f"unknown arrow {tok!r}")
    if not names or any(not n for n in names):
        raise ParseError(f"empty arrow name in {tok!r}")
    for n in names:
        if n not in A.arrow:
            raise ParseError(f"unknown arrow {n!r}")
    try:
        p = A.try_path(names)
    except ValidationError as exc:
        raise ParseError(str(exc)) from exc
    if p is None:
        raise ParseError(f"path {''.join(names)} lies in the ideal")
    return p


def parse_walk(A: BoundQuiver, text: str) -> GenWalk:
    """Parse ``letter ('.' letter)*`` with ``letter := pathseq ['^-1']``; ``e(v)`` is trivial."""
    text = text.strip()
    if not text:
        raise ParseError("empty walk")
    if text.startswith("e(") and text.endswith(")") and text[2:-1] in A.vertex_index:
        return trivial_walk(text[2:-1])
    letters = []
    for tok in text.split("."):
        tok = tok.strip()
        inv = tok.endswith("^-1")
        if inv:
            tok = tok[:-3].strip()
        if "^" in tok:
            raise ParseError(f"bad exponent in {tok!r}")
        letters.append(Letter(_parse_pathseq(A, tok), inv))
    try:
        return GenWalk(tuple(letters))
    except ValidationError as exc:
        raise ParseError(str(exc)) from exc
