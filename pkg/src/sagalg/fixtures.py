"""Small bound quivers used by the tests, the acceptance suite and the CLI."""
from __future__ import annotations

from .quiver import BoundQuiver


def _q(vertices, arrows, relations):
    return {
        "vertices": list(vertices),
        "arrows": [{"name": n, "source": s, "target": t} for n, s, t in arrows],
        "relations": [list(r) for r in relations],
    }


DESCRIPTIONS = {
    # 1 -a-> 2, b,c: 2 -> 3, ab = ac = 0
    "A1": _q("123", [("a", "1", "2"), ("b", "2", "3"), ("c", "2", "3")],
             [("a", "b"), ("a", "c")]),
    # a,c: 1 -> 2, b,d: 2 -> 3, ab = cd = 0
    "A2": _q("123", [("a", "1", "2"), ("c", "1", "2"), ("b", "2", "3"), ("d", "2", "3")],
             [("a", "b"), ("c", "d")]),
    "A3": _q("12345", [("a", "1", "2"), ("b", "3", "2"), ("c", "3", "4"), ("d", "5", "3"),
                       ("x", "5", "5")],
             [("d", "b"), ("d", "c"), ("x", "x"), ("x", "d")]),
    "A4": _q("123", [("a", "1", "2"), ("b", "2", "3"), ("c", "3", "1")],
             [("c", "a"), ("a", "b", "c")]),
    "A5": _q("1234", [("a", "1", "2"), ("b", "2", "3"), ("c", "3", "4")],
             [("a", "b", "c")]),
    "A6": _q("123", [("a", "1", "2"), ("b", "2", "3"), ("c", "1", "3")], [("a", "b")]),
    "A7": _q("123", [("a", "1", "2"), ("b", "2", "3"), ("c", "3", "1")], [("a", "b", "c")]),
    # Kronecker quiver
    "A8": _q("12", [("a", "1", "2"), ("b", "1", "2")], []),
    # string algebras with unique maximal paths through each arrow
    "U2": _q("123456", [("a", "1", "2"), ("b", "2", "3"), ("c", "3", "1"), ("d", "2", "4"),
                        ("a'", "4", "5"), ("b'", "5", "6"), ("c'", "6", "4")],
             [("a", "b", "c"), ("a", "d"), ("d", "a'"), ("a'", "b'", "c'")]),
    "U3": _q("1234", [("a", "1", "2"), ("b", "2", "3"), ("d", "2", "3"), ("c", "3", "1"),
                      ("e", "3", "4"), ("f", "4", "2")],
             [("a", "b", "c"), ("d", "e", "f"), ("b", "e"), ("d", "c"), ("a", "d"),
              ("f", "b")]),
}

FIXTURE_NAMES = tuple(DESCRIPTIONS)


def fixture(name: str) -> BoundQuiver:
    try:
        d = DESCRIPTIONS[name]
    except KeyError:
        raise KeyError(f"unknown fixture {name}; known: {', '.join(FIXTURE_NAMES)}") from None
    return BoundQuiver(d["vertices"], d["arrows"], d["relations"])
