"""Acceptance criteria 1-10, one test each, each reporting a PASS/FAIL line.

Criteria 7 and 9 do not hold as stated; they are run in full, report their
failure counts and are marked as strict expected failures.  Companion tests
below them check the corrected statements.
"""
from fractions import Fraction

import pytest

from conftest import ACCEPTANCE_LINES
from oracles import RawQuiver, raw_mu
from sagalg import (IndecPoly, are_isomorphic, band_complex, build_poset, classify,
                    cyclic_arrows_Qc, cyclic_arrows_Qc_star, cyclic_paths_Pac, fixture,
                    functor_F_mor, functor_F_obj, global_dimension, hom_space,
                    is_indecomposable, kernel_structure, resolve, rho, special_set_membership,
                    string_complex, sufficient_infinite_gldim, unique_maximal_arrow_property,
                    y_hom_space, y_isomorphic)
from sagalg.bondarenko import is_y_string, padding_summands, y_string_matrix
from sagalg.complexes import PathCombo, bottom_kernel
from sagalg.fixtures import DESCRIPTIONS
from sagalg.linhom import identity_map
from sagalg.resolutions import (generator_paths, is_periodic_string_complex,
                                periodic_by_bottom_positions)
from sagalg.walks import enumerate_generalized_bands, enumerate_generalized_strings, mu, parse_walk
from test_bondarenko import A1_ORDER, A1_TABLE
from test_linhom import a1_complex

ALL = ["A1", "A2", "A3", "A4", "A5", "A6", "A7", "A8"]


def report(n: int, ok: bool, detail: str = "") -> None:
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'}" + (f" ({detail})" if detail else "")
    ACCEPTANCE_LINES.append(line)
    print(line)


def names(paths):
    return {"".join(p.arrows) for p in paths}


def checks(items):
    """``items`` is a list of (label, bool); returns (all ok, failed labels)."""
    bad = [k for k, v in items if not v]
    return not bad, ", ".join(bad)


# ------------------------------------------------------------------------------ 1
def test_criterion_1_a1_complex_end_to_end():
    A, C = a1_complex()
    rep = classify(A)
    P = build_poset(A, (1, 3))
    F = functor_F_obj(A, C, P)
    lam = Fraction(5, 2)
    phi = {j: {(r, r): PathCombo.single(A.trivial(v), lam) for r, v in enumerate(C.objects(j))}
           for j in C.degrees}
    T = functor_F_mor(A, C, C, phi, P)
    pos = F.positions()
    H = y_hom_space(F, F, block_diagonal=True)
    ok, bad = checks([
        ("classification", rep.sag and not rep.gentle),
        ("maximal paths", names(A.maximal_paths) == {"a", "b", "c"}),
        ("End dimension", hom_space(A, C, C).dimension == 1),
        ("F order", [P.label(e) for e, _ in pos] == A1_ORDER),
        ("F table", F.dense() == A1_TABLE),
        ("F(λ·id)", T == {(p, p): lam for p in pos}),
        ("Y-hom dimension", H.dimension >= 2 and y_hom_space(F, F).dimension >= 2),
    ])
    report(1, ok, bad or f"Y-hom dimension {H.dimension} against End dimension 1")
    assert ok, bad


# ------------------------------------------------------------------------------ 2
def test_criterion_2_a2_string_complex():
    A = fixture("A2")
    C = string_complex(A, parse_walk(A, "a^-1.c.d.(c,b)^-1"))

    def entries(j):
        return {rc: {"".join(p.arrows): x for p, x in e.terms.items()}
                for rc, e in C.diff(j).items()}

    ok, bad = checks([
        ("degrees", C.summands == {-1: ("1",), 0: ("2", "2", "1"), 1: ("3",)}),
        ("∂^-1", entries(-1) == {(0, 0): {"a": 1}, (0, 1): {"c": 1}}),
        ("∂^0", entries(0) == {(1, 0): {"d": 1}, (2, 0): {"cb": 1}}),
    ])
    report(2, ok, bad)
    assert ok, bad


# ------------------------------------------------------------------------------ 3
def test_criterion_3_a3_example():
    A = fixture("A3")
    w = parse_walk(A, "a.b^-1.c")
    C = string_complex(A, w)
    K = bottom_kernel(A, C)
    r = resolve(A, C)
    ok, bad = checks([
        ("Q_c", names(cyclic_arrows_Qc(A)) == {"x"}),
        ("Q_c*", names(cyclic_arrows_Qc_star(A)) == {"x", "d", "c", "b"}),
        ("GSt_c*", special_set_membership(A, w).gst_c_star),
        ("bottom kernel", [names(K.generator_paths(g)) for g in K.generators] == [{"d"}]),
        ("periodic", r.periodic),
        ("cover tail", [s.covers for s in r.steps[-2:]] == [("5",), ("5",)]),
        ("cycle", names(r.cycle) == {"x"}),
        ("gl.dim", global_dimension(A).infinite),
    ])
    report(3, ok, bad)
    assert ok, bad


# ------------------------------------------------------------------------------ 4
def test_criterion_4_a4_example():
    A = fixture("A4")
    r = resolve(A, string_complex(A, parse_walk(A, "bc")))
    kernels = {w: names(generator_paths(kernel_structure(A, A.path(w))))
               for w in ("bc", "a", "c", "ab")}
    states = [{"".join(p.arrows) for ps in s.state for p in ps} for s in r.steps]
    ok, bad = checks([
        ("Pa>0", names(A.nontrivial_paths) == {"a", "b", "c", "ab", "bc"}),
        ("Pa_c", names(cyclic_paths_Pac(A)) == {"a", "bc", "c", "ab"}),
        ("kernels", kernels == {"bc": {"a"}, "a": {"c"}, "c": {"ab"}, "ab": {"c"}}),
        ("periodic", r.periodic and names(r.cycle) == {"c", "ab"}),
        ("states", states[:4] == [{"a"}, {"c"}, {"ab"}, {"c"}]),
        ("gl.dim", global_dimension(A).infinite),
    ])
    report(4, ok, bad)
    assert ok, bad


# ------------------------------------------------------------------------------ 5
def test_criterion_5_maximal_paths():
    A5, A7 = fixture("A5"), fixture("A7")
    um5 = unique_maximal_arrow_property(A5)
    ok, bad = checks([
        ("A5 maximal", names(A5.maximal_paths) == {"ab", "bc"}),
        ("A5 unique-maximal", um5[0] is False and um5[1][0] == "b"),
        ("A7 maximal", names(A7.maximal_paths) == {"bcab"}),
        ("A7 unique-maximal", unique_maximal_arrow_property(A7)[0] is True),
    ])
    report(5, ok, bad)
    assert ok, bad


# ------------------------------------------------------------------------------ 6
def test_criterion_6_a6_example():
    A = fixture("A6")
    g = global_dimension(A)
    ok, bad = checks([
        ("gentle", classify(A).gentle),
        ("gl.dim", not g.infinite and g.value == 2),
        ("cyclic sets", cyclic_arrows_Qc(A) == cyclic_arrows_Qc_star(A) == cyclic_paths_Pac(A) == []),
        ("special sets", sufficient_infinite_gldim(A, 6) == (False, None)),
    ])
    report(6, ok, bad)
    assert ok, bad


# ------------------------------------------------------------------------------ 7
def oracle_disagreements(criterion):
    counts = {}
    for name in ALL:
        A = fixture(name)
        ws = enumerate_generalized_strings(A, 6)
        bad = sum(criterion(A, w) != resolve(A, string_complex(A, w), 64).periodic for w in ws)
        counts[name] = (bad, len(ws))
    return counts


@pytest.mark.xfail(strict=True, reason="the special-set test misses strings whose lowest "
                   "position is interior; 49 of 85 strings on A3 disagree with the resolution")
def test_criterion_7_oracle_equivalence():
    counts = oracle_disagreements(is_periodic_string_complex)
    total = sum(b for b, _ in counts.values())
    detail = "; ".join(f"{n} {b}/{t}" for n, (b, t) in counts.items())
    report(7, total == 0, f"disagreements {detail}")
    assert total == 0


def test_periodicity_by_lowest_positions_agrees_with_resolution():
    counts = oracle_disagreements(periodic_by_bottom_positions)
    assert all(b == 0 for b, _ in counts.values()), counts


def test_criterion_7_failures_are_interior_minima():
    A = fixture("A3")
    for w in enumerate_generalized_strings(A, 6):
        if is_periodic_string_complex(A, w) != resolve(A, string_complex(A, w)).periodic:
            prof = mu(w).values
            assert min(prof) < min(prof[0], prof[-1])
            assert resolve(A, string_complex(A, w)).periodic


# ------------------------------------------------------------------------------ 8
def test_criterion_8_indecomposability():
    decomposable, isos, total = [], 0, 0
    for name in ["A1", "A2", "A3", "A6", "A7", "A8"]:
        A = fixture(name)
        for w in enumerate_generalized_strings(A, 5):
            total += 1
            if not is_indecomposable(A, string_complex(A, w)):
                decomposable.append((name, w))
        Cs = [string_complex(A, w) for w in enumerate_generalized_strings(A, 4)]
        isos += sum(are_isomorphic(A, Cs[i], Cs[j])
                    for i in range(len(Cs)) for j in range(i + 1, len(Cs)))
    A8 = fixture("A8")
    polys = [IndecPoly([-2]), IndecPoly([3]), IndecPoly([1, 0]), IndecPoly([1, 2])]
    for w in enumerate_generalized_bands(A8, 4):
        for f in polys:
            total += 1
            if not is_indecomposable(A8, band_complex(A8, w, f)):
                decomposable.append(("A8", w))
    ok = not decomposable and isos == 0
    report(8, ok, f"{total} complexes, {len(decomposable)} decomposable, "
                  f"{isos} isomorphic pairs")
    assert ok


# ------------------------------------------------------------------------------ 9
def functor_suite(fibre_classes: bool):
    invalid, zero, rho_fail, clash, total = 0, 0, [], 0, 0
    for name in ["A1", "A2", "A3"]:
        A = fixture(name)
        seen = set()
        for w in enumerate_generalized_strings(A, 4):
            total += 1
            prof = mu(w).values
            P = build_poset(A, (min(prof) - 1, max(prof) + 1), fibre_classes)
            C = string_complex(A, w)
            F = functor_F_obj(A, C, P)
            invalid += bool(F.violations())
            zero += F.is_empty
            u = rho(A, w, 0, P)
            key = format_key(P, u)
            clash += key in seen
            seen.add(key)
            good = is_y_string(P, u)
            if good:
                B = y_string_matrix(P, u)
                pad = padding_summands(F, B)
                good = pad is not None and y_isomorphic(F, B.direct_sum(pad))
            if not good:
                rho_fail.append(name)
        for w in enumerate_generalized_bands(A, 4):
            C = band_complex(A, w, IndecPoly([1, 0]))
            invalid += bool(functor_F_obj(A, C).violations())
    return invalid, zero, rho_fail, clash, total


def format_key(P, u):
    return tuple((P.label(x.alpha), P.label(x.beta), x.inverse) for x in u.letters) or \
        (P.label(u.start),)


@pytest.mark.xfail(strict=True, reason="with σ pairing only two of three elements at a "
                   "vertex, ρ(w) is not a Y-string whenever w passes through such a vertex")
def test_criterion_9_functor_suite():
    invalid, zero, rho_fail, clash, total = functor_suite(False)
    per = {n: rho_fail.count(n) for n in ["A1", "A2", "A3"]}
    ok = invalid == 0 and zero == 0 and not rho_fail and clash == 0
    report(9, ok, f"{total} strings; invalid F images {invalid}; F = 0 {zero}; "
                  f"ρ-image mismatches {per}; ρ collisions {clash}")
    assert ok


def test_functor_suite_with_fibre_classes():
    invalid, zero, rho_fail, clash, _ = functor_suite(True)
    assert (invalid, zero, rho_fail, clash) == (0, 0, [], 0)


# ----------------------------------------------------------------------------- 10
def test_criterion_10_structural_invariants():
    problems = []
    for name in ALL:
        A = fixture(name)
        Q = RawQuiver(DESCRIPTIONS[name])
        qc, qcs, pac = (set(f(A)) for f in (cyclic_arrows_Qc, cyclic_arrows_Qc_star,
                                              cyclic_paths_Pac))
        if not qc <= qcs <= pac:
            problems.append(f"{name} containments")
        if classify(A).sag and qcs != pac:
            problems.append(f"{name} Q_c* ≠ Pa_c")
        if {p.arrows for p in pac} != Q.pa_c_by_pruning():
            problems.append(f"{name} Pa_c vs pruning")
        for w in enumerate_generalized_strings(A, 6):
            if list(mu(w).values) != raw_mu([-1 if x.inverse else 1 for x in w.letters]):
                problems.append(f"{name} μ")
        for w in A.nontrivial_paths:
            K = kernel_structure(A, w)
            gens = generator_paths(K)
            summed = sum(Q.module_dim_generated(q.arrows) for q in gens)
            if K.dim != summed or \
                    summed + Q.right_mult_rank(w.arrows) != len(Q.projective_basis(w.source)):
                problems.append(f"{name} rank-nullity {w}")
    report(10, not problems, ", ".join(problems))
    assert not problems
