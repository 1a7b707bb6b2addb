"""Acceptance suite: one check per numbered criterion.

Each check records a PASS/FAIL line; the lines are printed at the end of the
pytest run (see conftest.py) and by ``python tests/test_acceptance.py``.
"""

import random
import time

import pytest

from monadkit.cech import cech_hypercohomology
from monadkit.cohom import cohomology_table, h1_module_generators, ladder_cohomology
from monadkit.complexes import BoundedComplex, dual_monad, sym_part, tensor_total, validate_monad
from monadkit.degeneracy import Everywhere, Witness, fiberwise_full_rank, maximal_minors, projective_empty
from monadkit.graded import bott_h
from monadkit.groebner import from_homog, groebner_basis, is_groebner_basis
from monadkit.invariants import alpha_invariant, chern, dim_g_a1, euler_char, spectrum_of
from monadkit.monadfile import CORPUS, load_corpus
from monadkit.monadlib import (ExtensionData, LocallyFree, ReflexivePoint, TorsionFreeLine, classify_extension,
                               make_modified, make_rank4_charge1, make_split_rank4, nonsplit_rank4,
                               printed_j, solve_symplectic, verify_cert, verify_q)

RESULTS: dict[int, tuple[bool, str]] = {}
TWISTS = range(-6, 5)
SINGULAR = ("nullcorr_line", "rank4_point", "rank4_line")


def record(n, ok, detail):
    RESULTS[n] = (bool(ok), detail)
    print(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
    assert ok, detail


def corpus():
    return {name: load_corpus(name) for name in CORPUS}


def c01_bott():
    t = time.time()
    bad = []
    for d in range(-8, 9):
        got = cech_hypercohomology(BoundedComplex({0: [d]}), 0, method="direct", strategy="exact").as_list()
        if got != [bott_h(d, i) for i in range(4)]:
            bad.append(d)
    dt = time.time() - t
    record(1, not bad and dt < 60, f"O(d), d in [-8,8]: mismatches {bad}, {dt:.1f}s")


def c02_engines():
    bad = []
    for name, m in corpus().items():
        lad = cohomology_table(m, TWISTS, "ladder")
        cech = cohomology_table(m, TWISTS, "cech")
        if lad.rows != cech.rows:
            bad.append(name)
    record(2, not bad, f"{len(CORPUS)} monads x {len(TWISTS)} twists, disagreements {bad}")


def c03_table():
    t = time.time()
    m = make_modified(2, 1, seed=0)
    tab = cohomology_table(m, range(-4, 1), "both")
    want = {3: [0] * 5, 2: [8, 5, 1, 0, 0], 1: [0, 0, 1, 5, 8], 0: [0] * 5}
    dt = time.time() - t
    record(3, tab.rows == want and dt < 120, f"G(2,1) table {tab.rows}, {dt:.1f}s")


def c04_instanton():
    m = load_corpus("instanton5")
    vals = (ladder_cohomology(m, -1)[0], ladder_cohomology(m, -2)[1], ladder_cohomology(m, -2)[2],
            ladder_cohomology(m, -3)[3])
    h1 = ladder_cohomology(m, 0)[1]
    record(4, vals == (0, 0, 0, 0) and h1 == 8, f"vanishings {vals}, h1(E) = {h1}")


def c05_rank4_end():
    parts = []
    ok = True
    for label, m in (("split", make_split_rank4()), ("non-split", nonsplit_rank4())):
        t = time.time()
        end = cech_hypercohomology(tensor_total(m, dual_monad(m)), 0).as_list()
        s2 = cech_hypercohomology(sym_part(m), 0).as_list()
        dt = time.time() - t
        ok &= end[0] == 5 and s2[:3] == [3, 5, 0] and dt < 600
        parts.append(f"{label}: h0(End) {end[0]}, S2 {tuple(s2[:3])}, {dt:.1f}s")
    # one instance certified with exact ranks
    m = make_split_rank4()
    exact = cech_hypercohomology(tensor_total(m, dual_monad(m)), 0, strategy="exact").as_list()
    ok &= exact[0] == 5
    parts.append(f"exact split h0(End) {exact[0]}")
    record(5, ok, "; ".join(parts))


def c06_modified_end():
    t = time.time()
    m = make_modified(2, 1, seed=0)
    h = cech_hypercohomology(tensor_total(m, dual_monad(m)), 0).as_list()
    dt = time.time() - t
    detail = f"a=2: h(End) {h}, {dt:.1f}s"
    t = time.time()
    m3 = make_modified(3, 1, seed=0)
    h3 = cech_hypercohomology(tensor_total(m3, dual_monad(m3)), 0).as_list()
    detail += f"; stretch a=3: h1 {h3[1]} (target 77), {time.time() - t:.1f}s"
    record(6, h[1] == 37 and dt < 1800, detail)


def c07_extensions():
    rng = random.Random(2024)
    mismatches = 0
    kinds = {"free": 0, "point": 0, "line": 0}
    for _ in range(100):
        data = ExtensionData.random(rng)
        v = classify_extension(data)
        fib = fiberwise_full_rank(make_rank4_charge1(data).alpha, "groebner")
        if isinstance(v, LocallyFree):
            kinds["free"] += 1
            good = isinstance(fib, Everywhere)
        elif isinstance(v, ReflexivePoint):
            kinds["point"] += 1
            good = isinstance(fib, Witness) and fib.point == v.point
        else:
            kinds["line"] += 1
            alpha = make_rank4_charge1(data).alpha
            on_line = all(all(alpha[i, 0].evaluate((0, 0, 1, t)) == 0 for i in range(6)) for t in range(-2, 3))
            good = isinstance(fib, Witness) and on_line
        mismatches += not good
    lam = 3
    named = (isinstance(classify_extension(ExtensionData(v3=(1, 0), v4=(0, 1))), LocallyFree),
             classify_extension(ExtensionData(v3=(lam, 0), v4=(1, 0))) == ReflexivePoint((0, 0, 1, -lam)),
             isinstance(classify_extension(ExtensionData()), TorsionFreeLine))
    record(7, mismatches == 0 and all(named),
           f"100 random cases {kinds}, mismatches {mismatches}; named cases {named}")


def c08_symplectic():
    out = []
    ok = True
    for label, m in (("split", make_split_rank4()), ("non-split", nonsplit_rank4())):
        cert = solve_symplectic(m, seed=0)
        good = verify_cert(m, cert).ok
        ok &= good
        out.append(f"{label} verified {good}")
    verdict = verify_q(nonsplit_rank4(), printed_j())
    out.append(f"printed J verdict valid={verdict['valid']}")
    record(8, ok and "valid" in verdict, "; ".join(out))


def c09_chern_euler():
    shapes = []
    for a in (2, 3, 4):
        for k in (1, 2):
            m = make_modified(a, k, seed=0)
            shapes.append(chern(m).as_tuple() == (2, 0, a * a + k, 0))
    bad = []
    for name, m in corpus().items():
        cd = chern(m)
        lad = cohomology_table(m, TWISTS, "ladder")
        cech = cohomology_table(m, TWISTS, "cech")
        for l in TWISTS:
            chi = euler_char(cd, l)
            for tab in (lad, cech):
                h = tab.column(l)
                if h[0] - h[1] + h[2] - h[3] != chi:
                    bad.append((name, l))
    record(9, all(shapes) and not bad, f"G(a,k) Chern ok {sum(shapes)}/6; Euler mismatches {bad}")


def c10_spectrum():
    c = corpus()
    rows = [(spectrum_of(c[n]).values, alpha_invariant(c[n])) for n in ("instanton5", "ein", "g21")]
    want = [((0, 0, 0, 0, 0), 0), ((-2, -1, 0, 1, 2), 1), ((-1, 0, 0, 0, 1), 1)]
    g = c["g21"]
    h1 = (ladder_cohomology(g, -2)[1], ladder_cohomology(g, -3)[1])
    record(10, rows == want and h1 == (1, 0), f"rows {rows}; G(2,1) h1(-2), h1(-3) = {h1}")


def c11_generators():
    c = corpus()
    g, n = h1_module_generators(c["g21"]), h1_module_generators(c["nullcorr"])
    record(11, sorted(g) == [-2, -1] and n == [-1], f"G(2,1) {g}, null correlation {n}")


def c12_dimensions():
    reps = {a: dim_g_a1(a) for a in (2, 3, 4)}
    vals = [reps[a].formula_value for a in (2, 3, 4)]
    ok = (vals == [37, 76, 135] and all(r.identity_holds for r in reps.values())
          and reps[3].epsilon == 1 and reps[3].h1_end_prediction == 77
          and reps[4].comparison == 133 and reps[4].exceeds_comparison)
    record(12, ok, f"dims {vals}, epsilon(3)={reps[3].epsilon}, 135 > {reps[4].comparison}")


def c13_ext():
    m = load_corpus("nullcorr_line")
    h2 = ladder_cohomology(m, -4)[2]
    ext = 2 * h2  # Serre duality: Ext^1(N, O) = H^2(N(-4))^*
    record(13, h2 == 2 and ext == 4, f"h2(N_l(-4)) = {h2}, dim Ext1(N_l, 2O) = {ext}")


def c14_degeneracy():
    c = corpus()
    bad = []
    bases = 0
    for name, m in c.items():
        validated = validate_monad(m, "fiberwise").ok
        for lab, mat in (("alpha", m.alpha), ("beta", m.beta)):
            minors = maximal_minors(mat)
            basis = groebner_basis([from_homog(f) for f in minors])
            bases += 1
            if not is_groebner_basis(basis):
                bad.append((name, lab, "S-pairs"))
            empty = projective_empty(minors)
            if validated and not empty:
                bad.append((name, lab))
        if name in SINGULAR:
            w = fiberwise_full_rank(m.alpha, "groebner")
            if validated or projective_empty(maximal_minors(m.alpha)) or not isinstance(w, Witness) or w.point is None:
                bad.append((name, "witness"))
    record(14, not bad, f"{bases} minor ideals checked, problems {bad}")


CRITERIA = [c01_bott, c02_engines, c03_table, c04_instanton, c05_rank4_end, c06_modified_end, c07_extensions,
            c08_symplectic, c09_chern_euler, c10_spectrum, c11_generators, c12_dimensions, c13_ext,
            c14_degeneracy]


@pytest.mark.parametrize("check", CRITERIA, ids=[f.__name__ for f in CRITERIA])
def test_criterion(check):
    check()


if __name__ == "__main__":
    failed = 0
    for check in CRITERIA:
        try:
            check()
        except AssertionError:
            failed += 1
        except Exception as exc:  # report and keep going
            n = CRITERIA.index(check) + 1
            print(f"criterion {n:2d}: FAIL  {type(exc).__name__}: {exc}")
            failed += 1
    raise SystemExit(1 if failed else 0)
