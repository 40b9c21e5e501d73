"""Acceptance criteria, one test per criterion.

Each test prints a single ``ACCEPTANCE <k> PASS|FAIL: ...`` line (visible
under plain ``pytest -v``) and then asserts the criterion at its stated
tolerance.  Run ``python3 tests/test_acceptance.py`` for the lines alone.
"""

import json
import os
import subprocess
import sys
import time

import pytest

from kminkowski.calculus import build_calculus, d1, d1_tau, verify_calculus_suite
from kminkowski.coaction import build_context, verify_coaction_suite, verify_x_munu_covariance
from kminkowski.engine import Element, coproduct, counit
from kminkowski.hopf import antipode_sides
from kminkowski.ideal_lab import classify, antipode_star_check
from kminkowski.minkowski import Metric, build_minkowski, verify_hopf_minkowski
from kminkowski.scalars import ONE

RESULTS = {}


def record(k, ok, detail, capsys=None):
    line = f"ACCEPTANCE {k} {'PASS' if ok else 'FAIL'}: {detail}"
    RESULTS[k] = line
    if capsys is not None:
        with capsys.disabled():
            print("\n" + line)
    else:
        print(line)
    return ok


def criterion_1():
    t = time.time()
    bad = []
    for n in (2, 3, 4):
        rep = verify_hopf_minkowski(build_minkowski(Metric.minkowski(n)), 3)
        bad += [f"n={n} {c.name}" for c in rep.failures()]
    dt = time.time() - t
    ok = not bad and dt < 60
    return ok, f"M_kappa Hopf laws exact on degree <= 3, n=2,3,4 ({dt:.2f}s)" + (f"; failing {bad}" if bad else "")


def _relation_residues(P, f_a, f_l, zero):
    return [f"{k}{i}" for k, i in P.relations() if not zero(P.relation_image(k, i, f_a, f_l))]


def criterion_2():
    t = time.time()
    parts, ok = [], True
    for n in (2, 3):
        P = build_context(Metric.minkowski(n)).P
        p = P.presentation
        total = len(P.relations())
        d_res = _relation_residues(P, lambda m: coproduct(P.a(m)), lambda m, v: coproduct(P.L(m, v)), lambda e: not e)
        e_res = _relation_residues(P, lambda m: p.scalar(counit(P.a(m))),
                                   lambda m, v: p.scalar(counit(P.L(m, v))), lambda e: not e)
        red = P.ortho_reducer(4)
        s_bad = {"left": [], "right": []}
        for w in p.normal_words(2, 1):
            a = Element(p, {w: ONE})
            eps = p.scalar(counit(a))
            left, right = antipode_sides(a)
            for side, val in (("left", left), ("right", right)):
                if not red.is_zero(val - eps):
                    s_bad[side].append(w)
        nw = len(p.normal_words(2, 1))
        # truncated membership is only sound for positive answers: re-test the misses deeper
        deep = P.ortho_reducer(6)
        rescued = 0
        for w in s_bad["right"]:
            a = Element(p, {w: ONE})
            rescued += deep.is_zero(antipode_sides(a)[1] - p.scalar(counit(a)))
        ok = ok and not d_res and not e_res and not s_bad["left"] and not s_bad["right"]
        parts.append(f"n={n}: Delta exact on {total - len(d_res)}/{total} relations, "
                     f"eps exact on {total - len(e_res)}/{total}, antipode mod O at Lambda-degree 4 on "
                     f"{nw} monomials of degree <= 2: left law {nw - len(s_bad['left'])}/{nw}, "
                     f"right law {nw - len(s_bad['right'])}/{nw}"
                     + (f" (first miss {p.format_word(s_bad['right'][0])}; {rescued}/{len(s_bad['right'])} misses vanish at "
                        f"Lambda-degree 6)" if s_bad["right"] else ""))
    dt = time.time() - t
    ok = ok and dt < 120
    return ok, "; ".join(parts) + f" ({dt:.1f}s)"


def criterion_3():
    bad = []
    for n in (2, 3):
        rep = verify_coaction_suite(build_context(Metric.minkowski(n)), 3, 50, 0)
        bad += [f"n={n} {c.name}" for c in rep.failures()]
    return not bad, "coaction axioms, lift, projection and self-coaction checks, 50 samples, n=2,3" + (
        f"; failing {bad}" if bad else "")


def criterion_4():
    bad = []
    for n in (2, 3):
        rep = verify_x_munu_covariance(build_context(Metric.minkowski(n)))
        bad += [f"n={n} {c.name}" for c in rep.failures()]
    return not bad, "quadratic tensor and trace covariance mod orthogonality, n=2,3" + (
        f"; failing {bad}" if bad else "")


CALCULUS_LISTED = ("calculus.bimodule-jacobi", "calculus.d-relations", "calculus.d-squared", "calculus.sigma",
                   "calculus.sigma-covariance", "calculus.star-rules", "calculus.star-involution", "calculus.star-d")


def criterion_5():
    bad, notexact = [], []
    for n in (2, 3, 4):
        rep = verify_calculus_suite(build_calculus(Metric.minkowski(n)), 4, 30, 0)
        checks = {c.name: c for c in rep.checks}
        for name in CALCULUS_LISTED:
            c = checks.get(name)
            if c is None or not c.ok:
                bad.append(f"n={n} {name}")
            elif "modulo" in c.detail:
                notexact.append(f"n={n} {name}")
    ok = not bad and not notexact
    return ok, "Jacobi, d of relations, d^2=0 to degree 4, sigma and its covariance, hermiticity, all exact, n=2,3,4" + (
        f"; failing {bad + notexact}" if not ok else "")


def criterion_6():
    t = time.time()
    out, ok = [], True
    for n in (2, 3, 4):
        rep = classify(build_context(Metric.minkowski(n)), 4)
        d = {c.name: c.detail for c in rep.checks}
        ok = ok and rep.ok
        out.append(f"n={n} traceless {d['classify.traceless.quotient-dim'].split('quotient = ')[1]}"
                   f"/seed {d['classify.seed[x0].quotient-dim'].split('= ')[1]}"
                   f"/full {d['classify.full-tensor.quotient-dim'].split('= ')[1]}")
        if not rep.ok:
            out.append(f"failing {[c.name for c in rep.failures()]}")
    dt = time.time() - t
    ok = ok and dt < 300
    return ok, "quotient dims " + ", ".join(out) + f" ({dt:.1f}s)"


def criterion_7():
    bad = []
    for n in (2, 3, 4):
        good, which = antipode_star_check(build_minkowski(Metric.minkowski(n)), 3)
        if not good:
            bad.append(f"n={n} {which[0]}")
    return not bad, "S(q)* in the traceless right ideal at degree 3, n=2,3,4" + (f"; failing {bad}" if bad else "")


def criterion_8():
    ok, notes = True, []
    for n in (2, 3, 4):
        cal = build_calculus(Metric.minkowski(n))
        ok = ok and not d1_tau(cal) and all(not d1(cal.t(mu)) for mu in range(n))
        rep = verify_calculus_suite(cal, 2, 5, 0)
        notes += [c for c in rep.checks if c.name == "calculus.d-tau.printed-formula"]
    ok = ok and len(notes) == 3 and all(c.status == "pass" and c.detail.startswith("note:") for c in notes)
    return ok, "d tau = 0 and d tau^mu = 0 for n=2,3,4; printed-formula discrepancy reported as a note"


def criterion_9():
    cmd = [sys.executable, "-m", "kminkowski", "full-suite", "--n", "3", "--seed", "7", "--format", "json"]
    procs = [subprocess.Popen(cmd, stdout=subprocess.PIPE, env=dict(os.environ)) for _ in range(2)]
    outs = [p.communicate()[0] for p in procs]
    codes = [p.returncode for p in procs]
    same = outs[0] == outs[1] and bool(outs[0])
    n_checks = len(json.loads(outs[0])["checks"]) if outs[0] else 0
    return same and codes == [0, 0], f"two full-suite runs (n=3, seed 7): byte-identical={same}, exit codes {codes}, {n_checks} checks"


CRITERIA = {k: globals()[f"criterion_{k}"] for k in range(1, 10)}


@pytest.mark.parametrize("k", list(CRITERIA))
def test_criterion(k, capsys):
    ok, detail = CRITERIA[k]()
    assert record(k, ok, detail, capsys), RESULTS[k]


if __name__ == "__main__":
    fails = 0
    for k, fn in CRITERIA.items():
        ok, detail = fn()
        fails += not record(k, ok, detail)
    sys.exit(1 if fails else 0)
