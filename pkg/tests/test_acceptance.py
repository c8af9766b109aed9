"""Acceptance criteria 1-11.  Each test records one PASS/FAIL line.

Run ``python tests/test_acceptance.py`` for the lines alone; under pytest they
appear in the terminal summary.
"""
import contextlib
import io
import random
import sys
from math import comb
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from zipstrata import linalg as la  # noqa: E402
from zipstrata.bt1 import Display1, classify_bt1, display_of_fzip, fzip_of_display  # noqa: E402
from zipstrata.classical import validate_classical  # noqa: E402
from zipstrata.cli import run  # noqa: E402
from zipstrata.errors import ValidationError  # noqa: E402
from zipstrata.fields import gf  # noqa: E402
from zipstrata.fzip import (FZip, classify_bruteforce, dual, isomorphic_over, make_tate,  # noqa: E402
                            power, representatives, stabilizer_lie_dim, tensor)
from zipstrata.strata import (build_poset, enumerate_extended, precedes, precedes_split,  # noqa: E402
                              relation_matrix, theta_orbits)
from zipstrata.weyl import compose  # noqa: E402
from zipstrata.zipdatum import CocharacterType, GroupFamily, build_zip_datum  # noqa: E402

import oracles  # noqa: E402
from catalog import catalog  # noqa: E402

RESULTS: dict[int, tuple[str, bool]] = {}
F2, F3, F4 = gf(2), gf(3), gf(2, 2)


def record(num, name, ok):
    RESULTS[num] = (name, ok)
    print(f"{'PASS' if ok else 'FAIL'} criterion {num}: {name}")
    assert ok


def gl(nbar):
    t = CocharacterType.of({i: m for i, m in nbar.items() if m})
    return build_zip_datum(GroupFamily("GL", t.rank), t)


def rand_invertible(rnd, F, n):
    while True:
        A = tuple(tuple(rnd.randrange(F.q) for _ in range(n)) for _ in range(n))
        if la.is_invertible(F, A):
            return A


def rand_zip(rnd, F, n):
    degs = [rnd.choice((-1, 0, 1, 2)) for _ in range(n)]
    return FZip.from_adapted(F, None, degs, la.columns(rand_invertible(rnd, F, n)),
                             la.columns(rand_invertible(rnd, F, n)))


def criterion_1():
    for n in range(1, 7):
        for d in range(n + 1):
            datum = gl({0: d, 1: n - d})
            W = datum.weyl
            index = W.order() // len(oracles.parabolic(W, datum.I))
            lengths = {w: W.length(w) for w in W.elements()}
            direct = [w for w in W.elements()
                      if all(lengths[compose(W.s(i), w)] > lengths[w] for i in datum.I)]
            if not len(build_poset(datum)) == index == len(direct) == comb(n, d):
                return False
    for g in range(1, 5):
        t = CocharacterType.of({0: g, 1: g}, 1)
        if len(build_poset(build_zip_datum(GroupFamily("CSp", 2 * g), t))) != 2**g:
            return False
    return True


def _entries():
    return list(catalog(4))


def criterion_2_and_3():
    order_ok = bruhat_ok = True
    for _, _, d in _entries():
        W = d.weyl
        ext = enumerate_extended(d)
        orbit = {a: k for k, o in enumerate(theta_orbits(d, ext)) for a in o}
        rel = relation_matrix(d, ext)
        n = len(ext)
        for i in range(n):
            order_ok &= rel[i][i]
            for j in range(n):
                if rel[i][j]:
                    # antisymmetric up to the Θ-orbits that index the strata
                    order_ok &= not rel[j][i] or orbit[ext[i]] == orbit[ext[j]]
                    order_ok &= all(rel[i][k] for k in range(n) if rel[j][k])
                a, b = ext[i], ext[j]
                if a[1] == b[1] and W.bruhat_leq(a[0], b[0]):
                    bruhat_ok &= rel[i][j]
        order_ok &= all(rel[i][j] == precedes(d, ext[i], ext[j])
                        for i in range(0, n, 7) for j in range(0, n, 5))
    return order_ok, bruhat_ok


_C23 = {}


def _c23():
    if not _C23:
        _C23["v"] = criterion_2_and_3()
    return _C23["v"]


def criterion_4():
    count = 0
    for _, _, d in _entries():
        W = d.weyl
        w0 = W.longest_element()
        if W.frob is not None or not d.connected:
            continue
        if any(compose(w0, s) != compose(s, w0) for s in W.simples):
            continue
        ext = enumerate_extended(d)
        count += 1
        if any(precedes(d, a, b) != precedes_split(d, a, b) for a in ext for b in ext):
            return False
    return count > 0


def criterion_5():
    for nbar in ({0: 1, 1: 1}, {0: 2, 1: 1}):
        d = gl(nbar)
        W = d.weyl
        lengths = {w: W.length(w) for w in W.elements()}
        P = build_poset(d)
        for F in (F2, F3):
            reps = representatives(d, F)
            for s in P.strata:
                w = s.rep[0]
                v = oracles.double_coset_min(W, d.I, d.J, w, lengths)
                lie = stabilizer_lie_dim(nbar, reps[w], F)
                if lie != d.dim - lengths[v] or lie != s.aut_lie_dim:
                    return False
                if (lie == s.aut_dim) != (v == w) or s.aut_smooth != (v == w):
                    return False
    return True


def criterion_6():
    for nbar, order, classes in (({0: 1, 1: 1}, 6, 2), ({0: 2, 1: 1}, 168, 3)):
        c = classify_bruteforce(nbar, 2, 4)
        gs = [g for g, _, _ in c.rows]
        if len(gs) != order or len(set(gs)) != order:
            return False
        if len(c.classes()) != classes or classes != len(gl(nbar).weyl.min_coset_reps(gl(nbar).I)):
            return False
    return True


def criterion_7():
    def iso(a, b):
        return isomorphic_over(a, b, 1) is not None

    for F in (F2, F4):
        for d in range(-3, 4):
            if not iso(dual(make_tate(F, d)), make_tate(F, -d)):
                return False
            for e in range(-3, 4):
                if not iso(tensor(make_tate(F, d), make_tate(F, e)), make_tate(F, d + e)):
                    return False
    rnd = random.Random(2024)
    for n in range(1, 5):
        M = rand_zip(rnd, F2, n)
        for m in range(1, n + 3):
            if power(M, m, "symmetric").n != comb(n + m - 1, m):
                return False
            if m <= n and power(M, m, "alternating").n != comb(n, m):
                return False
            if m > n:
                # C(n, m) = 0: the empty power is refused by name
                try:
                    power(M, m, "alternating")
                    return False
                except ValidationError as exc:
                    if "rank 0" not in str(exc):
                        return False
    for _ in range(100):
        F = rnd.choice((F2, F4))
        M = rand_zip(rnd, F, rnd.randint(1, 4))
        if not iso(dual(dual(M)), M):
            return False
    return True


def criterion_8():
    for n in range(11):
        for d in range(n + 1):
            if len(classify_bt1(n, d)) != comb(n, d):
                return False
    if sorted(c.aut_dim for c in classify_bt1(2, 1)) != [0, 1]:
        return False
    if sorted(c.aut_dim for c in classify_bt1(3, 1)) != [0, 1, 2]:
        return False
    for n in range(1, 7):
        for d in range(n + 1):
            a = sorted(s.length for s in build_poset(gl({0: d, 1: n - d})).strata)
            if a != sorted(c.length for c in classify_bt1(n, d)):
                return False
    return True


def criterion_9():
    rnd = random.Random(99)
    for _ in range(100):
        F = rnd.choice((F2, F4))
        n = rnd.randint(1, 4)
        d = rnd.randint(0, n)
        D = Display1(F, n, d, rand_invertible(rnd, F, n))
        M = fzip_of_display(D)
        if M.type() != {i: m for i, m in ((0, d), (1, n - d)) if m}:
            return False
        if isomorphic_over(fzip_of_display(display_of_fzip(M)), M, 1) is None:
            return False
    return True


def criterion_10():
    from test_classical import STD, _mutations
    for obj in STD.values():
        validate_classical(obj)
    muts = _mutations()
    if len(muts) < 10:
        return False
    for expected, obj in muts:
        try:
            validate_classical(obj)
            return False
        except ValidationError as exc:
            if expected not in str(exc):
                return False
    for nbar in ({-1: 1, 1: 1}, {-1: 1, 0: 2, 1: 1}, {-1: 2, 1: 2}, {0: 4}, {-2: 1, 0: 2, 2: 1}):
        t = CocharacterType.of(nbar)
        theta = build_zip_datum(GroupFamily("O", t.rank, True), t).theta
        if (len(theta) == 1) != (nbar.get(0, 0) == 0):
            return False
    return True


def criterion_11():
    from test_cli import MATRIX
    for line in MATRIX + ["selftest", "strata --family Sp --type 0:1,1:1"]:
        outs = []
        for _ in range(2):
            out, err = io.StringIO(), io.StringIO()
            with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
                code = run(line.split())
            outs.append((code, out.getvalue(), err.getvalue()))
        if outs[0] != outs[1]:
            return False
    return True


def test_criterion_01_stratum_counts():
    record(1, "stratum counts", criterion_1())


def test_criterion_02_order_axioms():
    record(2, "order axioms", _c23()[0])


def test_criterion_03_bruhat_containment():
    record(3, "Bruhat containment", _c23()[1])


def test_criterion_04_split_shortcut():
    record(4, "split shortcut", criterion_4())


def test_criterion_05_dimension_formulas():
    record(5, "dimension formulas", criterion_5())


def test_criterion_06_bruteforce_classification():
    record(6, "brute-force classification", criterion_6())


def test_criterion_07_category_laws():
    record(7, "F-zip category laws", criterion_7())


def test_criterion_08_bt1_table():
    record(8, "BT1 table", criterion_8())


def test_criterion_09_display_round_trip():
    record(9, "display round trip", criterion_9())


def test_criterion_10_classical_validators():
    record(10, "classical validators", criterion_10())


def test_criterion_11_determinism():
    record(11, "CLI determinism", criterion_11())


if __name__ == "__main__":
    fails = 0
    for name, fn in sorted((k, v) for k, v in globals().items() if k.startswith("test_criterion")):
        try:
            fn()
        except AssertionError:
            fails += 1
    sys.exit(1 if fails else 0)
