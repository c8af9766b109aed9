"""Small-rank invariant suite behind ``zipstrata selftest``."""
from __future__ import annotations

from math import comb

from .bt1 import classify_bt1
from .fields import gf
from .fzip import (classify_bruteforce, dual, isomorphic_over, make_tate, representatives,
                   stabilizer_lie_dim, tensor)
from .strata import build_poset, enumerate_extended, precedes, precedes_split
from .zipdatum import CocharacterType, GroupFamily, build_zip_datum


def _datum(name, nbar, multiplier=None, odd=False):
    t = CocharacterType.of(nbar, multiplier)
    return build_zip_datum(GroupFamily(name, t.rank, odd), t)


def check_gl_counts() -> bool:
    return all(len(build_poset(_datum("GL", {0: d, 1: n - d}))) == comb(n, d)
               for n in range(1, 5) for d in range(n + 1))


def check_siegel_counts() -> bool:
    return all(len(build_poset(_datum("CSp", {0: g, 1: g}))) == 2**g for g in range(1, 4))


def _small_catalog():
    yield _datum("GL", {0: 2, 1: 1})
    yield _datum("GL", {0: 2, 1: 2})
    yield _datum("Sp", {-1: 2, 1: 2})
    yield _datum("O", {-1: 1, 0: 2, 1: 1}, odd=True)
    yield _datum("U", {0: 2, 1: 1})


def check_order_and_bruhat() -> bool:
    for d in _small_catalog():
        build_poset(d)  # raises on a failed order axiom
        W = d.weyl
        elems = enumerate_extended(d)
        for a in elems:
            for b in elems:
                if a[1] == b[1] and W.bruhat_leq(a[0], b[0]) and not precedes(d, a, b):
                    return False
    return True


def check_split_shortcut() -> bool:
    for d in (_datum("GL", {0: 2, 1: 1}), _datum("Sp", {-1: 2, 1: 2})):
        elems = enumerate_extended(d)
        for a in elems:
            for b in elems:
                if precedes(d, a, b) != precedes_split(d, a, b):
                    return False
    return True


def check_lie_dims() -> bool:
    F = gf(2)
    for nbar in ({0: 1, 1: 1}, {0: 2, 1: 1}):
        d = _datum("GL", nbar)
        P = build_poset(d)
        reps = representatives(d, F)
        for s in P.strata:
            if stabilizer_lie_dim(nbar, reps[s.rep[0]], F) != s.aut_lie_dim:
                return False
    return True


def check_classification() -> bool:
    return len(classify_bruteforce({0: 1, 1: 1}, 2, 4).classes()) == 2


def check_bt1() -> bool:
    return all(len(classify_bt1(n, d)) == comb(n, d) for n in range(7) for d in range(n + 1))


def check_tate() -> bool:
    F = gf(2)
    one = make_tate(F, 1)
    return (isomorphic_over(tensor(one, make_tate(F, 2)), make_tate(F, 3)) is not None
            and isomorphic_over(dual(one), make_tate(F, -1)) is not None)


CHECKS = [
    ("gl-stratum-counts", check_gl_counts),
    ("siegel-stratum-counts", check_siegel_counts),
    ("order-axioms-and-bruhat-containment", check_order_and_bruhat),
    ("split-shortcut", check_split_shortcut),
    ("stabilizer-lie-dims", check_lie_dims),
    ("bruteforce-classification", check_classification),
    ("bt1-counts", check_bt1),
    ("tate-laws", check_tate),
]


def run_checks() -> tuple[list[tuple[str, bool]], bool]:
    results = []
    for name, fn in CHECKS:
        try:
            ok = bool(fn())
        except Exception:  # a crashing check counts as a failure
            ok = False
        results.append((name, ok))
    return results, all(ok for _, ok in results)
