"""Truncated Barsotti-Tate groups of level 1: classes, displays and duality.

A class of height n and dimension d is a permutation w of {1..n} whose
inverse increases on {1..d} and on {d+1..n}.  Its length is the number of
inversions and its automorphism group has dimension d(n-d) - length.

A level-1 display in normal form is P = T ⊕ L with T = span(e_1..e_d) and
L = span(e_{d+1}..e_n), plus an invertible Φ whose columns are the images
of the basis under the σ-linear structure maps.  Its F-zip has T in degree
0, L in degree 1 and φ(e_a) = Φ e_a.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from math import comb

from . import linalg as la
from .errors import ResourceError, ValidationError
from .fields import FqField
from .fzip import FZip, dual, make_tate, tensor

BT1_GUARD = 12


@dataclass(frozen=True)
class BT1Class:
    n: int
    d: int
    w: tuple[int, ...]  # one-line notation, 1-based
    length: int
    aut_dim: int

    @property
    def codim(self) -> int:
        return self.aut_dim

    def weyl_element(self) -> tuple[int, ...]:
        """The element w₀ w w₀ of ᴵW for the GL(n) type {0: d, 1: n-d}."""
        n = self.n
        return tuple(n + 1 - self.w[n - 1 - i] for i in range(n))


def inversions(w) -> int:
    return sum(1 for i, j in combinations(range(len(w)), 2) if w[i] > w[j])


def classify_bt1(n: int, d: int, guard: int = BT1_GUARD) -> list[BT1Class]:
    if not 0 <= d <= n:
        raise ValidationError("need 0 ≤ d ≤ n")
    if n > guard:
        raise ResourceError(f"height {n} exceeds guard {guard} ({comb(n, d)} classes)")
    out = []
    for pos in combinations(range(1, n + 1), d):
        # w⁻¹ sends 1..d to pos and d+1..n to the rest, both increasing
        rest = [k for k in range(1, n + 1) if k not in pos]
        winv = list(pos) + rest
        w = [0] * n
        for i, k in enumerate(winv, start=1):
            w[k - 1] = i
        ln = inversions(w)
        out.append(BT1Class(n, d, tuple(w), ln, d * (n - d) - ln))
    out.sort(key=lambda c: (c.length, c.w))
    return out


def emit_bt1(classes: list[BT1Class], fmt: str = "tsv") -> str:
    if fmt == "json":
        doc = [{"w": list(c.w), "length": c.length, "aut_dim": c.aut_dim, "codim": c.codim}
               for c in classes]
        return json.dumps(doc, indent=2) + "\n"
    if fmt == "tsv":
        lines = ["w\tlength\taut_dim\tcodim"]
        for c in classes:
            lines.append(f"{','.join(map(str, c.w))}\t{c.length}\t{c.aut_dim}\t{c.codim}")
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


@dataclass(frozen=True)
class Display1:
    field: FqField
    n: int
    d: int
    Phi: la.Matrix
    q: int | None = None

    def __post_init__(self):
        if self.q is None:
            object.__setattr__(self, "q", self.field.p)
        check_display(self)


def check_display(D: Display1) -> None:
    """Shape checks and the display axiom in normal form.

    In normal form the axiom says F(T) and F₁(L) together span P, which is
    the invertibility of Φ.
    """
    if not 0 <= D.d <= D.n:
        raise ValidationError("need 0 ≤ d ≤ n")
    if len(D.Phi) != D.n or any(len(r) != D.n for r in D.Phi):
        raise ValidationError("Φ must be n×n")
    if any(not 0 <= a < D.field.q for r in D.Phi for a in r):
        raise ValidationError("Φ has entries outside the field")
    if not la.is_invertible(D.field, D.Phi):
        raise ValidationError("degenerate Φ")


def fzip_of_display(D: Display1) -> FZip:
    degrees = [0] * D.d + [1] * (D.n - D.d)
    return FZip.from_adapted(D.field, D.q, degrees, list(la.ident(D.n)), la.columns(D.Phi))


def _check_support(M: FZip) -> None:
    if not set(M.degrees()) <= {0, 1}:
        raise ValidationError(f"type {M.type()} is not supported on {{0, 1}}")


def display_of_fzip(M: FZip) -> Display1:
    _check_support(M)
    F = M.field
    degs, cs, fs = M.adapted
    order = [k for k, i in enumerate(degs) if i == 0] + [k for k, i in enumerate(degs) if i == 1]
    C = la.from_columns([cs[k] for k in order], M.n)
    Fm = la.from_columns([fs[k] for k in order], M.n)
    Phi = la.mat_mul(F, la.inverse(F, C), Fm)
    return Display1(F, M.n, degs.count(0), Phi, M.q)


def dual_bt1(M: FZip) -> FZip:
    """dual(M) ⊗ 1(1)."""
    _check_support(M)
    return tensor(dual(M), make_tate(M.field, 1, M.q))
