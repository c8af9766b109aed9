"""F-zips with classical-group structure: validators and standard objects.

Standard forms are antidiagonal.  For the symplectic form the entries are
+1 above the middle row and -1 below it.  A paired object stores one Gram
matrix per basis vector of its target zip.

Unitary objects live over a field K containing F_{q²}.  M = N ⊕ N′ is split
by ρ(α) = diag(α, α^q), φ exchanges N and N′, and the hermitian form has two
components: H₁ pairs N′ with N and H₂ is its transpose.  The rank-2 target
has both basis vectors in degree d, exchanged by φ.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, combinations_with_replacement

from . import linalg as la
from .errors import ValidationError
from .fields import FqField
from .fzip import (FZip, Flag, is_admissible_morphism, is_isomorphism, is_morphism,
                   make_tate, power, standard_zip_gl, tensor)
from .linalg import Matrix
from .zipdatum import CocharacterType, GroupFamily, build_zip_datum, theta_rule, validate_type

KINDS = {"Sp": "symplectic", "CSp": "symplectic", "O": "orthogonal", "CO": "orthogonal",
         "U": "unitary", "CU": "unitary"}


@dataclass(frozen=True)
class PairedFZip:
    family: str
    M: FZip
    kind: str
    target: FZip
    pairing: tuple[Matrix, ...]
    rho: tuple[int, Matrix] | None = None  # (α, ρ(α)) for unitary objects


@dataclass(frozen=True)
class DetTrivializedFZip:
    M: FZip
    delta: Matrix  # 1×1 matrix of ΛⁿM → 1(0)

    family = "SL"


def antidiagonal(F: FqField, n: int, alternating: bool = False) -> Matrix:
    rows = []
    for i in range(n):
        sign = F.neg(1) if alternating and i >= n // 2 else 1
        rows.append(tuple(sign if j == n - 1 - i else 0 for j in range(n)))
    return tuple(rows)


def _gram_ok(F: FqField, g: Matrix, G: Matrix, mu: int | None) -> bool:
    lhs = la.mat_mul(F, la.mat_mul(F, la.transpose(g), G), g)
    if mu is None:
        return lhs == G
    return lhs == tuple(tuple(F.mul(mu, a) for a in r) for r in G)


def _similitude_factor(F: FqField, g: Matrix, G: Matrix) -> int | None:
    lhs = la.mat_mul(F, la.mat_mul(F, la.transpose(g), G), g)
    r, c = next((r, c) for r in range(len(G)) for c in range(len(G)) if G[r][c])
    mu = F.div(lhs[r][c], G[r][c])
    return mu if mu and _gram_ok(F, g, G, mu) else None


def _line(F: FqField, d: int, f: int, q: int) -> FZip:
    return FZip.from_adapted(F, q, [d], [(1,)], [(f,)])


def _unitary_target(F: FqField, d: int, q: int) -> FZip:
    return FZip.from_adapted(F, q, [d, d], [(1, 0), (0, 1)], [(0, 1), (1, 0)])


def quadratic_generator(K: FqField, q: int) -> int:
    """An element of K generating F_{q²} over F_q."""
    if not K.contains_order(q * q):
        raise ValidationError(f"{K} does not contain F_{q * q}")
    return K.pow(K.primitive, (K.q - 1) // (q * q - 1))


def unitary_weights(t: CocharacterType, d: int) -> list[int]:
    lam = t.weights()
    return lam + [d - x for x in reversed(lam)]


def standard_classical(family: str | GroupFamily, t: CocharacterType | dict, g: Matrix,
                       F: FqField, q: int | None = None):
    """The standard object of the family with zip part I_g.

    For U/CU, ``g`` is the block h ∈ GL_n(K) describing φ: N → N′; ``q`` must
    then be given with F_{q²} ⊆ K.
    """
    fam = family if isinstance(family, GroupFamily) else None
    name = fam.name if fam else family
    ct = t if isinstance(t, CocharacterType) else CocharacterType.of(t)
    if fam is None:
        fam = GroupFamily(name, ct.rank, odd_char=F.p != 2)
    validate_type(fam, ct)
    q = F.q if q is None else q
    n = ct.rank
    if len(g) != n or not la.is_invertible(F, g):
        raise ValidationError("g must be an invertible n×n matrix")
    if name == "GL":
        return standard_zip_gl(ct, g, F, q)
    if name == "SL":
        if la.det(F, g) != 1:
            raise ValidationError("g not in SL: det ≠ 1")
        return DetTrivializedFZip(standard_zip_gl(ct, g, F, q), ((1,),))
    if name in ("Sp", "CSp", "O", "CO"):
        if name in ("O", "CO") and F.p == 2:
            raise ValidationError("q must be odd for orthogonal families")
        G = antidiagonal(F, n, alternating=name in ("Sp", "CSp"))
        if name in ("Sp", "O"):
            if not _gram_ok(F, g, G, None):
                raise ValidationError(f"g not in {name}: form not preserved")
            mu, d = 1, 0
        else:
            mu = _similitude_factor(F, g, G)
            if mu is None:
                raise ValidationError(f"g not in {name}: form not preserved up to a scalar")
            w = ct.weights()
            d = w[0] + w[-1]
        M = standard_zip_gl(ct, g, F, q)
        return PairedFZip(name, M, KINDS[name], _line(F, d, mu, q), (G,))
    # unitary
    d = ct.multiplier or 0
    alpha = quadratic_generator(F, q)
    A = antidiagonal(F, n)
    g2 = la.mat_mul(F, la.mat_mul(F, A, la.transpose(la.inverse(F, g))), A)
    big = tuple(tuple(g2[r][c - n] if r < n and c >= n else
                      g[r - n][c] if r >= n and c < n else 0
                      for c in range(2 * n)) for r in range(2 * n))
    weights = unitary_weights(ct, d)
    M = FZip.from_adapted(F, q, weights, list(la.ident(2 * n)), la.columns(big))
    G1 = tuple(tuple(A[r - n][c] if r >= n and c < n else 0 for c in range(2 * n))
               for r in range(2 * n))
    G2 = la.transpose(G1)
    aq = F.pow(alpha, q)
    rho = tuple(tuple((alpha if r < n else aq) if r == c else 0 for c in range(2 * n))
                for r in range(2 * n))
    return PairedFZip(name, M, "unitary", _unitary_target(F, d, q), (G1, G2), (alpha, rho))


# validation ---------------------------------------------------------------

def _symmetric_about(tp: dict[int, int], d: int) -> bool:
    return all(tp.get(d - i, 0) == m for i, m in tp.items())


def _pairing_matrix(obj: PairedFZip) -> tuple[FZip, Matrix]:
    """Source zip (Λ²M, S²M or M⊗M) and the matrix of the pairing on it."""
    M, F = obj.M, obj.M.field
    n = M.n
    if obj.kind == "symplectic":
        idx = list(combinations(range(n), 2))
        G = obj.pairing[0]
        return power(M, 2, "alternating"), (tuple(G[a][b] for a, b in idx),)
    if obj.kind == "orthogonal":
        idx = list(combinations_with_replacement(range(n), 2))
        G = obj.pairing[0]
        return power(M, 2, "symmetric"), (tuple(G[a][b] for a, b in idx),)
    return tensor(M, M), tuple(tuple(G[a][b] for a in range(n) for b in range(n))
                               for G in obj.pairing)


def _check_unitary(obj: PairedFZip) -> None:
    F, n = obj.M.field, obj.M.n
    if obj.rho is None:
        raise ValidationError("malformed ρ: missing")
    alpha, R = obj.rho
    q = obj.M.q
    if n % 2:
        raise ValidationError("malformed ρ: odd rank")
    aq = F.pow(alpha, q)
    for ev in (alpha, aq):
        shifted = la.mat_sub(F, R, tuple(tuple(ev if r == c else 0 for c in range(n))
                                          for r in range(n)))
        if len(la.nullspace(F, shifted, n)) != n // 2:
            raise ValidationError("malformed ρ: eigenspace ranks differ from n")
    if len(obj.pairing) != 2:
        raise ValidationError("form not hermitian: expected two components")
    G1, G2 = obj.pairing
    if G2 != la.transpose(G1):
        raise ValidationError("form not hermitian: H₂ ≠ H₁ᵀ")
    if la.rank(F, G1) != n // 2:
        raise ValidationError("degenerate")
    Rt = la.transpose(R)

    def scaled(c, G):
        return tuple(tuple(F.mul(c, a) for a in r) for r in G)

    # H(ρ(α)x, ρ(β)y) = ρ_T(α^q β) H(x, y), one generator at a time
    for lhs, rhs in ((la.mat_mul(F, Rt, G1), scaled(aq, G1)),
                     (la.mat_mul(F, G1, R), scaled(alpha, G1)),
                     (la.mat_mul(F, Rt, G2), scaled(alpha, G2)),
                     (la.mat_mul(F, G2, R), scaled(aq, G2))):
        if lhs != rhs:
            raise ValidationError("form not hermitian: ρ-compatibility fails")
    # ρ(α) must be an endomorphism of M
    if not is_morphism(R, obj.M, obj.M):
        raise ValidationError("malformed ρ: not an F-zip endomorphism")


def validate_classical(obj) -> CocharacterType:
    """Run every check on ``obj``; return its type, or raise a named ValidationError."""
    if isinstance(obj, FZip):
        return CocharacterType.of(obj.type())
    if isinstance(obj, DetTrivializedFZip):
        M = obj.M
        t = CocharacterType.of(M.type())
        if sum(i * m for i, m in t.nbar) != 0:
            raise ValidationError("Σ i·n_i ≠ 0")
        top = power(M, M.n, "alternating")
        if not is_isomorphism(obj.delta, top, make_tate(M.field, 0, M.q)):
            raise ValidationError("delta is not an isomorphism ΛⁿM ≅ 1(0)")
        return t
    if not isinstance(obj, PairedFZip):
        raise ValidationError(f"not a classical object: {type(obj).__name__}")
    M, F = obj.M, obj.M.field
    n = M.n
    if obj.kind != KINDS.get(obj.family):
        raise ValidationError(f"kind {obj.kind!r} does not match family {obj.family}")
    if obj.kind == "orthogonal" and F.p == 2:
        raise ValidationError("q must be odd for orthogonal families")
    if obj.kind == "symplectic" and n % 2:
        raise ValidationError("n odd")
    if any(len(G) != n or any(len(r) != n for r in G) for G in obj.pairing):
        raise ValidationError("Gram matrix size differs from the rank")
    if obj.kind == "unitary":
        _check_unitary(obj)
    else:
        (G,) = obj.pairing
        Gt = la.transpose(G)
        if obj.kind == "symplectic" and (
                Gt != tuple(tuple(F.neg(a) for a in r) for r in G)
                or any(G[i][i] for i in range(n))):
            raise ValidationError("form not alternating")
        if obj.kind == "orthogonal" and Gt != G:
            raise ValidationError("form not symmetric")
        if not la.is_invertible(F, G):
            raise ValidationError("degenerate")
    tt = obj.target.type()
    want_rank = 2 if obj.kind == "unitary" else 1
    if obj.target.n != want_rank or len(tt) != 1:
        raise ValidationError(f"target must have rank {want_rank} in a single degree")
    (d,) = tt
    if obj.family in ("Sp", "O", "U") and d != 0:
        raise ValidationError("target must be of degree 0")
    tp = M.type()
    if not _symmetric_about(tp, d):
        raise ValidationError("n_i ≠ n_{−i}" if d == 0 else "n_i ≠ n_{d−i}")
    src, f = _pairing_matrix(obj)
    if not is_morphism(f, src, obj.target):
        raise ValidationError("pairing is not an F-zip morphism")
    if la.rank(F, f) != obj.target.n or not is_admissible_morphism(f, src, obj.target):
        raise ValidationError("pairing is not an admissible epimorphism")
    if obj.kind == "unitary":
        t = CocharacterType.of(_eigen_type(obj), d if obj.family == "CU" else None)
    else:
        t = CocharacterType.of(tp, d if obj.family in ("CSp", "CO") else None)
    fam = GroupFamily(obj.family, t.rank, odd_char=F.p != 2)
    datum = build_zip_datum(fam, t)
    if len(datum.theta) != theta_rule(fam, t):
        raise ValidationError("Θ differs from the family rule")
    return t


def _eigen_type(obj: PairedFZip) -> dict[int, int]:
    return decompose_type(unitary_decompose(obj))


# unitary decomposition ----------------------------------------------------

@dataclass(frozen=True)
class UnitaryQuadruple:
    """(Ñ, C•, D•, ψ•) in coordinates of a C-adapted basis of Ñ.

    ``psi`` lists, per degree i, the rows H₁(φ(n_j), n_k) for the basis
    vectors n_j of degree i.
    """

    field: FqField
    q: int
    d: int
    basis: tuple[tuple[int, ...], ...]
    degrees: tuple[int, ...]
    C: Flag
    D: Flag
    psi: tuple[tuple[int, Matrix], ...]


def decompose_type(u: UnitaryQuadruple) -> dict[int, int]:
    out: dict[int, int] = {}
    for i in u.degrees:
        out[i] = out.get(i, 0) + 1
    return out


def _intersect(F: FqField, A, B) -> list:
    """Basis of span(A) ∩ span(B)."""
    A, B = list(A), list(B)
    if not A or not B:
        return []
    ker = la.nullspace(F, la.transpose(tuple(A + B)), len(A) + len(B))
    out = []
    for v in ker:
        w = (0,) * len(A[0])
        for c, a in zip(v[: len(A)], A):
            if c:
                w = la.vec_add(F, w, la.vec_scale(F, c, a))
        out.append(w)
    return list(la.span(F, out))


def _coords_in(F, basis, vecs):
    return [la.coords(F, list(basis), v) for v in vecs]


def unitary_decompose(obj: PairedFZip) -> UnitaryQuadruple:
    if obj.kind != "unitary":
        raise ValidationError("not a unitary object")
    M, F, q = obj.M, obj.M.field, obj.M.q
    if not F.contains_order(q * q):
        raise ValidationError("base change to the quadratic extension first")
    _check_unitary(obj)
    alpha, R = obj.rho
    n2 = M.n
    eig = []
    for ev in (alpha, F.pow(alpha, q)):
        shifted = la.mat_sub(F, R, tuple(tuple(ev if r == c else 0 for c in range(n2))
                                          for r in range(n2)))
        eig.append(la.nullspace(F, shifted, n2))
    N, Np = eig
    (d,) = obj.target.type()
    # C-adapted basis of Ñ, decreasing degree
    basis, degs = [], []
    for i in sorted(M.degrees(), reverse=True):
        hi = _intersect(F, M.C.at(i + 1), N)
        cur = _intersect(F, M.C.at(i), N)
        for v in la.complement_basis(F, cur, hi):
            basis.append(v)
            degs.append(i)
    if len(basis) != len(N):
        raise ValidationError("malformed ρ: C is not ρ-stable")
    G1 = obj.pairing[0]
    # projection onto Ñ′ along Ñ
    both = list(basis) + list(Np)
    psi = []
    for i in sorted(set(degs), reverse=True):
        rows = []
        for v, di in zip(basis, degs):
            if di != i:
                continue
            img = M.phi_flat(i, v)
            co = la.coords(F, both, img)
            proj = (0,) * n2
            for c, w in zip(co[len(basis):], Np):
                if c:
                    proj = la.vec_add(F, proj, la.vec_scale(F, c, w))
            rows.append(tuple(sum_prod(F, proj, la.mat_vec(F, G1, nk)) for nk in basis))
        psi.append((i, tuple(rows)))
    coords_c = [tuple(1 if k == j else 0 for k in range(len(basis))) for j in range(len(basis))]
    Cflag = _sub_flag(F, M.C, basis, "desc", degs, coords_c)
    Dsteps = []
    for i in sorted(M.degrees()):
        sub = _intersect(F, M.D.at(i), basis)
        Dsteps.append((i, la.span(F, [c for c in _coords_in(F, basis, sub)])))
    Dflag = Flag(len(basis), "asc", tuple(Dsteps))
    return UnitaryQuadruple(F, q, d, tuple(basis), tuple(degs), Cflag, Dflag, tuple(psi))


def sum_prod(F: FqField, x, y) -> int:
    acc = 0
    for a, b in zip(x, y):
        if a and b:
            acc = F.add(acc, F.mul(a, b))
    return acc


def _sub_flag(F, flag, basis, direction, degs, coords):
    steps = []
    for i in sorted(set(degs)):
        sub = [c for c, di in zip(coords, degs) if (di >= i if direction == "desc" else di <= i)]
        steps.append((i, la.span(F, sub)))
    return Flag(len(basis), direction, tuple(steps))


def unitary_recompose(u: UnitaryQuadruple, family: str = "U") -> PairedFZip:
    """Rebuild a standard unitary object from a quadruple.

    With the antidiagonal H₁ the block of φ: Ñ → Ñ′ is h = A·Ψᵀ, where Ψ
    stacks the ψ rows.
    """
    F, n = u.field, len(u.basis)
    Psi = tuple(row for _, rows in sorted(u.psi, key=lambda t: -t[0]) for row in rows)
    A = antidiagonal(F, n)
    h = la.mat_mul(F, A, la.transpose(Psi))
    nbar: dict[int, int] = decompose_type(u)
    ct = CocharacterType.of(nbar, u.d if family == "CU" else None)
    fam = GroupFamily(family, n)
    return standard_classical(fam, ct, h, u.field, u.q)

