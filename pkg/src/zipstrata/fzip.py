"""F-zips over finite fields.

Convention: an F-zip is determined by a C-adapted basis (c_a) with degrees
(d_a) and vectors f_a lifting φ(c_a ⊗ 1) in D_{d_a}.  Then

    C^i = span{c_a : d_a ≥ i},   D_i = span{f_a : d_a ≤ i},

and φ_i is the σ-semilinear map sending Σ x_a c_a to Σ x_a^q f_a, read in the
graded pieces.  The stored form is canonical: both flags as echelon bases,
and φ_i as a matrix from the canonical lifts of gr_C^i to those of gr^D_i,
where the source coordinates are q-twisted before the matrix is applied.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product

from . import linalg as la
from .errors import ResourceError, ValidationError
from .fields import FqField, embedding, extension
from .linalg import Matrix, Vector

POINT_GUARD = 1 << 22


@dataclass(frozen=True)
class Flag:
    """A filtration stored by its jumps.

    ``direction`` is ``"desc"`` (C^•, C^i ⊇ C^{i+1}) or ``"asc"`` (D_•).
    ``steps`` lists ``(i, basis)`` for each index where the subspace changes,
    in increasing ``i``; bases are rref rows.
    """

    n: int
    direction: str
    steps: tuple[tuple[int, tuple[Vector, ...]], ...]

    def at(self, i: int) -> tuple[Vector, ...]:
        if self.direction == "desc":
            for j, basis in self.steps:
                if j >= i:
                    return basis
            return ()
        out: tuple[Vector, ...] = ()
        for j, basis in self.steps:
            if j <= i:
                out = basis
        return out

    def dim(self, i: int) -> int:
        return len(self.at(i))


def _flag(F: FqField, n, direction, degrees, vecs) -> Flag:
    steps = []
    for i in sorted(set(degrees)):
        if direction == "desc":
            sub = [v for v, d in zip(vecs, degrees) if d >= i]
        else:
            sub = [v for v, d in zip(vecs, degrees) if d <= i]
        steps.append((i, la.span(F, sub)))
    return Flag(n, direction, tuple(steps))


@dataclass(frozen=True)
class FZip:
    field: FqField
    q: int
    n: int
    C: Flag
    D: Flag
    phi: tuple[tuple[int, Matrix], ...]
    _lifts: tuple = field(default=(), compare=False, hash=False, repr=False)

    @staticmethod
    def from_adapted(F: FqField, q: int | None, degrees, cvecs, fvecs) -> "FZip":
        q = F.q if q is None else q
        if not F.contains_order(q):
            raise ValidationError(f"F_{q} is not a subfield of {F}")
        degrees = list(degrees)
        cvecs = [tuple(v) for v in cvecs]
        fvecs = [tuple(v) for v in fvecs]
        n = len(cvecs[0]) if cvecs else 0
        if not (len(degrees) == len(cvecs) == len(fvecs) == n):
            raise ValidationError("adapted data must consist of n vectors of length n")
        if la.rank(F, cvecs) != n:
            raise ValidationError("C-adapted vectors are not a basis")
        if la.rank(F, fvecs) != n:
            raise ValidationError("φ is not an isomorphism")
        C = _flag(F, n, "desc", degrees, cvecs)
        D = _flag(F, n, "asc", degrees, fvecs)
        phi = []
        lifts = []
        for i in sorted(set(degrees)):
            src = [c for c, d in zip(cvecs, degrees) if d == i]
            img = [f for f, d in zip(fvecs, degrees) if d == i]
            gc = la.complement_basis(F, C.at(i), C.at(i + 1))
            gd = la.complement_basis(F, D.at(i), D.at(i - 1))
            cols = []
            for b in gc:
                x = la.coords(F, src + list(C.at(i + 1)), b)[: len(src)]
                v = (0,) * n
                for xa, fa in zip(x, img):
                    if xa:
                        v = la.vec_add(F, v, la.vec_scale(F, F.pow(xa, q), fa))
                y = la.coords(F, gd + list(D.at(i - 1)), v)[: len(gd)]
                cols.append(y)
            phi.append((i, la.from_columns(cols, len(gd))))
            lifts.append((i, tuple(gc), tuple(gd)))
        return FZip(F, q, n, C, D, tuple(phi), tuple(lifts))

    # structure ------------------------------------------------------------
    def degrees(self) -> list[int]:
        return [i for i, _ in self.phi]

    def type(self) -> dict[int, int]:
        return {i: len(m) for i, m in self.phi}

    def phi_at(self, i: int) -> Matrix:
        return dict(self.phi).get(i, ())

    def graded_lifts(self, i: int) -> tuple[tuple[Vector, ...], tuple[Vector, ...]]:
        for j, gc, gd in self._lifts:
            if j == i:
                return gc, gd
        return (), ()

    @cached_property
    def adapted(self) -> tuple[list[int], list[Vector], list[Vector]]:
        """Canonical adapted data, ordered by decreasing degree."""
        F = self.field
        degs, cs, fs = [], [], []
        for i, gc, gd in sorted(self._lifts, key=lambda t: -t[0]):
            P = self.phi_at(i)
            for k, c in enumerate(gc):
                f = (0,) * self.n
                for l, d in enumerate(gd):
                    if P[l][k]:
                        f = la.vec_add(F, f, la.vec_scale(F, P[l][k], d))
                degs.append(i)
                cs.append(c)
                fs.append(f)
        return degs, cs, fs

    @cached_property
    def cmat(self) -> Matrix:
        return la.from_columns(self.adapted[1], self.n)

    @cached_property
    def fmat(self) -> Matrix:
        return la.from_columns(self.adapted[2], self.n)

    @cached_property
    def standard_g(self) -> Matrix:
        """g with self ≅ standard_zip(type, g), via c_a ↦ e_a."""
        return la.mat_mul(self.field, la.inverse(self.field, self.cmat), self.fmat)

    def weights(self) -> list[int]:
        return self.adapted[0]

    def phi_flat(self, i: int, v: Vector) -> Vector:
        """A representative in D_i of φ_i(v ⊗ 1) for v ∈ C^i."""
        F = self.field
        gc, gd = self.graded_lifts(i)
        x = la.coords(F, list(gc) + list(self.C.at(i + 1)), v)
        if x is None:
            raise ValueError("vector not in C^i")
        x = [F.pow(a, self.q) for a in x[: len(gc)]]
        P = self.phi_at(i)
        out = (0,) * self.n
        for l, d in enumerate(gd):
            c = 0
            for k in range(len(gc)):
                c = F.add(c, F.mul(P[l][k], x[k]))
            if c:
                out = la.vec_add(F, out, la.vec_scale(F, c, d))
        return out

    def base_change(self, K: FqField) -> "FZip":
        if K == self.field:
            return self
        emb = embedding(self.field, K)
        degs, cs, fs = self.adapted
        return FZip.from_adapted(K, self.q, degs, [tuple(emb[a] for a in c) for c in cs],
                                 [tuple(emb[a] for a in f) for f in fs])


def _check_compatible(M: FZip, N: FZip):
    if M.field != N.field or M.q != N.q:
        raise ValidationError("F-zips over different fields or Frobenius")


def make_tate(F: FqField, d: int, q: int | None = None) -> FZip:
    return FZip.from_adapted(F, q, [d], [(1,)], [(1,)])


def tensor(M: FZip, N: FZip) -> FZip:
    _check_compatible(M, N)
    F = M.field
    dm, cm, fm = M.adapted
    dn, cn, fn = N.adapted
    degs, cs, fs = [], [], []
    for a in range(M.n):
        for b in range(N.n):
            degs.append(dm[a] + dn[b])
            cs.append(la.kron(F, (cm[a],), (cn[b],))[0])
            fs.append(la.kron(F, (fm[a],), (fn[b],))[0])
    return FZip.from_adapted(F, M.q, degs, cs, fs)


def dual(M: FZip) -> FZip:
    F = M.field
    degs, _, _ = M.adapted
    cdual = la.inverse(F, M.cmat)
    fdual = la.inverse(F, M.fmat)
    return FZip.from_adapted(F, M.q, [-d for d in degs], list(cdual), list(fdual))


def twist(M: FZip, d: int) -> FZip:
    return tensor(M, make_tate(M.field, d, M.q))


def power(M: FZip, m: int, kind: str = "alternating") -> FZip:
    from itertools import combinations, combinations_with_replacement
    F = M.field
    degs = M.adapted[0]
    if kind == "alternating":
        idx = list(combinations(range(M.n), m))
        Cm, Fm = la.compound(F, M.cmat, m), la.compound(F, M.fmat, m)
    elif kind == "symmetric":
        idx = list(combinations_with_replacement(range(M.n), m))
        Cm, Fm = la.sym_power(F, M.cmat, m), la.sym_power(F, M.fmat, m)
    else:
        raise ValueError(kind)
    if not idx:
        raise ValidationError("zero power: rank 0")
    pdeg = [sum(degs[j] for j in J) for J in idx]
    return FZip.from_adapted(F, M.q, pdeg, la.columns(Cm), la.columns(Fm))


def is_morphism(f: Matrix, M: FZip, N: FZip) -> bool:
    _check_compatible(M, N)
    F = M.field
    if len(f) != N.n or any(len(r) != M.n for r in f):
        raise ValidationError("matrix dimensions do not match")
    idx = set(M.degrees()) | set(N.degrees())
    rng = range(min(idx, default=0) - 1, max(idx, default=0) + 2)
    for i in rng:
        for v in M.C.at(i):
            if not la.in_span(F, N.C.at(i), la.mat_vec(F, f, v)):
                return False
        for v in M.D.at(i):
            if not la.in_span(F, N.D.at(i), la.mat_vec(F, f, v)):
                return False
    degs, cs, fs = M.adapted
    for d, c, fv in zip(degs, cs, fs):
        lhs = la.mat_vec(F, f, fv)
        rhs = N.phi_flat(d, la.mat_vec(F, f, c)) if d in N.degrees() else (0,) * N.n
        diff = la.vec_add(F, lhs, tuple(F.neg(a) for a in rhs))
        if not la.in_span(F, N.D.at(d - 1), diff):
            return False
    return True


def is_admissible_morphism(f: Matrix, M: FZip, N: FZip) -> bool:
    if not is_morphism(f, M, N):
        return False
    F = M.field
    image = la.span(F, [la.mat_vec(F, f, v) for v in la.ident(M.n)])
    idx = set(M.degrees()) | set(N.degrees())
    rng = range(min(idx, default=0) - 1, max(idx, default=0) + 2)
    for i in rng:
        for src, tgt in ((M.C.at(i), N.C.at(i)), (M.D.at(i), N.D.at(i))):
            fsrc = la.rank(F, [la.mat_vec(F, f, v) for v in src]) if src else 0
            meet = len(image) + len(tgt) - la.rank(F, list(image) + list(tgt))
            if fsrc != meet:
                return False
    return True


def is_isomorphism(f: Matrix, M: FZip, N: FZip) -> bool:
    return M.n == N.n and la.is_invertible(M.field, f) and is_admissible_morphism(f, M, N)


# standard zips and the zip group ------------------------------------------

def type_weights(t) -> list[int]:
    """Weights of a type (dict or CocharacterType), weakly decreasing."""
    nb = t if isinstance(t, dict) else t.as_dict()
    return sorted((i for i, m in nb.items() for _ in range(m)), reverse=True)


def standard_zip_gl(t, g: Matrix, F: FqField, q: int | None = None) -> FZip:
    w = type_weights(t)
    n = len(w)
    if len(g) != n or not la.is_invertible(F, g):
        raise ValidationError("g must be an invertible n×n matrix")
    return FZip.from_adapted(F, q, w, list(la.ident(n)), la.columns(g))


def perm_matrix(w: tuple[int, ...]) -> Matrix:
    """Permutation matrix with e_j ↦ e_{w(j)}."""
    n = len(w)
    return tuple(tuple(1 if w[j] - 1 == i else 0 for j in range(n)) for i in range(n))


def levi_blocks(weights: list[int]) -> list[list[int]]:
    blocks: dict[int, list[int]] = {}
    for k, w in enumerate(weights):
        blocks.setdefault(w, []).append(k)
    return [blocks[w] for w in sorted(blocks, reverse=True)]


@dataclass(frozen=True)
class ZipGroupElement:
    p_plus: Matrix
    p_minus: Matrix


def in_zip_group(F: FqField, q: int, weights: list[int], e: ZipGroupElement) -> bool:
    n = len(weights)
    for r in range(n):
        for c in range(n):
            if weights[r] < weights[c] and e.p_plus[r][c]:
                return False
            if weights[r] > weights[c] and e.p_minus[r][c]:
                return False
            if weights[r] == weights[c] and e.p_minus[r][c] != F.pow(e.p_plus[r][c], q):
                return False
    return la.is_invertible(F, e.p_plus)


def act_zip_group(F: FqField, e: ZipGroupElement, g: Matrix) -> Matrix:
    """p₊ g p₋⁻¹."""
    return la.mat_mul(F, la.mat_mul(F, e.p_plus, g), la.inverse(F, e.p_minus))


class _Transporter:
    """Solutions p₊ of  g2⁻¹ p₊ g ∈ P₋ with Levi part σ(Levi p₊), over K.

    All conditions are F_p-linear in the entries of p₊ (σ is additive), so the
    solution set, invertible or not, is the kernel of one F_p-matrix.
    """

    def __init__(self, weights, g: Matrix, g2: Matrix, K: FqField, q: int):
        self.K, self.q, self.w = K, q, weights
        n = len(weights)
        self.n = n
        self.pos = [(r, c) for r in range(n) for c in range(n) if weights[r] >= weights[c]]
        e = K.e
        P = gf_prime(K)
        basis = [K.p**k for k in range(e)]

        def mult_block(kappa):
            return [K.digits(K.mul(kappa, b)) for b in basis]  # columns

        sig = [K.digits(K.pow(b, q)) for b in basis]
        g2i = la.inverse(K, g2)
        rows = []
        for r in range(n):
            for c in range(n):
                if weights[r] < weights[c]:
                    continue
                block_row = [[0] * (e * len(self.pos)) for _ in range(e)]
                for u, (a, b) in enumerate(self.pos):
                    kappa = K.mul(g2i[r][a], g[b][c])
                    if kappa:
                        cols = mult_block(kappa)
                        for k in range(e):
                            for j in range(e):
                                block_row[j][u * e + k] = (block_row[j][u * e + k] + cols[k][j]) % K.p
                if weights[r] == weights[c]:
                    u = self.pos.index((r, c))
                    for k in range(e):
                        for j in range(e):
                            block_row[j][u * e + k] = (block_row[j][u * e + k] - sig[k][j]) % K.p
                rows.extend(block_row)
        self.kernel = la.nullspace(P, tuple(tuple(r) for r in rows), e * len(self.pos))
        self.prime = P

    def size_log(self) -> int:
        return len(self.kernel)

    def _matrix(self, vec) -> Matrix:
        K, e = self.K, self.K.e
        M = [[0] * self.n for _ in range(self.n)]
        for u, (r, c) in enumerate(self.pos):
            M[r][c] = K.from_digits(vec[u * e:(u + 1) * e])
        return tuple(tuple(r) for r in M)

    def _invertible(self, M: Matrix) -> bool:
        for blk in levi_blocks(self.w):
            sub = tuple(tuple(M[r][c] for c in blk) for r in blk)
            if la.det(self.K, sub) == 0:
                return False
        return True

    def solutions(self, guard: int = POINT_GUARD):
        p = self.K.p
        if p ** len(self.kernel) > guard:
            raise ResourceError(f"transporter kernel of size {p}^{len(self.kernel)} exceeds guard")
        dim = len(self.pos) * self.K.e
        for coeffs in product(range(p), repeat=len(self.kernel)):
            v = [0] * dim
            for c, b in zip(coeffs, self.kernel):
                if c:
                    for k in range(dim):
                        if b[k]:
                            v[k] = (v[k] + c * b[k]) % p
            M = self._matrix(v)
            if self._invertible(M):
                yield M


def gf_prime(K: FqField) -> FqField:
    from .fields import gf
    return gf(K.p, 1)


def transporter_witness(weights, g: Matrix, g2: Matrix, K: FqField, q: int,
                        guard: int = POINT_GUARD) -> ZipGroupElement | None:
    T = _Transporter(weights, g, g2, K, q)
    for pp in T.solutions(guard):
        pm = la.mat_mul(K, la.mat_mul(K, la.inverse(K, g2), pp), g)
        return ZipGroupElement(pp, pm)
    return None


def _embed_mat(A: Matrix, F: FqField, K: FqField) -> Matrix:
    return la.map_entries(A, embedding(F, K))


@dataclass(frozen=True)
class Witness:
    degree: int
    field: FqField
    matrix: Matrix


def isomorphic_over(M: FZip, N: FZip, ext_degree: int = 1, degrees=None,
                    guard: int = POINT_GUARD) -> Witness | None:
    """Search an isomorphism M → N over F_{q^m} for m = 1..ext_degree.

    Both zips are moved to standard form I_g; isomorphisms I_g → I_g' are the
    p₊ of transporter elements.
    """
    _check_compatible(M, N)
    if M.type() != N.type():
        return None
    F = M.field
    if M == N:
        return Witness(1, F, la.ident(M.n))
    weights = M.weights()
    for m in (degrees or range(1, ext_degree + 1)):
        K = extension(F, m)
        g = _embed_mat(M.standard_g, F, K)
        g2 = _embed_mat(N.standard_g, F, K)
        e = transporter_witness(weights, g, g2, K, M.q, guard)
        if e is not None:
            CM = _embed_mat(M.cmat, F, K)
            CN = _embed_mat(N.cmat, F, K)
            A = la.mat_mul(K, la.mat_mul(K, CN, e.p_plus), la.inverse(K, CM))
            return Witness(m, K, A)
    return None


def stabilizer_points(t, g: Matrix, F: FqField, ext_degree: int = 1, q: int | None = None,
                      guard: int = POINT_GUARD) -> int:
    """|Stab_E(g)(F_{q^m})| by enumerating the transporter from g to itself."""
    q = F.q if q is None else q
    K = extension(F, ext_degree)
    gk = _embed_mat(g, F, K)
    T = _Transporter(type_weights(t), gk, gk, K, q)
    return sum(1 for _ in T.solutions(guard))


def stabilizer_lie_dim(t, g: Matrix, F: FqField) -> int:
    """dim ker((X, Y) ↦ Xg − gY) on Lie P₊ ⊕ Lie U₋."""
    w = type_weights(t)
    n = len(w)
    xs = [(r, c) for r in range(n) for c in range(n) if w[r] >= w[c]]
    ys = [(r, c) for r in range(n) for c in range(n) if w[r] < w[c]]
    rows = []
    for i in range(n):
        for j in range(n):
            row = []
            for r, c in xs:
                row.append(g[c][j] if r == i else 0)
            for r, c in ys:
                row.append(F.neg(g[i][r]) if c == j else 0)
            rows.append(tuple(row))
    return len(la.nullspace(F, tuple(rows), len(xs) + len(ys)))


def zip_group_generators(F: FqField, q: int, weights: list[int]) -> list[ZipGroupElement]:
    """Generators of E(F_q): elementary and diagonal matrices, linked by σ."""
    n = len(weights)
    I = la.ident(n)
    prim = F.primitive
    scalars = [F.p**k for k in range(F.e)]
    gens = []

    def elem(r, c, a):
        return tuple(tuple(a if (i, j) == (r, c) else I[i][j] for j in range(n)) for i in range(n))

    for r in range(n):
        D = elem(r, r, prim)
        gens.append(ZipGroupElement(D, la.frob_mat(F, D, q)))
        for c in range(n):
            if r == c:
                continue
            for a in scalars:
                X = elem(r, c, a)
                if weights[r] == weights[c]:
                    gens.append(ZipGroupElement(X, la.frob_mat(F, X, q)))
                elif weights[r] > weights[c]:
                    gens.append(ZipGroupElement(X, I))
                else:
                    gens.append(ZipGroupElement(I, X))
    return gens


def all_invertible(F: FqField, n: int, guard: int = 10**6):
    if F.q ** (n * n) > guard:
        raise ResourceError(f"|M_{n}(F_{F.q})| exceeds guard {guard}")
    for entries in product(range(F.q), repeat=n * n):
        M = tuple(tuple(entries[i * n:(i + 1) * n]) for i in range(n))
        if la.det(F, M):
            yield M


@dataclass(frozen=True)
class Classification:
    field: FqField
    weights: tuple[int, ...]
    words: dict  # w -> word string
    rows: tuple[tuple[Matrix, tuple[int, ...], int], ...]  # (g, w, minimal degree)

    def classes(self) -> set:
        return {w for _, w, _ in self.rows}

    def emit(self, fmt: str = "tsv") -> str:
        import json
        n = len(self.weights)
        if fmt == "json":
            doc = [{"g": [list(r) for r in g], "word": self.words[w], "degree": m}
                   for g, w, m in self.rows]
            return json.dumps(doc, indent=2) + "\n"
        if fmt != "tsv":
            raise ValueError(f"unknown format {fmt!r}")
        head = [f"g{i}{j}" for i in range(1, n + 1) for j in range(1, n + 1)]
        lines = ["\t".join(head + ["word", "degree"])]
        for g, w, m in self.rows:
            lines.append("\t".join([str(a) for r in g for a in r] + [self.words[w], str(m)]))
        return "\n".join(lines) + "\n"


def representatives(datum, F: FqField) -> dict:
    """w ↦ ẇ·ẏ (permutation matrix of w∘y) for w ∈ ᴵW."""
    W = datum.weyl
    gy = perm_matrix(datum.y)
    return {w: la.mat_mul(F, perm_matrix(w), gy) for w in W.min_coset_reps(datum.I, "left")}


def _orbits_fq(F: FqField, q: int, weights, elements):
    """E(F_q)-orbits on a finite set of matrices (union-find over generators)."""
    index = {g: k for k, g in enumerate(elements)}
    parent = list(range(len(elements)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for e in zip_group_generators(F, q, weights):
        pm_inv = la.inverse(F, e.p_minus)
        for k, g in enumerate(elements):
            h = la.mat_mul(F, la.mat_mul(F, e.p_plus, g), pm_inv)
            a, b = find(k), find(index[h])
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups: dict[int, list[int]] = {}
    for k in range(len(elements)):
        groups.setdefault(find(k), []).append(k)
    return [[elements[k] for k in ks] for _, ks in sorted(groups.items())]


def _maximal_degrees(bound: int) -> list[int]:
    return [m for m in range(1, bound + 1) if 2 * m > bound]


def classify_bruteforce(t, q: int, ext_bound: int = 4, guard: int = POINT_GUARD,
                        max_n: int = 3, max_q: int = 4) -> Classification:
    """Assign each g ∈ GL_n(F_q) the unique w with I_g ≅ I_{gẇ} over F_{q^m}, m ≤ ext_bound."""
    from .errors import ConsistencyError
    from .fields import gf_order
    from .zipdatum import CocharacterType, GroupFamily, build_zip_datum
    ct = t if isinstance(t, CocharacterType) else CocharacterType.of(t)
    n = ct.rank
    try:
        gf_order(q)
    except ValueError as exc:
        raise ValidationError(str(exc)) from None
    if ext_bound < 1:
        raise ValidationError("ext_bound must be positive")
    if n > max_n or q > max_q:
        raise ResourceError(f"brute-force classification limited to n ≤ {max_n}, q ≤ {max_q}")
    F = gf_order(q)
    datum = build_zip_datum(GroupFamily("GL", n), ct)
    weights = type_weights(ct)
    reps = representatives(datum, F)
    words = {w: datum.weyl.word_str(w) for w in reps}
    elements = list(all_invertible(F, n))
    top = _maximal_degrees(ext_bound)
    rows = []
    for orbit in _orbits_fq(F, q, weights, elements):
        g = orbit[0]
        matches = []
        for w, r in reps.items():
            found = None
            for m in top:
                K = extension(F, m)
                if transporter_witness(weights, _embed_mat(g, F, K), _embed_mat(r, F, K),
                                       K, q, guard) is not None:
                    found = m
                    break
            if found is None:
                continue
            for m in range(1, found + 1):
                if found % m:
                    continue
                K = extension(F, m)
                if transporter_witness(weights, _embed_mat(g, F, K), _embed_mat(r, F, K),
                                       K, q, guard) is not None:
                    matches.append((w, m))
                    break
        if len(matches) != 1:
            raise ConsistencyError(
                f"g = {g} matches {len(matches)} classes within extension degree {ext_bound}")
        w, m = matches[0]
        rows.extend((h, w, m) for h in orbit)
    rows.sort()
    return Classification(F, tuple(weights), words, tuple(rows))
