import random
from collections import Counter
from math import comb

import pytest
from hypothesis import assume, given, settings, strategies as st

from zipstrata import linalg as la
from zipstrata.errors import ConsistencyError, ResourceError, ValidationError
from zipstrata.fields import gf
from zipstrata.fzip import (FZip, ZipGroupElement, act_zip_group, classify_bruteforce, dual,
                            in_zip_group, is_admissible_morphism, is_isomorphism, is_morphism,
                            isomorphic_over, make_tate, perm_matrix, power, representatives,
                            stabilizer_lie_dim, stabilizer_points, standard_zip_gl, tensor,
                            transporter_witness, twist, type_weights, zip_group_generators)
from zipstrata.strata import build_poset
from zipstrata.zipdatum import CocharacterType, GroupFamily, build_zip_datum

from oracles import zip_group_orbits_gl2_f2

F2, F3, F4 = gf(2), gf(3), gf(2, 2)
ANTI = ((0, 1), (1, 0))


def random_invertible(rnd, F, n):
    while True:
        A = tuple(tuple(rnd.randrange(F.q) for _ in range(n)) for _ in range(n))
        if la.is_invertible(F, A):
            return A


def random_zip(rnd, F, n, weights=(-1, 0, 1, 2)):
    degs = [rnd.choice(weights) for _ in range(n)]
    return FZip.from_adapted(F, None, degs, la.columns(random_invertible(rnd, F, n)),
                             la.columns(random_invertible(rnd, F, n)))


@st.composite
def zips(draw, fields=(F2, F3, F4), max_n=3):
    F = draw(st.sampled_from(fields))
    n = draw(st.integers(1, max_n))
    rnd = random.Random(draw(st.integers(0, 10**6)))
    return random_zip(rnd, F, n)


def iso(M, N, m=1):
    return isomorphic_over(M, N, m) is not None


def convolve(s, t):
    out = Counter()
    for i, a in s.items():
        for j, b in t.items():
            out[i + j] += a * b
    return dict(out)


def datum(nbar):
    t = CocharacterType.of(nbar)
    return build_zip_datum(GroupFamily("GL", t.rank), t)


# Tate zips and the tensor structure -----------------------------------------

def test_tate_laws():
    for F in (F2, F3):
        assert make_tate(F, 0).type() == {0: 1}
        assert iso(tensor(make_tate(F, 2), make_tate(F, 3)), make_tate(F, 5))
        for d in (-2, 0, 3):
            assert iso(dual(make_tate(F, d)), make_tate(F, -d))


def test_type_convolution_example():
    M = standard_zip_gl({0: 1, 1: 1}, la.ident(2), F2)
    assert tensor(M, M).type() == {0: 1, 1: 2, 2: 1}
    D = dual(standard_zip_gl({0: 2, 1: 1}, la.ident(3), F2))
    assert D.type() == {-1: 1, 0: 2}


@settings(max_examples=40, deadline=None)
@given(zips(), st.integers(0, 10**6))
def test_tensor_and_dual_types(M, seed):
    N = random_zip(random.Random(seed), M.field, 2)
    T = tensor(M, N)
    assert T.n == M.n * N.n
    assert T.type() == convolve(M.type(), N.type())
    assert dual(M).type() == {-i: m for i, m in M.type().items()}
    assert twist(M, 3).type() == {i + 3: m for i, m in M.type().items()}
    assert iso(tensor(M, make_tate(M.field, 0)), M)
    assert iso(dual(dual(M)), M)


@settings(max_examples=25, deadline=None)
@given(zips(max_n=2), st.integers(0, 10**6))
def test_tensor_commutes_and_associates(M, seed):
    rnd = random.Random(seed)
    N, L = random_zip(rnd, M.field, 2), random_zip(rnd, M.field, 1)
    a, b = M.n, N.n
    swap = tuple(tuple(1 if (j % a, j // a) == (i // b, i % b) else 0 for j in range(a * b))
                 for i in range(a * b))
    # swap sends e_i ⊗ f_j to f_j ⊗ e_i
    assert is_isomorphism(swap, tensor(M, N), tensor(N, M))
    left, right = tensor(tensor(M, N), L), tensor(M, tensor(N, L))
    assert is_isomorphism(la.ident(left.n), left, right)


@settings(max_examples=30, deadline=None)
@given(zips(fields=(F2, F3), max_n=3), st.integers(1, 5))
def test_power_ranks(M, m):
    if m <= M.n:
        assert power(M, m, "alternating").n == comb(M.n, m)
    assert power(M, m, "symmetric").n == comb(M.n + m - 1, m)
    top = power(M, M.n, "alternating")
    assert top.type() == {sum(i * k for i, k in M.type().items()): 1}
    assert iso(power(M, 1, "alternating"), M)


# morphisms --------------------------------------------------------------------

def test_morphism_examples():
    rnd = random.Random(3)
    M, N = random_zip(rnd, F3, 3), random_zip(rnd, F3, 2)
    assert is_admissible_morphism(la.ident(3), M, M)
    assert is_admissible_morphism(la.zeros(2, 3), M, N)
    assert not is_morphism(((1,),), make_tate(F3, 0), make_tate(F3, 1))
    assert not is_admissible_morphism(((1,),), make_tate(F3, 0), make_tate(F3, 1))
    with pytest.raises(ValidationError):
        is_morphism(la.ident(2), M, N)


def test_frobenius_twist_functorial():
    rnd = random.Random(5)
    for F in (F3, F4):
        A, B = random_invertible(rnd, F, 3), random_invertible(rnd, F, 3)
        q = F.p
        assert la.frob_mat(F, la.mat_mul(F, A, B), q) == la.mat_mul(
            F, la.frob_mat(F, A, q), la.frob_mat(F, B, q))
        assert la.frob_mat(F, la.ident(3), q) == la.ident(3)


# standard zips, transporter and stabilizers -----------------------------------------

def test_standard_zip_flags():
    t = {0: 2, 1: 1, 3: 1}
    M = standard_zip_gl(t, la.ident(4), F2)
    assert M.type() == t
    assert M.C.at(1) == ((1, 0, 0, 0), (0, 1, 0, 0))
    assert M.D.at(0) == ((0, 0, 1, 0), (0, 0, 0, 1))
    A = standard_zip_gl({0: 1, 1: 1}, ANTI, F2)
    assert A.D.at(0) == ((1, 0),)
    assert not iso(A, standard_zip_gl({0: 1, 1: 1}, la.ident(2), F2), 4)
    with pytest.raises(ValidationError):
        standard_zip_gl({0: 1, 1: 1}, ((1, 1), (1, 1)), F2)


def test_isomorphic_over_examples():
    M = standard_zip_gl({0: 1, 1: 1}, ANTI, F2)
    w = isomorphic_over(M, M, 1)
    assert w.degree == 1 and w.matrix == la.ident(2)
    d = datum({0: 1, 1: 1})
    reps = list(representatives(d, F2).values())
    assert isomorphic_over(standard_zip_gl({0: 1, 1: 1}, reps[0], F2),
                           standard_zip_gl({0: 1, 1: 1}, reps[1], F2), 4) is None


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([({0: 1, 1: 1}, F2), ({0: 2, 1: 1}, F2), ({0: 1, 1: 1, 2: 1}, F3),
                        ({0: 1, 1: 1}, F4)]), st.integers(0, 10**6))
def test_zip_group_action_gives_witness(case, seed):
    t, F = case
    rnd = random.Random(seed)
    w = type_weights(t)
    g = random_invertible(rnd, F, len(w))
    gens = zip_group_generators(F, F.q, w)
    e = ZipGroupElement(la.ident(len(w)), la.ident(len(w)))
    for _ in range(6):
        h = rnd.choice(gens)
        e = ZipGroupElement(la.mat_mul(F, e.p_plus, h.p_plus), la.mat_mul(F, e.p_minus, h.p_minus))
    assert in_zip_group(F, F.q, w, e)
    g2 = act_zip_group(F, e, g)
    assert transporter_witness(w, g, g2, F, F.q) is not None
    M, N = standard_zip_gl(t, g, F), standard_zip_gl(t, g2, F)
    wit = isomorphic_over(M, N, 1)
    assert wit is not None and is_isomorphism(wit.matrix, M, N)


@settings(max_examples=30, deadline=None)
@given(zips(fields=(F2, F3, F4), max_n=3), st.integers(0, 10**6))
def test_general_zips_change_of_basis(M, seed):
    F = M.field
    A = random_invertible(random.Random(seed), F, M.n)
    degs, cs, fs = M.adapted
    N = FZip.from_adapted(F, M.q, degs, [la.mat_vec(F, A, c) for c in cs],
                          [la.mat_vec(F, A, f) for f in fs])
    assert is_isomorphism(A, M, N)
    wit = isomorphic_over(M, N, 1)
    assert wit is not None and is_isomorphism(wit.matrix, M, N)
    assert isomorphic_over(N, M, 1) is not None


def test_isomorphism_is_an_equivalence_relation():
    rnd = random.Random(11)
    t = {0: 1, 1: 1}
    gl2 = [g for g in (random_invertible(rnd, F2, 2) for _ in range(12))]
    zs = [standard_zip_gl(t, g, F2) for g in gl2]
    rel = [[iso(a, b) for b in zs] for a in zs]
    for i in range(len(zs)):
        assert rel[i][i]
        for j in range(len(zs)):
            assert rel[i][j] == rel[j][i]
            for k in range(len(zs)):
                if rel[i][j] and rel[j][k]:
                    assert rel[i][k]


def test_stabilizer_lie_dim_examples():
    d = datum({0: 1, 1: 1})
    reps = representatives(d, F2)
    W = d.weyl
    assert reps[W.s(1)] == la.ident(2) and reps[W.e] == ANTI
    assert stabilizer_lie_dim({0: 1, 1: 1}, la.ident(2), F2) == 0
    assert stabilizer_lie_dim({0: 1, 1: 1}, ANTI, F2) == 1
    d3 = datum({0: 2, 1: 1})
    assert stabilizer_lie_dim({0: 2, 1: 1}, representatives(d3, F2)[d3.weyl.s(1)], F2) == 2


@pytest.mark.parametrize("nbar", [{0: 1, 1: 1}, {0: 2, 1: 1}, {0: 1, 1: 2}, {0: 2, 1: 2},
                                  {0: 1, 1: 1, 2: 1}])
@pytest.mark.parametrize("F", [F2, F3], ids=str)
def test_lie_dim_bounds_group_dim(nbar, F):
    d = datum(nbar)
    reps = representatives(d, F)
    for s in build_poset(d).strata:
        lie = stabilizer_lie_dim(nbar, reps[s.rep[0]], F)
        assert lie == s.aut_lie_dim and lie >= s.aut_dim
        assert (lie == s.aut_dim) == s.aut_smooth


def test_stabilizer_points():
    d = datum({0: 1, 1: 1})
    reps = representatives(d, F2)
    open_g = reps[d.weyl.s(1)]
    counts = [stabilizer_points({0: 1, 1: 1}, open_g, F2, m) for m in (1, 2, 3)]
    assert all(c >= 1 for c in counts)
    closed = [stabilizer_points({0: 1, 1: 1}, reps[d.weyl.e], F2, m) for m in (1, 2, 3)]
    assert closed[2] > closed[0]
    with pytest.raises(ResourceError):
        stabilizer_points({0: 2, 1: 1}, la.ident(3), F2, 3, guard=4)


# classification ----------------------------------------------------------------

def test_classify_gl2():
    c = classify_bruteforce({0: 1, 1: 1}, 2, 4)
    assert len(c.rows) == 6 and len(c.classes()) == 2
    assigned = {g: w for g, w, _ in c.rows}
    d = datum({0: 1, 1: 1})
    for w, g in representatives(d, F2).items():
        assert assigned[g] == w
    for orbit in zip_group_orbits_gl2_f2():
        assert len({assigned[g] for g in orbit}) == 1


def test_classify_gl3():
    c = classify_bruteforce({0: 2, 1: 1}, 2, 4)
    assert len(c.rows) == 168 and len(c.classes()) == 3
    assert c.emit("tsv").count("\n") == 169


def test_classify_bound_too_small():
    with pytest.raises(ConsistencyError):
        classify_bruteforce({0: 1, 1: 1}, 3, 1)


def test_classify_guards():
    with pytest.raises(ResourceError):
        classify_bruteforce({0: 2, 1: 2}, 2)
    with pytest.raises(ResourceError):
        classify_bruteforce({0: 1, 1: 1}, 5)


def test_perm_matrix_is_multiplicative():
    d = datum({0: 2, 1: 2})
    W = d.weyl
    for u in W.elements()[::3]:
        for v in W.elements()[::5]:
            assert la.mat_mul(F2, perm_matrix(u), perm_matrix(v)) == perm_matrix(
                W.mul(u, v))


def test_field_mismatch():
    with pytest.raises(ValidationError):
        tensor(make_tate(F2, 0), make_tate(F3, 0))
    with pytest.raises(ValidationError):
        FZip.from_adapted(F2, 4, [0], [(1,)], [(1,)])
