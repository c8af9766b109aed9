"""Classical Weyl groups realized as signed permutations.

An element ``w`` is a tuple ``(w(1), ..., w(r))`` of signed integers with
``w(-i) = -w(i)``.  It acts on coordinate vectors by ``w e_i = sign(w(i)) e_|w(i)|``.
Family A uses ``r = rank + 1`` coordinates (permutations of S_{rank+1});
B, C and D use ``r = rank`` coordinates.

Simple reflections are indexed ``1..rank`` and subsets of S are frozensets
of these indices.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from math import factorial
from typing import Iterable

from .errors import ResourceError

GUARD = 10**7

Element = tuple[int, ...]


def identity(r: int) -> Element:
    return tuple(range(1, r + 1))


def compose(u: Element, v: Element) -> Element:
    """The product ``uv`` (apply ``v`` first)."""
    return tuple(u[x - 1] if x > 0 else -u[-x - 1] for x in v)


def inverse(w: Element) -> Element:
    out = [0] * len(w)
    for i, x in enumerate(w, 1):
        out[abs(x) - 1] = i if x > 0 else -i
    return tuple(out)


def act(w: Element, vec: tuple[int, ...]) -> tuple[int, ...]:
    out = [0] * len(vec)
    for i, x in enumerate(w):
        out[abs(x) - 1] = vec[i] if x > 0 else -vec[i]
    return tuple(out)


def conjugate(g: Element, w: Element) -> Element:
    """``g w g^-1``."""
    return compose(compose(g, w), inverse(g))


def _basis(r, i, c=1):
    v = [0] * r
    v[i] = c
    return v


@dataclass(frozen=True)
class RootSystem:
    family: str
    rank: int
    ncoords: int
    roots: tuple[tuple[int, ...], ...]
    positive_roots: tuple[tuple[int, ...], ...]
    simple_roots: tuple[tuple[int, ...], ...]


def root_system(family: str, rank: int) -> RootSystem:
    if family not in "ABCD" or len(family) != 1 or rank < 0:
        raise ValueError(f"unknown root system {family}{rank}")
    r = rank + 1 if family == "A" else rank
    pos = []

    def ee(i, j, sj):
        v = [0] * r
        v[i] = 1
        v[j] = sj
        return tuple(v)

    for i in range(r):
        for j in range(i + 1, r):
            pos.append(ee(i, j, -1))
            if family != "A":
                pos.append(ee(i, j, 1))
        if family == "B":
            pos.append(tuple(_basis(r, i)))
        elif family == "C":
            pos.append(tuple(_basis(r, i, 2)))
    simple = [ee(i, i + 1, -1) for i in range(r - 1)]
    if family == "B" and r >= 1:
        simple.append(tuple(_basis(r, r - 1)))
    elif family == "C" and r >= 1:
        simple.append(tuple(_basis(r, r - 1, 2)))
    elif family == "D" and r >= 2:
        simple.append(ee(r - 2, r - 1, 1))
    if family == "D" and r == 1:
        simple = []
    roots = tuple(pos) + tuple(tuple(-c for c in a) for a in pos)
    return RootSystem(family, rank, r, roots, tuple(pos), tuple(simple))


def reflection(alpha: tuple[int, ...]) -> Element:
    """The reflection in ``alpha`` as a signed permutation."""
    r = len(alpha)
    aa = sum(c * c for c in alpha)
    images = []
    for i in range(r):
        v = _basis(r, i)
        k = 2 * alpha[i] // aa if (2 * alpha[i]) % aa == 0 else None
        if k is None:
            raise ValueError("not a crystallographic reflection on the lattice")
        v = [v[j] - k * alpha[j] for j in range(r)]
        (j,) = [j for j in range(r) if v[j]]
        images.append((j + 1) * v[j])
    return tuple(images)


@dataclass(frozen=True)
class Omega:
    """Finite group acting on W by diagram automorphisms.

    ``perms[k]`` is a signed permutation realizing conjugation by element ``k``,
    or ``None`` if ``k`` acts trivially on W.  Element 0 is the identity.
    """

    labels: tuple[str, ...]
    table: tuple[tuple[int, ...], ...]
    perms: tuple[Element | None, ...]

    def __len__(self):
        return len(self.labels)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return next(b for b in range(len(self)) if self.table[a][b] == 0)

    def acts_trivially(self, a: int) -> bool:
        return self.perms[a] is None

    def act(self, a: int, w: Element) -> Element:
        p = self.perms[a]
        return w if p is None else conjugate(p, w)


TRIVIAL_OMEGA = Omega(("1",), ((0,),), (None,))


def sign_flip_omega(m: int) -> Omega:
    eps = tuple(range(1, m)) + (-m,)
    return Omega(("1", "eps"), ((0, 1), (1, 0)), (None, eps))


CENTRAL_OMEGA = Omega(("1", "-1"), ((0, 1), (1, 0)), (None, None))


class WeylSystem:
    """A Weyl group with its root system, Ω and the Frobenius φ̄.

    φ̄ acts on W as conjugation by ``frob`` (``None`` for the identity) and
    trivially on Ω.
    """

    def __init__(self, family: str, rank: int, omega: Omega = TRIVIAL_OMEGA,
                 frob: Element | None = None, guard: int = GUARD):
        self.root_system = root_system(family, rank)
        self.family = family
        self.r = self.root_system.ncoords
        self.omega = omega
        self.frob = frob
        self.guard = guard
        self.simples = tuple(reflection(a) for a in self.root_system.simple_roots)
        self.rank = len(self.simples)
        self._simple_index = {s: i for i, s in enumerate(self.simples, 1)}
        self._pos = frozenset(self.root_system.positive_roots)
        self._len: dict[Element, int] = {}
        self._elements: list[Element] | None = None
        self._index: dict[Element, int] = {}
        self._lower: list[int] | None = None
        for k in range(len(omega)):
            for s in self.simples:
                if omega.act(k, s) not in self._simple_index:
                    raise ValueError("Ω does not normalize S")

    def __repr__(self):
        return f"WeylSystem({self.family}{self.rank})"

    # basic structure -----------------------------------------------------
    @property
    def e(self) -> Element:
        return identity(self.r)

    @property
    def S(self) -> frozenset[int]:
        return frozenset(range(1, self.rank + 1))

    def s(self, i: int) -> Element:
        return self.simples[i - 1]

    def simple_index(self, w: Element) -> int | None:
        """``i`` if ``w`` is the simple reflection ``s_i``, else None."""
        return self._simple_index.get(w)

    def mul(self, *ws: Element) -> Element:
        out = self.e
        for w in ws:
            out = compose(out, w)
        return out

    def from_word(self, word: Iterable[int]) -> Element:
        out = self.e
        for i in word:
            out = compose(out, self.simples[i - 1])
        return out

    def order(self) -> int:
        m = self.root_system.rank
        if self.family == "A":
            return factorial(m + 1)
        if self.family in "BC":
            return 2**m * factorial(m)
        return 2 ** (m - 1) * factorial(m) if m >= 2 else 1

    def is_element(self, w: Element) -> bool:
        if len(w) != self.r or sorted(abs(x) for x in w) != list(range(1, self.r + 1)):
            return False
        neg = sum(1 for x in w if x < 0)
        if self.family == "A":
            return neg == 0
        if self.family == "D":
            return neg % 2 == 0
        return True

    # length and descents ------------------------------------------------
    def length(self, w: Element) -> int:
        n = self._len.get(w)
        if n is None:
            n = sum(1 for a in self.root_system.positive_roots if act(w, a) not in self._pos)
            self._len[w] = n
        return n

    def is_left_descent(self, i: int, w: Element) -> bool:
        return act(inverse(w), self.root_system.simple_roots[i - 1]) not in self._pos

    def is_right_descent(self, i: int, w: Element) -> bool:
        return act(w, self.root_system.simple_roots[i - 1]) not in self._pos

    def word(self, w: Element) -> tuple[int, ...]:
        """Lexicographically smallest reduced word."""
        out = []
        while w != self.e:
            i = next(i for i in range(1, self.rank + 1) if self.is_left_descent(i, w))
            out.append(i)
            w = compose(self.simples[i - 1], w)
        return tuple(out)

    def word_str(self, w: Element) -> str:
        word = self.word(w)
        return "e" if not word else "".join(f"s{i}" for i in word)

    # Bruhat order -------------------------------------------------------
    def bruhat_leq(self, u: Element, w: Element) -> bool:
        while True:
            if self.length(u) > self.length(w):
                return False
            if w == self.e:
                return u == w
            i = next(i for i in range(1, self.rank + 1) if self.is_left_descent(i, w))
            s = self.simples[i - 1]
            if self.is_left_descent(i, u):
                u = compose(s, u)
            w = compose(s, w)

    # enumeration ----------------------------------------------------------
    def _generate(self, gens: list[Element]) -> list[Element]:
        seen = {self.e: None}
        queue = deque([self.e])
        out = [self.e]
        while queue:
            w = queue.popleft()
            for s in gens:
                v = compose(w, s)
                if v not in seen:
                    seen[v] = None
                    out.append(v)
                    if len(out) > self.guard:
                        raise ResourceError(f"group exceeds enumeration guard {self.guard}")
                    queue.append(v)
        return out

    def elements(self) -> list[Element]:
        """All of W in breadth-first (hence length-nondecreasing) order."""
        if self._elements is None:
            if self.order() > self.guard:
                raise ResourceError(f"|W| = {self.order()} exceeds enumeration guard {self.guard}")
            self._elements = self._generate(list(self.simples))
            self._index = {w: k for k, w in enumerate(self._elements)}
        return self._elements

    def index(self, w: Element) -> int:
        self.elements()
        return self._index[w]

    def parabolic_elements(self, K: Iterable[int], guard: int | None = None) -> list[Element]:
        gens = [self.simples[i - 1] for i in sorted(K)]
        old = self.guard
        if guard is not None:
            self.guard = guard
        try:
            return self._generate(gens)
        finally:
            self.guard = old

    def longest_element(self, K: Iterable[int] | None = None) -> Element:
        K = self.S if K is None else frozenset(K)
        w = self.e
        while True:
            i = next((i for i in sorted(K) if not self.is_right_descent(i, w)), None)
            if i is None:
                return w
            w = compose(w, self.simples[i - 1])

    def min_coset_reps(self, K: Iterable[int], side: str = "left") -> list[Element]:
        """Minimal representatives: ``left`` gives ᴷW, ``right`` gives Wᴷ."""
        K = sorted(K)
        if side == "left":
            test = self.is_left_descent
        elif side == "right":
            test = self.is_right_descent
        else:
            raise ValueError(side)
        return [w for w in self.elements() if not any(test(i, w) for i in K)]

    def min_double_coset_rep(self, K: Iterable[int], K2: Iterable[int], w: Element) -> Element:
        K, K2 = sorted(K), sorted(K2)
        while True:
            i = next((i for i in K if self.is_left_descent(i, w)), None)
            if i is not None:
                w = compose(self.simples[i - 1], w)
                continue
            i = next((i for i in K2 if self.is_right_descent(i, w)), None)
            if i is None:
                return w
            w = compose(w, self.simples[i - 1])

    def lower_masks(self) -> list[int]:
        """Bit masks of Bruhat lower intervals, indexed like ``elements()``."""
        if self._lower is None:
            els = self.elements()
            left = [[self._index[compose(s, w)] for w in els] for s in self.simples]
            masks = [0] * len(els)
            masks[0] = 1
            for k in range(1, len(els)):
                w = els[k]
                i = next(i for i in range(1, self.rank + 1) if self.is_left_descent(i, w))
                below = masks[left[i - 1][k]]
                shifted = 0
                m, j = below, 0
                perm = left[i - 1]
                while m:
                    if m & 1:
                        shifted |= 1 << perm[j]
                    m >>= 1
                    j += 1
                masks[k] = below | shifted
            self._lower = masks
        return self._lower

    # Frobenius and the extended group ---------------------------------------
    def phibar(self, w: Element) -> Element:
        return w if self.frob is None else conjugate(self.frob, w)

    def phibar_inv(self, w: Element) -> Element:
        return w if self.frob is None else conjugate(inverse(self.frob), w)

    def phibar_subset(self, K: Iterable[int]) -> frozenset[int]:
        return frozenset(self._simple_index[self.phibar(self.simples[i - 1])] for i in K)

    def conj_subset(self, g: Element, K: Iterable[int]) -> frozenset[int] | None:
        """``g K g^-1`` if it lies in S, else None."""
        out = set()
        for i in K:
            j = self.simple_index(conjugate(g, self.simples[i - 1]))
            if j is None:
                return None
            out.add(j)
        return frozenset(out)

    def ext_mul(self, a: tuple[Element, int], b: tuple[Element, int]) -> tuple[Element, int]:
        (w1, o1), (w2, o2) = a, b
        return compose(w1, self.omega.act(o1, w2)), self.omega.mul(o1, o2)

    def ext_inv(self, a: tuple[Element, int]) -> tuple[Element, int]:
        w, o = a
        oi = self.omega.inv(o)
        return self.omega.act(oi, inverse(w)), oi
