"""Strata ᴵW·Ω modulo Θ, the order ≺, and per-stratum invariants."""
from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import ConsistencyError, ResourceError
from .weyl import Element, compose, inverse
from .zipdatum import ZipDatum

LEVI_GUARD = 10**5
POSET_GUARD = 20000

Ext = tuple[Element, int]


def enumerate_extended(d: ZipDatum) -> list[Ext]:
    W = d.weyl
    return [(w, o) for w in W.min_coset_reps(d.I, "left") for o in range(len(W.omega))]


def theta_act(d: ZipDatum, theta: int, a: Ext) -> Ext:
    W = d.weyl
    th = (W.e, theta)
    return W.ext_mul(W.ext_mul(th, a), W.ext_inv(d.psi_ext(th)))


def sort_key(d: ZipDatum, a: Ext):
    W = d.weyl
    return (W.length(a[0]), W.word(a[0]), a[1])


def theta_orbits(d: ZipDatum, elems: list[Ext]) -> list[list[Ext]]:
    """Θ-orbits, each sorted with its canonical representative first."""
    seen: set[Ext] = set()
    orbits = []
    for a in sorted(elems, key=lambda a: sort_key(d, a)):
        if a in seen:
            continue
        orbit = sorted({theta_act(d, t, a) for t in d.theta}, key=lambda a: sort_key(d, a))
        seen.update(orbit)
        orbits.append(orbit)
    return orbits


def _levi_hats(d: ZipDatum) -> list[Ext]:
    W = d.weyl
    return [(v, t) for v in W.parabolic_elements(d.I, guard=LEVI_GUARD) for t in d.theta]


def twisted_conjugates(d: ZipDatum, a: Ext, vhats: list[Ext] | None = None) -> set[Ext]:
    """{v̂ a ψ̂(v̂)⁻¹ : v̂ ∈ W_I·Θ}."""
    W = d.weyl
    vhats = _levi_hats(d) if vhats is None else vhats
    return {W.ext_mul(W.ext_mul(vh, a), W.ext_inv(d.psi_ext(vh))) for vh in vhats}


def precedes(d: ZipDatum, a: Ext, b: Ext) -> bool:
    W = d.weyl
    return any(t[1] == b[1] and W.bruhat_leq(t[0], b[0]) for t in twisted_conjugates(d, a))


def precedes_split(d: ZipDatum, a: Ext, b: Ext) -> bool:
    """The shortcut for split data with central w0: v w' w0,I v⁻¹ w0,I ≤ w."""
    W = d.weyl
    w0I = W.longest_element(d.I)
    if a[1] != b[1]:
        return False
    for v in W.parabolic_elements(d.I, guard=LEVI_GUARD):
        if W.bruhat_leq(W.mul(v, a[0], w0I, inverse(v), w0I), b[0]):
            return True
    return False


def relation_matrix(d: ZipDatum, elems: list[Ext]) -> list[list[bool]]:
    """≺ on ``elems`` via Bruhat interval bit masks."""
    W = d.weyl
    masks = W.lower_masks()
    vhats = _levi_hats(d)
    rows = []
    for a in elems:
        below: dict[int, int] = {}
        for t in twisted_conjugates(d, a, vhats):
            below[t[1]] = below.get(t[1], 0) | (1 << W.index(t[0]))
        rows.append([bool(masks[W.index(b[0])] & below.get(b[1], 0)) for b in elems])
    return rows


def check_partial_order(rel: list[list[bool]]) -> None:
    n = len(rel)
    for i in range(n):
        if not rel[i][i]:
            raise ConsistencyError(f"≺ not reflexive at {i}")
        for j in range(i + 1, n):
            if rel[i][j] and rel[j][i]:
                raise ConsistencyError(f"≺ not antisymmetric at {i},{j}")
    for i in range(n):
        for j in range(n):
            if rel[i][j]:
                for k in range(n):
                    if rel[j][k] and not rel[i][k]:
                        raise ConsistencyError(f"≺ not transitive at {i},{j},{k}")


def hasse_edges(rel: list[list[bool]]) -> list[tuple[int, int]]:
    n = len(rel)
    edges = []
    for i in range(n):
        for j in range(n):
            if i != j and rel[i][j] and not any(
                    k not in (i, j) and rel[i][k] and rel[k][j] for k in range(n)):
                edges.append((i, j))
    return edges


@dataclass(frozen=True)
class AutInvariants:
    aut_dim: int | None
    aut_lie_dim: int | None
    aut_smooth: bool | None
    v_min: Element | None
    K_w: frozenset[int]


def k_w(d: ZipDatum, w: Element) -> frozenset[int]:
    """Largest subset of J ∩ w⁻¹Iw stable under τ = int(x)∘φ̄∘int(w)."""
    W = d.weyl
    wi = inverse(w)

    def tau(i):
        u = compose(compose(w, W.s(i)), wi)
        return W.simple_index(compose(compose(d.x, W.phibar(u)), d.x_inv))

    def tau_inv(i):
        u = W.phibar_inv(compose(compose(d.x_inv, W.s(i)), d.x))
        return W.simple_index(compose(compose(wi, u), w))

    K = {j for j in d.J if W.simple_index(compose(compose(w, W.s(j)), wi)) in d.I}
    changed = True
    while changed:
        changed = False
        for j in sorted(K):
            if tau(j) not in K or tau_inv(j) not in K:
                K.discard(j)
                changed = True
    return frozenset(K)


def aut_invariants(d: ZipDatum, a: Ext) -> AutInvariants:
    W = d.weyl
    w = a[0]
    K = k_w(d, w)
    if not d.connected:
        return AutInvariants(None, None, None, None, K)
    v = W.min_double_coset_rep(d.I, d.J, w)
    aut = d.dim - W.length(w)
    lie = d.dim - W.length(v)
    return AutInvariants(aut, lie, v == w, v, K)


@dataclass(frozen=True)
class Stratum:
    rep: Ext
    orbit: tuple[Ext, ...]
    word: tuple[int, ...]
    label: str
    length: int
    codim: int
    aut: AutInvariants

    @property
    def aut_dim(self):
        return self.aut.aut_dim

    @property
    def aut_lie_dim(self):
        return self.aut.aut_lie_dim

    @property
    def aut_smooth(self):
        return self.aut.aut_smooth


@dataclass
class StratumPoset:
    datum: ZipDatum
    strata: list[Stratum]
    leq: list[list[bool]]
    hasse: list[tuple[int, int]]

    def __len__(self):
        return len(self.strata)

    def maximal(self) -> list[int]:
        n = len(self.strata)
        return [i for i in range(n) if not any(self.leq[i][j] for j in range(n) if j != i)]

    def minimal(self) -> list[int]:
        n = len(self.strata)
        return [i for i in range(n) if not any(self.leq[j][i] for j in range(n) if j != i)]


def element_label(d: ZipDatum, a: Ext) -> str:
    W = d.weyl
    s = W.word_str(a[0])
    return s if len(W.omega) == 1 else f"{s}.{W.omega.labels[a[1]]}"


def build_poset(d: ZipDatum, guard: int = POSET_GUARD) -> StratumPoset:
    W = d.weyl
    if W.order() > guard:
        raise ResourceError(f"|W| = {W.order()} exceeds poset guard {guard}")
    orbits = theta_orbits(d, enumerate_extended(d))
    reps = [o[0] for o in orbits]
    rel = relation_matrix(d, reps)
    check_partial_order(rel)
    strata = []
    for orbit in orbits:
        a = orbit[0]
        ln = W.length(a[0])
        strata.append(Stratum(a, tuple(orbit), W.word(a[0]), element_label(d, a), ln,
                              d.dim - ln, aut_invariants(d, a)))
    for i, si in enumerate(strata):
        for j, sj in enumerate(strata):
            if i != j and rel[i][j] and si.length >= sj.length:
                raise ConsistencyError("≺ does not increase length")
    return StratumPoset(d, strata, rel, hasse_edges(rel))


def _fmt(v):
    if v is None:
        return "NA"
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def emit(p: StratumPoset, fmt: str = "tsv") -> str:
    d = p.datum
    if fmt == "dot":
        lines = ["digraph strata {", "  rankdir=BT;"]
        for k, s in enumerate(p.strata):
            lines.append(f'  n{k} [label="{s.label} | {s.length} | {s.codim}"];')
        for i, j in p.hasse:
            lines.append(f"  n{i} -> n{j};")
        lines.append("}")
        return "\n".join(lines) + "\n"
    if fmt == "json":
        doc = {
            "datum": {
                "family": str(d.family),
                "nbar": {str(i): m for i, m in d.ctype.nbar},
                "I": sorted(d.I),
                "J": sorted(d.J),
                "dim": d.dim,
            },
            "strata": [
                {
                    "word": d.weyl.word_str(s.rep[0]),
                    "omega": d.weyl.omega.labels[s.rep[1]],
                    "length": s.length,
                    "codim": s.codim,
                    "aut_dim": s.aut_dim,
                    "aut_lie_dim": s.aut_lie_dim,
                    "aut_smooth": s.aut_smooth,
                    "orbit_size": len(s.orbit),
                }
                for s in p.strata
            ],
            "hasse": [[i, j] for i, j in p.hasse],
        }
        return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
    if fmt == "tsv":
        cols = ["word", "omega", "length", "codim", "aut_dim", "aut_lie_dim", "aut_smooth",
                "orbit_size"]
        rows = ["\t".join(cols)]
        for s in p.strata:
            vals = [d.weyl.word_str(s.rep[0]), d.weyl.omega.labels[s.rep[1]], s.length,
                    s.codim, s.aut_dim, s.aut_lie_dim, s.aut_smooth, len(s.orbit)]
            rows.append("\t".join(_fmt(v) for v in vals))
        return "\n".join(rows) + "\n"
    raise ValueError(f"unknown format {fmt!r}")
