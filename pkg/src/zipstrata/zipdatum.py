"""Group families, cocharacter types and the derived zip datum."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .errors import ConsistencyError, ValidationError
from .weyl import (CENTRAL_OMEGA, TRIVIAL_OMEGA, Element, WeylSystem, act, compose,
                   inverse, sign_flip_omega)

FAMILIES = ("GL", "SL", "Sp", "CSp", "O", "CO", "U", "CU")
CONNECTED = {"GL", "SL", "Sp", "CSp", "U", "CU"}


@dataclass(frozen=True)
class GroupFamily:
    name: str
    n: int
    odd_char: bool = False

    def __post_init__(self):
        if self.name not in FAMILIES:
            raise ValidationError(f"unknown family {self.name!r}")
        if self.n < 1:
            raise ValidationError("n must be at least 1")

    def __str__(self):
        return f"{self.name}({self.n})"


@dataclass(frozen=True)
class CocharacterType:
    """Sparse map ``i -> n_i`` plus an optional multiplier weight ``d``."""

    nbar: tuple[tuple[int, int], ...]
    multiplier: int | None = None

    @classmethod
    def of(cls, nbar: dict[int, int], multiplier: int | None = None) -> "CocharacterType":
        return cls(tuple(sorted((i, m) for i, m in nbar.items() if m)), multiplier)

    @classmethod
    def parse(cls, text: str, multiplier: int | None = None) -> "CocharacterType":
        """Parse ``"i:n_i,j:n_j"``."""
        out: dict[int, int] = {}
        try:
            for part in text.split(","):
                part = part.strip()
                if not part:
                    continue
                i, m = part.split(":")
                i, m = int(i), int(m)
                if m < 0:
                    raise ValidationError("multiplicities must be non-negative")
                out[i] = out.get(i, 0) + m
        except ValueError as exc:
            if isinstance(exc, ValidationError):
                raise
            raise ValidationError(f"cannot parse type vector {text!r}") from None
        return cls.of(out, multiplier)

    def as_dict(self) -> dict[int, int]:
        return dict(self.nbar)

    def get(self, i: int) -> int:
        return self.as_dict().get(i, 0)

    @property
    def rank(self) -> int:
        return sum(m for _, m in self.nbar)

    def weights(self) -> list[int]:
        """All weights with multiplicity, weakly decreasing."""
        return sorted((i for i, m in self.nbar for _ in range(m)), reverse=True)

    def __str__(self):
        s = ",".join(f"{i}:{m}" for i, m in self.nbar)
        return s if self.multiplier is None else f"{s};d={self.multiplier}"


def _symmetric_about(t: CocharacterType, d: int) -> bool:
    nb = t.as_dict()
    return all(nb.get(d - i, 0) == m for i, m in nb.items())


def _center(t: CocharacterType) -> int | None:
    """The unique ``d`` with ``n_i = n_{d-i}``, if any."""
    if not t.nbar:
        return None
    d = t.nbar[0][0] + t.nbar[-1][0]
    return d if _symmetric_about(t, d) else None


def validate_type(family: GroupFamily, t: CocharacterType) -> int:
    """Check the family's condition on ``t``; return the base-field degree marker.

    The marker is 2 exactly for unitary types that need the quadratic field.
    """
    if any(m < 0 for _, m in t.nbar):
        raise ValidationError("multiplicities must be non-negative")
    if t.rank != family.n:
        raise ValidationError(f"sum of n_i is {t.rank}, expected n = {family.n}")
    name, n = family.name, family.n
    if t.multiplier is not None and name not in ("CSp", "CO", "CU"):
        raise ValidationError(f"{name} takes no multiplier weight")
    if name in ("O", "CO") and not family.odd_char:
        raise ValidationError("q must be odd for orthogonal families")
    if name == "SL" and sum(i * m for i, m in t.nbar) != 0:
        raise ValidationError("Σ i·n_i ≠ 0")
    if name in ("Sp", "CSp") and n % 2:
        raise ValidationError("n odd")
    if name in ("Sp", "O") and not _symmetric_about(t, 0):
        raise ValidationError("n_i ≠ n_{−i}")
    if name in ("CSp", "CO"):
        d = _center(t)
        if d is None or (t.multiplier is not None and d != t.multiplier):
            raise ValidationError("n_i ≠ n_{d−i}")
        if name == "CO" and n % 2 and d % 2:
            raise ValidationError("n_i ≠ n_{d−i}")
    if name == "U":
        return 1 if _symmetric_about(t, 0) else 2
    if name == "CU":
        if t.multiplier is None:
            raise ValidationError("CU requires a multiplier weight d")
        return 1 if _symmetric_about(t, t.multiplier) else 2
    return 1


def multiplier_of(family: GroupFamily, t: CocharacterType) -> int:
    if family.name in ("CSp", "CO"):
        d = _center(t)
        return d if d is not None else 0
    if family.name == "CU":
        return t.multiplier or 0
    return 0


def weyl_system(family: GroupFamily) -> WeylSystem:
    name, n = family.name, family.n
    m = n // 2
    if name in ("GL", "SL"):
        return WeylSystem("A", n - 1)
    if name in ("U", "CU"):
        return WeylSystem("A", n - 1, frob=tuple(range(n, 0, -1)))
    if name in ("Sp", "CSp"):
        return WeylSystem("C", m)
    if n % 2:
        return WeylSystem("B", m, omega=CENTRAL_OMEGA if name == "O" else TRIVIAL_OMEGA)
    return WeylSystem("D", m, omega=sign_flip_omega(m))


def chi_weights(family: GroupFamily, t: CocharacterType) -> tuple[int, ...]:
    """Dominant cocharacter in the coordinates of the family's root system.

    For B/C/D the coordinates are doubled (``2λ - d``) to stay integral.
    """
    lam = t.weights()
    if family.name in ("GL", "SL", "U", "CU"):
        return tuple(lam)
    d = multiplier_of(family, t)
    return tuple(2 * x - d for x in lam[: family.n // 2])


def theta_rule(family: GroupFamily, t: CocharacterType) -> int:
    """|Θ| predicted by the family rules (connected families have Θ = 1)."""
    if family.name == "O":
        return 2 if t.get(0) > 0 else 1
    if family.name == "CO":
        if family.n % 2:
            return 1
        d = multiplier_of(family, t)
        return 2 if d % 2 == 0 and t.get(d // 2) > 0 and t.get(d // 2) % 2 == 0 else 1
    return 1


def _pair(a, b):
    return sum(x * y for x, y in zip(a, b))


@dataclass
class ZipDatum:
    family: GroupFamily
    ctype: CocharacterType
    weyl: WeylSystem
    chi: tuple[int, ...]
    I: frozenset[int]
    J: frozenset[int]
    x: Element
    y: Element
    theta: tuple[int, ...]
    dim: int
    base_degree: int = 1
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def connected(self) -> bool:
        return len(self.weyl.omega) == 1

    @cached_property
    def x_inv(self) -> Element:
        return inverse(self.x)

    def psi(self, w: Element) -> Element:
        """ψ̂ on W."""
        return compose(compose(self.x, self.weyl.phibar(w)), self.x_inv)

    def psi_ext(self, a: tuple[Element, int]) -> tuple[Element, int]:
        W = self.weyl
        w, o = a
        b = W.ext_mul((self.x, 0), (W.phibar(w), o))
        return W.ext_mul(b, (self.x_inv, 0))

    def summary(self) -> dict:
        W = self.weyl
        return {
            "family": str(self.family),
            "nbar": {str(i): m for i, m in self.ctype.nbar},
            "I": sorted(self.I),
            "J": sorted(self.J),
            "x": W.word_str(self.x),
            "y": W.word_str(self.y),
            "theta": len(self.theta),
            "dim": self.dim,
        }


def build_zip_datum(family: GroupFamily, t: CocharacterType) -> ZipDatum:
    marker = validate_type(family, t)
    W = weyl_system(family)
    chi = chi_weights(family, t)
    I = frozenset(i for i in W.S if act(W.s(i), chi) == chi)
    dim = sum(1 for a in W.root_system.positive_roots if _pair(a, chi) > 0)
    w0 = W.longest_element()
    w0I = W.longest_element(I)
    y = compose(w0, w0I)
    J = W.phibar_subset(W.conj_subset(w0, I))
    K = {W.simple_index(W.phibar_inv(W.s(j))) for j in J}
    if compose(W.longest_element(K), w0) != y:
        raise ConsistencyError("y = w0 w0,I disagrees with w0,φ̄⁻¹(J) w0")
    x = W.min_double_coset_rep(J, W.phibar_subset(I), w0)
    if x != W.phibar(y):
        raise ConsistencyError("x differs from φ̄(y)")
    omega = W.omega
    theta = []
    for k in range(len(omega)):
        p = omega.perms[k]
        if p is None or act(p, chi) == chi:
            theta.append(k)
    datum = ZipDatum(family, t, W, chi, I, J, x, y, tuple(theta), dim, marker)
    if len(theta) != theta_rule(family, t):
        raise ConsistencyError("Θ differs from the family rule")
    if {W.simple_index(datum.psi(W.s(i))) for i in I} != set(J):
        raise ConsistencyError("ψ̂(I) ≠ J")
    for k in theta:
        if datum.psi_ext((W.e, k)) != (W.e, k):
            raise ConsistencyError("ψ̂ does not fix Θ")
    return datum
