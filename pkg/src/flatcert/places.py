"""Places, drift profiles, and the total element classification.

A det-1 rational matrix moves in one symmetric-space factor per complex
embedding (aggregated here through the regular representation) and one
building factor per prime dividing an entry denominator.  Its drift
profile collects, per place, the sorted log-moduli (archimedean) or Newton
valuations (p-adic) of its eigenvalues; the classification decision tree
is exact: every tag is decided with integer/rational arithmetic only, the
floating archimedean numbers are payload, never evidence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DeterminantNotOne, NotBallistic, PlaceSetIncomplete
from .exact.newton import newton_slopes
from .exact.poly import Poly, cyclotomic_index, factor_q
from .exact.roots import complex_roots
from .linalg import SqMatrix, charpoly, is_diagonalizable, order_bound
from .parallel import pmap

__all__ = [
    "PlaceSet",
    "DriftProfile",
    "Classification",
    "discover_places",
    "drift_profile",
    "classify",
    "direction_profile",
    "DirectionProfile",
]


@dataclass(frozen=True)
class PlaceSet:
    """The finitely many places relevant to a generating set: one aggregate
    archimedean place plus the primes dividing entry denominators."""

    primes: tuple[int, ...]
    archimedean: bool = True

    def labels(self) -> list[str]:
        out = ["arch"] if self.archimedean else []
        out.extend(str(p) for p in self.primes)
        return out


@dataclass(frozen=True)
class DriftProfile:
    """Per-place sorted (descending) eigenvalue drift of one element."""

    arch: tuple[float, ...]
    padic: dict[int, tuple[Fraction, ...]]
    label: str | None = None

    def nonarch_is_zero(self) -> bool:
        return all(v == 0 for vals in self.padic.values() for v in vals)

    def length2_arch(self) -> float:
        return sum(x * x for x in self.arch)

    def length2_nonarch(self) -> Fraction:
        return sum((v * v for vals in self.padic.values() for v in vals), Fraction(0))


@dataclass(frozen=True)
class Classification:
    """Total, mutually exclusive tag for a det-1 matrix.

    order is the k of FiniteOrder(k) / VirtuallyUnipotent(k); the last
    three fields are the Ballistic payload.
    """

    tag: str
    order: int | None = None
    diagonalizable: bool | None = None
    length2_arch: float | None = None
    length2_nonarch: Fraction | None = None

    @property
    def is_ballistic(self) -> bool:
        return self.tag == "Ballistic"

    def __str__(self):
        if self.order is not None:
            return f"{self.tag}({self.order})"
        return self.tag


def _check_det_one(m: SqMatrix, name: str | None = None):
    d = m.det()
    if d != 1:
        raise DeterminantNotOne(name=name, det=d)


def discover_places(gens: list[SqMatrix]) -> PlaceSet:
    """Primes dividing any entry denominator of any generator.

    Inverses contribute nothing new: adjugate entries have denominators
    dividing products of entry denominators, and det = 1.
    """
    from math import lcm

    from .exact.integers import prime_factors

    denom = 1
    for g in gens:
        _check_det_one(g)
        denom = lcm(denom, g.denominator_lcm())
    primes = tuple(p for p, _ in prime_factors(denom))
    return PlaceSet(primes=primes)


def _check_places_complete(m: SqMatrix, places: PlaceSet):
    from .exact.integers import prime_factors

    denom = m.denominator_lcm()
    missing = [p for p, _ in prime_factors(denom) if p not in places.primes]
    if missing:
        raise PlaceSetIncomplete(missing)


def _arch_drift(cp: Poly, n: int, tol: float = 1e-12) -> list[float]:
    """Sorted log-moduli of the roots of cp.

    Computed per irreducible factor so that cyclotomic factors contribute
    exact 0.0 coordinates: a neutral direction must never pick up floating
    fuzz, or the positive-definiteness tests downstream would see it as a
    spurious ballistic direction.
    """
    bound = order_bound(n)
    arch: list[float] = []
    for q, e in factor_q(cp):
        if cyclotomic_index(q, bound) is not None:
            arch.extend([0.0] * (q.degree * e))
            continue
        for cluster in complex_roots(q, tol):
            arch.extend([math.log(abs(cluster.value))] * (cluster.multiplicity * e))
    arch.sort(reverse=True)
    return arch


def drift_profile(
    m: SqMatrix, places: PlaceSet, label: str | None = None, *, tol: float = 1e-12
) -> DriftProfile:
    """Sorted per-place drift coordinates of a det-1 rational matrix."""
    _check_det_one(m)
    _check_places_complete(m, places)
    cp = charpoly(m)
    arch = _arch_drift(cp, m.n, tol)
    slope_list = pmap(lambda p: newton_slopes(cp, p), places.primes)
    padic = {s.prime: s.valuations for s in slope_list}
    return DriftProfile(arch=tuple(arch), padic=padic, label=label)


def _quasi_unipotent_order(cp: Poly, n: int) -> int | None:
    """lcm of the cyclotomic indices of the irreducible factors of cp, or
    None if some factor is not cyclotomic.

    Valid only when cp has integer coefficients: by Kronecker, a monic
    integer irreducible with all roots on the unit circle is cyclotomic.
    """
    bound = order_bound(n)
    k0 = 1
    for q, _ in factor_q(cp):
        k = cyclotomic_index(q, bound)
        if k is None:
            return None
        k0 = math.lcm(k0, k)
    return k0


def classify(
    m: SqMatrix, places: PlaceSet, label: str | None = None, *, tol: float = 1e-12
) -> Classification:
    """Total exact classification of a det-1 rational matrix.

    Decision tree: identity; unipotent (charpoly = (x-1)^n); zero p-adic
    drift and all-cyclotomic charpoly factors => finite order or virtually
    unipotent with the exact power k; otherwise ballistic with the squared
    translation length split into float archimedean and exact
    non-archimedean parts.
    """
    _check_det_one(m, name=label)
    _check_places_complete(m, places)
    if m.is_identity():
        return Classification(tag="Identity")
    cp = charpoly(m)
    n = m.n
    if cp == Poly([-1, 1]) ** n:
        return Classification(tag="Unipotent")
    padic_zero = all(
        v == 0 for p in places.primes for v in newton_slopes(cp, p).valuations
    )
    if padic_zero:
        # zero slopes at every discovered prime force integral coefficients
        assert cp.integer_coeffs(), "flat Newton polygons must have integral coefficients"
        k0 = _quasi_unipotent_order(cp, n)
        if k0 is not None:
            if (m ** k0).is_identity():
                return Classification(tag="FiniteOrder", order=k0)
            return Classification(tag="VirtuallyUnipotent", order=k0)
    profile = drift_profile(m, places, label=label, tol=tol)
    return Classification(
        tag="Ballistic",
        diagonalizable=is_diagonalizable(m),
        length2_arch=profile.length2_arch(),
        length2_nonarch=profile.length2_nonarch(),
    )


@dataclass(frozen=True)
class DirectionProfile:
    """Per-place norms and unit drift vectors of a ballistic element, plus
    the spherical-join angle arctan(r_Q / r_P) for each ordered place pair."""

    norms: dict[str, float]
    norms2_nonarch: dict[str, Fraction]
    units: dict[str, tuple[float, ...]]
    angles: dict[tuple[str, str], float]


def direction_profile(
    m: SqMatrix, places: PlaceSet, label: str | None = None, *, tol: float = 1e-12
) -> DirectionProfile:
    cls = classify(m, places, label=label, tol=tol)
    if not cls.is_ballistic:
        raise NotBallistic(f"element classifies {cls}; direction is defined for ballistic elements")
    profile = drift_profile(m, places, label=label, tol=tol)
    coords: dict[str, list[float]] = {"arch": list(profile.arch)}
    norms2_nonarch: dict[str, Fraction] = {}
    for p in places.primes:
        vals = profile.padic[p]
        coords[str(p)] = [float(v) for v in vals]
        norms2_nonarch[str(p)] = sum((v * v for v in vals), Fraction(0))
    norms = {lbl: math.sqrt(sum(x * x for x in v)) for lbl, v in coords.items()}
    units = {
        lbl: tuple((x / norms[lbl]) if norms[lbl] > 0 else 0.0 for x in v)
        for lbl, v in coords.items()
    }
    labels = places.labels()
    angles = {
        (p_lbl, q_lbl): math.atan2(norms[q_lbl], norms[p_lbl])
        for p_lbl in labels
        for q_lbl in labels
        if p_lbl != q_lbl
    }
    return DirectionProfile(
        norms=norms, norms2_nonarch=norms2_nonarch, units=units, angles=angles
    )
