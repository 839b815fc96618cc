"""Thick-flat lattice certificates for commuting families.

The Gram matrix of translation vectors is assembled by polarization,
<g,h> = (Q(gh) - Q(gh^-1))/4, which is valid for commuting matrices
because they are simultaneously triangularizable, making drift additive
under the joint eigenvalue indexing.  The non-archimedean part is exact;
positive definiteness is decided on the floating combined Gram but only
certified together with an exact rational PSD check, and every degenerate
direction is confirmed by classifying an explicit witness word, so no
certificate ever rests on floating point alone.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DeterminantNotOne, NotBallistic, NotCommuting, NumericalInconclusive
from .linalg import SqMatrix, kernel_basis
from .places import Classification, PlaceSet, classify, discover_places, drift_profile
from .words import power_word

__all__ = [
    "CommutationWitness",
    "CommutingFamily",
    "GramData",
    "FlatCertificate",
    "verify_commuting",
    "length_sq",
    "gram",
    "flat_certificate",
    "tits_angle",
    "PD_EPSILON",
]

PD_EPSILON = 1e-8


@dataclass(frozen=True)
class CommutationWitness:
    i: str
    j: str
    commutator: SqMatrix


def verify_commuting(named_gens: list[tuple[str, SqMatrix]]) -> CommutationWitness | None:
    """Exact pairwise commutation check; None when all pairs commute."""
    for (ni, a), (nj, b) in itertools.combinations(named_gens, 2):
        ab, ba = a * b, b * a
        if ab != ba:
            return CommutationWitness(ni, nj, ab * ba.inverse())
    return None


@dataclass(frozen=True)
class CommutingFamily:
    """A verified pairwise-commuting det-1 family with its place set."""

    names: tuple[str, ...]
    gens: tuple[SqMatrix, ...]
    places: PlaceSet

    @classmethod
    def build(
        cls,
        named_gens: list[tuple[str, SqMatrix]],
        places: PlaceSet | None = None,
    ) -> "CommutingFamily":
        for name, g in named_gens:
            if g.det() != 1:
                raise DeterminantNotOne(name=name, det=g.det())
        witness = verify_commuting(named_gens)
        if witness is not None:
            raise NotCommuting(witness.i, witness.j, witness.commutator)
        if places is None:
            places = discover_places([g for _, g in named_gens])
        return cls(
            names=tuple(n for n, _ in named_gens),
            gens=tuple(g for _, g in named_gens),
            places=places,
        )

    @property
    def rank(self) -> int:
        return len(self.gens)

    def word_matrix(self, exponents) -> SqMatrix:
        out = SqMatrix.identity(self.gens[0].n, self.gens[0].field)
        for g, e in zip(self.gens, exponents):
            if e:
                out = out * g**e
        return out


def length_sq(m: SqMatrix, places: PlaceSet, *, tol: float = 1e-12) -> tuple[float, Fraction]:
    """Squared translation length, split (archimedean float, non-archimedean
    exact rational)."""
    profile = drift_profile(m, places, tol=tol)
    return profile.length2_arch(), profile.length2_nonarch()


@dataclass(frozen=True)
class GramData:
    """Split Gram matrix of translation vectors of a commuting family."""

    nonarch: tuple[tuple[Fraction, ...], ...]
    arch: tuple[tuple[float, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.nonarch)

    def combined(self) -> np.ndarray:
        r = self.rank
        return np.array(
            [[float(self.nonarch[i][j]) + self.arch[i][j] for j in range(r)] for i in range(r)],
            dtype=float,
        )


def gram(family: CommutingFamily, *, tol: float = 1e-12) -> GramData:
    """Polarized Gram matrix; diagonal straight from squared lengths."""
    r = family.rank
    nonarch = [[Fraction(0)] * r for _ in range(r)]
    arch = [[0.0] * r for _ in range(r)]
    for i in range(r):
        a, na = length_sq(family.gens[i], family.places, tol=tol)
        arch[i][i] = a
        nonarch[i][i] = na
    for i in range(r):
        for j in range(i + 1, r):
            gi, gj = family.gens[i], family.gens[j]
            plus_a, plus_na = length_sq(gi * gj, family.places, tol=tol)
            minus_a, minus_na = length_sq(gi * gj.inverse(), family.places, tol=tol)
            arch[i][j] = arch[j][i] = (plus_a - minus_a) / 4.0
            nonarch[i][j] = nonarch[j][i] = (plus_na - minus_na) / 4
    return GramData(
        nonarch=tuple(tuple(row) for row in nonarch),
        arch=tuple(tuple(row) for row in arch),
    )


def _psd_exact(rows: tuple[tuple[Fraction, ...], ...]) -> bool:
    """Exact PSD test by rational LDL^T (Schur complement recursion)."""
    a = [list(row) for row in rows]
    n = len(a)
    for k in range(n):
        d = a[k][k]
        if d < 0:
            return False
        if d == 0:
            if any(a[k][j] != 0 for j in range(k + 1, n)):
                return False
            continue
        for i in range(k + 1, n):
            if a[i][k] == 0:
                continue
            f = a[i][k] / d
            for j in range(k + 1, n):
                a[i][j] -= f * a[k][j]
    return True


@dataclass(frozen=True)
class FlatCertificate:
    """Lattice(rank, covolume) or Degenerate(null vector, witness, class).

    For Degenerate, lattice_rank is the number of independent verified
    drift directions that remain, and null_vectors lists every verified
    independent integer null vector.
    """

    tag: str
    rank: int
    covolume: float | None = None
    null_vector: tuple[int, ...] | None = None
    witness_word: str | None = None
    witness_class: Classification | None = None
    null_vectors: tuple[tuple[int, ...], ...] | None = None


def _primitive(vec: list[Fraction]) -> tuple[int, ...] | None:
    """Clear denominators and content; flip sign so the first nonzero is
    positive.  None for the zero vector."""
    if all(v == 0 for v in vec):
        return None
    denom = math.lcm(*(v.denominator for v in vec))
    ints = [int(v * denom) for v in vec]
    content = math.gcd(*(abs(x) for x in ints))
    ints = [x // content for x in ints]
    first = next(x for x in ints if x != 0)
    if first < 0:
        ints = [-x for x in ints]
    return tuple(ints)


def _rationalize(vec: np.ndarray, max_denominator: int = 10**6) -> tuple[int, ...] | None:
    scale = max(abs(float(x)) for x in vec)
    if scale == 0:
        return None
    fr = [Fraction(float(x) / scale).limit_denominator(max_denominator) for x in vec]
    return _primitive(fr)


def _independent_over_q(vectors: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    """Greedy maximal Q-independent subset, preserving order."""
    chosen: list[tuple[int, ...]] = []
    rows: list[list[Fraction]] = []
    for v in vectors:
        cand = rows + [[Fraction(x) for x in v]]
        if _rank(cand) > len(rows):
            rows = cand
            chosen.append(v)
    return chosen


def _rank(rows: list[list[Fraction]]) -> int:
    a = [list(r) for r in rows]
    n_rows, n_cols = len(a), len(a[0])
    rank = 0
    for col in range(n_cols):
        piv = None
        for r in range(rank, n_rows):
            if a[r][col] != 0:
                piv = r
                break
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        for r in range(rank + 1, n_rows):
            if a[r][col] != 0:
                f = a[r][col] / a[rank][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[rank])]
        rank += 1
    return rank


def _null_candidates(
    g: GramData, combined: np.ndarray, threshold: float
) -> list[tuple[int, ...]]:
    """Primitive integer candidates for null vectors of the combined Gram,
    ordered by (max-norm, lexicographic)."""
    r = g.rank
    eigvals, eigvecs = np.linalg.eigh(combined)
    basis: list[tuple[int, ...]] = []
    for k in range(r):
        if eigvals[k] <= threshold:
            v = _rationalize(eigvecs[:, k])
            if v is not None and v not in basis:
                basis.append(v)
    # exact null vectors of the non-archimedean part are candidates too
    for v in kernel_basis(SqMatrix([[x for x in row] for row in g.nonarch])):
        pv = _primitive(v)
        if pv is not None and pv not in basis:
            basis.append(pv)
    candidates: set[tuple[int, ...]] = set()
    for v in basis:
        candidates.add(v)
    # small integer recombinations, in case the eigenvectors mix directions
    span = basis[: min(len(basis), 4)]
    if span:
        for coeffs in itertools.product(range(-2, 3), repeat=len(span)):
            if all(c == 0 for c in coeffs):
                continue
            vec = [Fraction(sum(c * v[i] for c, v in zip(coeffs, span))) for i in range(r)]
            pv = _primitive(vec)
            if pv is not None:
                candidates.add(pv)
    # exact screen: a true null vector annihilates the exact part outright
    screened = []
    for v in candidates:
        gv = [sum(g.nonarch[i][j] * v[j] for j in range(r)) for i in range(r)]
        if any(x != 0 for x in gv):
            continue
        resid = combined @ np.array(v, dtype=float)
        if np.max(np.abs(resid)) > math.sqrt(threshold + 1e-300) * (1.0 + np.max(np.abs(v))):
            continue
        screened.append(v)
    # smallest max-norm first, then fewest nonzero coordinates, then weight
    # on the earliest generators, so witnesses are reproducible
    screened.sort(
        key=lambda v: (
            max(abs(x) for x in v),
            sum(1 for x in v if x),
            tuple(-abs(x) for x in v),
            v,
        )
    )
    return screened


def flat_certificate(
    family: CommutingFamily, pd_epsilon: float = PD_EPSILON, *, tol: float = 1e-12
) -> FlatCertificate:
    """Lattice certificate or degenerate-direction witness for a commuting
    family.

    Lattice requires the floating combined Gram to be positive definite
    (smallest eigenvalue > pd_epsilon * trace) AND the exact non-archimedean
    part to be PSD; a float/exact disagreement raises NumericalInconclusive.
    Degenerate directions are only reported when an explicit witness word
    classifies non-ballistic, which is an exact decision.
    """
    g = gram(family, tol=tol)
    r = g.rank
    combined = g.combined()
    trace = float(np.trace(combined))
    eigvals = np.linalg.eigvalsh(combined)
    min_eig = float(eigvals[0])
    nonarch_psd = _psd_exact(g.nonarch)
    if trace > 0 and min_eig > pd_epsilon * trace:
        if not nonarch_psd:
            raise NumericalInconclusive(
                "floating Gram is positive definite but the exact non-archimedean part is not PSD"
            )
        covolume = math.sqrt(max(float(np.linalg.det(combined)), 0.0))
        return FlatCertificate(tag="Lattice", rank=r, covolume=covolume)

    threshold = pd_epsilon * max(trace, 0.0)
    verified: list[tuple[tuple[int, ...], str, Classification]] = []
    for v in _null_candidates(g, combined, threshold):
        word = power_word(list(zip(family.names, v)))
        cls = classify(family.word_matrix(v), family.places, label=word, tol=tol)
        if not cls.is_ballistic:
            verified.append((v, word, cls))
    if not verified:
        raise NumericalInconclusive(
            "combined Gram is numerically singular but no rational null direction "
            "could be verified by an exact witness"
        )
    independent = _independent_over_q([v for v, _, _ in verified])
    null_rank = len(independent)
    primary_vec, primary_word, primary_class = next(
        (v, w, c) for v, w, c in verified if v == independent[0]
    )
    return FlatCertificate(
        tag="Degenerate",
        rank=r - null_rank,
        null_vector=primary_vec,
        witness_word=primary_word,
        witness_class=primary_class,
        null_vectors=tuple(independent),
    )


def tits_angle(family: CommutingFamily, i: int, j: int, *, tol: float = 1e-12) -> float:
    """Angle between the i-th and j-th generators' drift directions,
    arccos(G_ij / sqrt(G_ii G_jj)) on the combined Gram."""
    for k in (i, j):
        cls = classify(family.gens[k], family.places, label=family.names[k], tol=tol)
        if not cls.is_ballistic:
            raise NotBallistic(
                f"generator {family.names[k]!r} classifies {cls}; "
                "the Tits angle needs ballistic generators"
            )
    g = gram(family, tol=tol).combined()
    c = g[i][j] / math.sqrt(g[i][i] * g[j][j])
    return math.acos(max(-1.0, min(1.0, c)))
