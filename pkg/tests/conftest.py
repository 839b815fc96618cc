"""Shared corpus builders; everything seeded so runs are reproducible."""

import random
from fractions import Fraction as F

from flatcert import SqMatrix

DET1_ENTRIES = [F(0), F(1), F(-1), F(2), F(-2), F(1, 2), F(-1, 2)]


def random_det1(rng: random.Random, sizes=(2, 3, 4), entries=DET1_ENTRIES) -> SqMatrix:
    while True:
        n = rng.choice(sizes)
        m = SqMatrix([[rng.choice(entries) for _ in range(n)] for _ in range(n)])
        if m.det() == 1:
            return m


def det1_corpus(seed: int, count: int, sizes=(2, 3, 4)) -> list[SqMatrix]:
    rng = random.Random(seed)
    return [random_det1(rng, sizes) for _ in range(count)]


def unimodular(rng: random.Random, n: int, steps: int = 6) -> SqMatrix:
    """Product of integer elementary row additions: det exactly 1."""
    rows = [[F(1) if i == j else F(0) for j in range(n)] for i in range(n)]
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        c = rng.choice([-2, -1, 1, 2])
        for k in range(n):
            rows[i][k] += c * rows[j][k]
    return SqMatrix(rows)


def unimodular_2x2(rng: random.Random, steps: int = 4) -> tuple[tuple[int, int], tuple[int, int]]:
    u = [[1, 0], [0, 1]]
    for _ in range(steps):
        c = rng.choice([-2, -1, 1, 2])
        if rng.random() < 0.5:
            u[0][0] += c * u[1][0]
            u[0][1] += c * u[1][1]
        else:
            u[1][0] += c * u[0][0]
            u[1][1] += c * u[0][1]
    return ((u[0][0], u[0][1]), (u[1][0], u[1][1]))


def random_diag_23(rng: random.Random, n: int, exp_range=(-1, 1)) -> SqMatrix:
    """Diagonal det-1 matrix with entries 2^a 3^b; the last entry closes the
    product, so its exponents stay within (n-1) times the per-entry range."""
    lo, hi = exp_range
    diag = []
    ta = tb = 0
    for _ in range(n - 1):
        a, b = rng.randint(lo, hi), rng.randint(lo, hi)
        ta += a
        tb += b
        diag.append(F(2) ** a * F(3) ** b)
    diag.append(F(2) ** (-ta) * F(3) ** (-tb))
    return SqMatrix.diagonal(diag)
