"""Place discovery, drift profiles, classification, direction profiles."""

import math
import random
from fractions import Fraction as F

import pytest

from flatcert import (
    PlaceSet,
    SqMatrix,
    classify,
    direction_profile,
    discover_places,
    drift_profile,
)
from flatcert.errors import DeterminantNotOne, NotBallistic, PlaceSetIncomplete

from conftest import det1_corpus, unimodular


def test_discover_places_examples():
    assert discover_places([SqMatrix([[1, 1], [0, 1]])]).primes == ()
    gens = [SqMatrix.diagonal([2, F(1, 2)]), SqMatrix.diagonal([3, F(1, 3)])]
    assert discover_places(gens).primes == (2, 3)
    assert discover_places([SqMatrix.diagonal([F(1, 6), 6])]).primes == (2, 3)
    with pytest.raises(DeterminantNotOne):
        discover_places([SqMatrix.diagonal([2, 1])])


def test_drift_profile_examples():
    m = SqMatrix.diagonal([2, F(1, 2)])
    prof = drift_profile(m, PlaceSet(primes=(2,)))
    assert prof.padic[2] == (F(1), F(-1))
    assert abs(prof.arch[0] - math.log(2)) < 1e-12
    assert abs(prof.arch[1] + math.log(2)) < 1e-12

    uni = SqMatrix([[1, 1], [0, 1]])
    prof = drift_profile(uni, PlaceSet(primes=()))
    assert prof.arch == (0.0, 0.0)

    fib = SqMatrix([[2, 1], [1, 1]])
    prof = drift_profile(fib, PlaceSet(primes=()))
    lam = (3 + math.sqrt(5)) / 2
    assert abs(prof.arch[0] - math.log(lam)) < 1e-11
    assert abs(prof.arch[1] + math.log(lam)) < 1e-11


def test_classify_examples():
    places = PlaceSet(primes=(2,))
    assert classify(SqMatrix.identity(2), places).tag == "Identity"
    rot = classify(SqMatrix([[0, -1], [1, 0]]), places)
    assert (rot.tag, rot.order) == ("FiniteOrder", 4)
    assert classify(SqMatrix([[1, 1], [0, 1]]), places).tag == "Unipotent"
    cls = classify(SqMatrix.diagonal([2, F(1, 2)]), places)
    assert cls.tag == "Ballistic"
    assert cls.diagonalizable is True
    assert cls.length2_nonarch == 2
    assert abs(cls.length2_arch + float(cls.length2_nonarch) - 2.9609060278) < 1e-9


def test_classify_virtually_unipotent():
    # -1 times a nontrivial unipotent: square is unipotent and nontrivial
    m = SqMatrix([[-1, 1], [0, -1]])
    cls = classify(m, PlaceSet(primes=()))
    assert cls.tag == "VirtuallyUnipotent"
    assert cls.order == 2
    from flatcert import is_unipotent

    assert is_unipotent(m**2) and not (m**2).is_identity()


def test_classify_requires_complete_places():
    with pytest.raises(PlaceSetIncomplete):
        classify(SqMatrix.diagonal([2, F(1, 2)]), PlaceSet(primes=()))


def test_classification_conjugation_invariant():
    rng = random.Random(83)
    places = PlaceSet(primes=(2,))
    for m in det1_corpus(311, 40, sizes=(2, 3)):
        c = unimodular(rng, m.n)
        mc = m.conjugate_by(c)
        a, b = classify(m, places), classify(mc, places)
        assert (a.tag, a.order) == (b.tag, b.order)
        pa, pb = drift_profile(m, places), drift_profile(mc, places)
        assert pa.padic == pb.padic
        assert all(abs(x - y) < 1e-9 for x, y in zip(pa.arch, pb.arch))


def test_inverse_symmetry_and_power_scaling():
    places = PlaceSet(primes=(2, 3))
    for m in det1_corpus(313, 25, sizes=(2, 3)):
        prof = drift_profile(m, places)
        prof_inv = drift_profile(m.inverse(), places)
        for p in places.primes:
            assert prof_inv.padic[p] == tuple(sorted((-v for v in prof.padic[p]), reverse=True))
        assert all(
            abs(x - y) < 1e-9
            for x, y in zip(prof_inv.arch, sorted((-v for v in prof.arch), reverse=True))
        )
        cls = classify(m, places)
        cls_inv = classify(m.inverse(), places)
        if cls.tag == "Ballistic":
            assert cls_inv.length2_nonarch == cls.length2_nonarch
            assert abs(cls_inv.length2_arch - cls.length2_arch) < 1e-8
        # power scaling of squared length, k <= 5
        if cls.tag == "Ballistic":
            for k in (2, 3, 5):
                ck = classify(m**k, places)
                assert ck.length2_nonarch == k * k * cls.length2_nonarch
                if cls.length2_arch > 1e-12:
                    assert abs(ck.length2_arch - k * k * cls.length2_arch) <= 1e-8 * k * k * cls.length2_arch


def test_triangular_drift_equals_diagonal_part():
    rng = random.Random(97)
    places = PlaceSet(primes=(2, 3))
    diag_pool = [F(1), F(2), F(1, 2), F(3), F(2, 3), F(-1)]
    for _ in range(25):
        n = rng.choice([2, 3])
        diag = [rng.choice(diag_pool) for _ in range(n - 1)]
        prod = F(1)
        for d in diag:
            prod *= d
        diag.append(1 / prod)
        rows = [
            [diag[i] if i == j else (F(rng.randint(-2, 2)) if j > i else F(0)) for j in range(n)]
            for i in range(n)
        ]
        m = SqMatrix(rows)
        d = SqMatrix.diagonal(diag)
        pm, pd = drift_profile(m, places), drift_profile(d, places)
        assert pm.padic == pd.padic
        assert all(abs(x - y) < 1e-9 for x, y in zip(pm.arch, pd.arch))


def test_zero_sum_per_place():
    places = PlaceSet(primes=(2,))
    for m in det1_corpus(317, 40, sizes=(2, 3, 4)):
        prof = drift_profile(m, places)
        assert sum(prof.padic[2], F(0)) == 0
        assert abs(sum(prof.arch)) < 1e-9


def test_direction_profile_examples():
    m = SqMatrix.diagonal([2, F(1, 2)])
    d = direction_profile(m, PlaceSet(primes=(2,)))
    r_arch = math.sqrt(2) * math.log(2)
    assert abs(d.norms["arch"] - r_arch) < 1e-11
    assert abs(d.norms["2"] - math.sqrt(2)) < 1e-12
    assert d.norms2_nonarch["2"] == 2
    assert abs(d.angles[("arch", "2")] - math.atan(1 / math.log(2))) < 1e-11

    # scaling invariance: diag(4,1/4) has the same unit vectors and angles
    m2 = SqMatrix.diagonal([4, F(1, 4)])
    d2 = direction_profile(m2, PlaceSet(primes=(2,)))
    for lbl in d.units:
        assert all(abs(x - y) < 1e-10 for x, y in zip(d.units[lbl], d2.units[lbl]))
    for pair in d.angles:
        assert abs(d.angles[pair] - d2.angles[pair]) < 1e-10

    # single place: no angles
    fib = SqMatrix([[2, 1], [1, 1]])
    d3 = direction_profile(fib, PlaceSet(primes=()))
    assert d3.angles == {}

    with pytest.raises(NotBallistic):
        direction_profile(SqMatrix([[1, 1], [0, 1]]), PlaceSet(primes=()))


def test_classification_totality_on_corpus():
    tags = {"Identity", "Unipotent", "FiniteOrder", "VirtuallyUnipotent", "Ballistic"}
    corpus = det1_corpus(401, 60)
    places = discover_places(corpus)
    for m in corpus:
        cls = classify(m, places)
        assert cls.tag in tags
