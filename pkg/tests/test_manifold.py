"""Graph-manifold checker: validation, NPC/obstruction, gluing covariance."""

import random
from fractions import Fraction as F

import pytest

from flatcert import (
    GluingSpec,
    GraphRep,
    SqMatrix,
    TorusRep,
    gluing_covariance,
    is_unipotent,
    npc_certificate,
    validate,
    word_eval,
)

from conftest import unimodular_2x2

D2 = SqMatrix.diagonal([2, F(1, 2)])
D3 = SqMatrix.diagonal([3, F(1, 3)])
U1 = SqMatrix([[1, 1], [0, 1]])
U5 = SqMatrix([[1, 5], [0, 1]])
SWAP = ((0, 1), (1, 0))


def _rep(a, b, gluings=()):
    return GraphRep.build([TorusRep(id="T1", a=a, b=b)], list(gluings))


def test_validate_examples():
    ok = _rep(D2, D3, [GluingSpec(torus="T1", u=SWAP, second_basis_words=("b", "a"))])
    assert validate(ok) == []

    bad = _rep(D2, D3, [GluingSpec(torus="T1", u=SWAP, second_basis_words=("a", "a"))])
    kinds = {v.kind for v in validate(bad)}
    assert "BasisMismatch" in kinds

    noncomm = _rep(U1, SqMatrix([[1, 0], [1, 1]]))
    kinds = {v.kind for v in validate(noncomm)}
    assert "NotCommuting" in kinds

    unknown = _rep(D2, D3, [GluingSpec(torus="T9", u=SWAP, second_basis_words=("b", "a"))])
    assert {v.kind for v in validate(unknown)} == {"UnknownTorus"}

    det2 = _rep(D2, D3, [GluingSpec(torus="T1", u=((2, 0), (0, 1)), second_basis_words=("a^2", "b"))])
    assert {v.kind for v in validate(det2)} == {"BadGluingMatrix"}


def test_npc_certificate_positive():
    result = npc_certificate(_rep(D2, D3))
    assert result.tag == "NPC"
    assert [cert.tag for _, cert in result.tori] == ["Lattice"]
    assert result.tori[0][1].rank == 2


def test_npc_obstruction_unipotent_torus():
    result = npc_certificate(_rep(U1, U5))
    assert result.tag == "Obstruction"
    assert result.obstruction_torus == "T1"
    assert result.witness_word == "a"
    assert result.witness_class.tag == "Unipotent"


def test_npc_obstruction_dependent_directions():
    result = npc_certificate(_rep(D2, SqMatrix.diagonal([4, F(1, 4)])))
    assert result.tag == "Obstruction"
    assert result.witness_word == "a^2*b^-1"
    assert result.witness_class.tag == "Identity"


def test_obstruction_witness_power_is_unipotent():
    # a witness tagged VirtuallyUnipotent(k) must become exactly unipotent at power k
    a = SqMatrix([[-1, 1], [0, -1]])
    b = SqMatrix([[-1, 0], [0, -1]])
    assert a.commutes_with(b)
    result = npc_certificate(_rep(a, b))
    assert result.tag == "Obstruction"
    cls = result.witness_class
    assert cls.tag in {"Unipotent", "VirtuallyUnipotent", "FiniteOrder", "Identity"}
    if cls.tag == "VirtuallyUnipotent":
        t = _rep(a, b).torus("T1")
        gens = {"a": t.a, "b": t.b}
        w = word_eval(result.witness_word, gens)
        assert is_unipotent(w**cls.order)


def test_gluing_covariance_swap():
    rep = _rep(D2, D3, [GluingSpec(torus="T1", u=SWAP, second_basis_words=("b", "a"))])
    reports = gluing_covariance(rep)
    assert len(reports) == 1
    assert reports[0].ok and reports[0].nonarch_exact
    assert reports[0].arch_max_rel_err <= 1e-8


def test_gluing_covariance_identity_and_shear():
    ident = GluingSpec(torus="T1", u=((1, 0), (0, 1)), second_basis_words=("a", "b"))
    shear = GluingSpec(torus="T1", u=((1, 1), (0, 1)), second_basis_words=("a", "a*b"))
    rep = _rep(D2, D3, [ident, shear])
    for report in gluing_covariance(rep):
        assert report.ok and report.nonarch_exact


def test_rebasing_preserves_npc_tag():
    rng = random.Random(149)
    cases = [(D2, D3, "NPC"), (U1, U5, "Obstruction"), (D2, SqMatrix.diagonal([4, F(1, 4)]), "Obstruction")]
    for a, b, expected in cases:
        for _ in range(6):
            u = unimodular_2x2(rng)
            a2 = a ** u[0][0] * b ** u[1][0]
            b2 = a ** u[0][1] * b ** u[1][1]
            result = npc_certificate(_rep(a2, b2))
            assert result.tag == expected
