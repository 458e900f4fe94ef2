"""Twisted Jacquet projection, predictions, and theorem verification."""

import random

import pytest

from sp4jacquet.chars import IrrepLabel, gl2_irr_table, sl2_irr_table, o2_irr_table
from sp4jacquet.jacquet import (
    PsiSpec,
    induced_char_eval,
    oracle_induced_char,
    psi_of,
    twisted_jacquet_character,
    verify_theorems,
    whittaker_char_sl2,
)
from sp4jacquet.matgrp import identity, named_subgroup, nmat, sp4_elements


def test_psispec_validation():
    with pytest.raises(ValueError):
        PsiSpec(q=3, gamma=3)
    spec = PsiSpec(q=5, gamma=2)
    assert spec.A == ((2, 0), (0, 0))
    assert spec.square_class == "nonsquare"
    assert PsiSpec(q=5, gamma=4).square_class == "square"


def test_psi_of_values():
    spec = PsiSpec(q=3, gamma=1)
    assert abs(psi_of(nmat(0, 1, 2, 3), spec) - 1) < 1e-12  # depends only on x
    v = psi_of(nmat(1, 0, 0, 3), spec)
    assert abs(v - 1) > 1e-9
    from sp4jacquet.matgrp import sigma1

    with pytest.raises(ValueError):
        psi_of(sigma1(3), spec)
    # character property on N: psi(n1 n2) = psi(n1) psi(n2)
    from sp4jacquet.matgrp import mmul

    n1, n2 = nmat(1, 2, 0, 3), nmat(2, 1, 1, 3)
    assert abs(psi_of(mmul(n1, n2, 3), spec) - psi_of(n1, spec) * psi_of(n2, spec)) < 1e-12


def test_induced_dimension_at_identity():
    q = 3
    # Siegel: dim Ind = [Sp4 : P] * dim(rho) = 40 * 3 for Steinberg
    v = induced_char_eval("siegel", IrrepLabel("steinberg", (0,)), identity(4), q)
    assert abs(v - 120) < 1e-9
    # Klingen: [Sp4 : Q] * 1 = 40 for a one-dimensional inducing datum
    v = induced_char_eval("klingen", (0, IrrepLabel("trivial")), identity(4), q)
    assert abs(v - 40) < 1e-9


def test_oracle_agreement_sample():
    q = 3
    rng = random.Random(2024)
    elems = sp4_elements(q)
    picks = [elems[rng.randrange(len(elems))] for _ in range(5)]
    for g in picks:
        a = induced_char_eval("siegel", IrrepLabel("cuspidal", (1,)), g, q)
        b = oracle_induced_char("siegel", IrrepLabel("cuspidal", (1,)), g, q)
        assert abs(a - b) < 1e-9
        c = induced_char_eval("klingen", (1, IrrepLabel("steinberg")), g, q)
        d = oracle_induced_char("klingen", (1, IrrepLabel("steinberg")), g, q)
        assert abs(c - d) < 1e-9


@pytest.mark.parametrize("q", (3, 5))
def test_whittaker_dims_zero_or_one(q):
    for lab, _ in sl2_irr_table(q).rows:
        for variant in ("Psi", "PsiPrime"):
            out = whittaker_char_sl2(lab, variant, q)
            assert round(out[1].real) in (0, 1)


def test_jacquet_character_structure():
    spec = PsiSpec(q=3, gamma=1)
    jc = twisted_jacquet_character("siegel", IrrepLabel("steinberg", (0,)), spec)
    assert jc.on_group == "Mpsi"
    # multiplicities decompose the dimension
    table = o2_irr_table(3)
    total = sum(
        jc.multiplicities[str(lab)] * round(chi.dim.real) for lab, chi in table.rows
    )
    assert abs(jc.values.dim - total) < 1e-9
    assert all(m >= 0 for m in jc.multiplicities.values())


def test_gamma_square_rescaling_invariance():
    """gamma and gamma*t^2 give isomorphic twisted Jacquet modules."""
    q = 5
    lab = IrrepLabel("principal", (1, 2))
    a = twisted_jacquet_character("siegel", lab, PsiSpec(q=q, gamma=1))
    b = twisted_jacquet_character("siegel", lab, PsiSpec(q=q, gamma=4))
    assert a.multiplicities == b.multiplicities


def test_verify_theorems_q3():
    for gamma in (1, 2):
        reports = verify_theorems(3, gamma)
        assert len(reports) == 22
        assert all(r.verdict == "pass" for r in reports)


def test_report_roundtrip_fields():
    r = verify_theorems(3, 1)[0]
    j = r.as_json()
    assert j["verdict"] == "pass"
    assert j["computed"] == j["predicted"]
    assert j["q"] == 3 and j["gamma"] == 1
