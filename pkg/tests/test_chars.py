"""Character tables and class-function calculus."""

import pytest

from sp4jacquet.chars import (
    IrrepLabel,
    class_data,
    conjugacy_classes,
    conjugate_cf,
    gl2_irr_table,
    gl2_is_cuspidal,
    induce,
    inner_product,
    l_irr_table,
    o2_class_data,
    o2_irr_table,
    restrict,
    sl2_central_character,
    sl2_irr_table,
    sl2_is_cuspidal,
    t2_irr_table,
    tensor,
    verify_orthogonality,
)
from sp4jacquet.matgrp import named_subgroup

TABLES = {
    "GL2": gl2_irr_table,
    "SL2": sl2_irr_table,
    "O2C": o2_irr_table,
    "T2C": t2_irr_table,
    "L": l_irr_table,
}


def test_gl2_class_count_q3():
    cd = conjugacy_classes(named_subgroup("GL2", 3))
    assert cd.n_classes == 8  # q^2 - 1


@pytest.mark.parametrize("q", (3, 5))
def test_sl2_class_count(q):
    cd = class_data("SL2", q)
    assert cd.n_classes == q + 4


@pytest.mark.parametrize("q", (3, 5))
@pytest.mark.parametrize("name", sorted(TABLES))
def test_orthogonality(name, q):
    ok, info = verify_orthogonality(TABLES[name](q))
    assert ok, info


@pytest.mark.parametrize("q", (3, 5))
def test_gl2_dimension_census(q):
    dims = {}
    for lab, chi in gl2_irr_table(q).rows:
        d = round(chi.dim.real)
        dims[d] = dims.get(d, 0) + 1
    assert dims[1] == q - 1
    assert dims[q] == q - 1
    assert dims.get(q + 1, 0) == (q - 1) * (q - 2) // 2
    assert dims.get(q - 1, 0) == q * (q - 1) // 2


@pytest.mark.parametrize("q", (3, 5))
def test_sl2_dimension_census(q):
    dims = sorted(round(chi.dim.real) for _, chi in sl2_irr_table(q).rows)
    expected = sorted(
        [1, q]
        + [q + 1] * ((q - 3) // 2)
        + [q - 1] * ((q - 1) // 2)
        + [(q + 1) // 2] * 2
        + [(q - 1) // 2] * 2
    )
    assert dims == expected


@pytest.mark.parametrize("q", (3, 5, 7))
def test_character_value_bounds(q):
    for name in ("GL2", "SL2", "O2C"):
        tab = TABLES[name](q)
        for lab, chi in tab.rows:
            d = chi.dim.real
            assert all(abs(v) <= d + 1e-9 for v in chi.values)


def test_frobenius_reciprocity():
    """<Ind chi, rho> = <chi, Res rho> for T2 inside O2."""
    q = 5
    t2 = t2_irr_table(q)
    o2 = o2_irr_table(q)
    transversal = [((1, 0), (y, 1)) for y in range(q)]
    for lab_s, chi in t2.rows[:4]:
        ind = induce(chi, o2.classes, transversal)
        for lab_b, rho in o2.rows:
            lhs = inner_product(ind, rho)
            rhs = inner_product(chi, restrict(rho, t2.classes))
            assert abs(lhs - rhs) < 1e-9


def test_class_function_ops():
    q = 3
    tab = sl2_irr_table(q)
    st = tab.row(IrrepLabel("steinberg"))
    triv = tab.row(IrrepLabel("trivial"))
    assert abs(inner_product(st, st) - 1) < 1e-9
    assert abs(inner_product(st, triv)) < 1e-12
    prod = tensor(st, st)
    assert abs(prod.dim - 9) < 1e-9
    conj = conjugate_cf(st)
    assert abs(inner_product(conj, st) - 1) < 1e-9  # Steinberg is self-dual
    s = st + triv
    assert abs(s.dim - 4) < 1e-9
    assert abs((s - triv).dim - 3) < 1e-9


@pytest.mark.parametrize("q", (3, 5))
def test_sl2_central_characters_are_signs(q):
    for lab, chi in sl2_irr_table(q).rows:
        w = sl2_central_character(chi, q)
        assert w in (1, -1)


def test_cuspidality_labels():
    assert gl2_is_cuspidal(IrrepLabel("cuspidal", (1,)))
    assert not gl2_is_cuspidal(IrrepLabel("steinberg", (0,)))
    assert sl2_is_cuspidal(IrrepLabel("cuspidal", (1,)))
    assert sl2_is_cuspidal(IrrepLabel("tau1p"))
    assert sl2_is_cuspidal(IrrepLabel("tau2p"))
    assert not sl2_is_cuspidal(IrrepLabel("tau1"))
    assert not sl2_is_cuspidal(IrrepLabel("steinberg"))


@pytest.mark.parametrize("q", (3, 5))
def test_o2_class_and_table_shape(q):
    cd = o2_class_data(q)
    assert sum(cd.class_sizes) == 2 * q * (q - 1)
    tab = o2_irr_table(q)
    dims = sorted(round(chi.dim.real) for _, chi in tab.rows)
    assert dims == [1] * (2 * (q - 1)) + [q - 1, q - 1]


def test_induce_index_mismatch_raises():
    q = 3
    t2 = t2_irr_table(q)
    o2 = o2_irr_table(q)
    bad_transversal = [((1, 0), (y, 1)) for y in range(q - 1)]
    with pytest.raises(Exception):
        induce(t2.rows[0][1], o2.classes, bad_transversal)


@pytest.mark.parametrize("q", (3, 5))
def test_l_table_is_outer_product(q):
    tab = l_irr_table(q)
    assert len(tab.rows) == (q - 1) * (q + 4)
    sl2 = sl2_irr_table(q)
    # dim of eta (x) tau equals dim tau
    for lab, chi in tab.rows:
        j = lab.params[0]
        inner = IrrepLabel(lab.params[1], tuple(lab.params[2:]))
        assert abs(chi.dim - sl2.row(inner).dim) < 1e-9
