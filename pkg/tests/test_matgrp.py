"""Matrix-group layer: named subgroups, embeddings, factorizations."""

import random

import pytest

from sp4jacquet.ff import psi0
from sp4jacquet.matgrp import (
    EXPECTED_ORDER,
    embed_alpha,
    embed_beta,
    identity,
    in_Mpsi,
    in_N,
    in_O2C,
    in_P,
    in_Q,
    in_Spsi,
    is_symplectic,
    levi_part,
    mat_det2,
    minv,
    mmul,
    named_subgroup,
    nmat,
    sigma1,
    sigma2,
    sp4_elements,
    symp_form,
    symp_inv,
    symplectic_section,
    tau1,
    umat,
)
from sp4jacquet.cosets import act, base_point, isotropic_spaces

SMALL_NAMES = [
    "P", "M", "N", "Q", "L", "U", "Spsi", "Mpsi", "O2C", "T2C",
    "B", "Bbar", "N11", "N11bar", "N0", "N1", "N2", "N3", "N4",
    "M1", "M2", "M3", "D0", "D1", "H1",
]


@pytest.mark.parametrize("q", (3, 5))
@pytest.mark.parametrize("name", SMALL_NAMES)
def test_named_subgroup_orders(name, q):
    grp = named_subgroup(name, q)
    assert grp.order == EXPECTED_ORDER[name](q)


@pytest.mark.parametrize("name", ["P", "Q", "Spsi", "N", "M", "L", "U"])
def test_group_axioms_exhaustive_q3(name):
    q = 3
    grp = named_subgroup(name, q)
    elems = set(grp.elements)
    assert identity(4) in elems
    for g in elems:
        assert minv(g, q) in elems
    sample = list(elems)[:40]
    for g in sample:
        for h in sample:
            assert mmul(g, h, q) in elems


@pytest.mark.parametrize("name", ["Spsi", "N", "Mpsi", "U"])
def test_group_axioms_sampled_q5(name):
    q = 5
    grp = named_subgroup(name, q)
    elems = grp.elements
    rng = random.Random(11)
    for _ in range(10**4 // 10):
        g = rng.choice(elems)
        h = rng.choice(elems)
        assert mmul(g, h, q) in grp
        assert minv(g, q) in grp


@pytest.mark.parametrize("q", (3, 5))
def test_symplectic_predicates(q):
    for name in ("P", "Q", "Spsi", "N", "U"):
        for g in named_subgroup(name, q).elements[:100]:
            assert is_symplectic(g, q)
            assert symp_inv(g, q) == minv(g, q)
    for g in (sigma1(q), sigma2(q), tau1(q)):
        assert is_symplectic(g, q)


@pytest.mark.parametrize("q", (3, 5))
def test_symplectic_form_pairing(q):
    e = [tuple(1 if i == j else 0 for i in range(4)) for j in range(4)]
    # <e1, e1^v> = <e2, e2^v> = 1, all other basis pairings zero
    assert symp_form(e[0], e[2], q) == 1
    assert symp_form(e[1], e[3], q) == 1
    assert symp_form(e[0], e[1], q) == 0
    assert symp_form(e[0], e[3], q) == 0
    assert symp_form(e[2], e[3], q) == 0


@pytest.mark.parametrize("q", (3, 5))
def test_unique_factorization_spsi(q):
    """Every element of S_psi factors uniquely as (element of M_psi)(element of N)."""
    mpsi = set(named_subgroup("Mpsi", q).elements)
    n = set(named_subgroup("N", q).elements)
    spsi = named_subgroup("Spsi", q)
    assert spsi.order == len(mpsi) * len(n)
    for s in spsi.elements[:200]:
        factorizations = [
            (m, x) for m in mpsi for x in n if mmul(m, x, q) == s
        ]
        assert len(factorizations) == 1


@pytest.mark.parametrize("q", (3, 5))
def test_psi_restriction_pattern(q, gamma=1):
    """psi(n) = psi0(gamma x) is trivial on N^0 and N^1, nontrivial on
    N, N^2 and N^3."""
    def psi(n):
        return psi0(gamma * n[0][2], q)

    for name, trivial in (("N0", True), ("N1", True), ("N", False),
                          ("N2", False), ("N3", False)):
        vals = {psi(n) for n in named_subgroup(name, q).elements}
        if trivial:
            assert all(abs(v - 1) < 1e-12 for v in vals)
        else:
            assert any(abs(v - 1) > 1e-9 for v in vals)


@pytest.mark.parametrize("q", (3, 5))
def test_m2_normalizes_small_unipotents(q):
    m2 = named_subgroup("M2", q).elements
    for name in ("N0", "N1", "N4"):
        sub = set(named_subgroup(name, q).elements)
        for m in m2:
            mi = minv(m, q)
            assert all(mmul(mmul(m, n, q), mi, q) in sub for n in sub)
    # M^2 fixes N^2 pointwise under conjugation
    n2 = named_subgroup("N2", q).elements
    for m in m2:
        mi = minv(m, q)
        for n in n2:
            assert mmul(mmul(m, n, q), mi, q) == n


@pytest.mark.parametrize("q", (3, 5))
def test_o2_semidirect_structure(q):
    """O2 = T2 x| Nbar_{1,1} with unique factorization, and beta carries the
    pieces onto M_psi and M^1."""
    o2 = named_subgroup("O2C", q)
    t2 = set(named_subgroup("T2C", q).elements)
    nbar = {((1, 0), (y % q, 1)) for y in range(q)}
    prods = {mmul(t, n, q): (t, n) for t in t2 for n in nbar}
    assert set(o2.elements) == set(prods)
    assert len(prods) == len(t2) * q

    mpsi = set(named_subgroup("Mpsi", q).elements)
    assert {embed_beta(h, q) for h in o2.elements} == mpsi
    m1 = set(named_subgroup("M1", q).elements)
    assert {embed_beta(n, q) for n in nbar} == m1


@pytest.mark.parametrize("q", (3, 5))
def test_embeddings_are_homomorphisms(q):
    rng = random.Random(5)
    gl2 = named_subgroup("GL2", q).elements
    sl2 = named_subgroup("SL2", q).elements
    for _ in range(50):
        a, b = rng.choice(gl2), rng.choice(gl2)
        assert mmul(embed_beta(a, q), embed_beta(b, q), q) == embed_beta(
            mmul(a, b, q), q
        )
        s, t2_ = rng.choice(sl2), rng.choice(sl2)
        ta, tb = rng.randrange(1, q), rng.randrange(1, q)
        assert mmul(embed_alpha(ta, s, q), embed_alpha(tb, t2_, q), q) == embed_alpha(
            ta * tb % q, mmul(s, t2_, q), q
        )
    # alpha({1} x N_{1,1}) = N^0
    n0 = set(named_subgroup("N0", q).elements)
    assert {embed_alpha(1, ((1, x), (0, 1)), q) for x in range(q)} == n0


@pytest.mark.parametrize("q", (3, 5))
def test_levi_coordinates_roundtrip(q):
    rng = random.Random(7)
    p_elems = named_subgroup("P", q).elements
    q_elems = named_subgroup("Q", q).elements
    for _ in range(100):
        p = rng.choice(p_elems)
        c = levi_part(p, "siegel", q)
        assert in_P(p)
        assert mat_det2(c.g, q) != 0
        assert mmul(embed_beta(c.g, q), c.unipotent_part, q) == p
        r = rng.choice(q_elems)
        c2 = levi_part(r, "klingen", q)
        assert in_Q(r)
        assert mat_det2(c2.a, q) == 1
        assert mmul(embed_alpha(c2.t, c2.a, q), c2.unipotent_part, q) == r


@pytest.mark.parametrize("q", (3,))
def test_membership_predicates(q):
    assert in_N(nmat(1, 2, 0, q))
    assert not in_N(umat(1, 0, 0, q))
    assert in_O2C(((1, 0), (2, 2)), q)
    assert not in_O2C(((1, 1), (0, 1)), q)
    assert in_Mpsi(embed_beta(((q - 1, 0), (1, 1)), q), q)
    for s in named_subgroup("Spsi", q).elements[:50]:
        assert in_Spsi(s, q)


def test_sp4_enumeration_q3():
    elems = sp4_elements(3)
    assert len(elems) == 51840
    assert all(is_symplectic(g, 3) for g in elems[:500])


def test_symplectic_section_exhaustive_q3():
    q = 3
    for k in (1, 2):
        for space in isotropic_spaces(q, k):
            g = symplectic_section(space)
            assert is_symplectic(g, q)
            assert act(g, base_point(q, k)) == space
