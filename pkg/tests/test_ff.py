"""Finite-field layer invariants."""

import math

import pytest

from sp4jacquet.ff import (
    SUPPORTED_Q,
    FieldElem,
    FieldError,
    MultChar,
    check_q,
    ext_frobenius,
    ext_mul,
    ext_norm,
    ext_units,
    finv,
    fq2_dlog,
    fq2_generator,
    fq_dlog,
    fq_generator,
    gauss_sum,
    legendre,
    mult_char_table,
    norm_one_dlog,
    norm_one_generator,
    psi0,
    smallest_nonsquare,
)


@pytest.mark.parametrize("q", SUPPORTED_Q)
def test_fermat_little(q):
    for a in range(1, q):
        assert pow(a, q - 1, q) == 1
        assert a * finv(a, q) % q == 1


def test_finv_zero_raises():
    with pytest.raises(FieldError):
        finv(0, 5)
    with pytest.raises(FieldError):
        check_q(9)


@pytest.mark.parametrize("q", SUPPORTED_Q)
def test_legendre(q):
    squares = {a * a % q for a in range(1, q)}
    assert len(squares) == (q - 1) // 2
    for a in range(1, q):
        assert legendre(a, q) == (1 if a in squares else -1)
        for b in range(1, q):
            assert legendre(a * b % q, q) == legendre(a, q) * legendre(b, q)
    assert legendre(0, q) == 0


def test_smallest_nonsquare_values():
    assert smallest_nonsquare(3) == 2
    assert smallest_nonsquare(5) == 2
    assert smallest_nonsquare(7) == 3
    assert smallest_nonsquare(11) == 2


@pytest.mark.parametrize("q", SUPPORTED_Q)
def test_psi0_is_additive_character(q):
    total = sum(psi0(x, q) for x in range(q))
    assert abs(total) < 1e-12
    for x in range(q):
        for y in range(q):
            assert abs(psi0(x + y, q) - psi0(x, q) * psi0(y, q)) < 1e-12
    assert abs(psi0(0, q) - 1) < 1e-15


@pytest.mark.parametrize("q", SUPPORTED_Q)
def test_gauss_sum_magnitude(q):
    assert abs(abs(gauss_sum(q)) - math.sqrt(q)) < 1e-9


@pytest.mark.parametrize("q", SUPPORTED_Q)
def test_quadratic_extension(q):
    units = ext_units(q)
    assert len(units) == q * q - 1
    # norm is surjective onto F_q^x with fibers of size q+1
    fibers = {}
    for x in units:
        fibers.setdefault(ext_norm(x, q), []).append(x)
    assert set(fibers) == set(range(1, q))
    assert all(len(v) == q + 1 for v in fibers.values())
    # Frobenius is an involution compatible with multiplication
    for x in units[:20]:
        assert ext_frobenius(ext_frobenius(x, q), q) == x
        y = units[7 % len(units)]
        assert ext_mul(ext_frobenius(x, q), ext_frobenius(y, q), q) == ext_frobenius(
            ext_mul(x, y, q), q
        )


@pytest.mark.parametrize("q", SUPPORTED_Q)
def test_generators_and_dlogs(q):
    g = fq_generator(q)
    assert sorted(pow(g, k, q) for k in range(q - 1)) == list(range(1, q))
    dl = fq_dlog(q)
    for a in range(1, q):
        assert pow(g, dl[a], q) == a

    g2 = fq2_generator(q)
    seen = {g2}
    x = g2
    for _ in range(q * q - 2):
        x = ext_mul(x, g2, q)
        seen.add(x)
    assert len(seen) == q * q - 1
    dl2 = fq2_dlog(q)
    assert len(dl2) == q * q - 1

    u = norm_one_generator(q)
    assert ext_norm(u, q) == 1
    powers = [u]
    x = u
    for _ in range(q):
        x = ext_mul(x, u, q)
        powers.append(x)
    assert len(set(powers)) == q + 1
    assert len(norm_one_dlog(q)) == q + 1


@pytest.mark.parametrize("group,size", [("fq", None), ("fq2", None), ("norm1", None)])
@pytest.mark.parametrize("q", (3, 5, 7))
def test_mult_char_tables(q, group, size):
    table = mult_char_table(group, q)
    n = {"fq": q - 1, "fq2": q * q - 1, "norm1": q + 1}[group]
    assert len(table) == n
    chi = table[1 % n]
    assert isinstance(chi, MultChar)
    # multiplicativity on a few elements
    if group == "fq":
        for a in range(1, q):
            for b in range(1, q):
                assert abs(chi(a * b % q) - chi(a) * chi(b)) < 1e-12


def test_field_elem_arithmetic():
    a = FieldElem(3, 7)
    b = FieldElem(5, 7)
    assert (a + b).value == 1
    assert (a * b).value == 1
    assert (a - b).value == 5
    assert (a / b).value == (3 * finv(5, 7)) % 7
    with pytest.raises(FieldError):
        a / FieldElem(0, 7)
