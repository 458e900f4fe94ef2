"""Matrices over F_q, the symplectic group Sp4(F_q), and exhaustive
constructors for the named subgroups attached to the Siegel and Klingen
parabolic subgroups, together with the embeddings alpha/beta, Levi
factorization and symplectic basis completion.

Conventions.  The symplectic form on F_q^4 is given by
J = [[0, I2], [-I2, 0]] in the ordered basis (e1, e2, e1v, e2v), i.e.
B(u, v) = u0*v2 + u1*v3 - u2*v0 - u3*v1.  The Siegel parabolic P is the
stabilizer of the Lagrangian X0 = <e1, e2>; the Klingen parabolic Q is the
stabilizer of the line <e1>.  Matrices are nested tuples of ints reduced
mod q; tuples double as the canonical hashable packing.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .ff import FieldError, check_q, finv

Mat = tuple  # nested tuple of int rows


# ---------------------------------------------------------------------------
# basic matrix arithmetic


def mat(rows, q):
    return tuple(tuple(x % q for x in r) for r in rows)


def identity(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mmul(a, b, q):
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) % q for j in range(n))
        for i in range(n)
    )


def transpose(a):
    n = len(a)
    return tuple(tuple(a[j][i] for j in range(n)) for i in range(n))


def mat_det2(a, q):
    return (a[0][0] * a[1][1] - a[0][1] * a[1][0]) % q


def minv(a, q):
    """Inverse of a square matrix mod q by Gaussian elimination."""
    n = len(a)
    aug = [[a[i][j] % q for j in range(n)] + [1 if i == j else 0 for j in range(n)]
           for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] % q), None)
        if piv is None:
            raise FieldError("singular matrix")
        aug[col], aug[piv] = aug[piv], aug[col]
        s = finv(aug[col][col], q)
        aug[col] = [x * s % q for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [(x - f * y) % q for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


def mat_apply(g, v, q):
    n = len(g)
    return tuple(sum(g[i][k] * v[k] for k in range(n)) % q for i in range(n))


def J4(q):
    return mat([[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]], q)


def symp_form(u, v, q):
    return (u[0] * v[2] + u[1] * v[3] - u[2] * v[0] - u[3] * v[1]) % q


def is_symplectic(g, q):
    """True iff transpose(g) * J * g == J."""
    j = J4(q)
    return mmul(mmul(transpose(g), j, q), g, q) == j


def symp_inv(g, q):
    """Inverse of a symplectic matrix: g^-1 = J^-1 * g^T * J = -J g^T J."""
    j = J4(q)
    nj = tuple(tuple((-x) % q for x in r) for r in j)
    return mmul(mmul(nj, transpose(g), q), j, q)


# ---------------------------------------------------------------------------
# embeddings and block builders


def embed_beta(g, q):
    """beta(g) = diag(g, g^-T): GL2 -> Levi of the Siegel parabolic."""
    if mat_det2(g, q) == 0:
        raise FieldError("beta requires invertible g")
    h = transpose(minv(g, q))
    return (
        (g[0][0], g[0][1], 0, 0),
        (g[1][0], g[1][1], 0, 0),
        (0, 0, h[0][0], h[0][1]),
        (0, 0, h[1][0], h[1][1]),
    )


def embed_alpha(t, a, q):
    """alpha(t, A): F_q^x x SL2 -> Levi of the Klingen parabolic."""
    t %= q
    if t == 0:
        raise FieldError("alpha requires t != 0")
    if mat_det2(a, q) != 1:
        raise FieldError("alpha requires det A = 1")
    ti = finv(t, q)
    return (
        (t, 0, 0, 0),
        (0, a[0][0], 0, a[0][1]),
        (0, 0, ti, 0),
        (0, a[1][0], 0, a[1][1]),
    )


def nmat(x, y, z, q):
    """Element of N with upper-right symmetric block [[x, y], [y, z]]."""
    return (
        (1, 0, x % q, y % q),
        (0, 1, y % q, z % q),
        (0, 0, 1, 0),
        (0, 0, 0, 1),
    )


def umat(x, y, z, q):
    """Element of U, the unipotent radical of the Klingen parabolic."""
    return (
        (1, x % q, y % q, z % q),
        (0, 1, z % q, 0),
        (0, 0, 1, 0),
        (0, 0, (-x) % q, 1),
    )


def sigma1(q):
    return mat([[0, 0, -1, 0], [0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1]], q)


def sigma2(q):
    return mat([[0, 0, -1, 0], [0, 0, 0, -1], [1, 0, 0, 0], [0, 1, 0, 0]], q)


def h1_swap(q):
    return ((0, 1), (1, 0))


def tau1(q):
    return embed_beta(h1_swap(q), q)


# ---------------------------------------------------------------------------
# membership predicates (inputs assumed symplectic where relevant)


def in_P(g):
    return (
        g[2][0] == g[2][1] == g[3][0] == g[3][1] == 0
    )


def in_M(g):
    return in_P(g) and g[0][2] == g[0][3] == g[1][2] == g[1][3] == 0


def in_N(g):
    return (
        in_P(g)
        and g[0][0] == g[1][1] == g[2][2] == g[3][3] == 1
        and g[0][1] == g[1][0] == g[2][3] == g[3][2] == 0
        and g[0][3] == g[1][2]
    )


def in_Q(g):
    return g[1][0] == g[2][0] == g[3][0] == 0 and g[0][0] != 0


def in_L(g):
    return (
        in_Q(g)
        and g[0][1] == g[0][2] == g[0][3] == 0
        and g[1][2] == g[2][1] == g[2][3] == g[3][2] == 0
    )


def in_U(g, q):
    return (
        g[0][0] == g[1][1] == g[2][2] == g[3][3] == 1
        and g[1][0] == g[2][0] == g[2][1] == g[2][3] == g[3][0] == g[3][1] == 0
        and g[1][3] == 0
        and g[1][2] == g[0][3]
        and g[3][2] == (-g[0][1]) % q
    )


def in_O2C(h, q):
    return h[0][1] == 0 and h[0][0] in (1, q - 1) and h[1][1] != 0


def in_T2C(h, q):
    return in_O2C(h, q) and h[1][0] == 0


def in_Mpsi(g, q):
    return in_M(g) and in_O2C((g[0][:2], g[1][:2]), q)


def in_Spsi(g, q):
    return in_P(g) and in_O2C((g[0][:2], g[1][:2]), q)


# ---------------------------------------------------------------------------
# Levi factorization


@dataclass(frozen=True)
class LeviCoords:
    parabolic: str  # 'siegel' or 'klingen'
    g: Mat = None  # Siegel: GL2 part
    t: int = None  # Klingen: torus part
    a: Mat = None  # Klingen: SL2 part
    unipotent_part: Mat = None


def levi_part(p, parabolic, q):
    """Factor an element of P (resp. Q) as Levi times unipotent."""
    if parabolic == "siegel":
        if not in_P(p):
            raise FieldError("element not in the Siegel parabolic")
        g = (p[0][:2], p[1][:2])
        n = mmul(symp_inv(embed_beta(g, q), q), p, q)
        if not in_N(n):
            raise FieldError("Siegel factorization failed")
        return LeviCoords(parabolic="siegel", g=g, unipotent_part=n)
    if parabolic == "klingen":
        if not in_Q(p):
            raise FieldError("element not in the Klingen parabolic")
        t = p[0][0]
        a = ((p[1][1], p[1][3]), (p[3][1], p[3][3]))
        u = mmul(symp_inv(embed_alpha(t, a, q), q), p, q)
        if not in_U(u, q):
            raise FieldError("Klingen factorization failed")
        return LeviCoords(parabolic="klingen", t=t, a=a, unipotent_part=u)
    raise ValueError(f"unknown parabolic {parabolic!r}")


# ---------------------------------------------------------------------------
# GroupSet and the named-subgroup catalog


@dataclass
class GroupSet:
    """An exhaustively enumerated matrix group with canonical indexing."""

    name: str
    q: int
    elements: list
    index: dict = field(default=None, repr=False)

    def __post_init__(self):
        if self.index is None:
            self.index = {g: i for i, g in enumerate(self.elements)}
        if len(self.index) != len(self.elements):
            raise FieldError(f"duplicate elements in {self.name}")

    @property
    def order(self):
        return len(self.elements)

    def __contains__(self, g):
        return g in self.index

    def __iter__(self):
        return iter(self.elements)


def units(q):
    return range(1, q)


def _gl2_elements(q):
    return [
        ((a, b), (c, d))
        for a in range(q)
        for b in range(q)
        for c in range(q)
        for d in range(q)
        if (a * d - b * c) % q
    ]


def _sl2_elements(q):
    return [g for g in _gl2_elements(q) if mat_det2(g, q) == 1]


def _sym_blocks(q):
    return [(x, y, z) for x in range(q) for y in range(q) for z in range(q)]


def _o2c_elements(q):
    return [((e, 0), (y, d)) for e in (1, q - 1) for y in range(q) for d in units(q)]


EXPECTED_ORDER = {
    "Sp4": lambda q: q**4 * (q**2 - 1) * (q**4 - 1),
    "P": lambda q: q**3 * (q**2 - 1) * (q**2 - q),
    "M": lambda q: (q**2 - 1) * (q**2 - q),
    "N": lambda q: q**3,
    "Q": lambda q: q**3 * (q - 1) * q * (q**2 - 1),
    "L": lambda q: (q - 1) * q * (q**2 - 1),
    "U": lambda q: q**3,
    "Spsi": lambda q: 2 * q * (q - 1) * q**3,
    "Mpsi": lambda q: 2 * q * (q - 1),
    "O2C": lambda q: 2 * q * (q - 1),
    "T2C": lambda q: 2 * (q - 1),
    "B": lambda q: q * (q - 1) ** 2,
    "Bbar": lambda q: q * (q - 1) ** 2,
    "N11": lambda q: q,
    "N11bar": lambda q: q,
    "N0": lambda q: q,
    "N1": lambda q: q**2,
    "N2": lambda q: q,
    "N3": lambda q: q**2,
    "N4": lambda q: q,
    "M1": lambda q: q,
    "M2": lambda q: 2 * (q - 1),
    "M3": lambda q: 2 * (q - 1),
    "D0": lambda q: q**4 * (q - 1) ** 2,
    "D1": lambda q: q**2 * (q - 1) ** 2,
    "H1": lambda q: q**3 * (q - 1) ** 2,
    "GL2": lambda q: (q**2 - 1) * (q**2 - q),
    "SL2": lambda q: q * (q**2 - 1),
}


def _build_named(name, q):
    i = finv
    if name == "GL2":
        return _gl2_elements(q)
    if name == "SL2":
        return _sl2_elements(q)
    if name == "B":
        return [((a, x), (0, b)) for a in units(q) for b in units(q) for x in range(q)]
    if name == "Bbar":
        return [((a, 0), (x, b)) for a in units(q) for b in units(q) for x in range(q)]
    if name == "N11":
        return [((1, x), (0, 1)) for x in range(q)]
    if name == "N11bar":
        return [((1, 0), (x, 1)) for x in range(q)]
    if name == "O2C":
        return _o2c_elements(q)
    if name == "T2C":
        return [((e, 0), (0, d)) for e in (1, q - 1) for d in units(q)]
    if name == "N":
        return [nmat(x, y, z, q) for x, y, z in _sym_blocks(q)]
    if name == "M":
        return [embed_beta(g, q) for g in _gl2_elements(q)]
    if name == "P":
        return [
            mmul(embed_beta(g, q), nmat(x, y, z, q), q)
            for g in _gl2_elements(q)
            for x, y, z in _sym_blocks(q)
        ]
    if name == "Mpsi":
        return [embed_beta(g, q) for g in _o2c_elements(q)]
    if name == "Spsi":
        return [
            mmul(embed_beta(g, q), nmat(x, y, z, q), q)
            for g in _o2c_elements(q)
            for x, y, z in _sym_blocks(q)
        ]
    if name == "L":
        return [embed_alpha(t, a, q) for t in units(q) for a in _sl2_elements(q)]
    if name == "U":
        return [umat(x, y, z, q) for x in range(q) for y in range(q) for z in range(q)]
    if name == "Q":
        return [
            mmul(embed_alpha(t, a, q), umat(x, y, z, q), q)
            for t in units(q)
            for a in _sl2_elements(q)
            for x in range(q)
            for y in range(q)
            for z in range(q)
        ]
    if name == "N0":
        return [nmat(0, 0, x, q) for x in range(q)]
    if name == "N1":
        return [nmat(0, y, z, q) for y in range(q) for z in range(q)]
    if name == "N2":
        return [nmat(x, 0, 0, q) for x in range(q)]
    if name == "N3":
        return [
            mat([[1, 0, y, z], [0, 1, z, 0], [0, 0, 1, 0], [0, 0, 0, 1]], q)
            for y in range(q)
            for z in range(q)
        ]
    if name == "N4":
        return [nmat(0, y, 0, q) for y in range(q)]
    if name == "M1":
        return [embed_beta(((1, 0), (y, 1)), q) for y in range(q)]
    if name == "M2":
        return [
            mat([[a, 0, 0, 0], [0, d, 0, 0], [0, 0, a, 0], [0, 0, 0, i(d, q)]], q)
            for a in (1, q - 1)
            for d in units(q)
        ]
    if name == "M3":
        return [
            mat([[a, 0, 0, 0], [0, d, 0, 0], [0, 0, i(a, q), 0], [0, 0, 0, d]], q)
            for a in units(q)
            for d in (1, q - 1)
        ]
    if name == "D0":
        out = []
        for a in units(q):
            for b in units(q):
                for x in range(q):
                    for y in range(q):
                        for z in range(q):
                            for w in range(q):
                                out.append(mat(
                                    [
                                        [a, x, y, z],
                                        [0, b, (b * z - w * x) * i(a, q), w],
                                        [0, 0, i(a, q), 0],
                                        [0, 0, -i(a, q) * x * i(b, q), i(b, q)],
                                    ],
                                    q,
                                ))
        return out
    if name == "D1":
        return [
            mat(
                [
                    [b, 0, 0, 0],
                    [c, d, 0, y],
                    [0, 0, i(b, q), -c * i(b, q) * i(d, q)],
                    [0, 0, 0, i(d, q)],
                ],
                q,
            )
            for b in units(q)
            for d in units(q)
            for c in range(q)
            for y in range(q)
        ]
    if name == "H1":
        return [
            mat(
                [
                    [b, 0, 0, y],
                    [c, d, d * y * i(b, q), w],
                    [0, 0, i(b, q), -c * i(b, q) * i(d, q)],
                    [0, 0, 0, i(d, q)],
                ],
                q,
            )
            for b in units(q)
            for d in units(q)
            for c in range(q)
            for y in range(q)
            for w in range(q)
        ]
    if name == "Sp4":
        return sp4_elements(q)
    raise ValueError(f"unknown subgroup name {name!r}")


@lru_cache(maxsize=None)
def named_subgroup(name, q):
    """Construct a catalog subgroup by direct parametrization.

    Sp4 itself is oracle-mode only (BFS closure) and gated to q = 3.
    """
    check_q(q)
    elements = _build_named(name, q)
    gs = GroupSet(name=name, q=q, elements=elements)
    expect = EXPECTED_ORDER[name](q)
    if gs.order != expect:
        raise FieldError(f"{name}(q={q}): got {gs.order} elements, expected {expect}")
    return gs


# ---------------------------------------------------------------------------
# generating sets (for orbit engines; closures verified in tests)


def generators(name, q):
    from .ff import fq_generator

    r = fq_generator(q)
    gl2 = [((r, 0), (0, 1)), ((1, 1), (0, 1)), ((0, 1), (1, 0))]
    sl2 = [((1, 1), (0, 1)), ((1, 0), (1, 1))]
    o2 = [(((-1) % q, 0), (0, 1)), ((1, 0), (1, 1)), ((1, 0), (0, r))]
    ngens = [nmat(1, 0, 0, q), nmat(0, 0, 1, q), nmat(0, 1, 0, q)]
    ugens = [umat(1, 0, 0, q), umat(0, 1, 0, q), umat(0, 0, 1, q)]
    if name == "GL2":
        return gl2
    if name == "SL2":
        return sl2
    if name == "O2C":
        return o2
    if name == "P":
        return [embed_beta(g, q) for g in gl2] + ngens
    if name == "Spsi":
        return [embed_beta(g, q) for g in o2] + ngens
    if name == "Q":
        return (
            [embed_alpha(r, identity(2), q)]
            + [embed_alpha(1, a, q) for a in sl2]
            + ugens
        )
    if name == "Sp4":
        return [embed_beta(g, q) for g in gl2] + ngens + [sigma2(q)]
    raise ValueError(f"no generating set for {name!r}")


# ---------------------------------------------------------------------------
# full Sp4 (oracle mode)


@lru_cache(maxsize=None)
def sp4_elements(q):
    """BFS closure of Sp4(F_q) from generators.  Oracle mode: q = 3 only."""
    if q != 3:
        raise FieldError("full Sp4 enumeration is gated to q = 3 (oracle mode)")
    gens = generators("Sp4", q)
    seen = {identity(4)}
    frontier = [identity(4)]
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = mmul(g, s, q)
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
        frontier = nxt
    return sorted(seen)


# ---------------------------------------------------------------------------
# symplectic basis completion (sections of the coset maps)


def _lex_vectors(q):
    for v0 in range(q):
        for v1 in range(q):
            for v2 in range(q):
                for v3 in range(q):
                    yield (v0, v1, v2, v3)


def _first_solution(q, conditions):
    """Lexicographically first v in F_q^4 with symp_form(f, v) = c for each
    (f, c) in conditions."""
    for v in _lex_vectors(q):
        if all(symp_form(f, v, q) == c for f, c in conditions):
            return v
    raise FieldError("no completion vector found")


def _independent(v, w, q):
    return any((v[i] * w[j] - v[j] * w[i]) % q for i in range(4) for j in range(i))


def symplectic_section(space):
    """A symplectic g with g(X0) = X for an IsotropicSubspace X, where
    X0 = <e1, ..., ek>.  Deterministic: completion vectors are the
    lexicographically first valid choices."""
    q, k = space.q, space.k
    rows = space.basis
    if k == 2:
        f1, f2 = rows
        f1v = _first_solution(q, [(f1, 1), (f2, 0)])
        f2v = _first_solution(q, [(f1, 0), (f2, 1), (f1v, 0)])
        cols = (f1, f2, f1v, f2v)
    elif k == 1:
        f1 = rows[0]
        u = next(
            v
            for v in _lex_vectors(q)
            if symp_form(f1, v, q) == 0 and any(v) and _independent(f1, v, q)
        )
        f1v = _first_solution(q, [(f1, 1), (u, 0)])
        uv = _first_solution(q, [(f1, 0), (u, 1), (f1v, 0)])
        cols = (f1, u, f1v, uv)
    else:
        raise ValueError("k must be 1 or 2")
    g = transpose(cols)
    if not is_symplectic(g, q):
        raise FieldError("section construction failed")
    return g
