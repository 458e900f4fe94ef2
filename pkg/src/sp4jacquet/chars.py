"""Conjugacy classes, class-function algebra, and irreducible character
tables for GL2(F_q), SL2(F_q), O2(F_q,C), T2(F_q,C) and the Klingen Levi
L = F_q^x x SL2(F_q).

The GL2 table is the classical four-family table parametrized by characters
of F_q^x and F_{q^2}^x.  The SL2 table combines brute-force induction from
the Borel with restriction of GL2 cuspidal characters and the Gauss-sum
formulas for the four halved representations; the orthogonality suite
certifies every table independently of how its rows were produced.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

from .ff import (
    MultChar,
    check_q,
    fq_generator,
    gauss_sum,
    legendre,
    mult_char_table,
    norm_one_dlog,
    psi0,
    smallest_nonsquare,
)
from .matgrp import (
    GroupSet,
    embed_alpha,
    generators,
    identity,
    minv,
    mmul,
    named_subgroup,
)


# ---------------------------------------------------------------------------
# conjugacy classes


@dataclass
class ClassData:
    group: GroupSet
    class_reps: list
    class_sizes: list
    class_of: dict  # element -> class index

    @property
    def n_classes(self):
        return len(self.class_reps)

    @property
    def identity_class(self):
        n = len(self.class_reps[0])
        return self.class_of[identity(n)]


def conjugacy_classes(group: GroupSet) -> ClassData:
    """Exact partition of a GroupSet into conjugacy classes.

    Class orbits are closed under conjugation by a generating set (the full
    element list for small groups); representatives are the least elements
    in packing order, and classes are sorted by representative.
    """
    q = group.q
    try:
        gens = generators(group.name, q) if group.order > 500 else list(group.elements)
    except ValueError:
        gens = list(group.elements)
    gen_invs = [minv(g, q) for g in gens]
    unassigned = set(group.elements)
    classes = []
    for x in group.elements:
        if x not in unassigned:
            continue
        orbit = {x}
        frontier = [x]
        while frontier:
            nxt = []
            for y in frontier:
                for g, gi in zip(gens, gen_invs):
                    z = mmul(mmul(g, y, q), gi, q)
                    if z not in orbit:
                        orbit.add(z)
                        nxt.append(z)
            frontier = nxt
        unassigned -= orbit
        classes.append(sorted(orbit))
    classes.sort(key=lambda c: c[0])
    class_of = {}
    for i, c in enumerate(classes):
        for y in c:
            class_of[y] = i
    return ClassData(
        group=group,
        class_reps=[c[0] for c in classes],
        class_sizes=[len(c) for c in classes],
        class_of=class_of,
    )


@lru_cache(maxsize=None)
def class_data(name, q):
    return conjugacy_classes(named_subgroup(name, q))


# ---------------------------------------------------------------------------
# class functions


@dataclass
class ClassFunction:
    classes: ClassData
    values: tuple

    def at(self, g):
        return self.values[self.classes.class_of[g]]

    @property
    def dim(self):
        return self.values[self.classes.identity_class]

    def __add__(self, other):
        if other.classes is not self.classes:
            raise ValueError("mismatched class data")
        return ClassFunction(self.classes, tuple(a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other):
        if other.classes is not self.classes:
            raise ValueError("mismatched class data")
        return ClassFunction(self.classes, tuple(a - b for a, b in zip(self.values, other.values)))


def inner_product(f: ClassFunction, g: ClassFunction) -> complex:
    if f.classes is not g.classes:
        raise ValueError("mismatched class data")
    order = sum(f.classes.class_sizes)
    return (
        sum(
            s * a * b.conjugate()
            for s, a, b in zip(f.classes.class_sizes, f.values, g.values)
        )
        / order
    )


def induce(chi: ClassFunction, big: ClassData, transversal) -> ClassFunction:
    """Frobenius induction: (Ind chi)(g) = sum over transversal x with
    x^-1 g x in H of chi(x^-1 g x)."""
    q = big.group.q
    h_index = chi.classes.class_of
    n = len(transversal)
    if n * sum(chi.classes.class_sizes) != sum(big.class_sizes):
        raise ValueError("transversal size does not match the index")
    t_invs = [minv(x, q) for x in transversal]
    vals = []
    for g in big.class_reps:
        total = 0.0 + 0.0j
        for x, xi in zip(transversal, t_invs):
            y = mmul(mmul(xi, g, q), x, q)
            if y in h_index:
                total += chi.values[h_index[y]]
        vals.append(total)
    return ClassFunction(big, tuple(vals))


def restrict(chi: ClassFunction, sub: ClassData) -> ClassFunction:
    return ClassFunction(sub, tuple(chi.at(g) for g in sub.class_reps))


def conjugate_cf(chi: ClassFunction) -> ClassFunction:
    return ClassFunction(chi.classes, tuple(v.conjugate() for v in chi.values))


def tensor(f: ClassFunction, g: ClassFunction) -> ClassFunction:
    if f.classes is not g.classes:
        raise ValueError("mismatched class data")
    return ClassFunction(f.classes, tuple(a * b for a, b in zip(f.values, g.values)))


def inflate_t2_to_o2(vals_on_t2, q):
    """Inflate a function (e, d) -> value along the quotient O2 -> T2 that
    kills the lower-left coordinate."""
    o2 = o2_class_data(q)
    return ClassFunction(
        o2, tuple(vals_on_t2(g[0][0], g[1][1]) for g in o2.class_reps)
    )


def class_function_ops(f: ClassFunction, op: str, **kw) -> ClassFunction:
    if op == "restrict":
        return restrict(f, kw["sub"])
    if op == "conjugate":
        return conjugate_cf(f)
    if op == "tensor":
        return tensor(f, kw["other"])
    if op == "inflate":
        return inflate_t2_to_o2(lambda e, d: f.at(((e, 0), (0, d))), kw["q"])
    raise ValueError(f"unknown op {op!r}")


# ---------------------------------------------------------------------------
# labels and tables


@dataclass(frozen=True)
class IrrepLabel:
    family: str
    params: tuple = ()

    def __str__(self):
        if not self.params:
            return self.family
        return f"{self.family}({','.join(str(p) for p in self.params)})"


@dataclass
class IrrTable:
    group_label: str
    classes: ClassData
    rows: list  # list of (IrrepLabel, ClassFunction)

    def row(self, label):
        for lab, chi in self.rows:
            if lab == label:
                return chi
        raise KeyError(str(label))

    @property
    def labels(self):
        return [lab for lab, _ in self.rows]


def verify_orthogonality(table: IrrTable, tol=1e-9):
    """Row orthonormality, column orthogonality and the degree-sum identity.

    Returns (ok, info) where info names the first offending pair on failure.
    """
    cd = table.classes
    order = sum(cd.class_sizes)
    rows = table.rows
    for i, (li, fi) in enumerate(rows):
        for j, (lj, fj) in enumerate(rows):
            ip = inner_product(fi, fj)
            want = 1.0 if i == j else 0.0
            if abs(ip - want) > tol:
                return False, f"<{li},{lj}> = {ip}"
    for a in range(cd.n_classes):
        for b in range(cd.n_classes):
            s = sum(f.values[a] * f.values[b].conjugate() for _, f in rows)
            want = order / cd.class_sizes[a] if a == b else 0.0
            if abs(s - want) > tol:
                return False, f"column pair ({a},{b}): {s} vs {want}"
    degsum = sum(round(f.dim.real) ** 2 for _, f in rows)
    if degsum != order:
        return False, f"degree sum {degsum} != {order}"
    return True, None


# ---------------------------------------------------------------------------
# GL2(F_q)


@lru_cache(maxsize=None)
def gl2_class_types(q):
    """Identify each GL2 conjugacy class as central/jordan/split/elliptic
    with its parameters."""
    cd = class_data("GL2", q)
    d = smallest_nonsquare(q)
    types = {}

    def put(idx, typ):
        types.setdefault(idx, typ)

    for a in range(1, q):
        put(cd.class_of[((a, 0), (0, a))], ("central", a))
    for a in range(1, q):
        put(cd.class_of[((a, 1), (0, a))], ("jordan", a))
    for a in range(1, q):
        for b in range(a + 1, q):
            put(cd.class_of[((a, 0), (0, b))], ("split", (a, b)))
    for a in range(q):
        for b in range(1, q):
            m = ((a, b * d % q), (b, a))
            put(cd.class_of[m], ("elliptic", (a, b)))
    if len(types) != cd.n_classes:
        raise RuntimeError("GL2 class identification incomplete")
    return tuple(types[i] for i in range(cd.n_classes))


def _regular_fq2_indices(q):
    """Canonical exponents of the regular characters of F_{q^2}^x, one per
    Frobenius pair {theta, theta^q}."""
    n = q * q - 1
    out = []
    for k in range(1, n):
        if k % (q + 1) == 0:
            continue  # theta = theta^q, not regular
        if min(k, k * q % n) == k:
            out.append(k)
    return out


@lru_cache(maxsize=None)
def gl2_irr_table(q):
    check_q(q)
    cd = class_data("GL2", q)
    types = gl2_class_types(q)
    fq_chars = mult_char_table("fq", q)
    fq2_chars = mult_char_table("fq2", q)
    d = smallest_nonsquare(q)
    rows = []

    def norm(a, b):
        return (a * a - d * b * b) % q

    def values(fn):
        return tuple(fn(t) for t in types)

    for i, alpha in enumerate(fq_chars):
        def lin(t, alpha=alpha):
            kind, p = t
            if kind == "central":
                return alpha(p * p % q)
            if kind == "jordan":
                return alpha(p * p % q)
            if kind == "split":
                return alpha(p[0] * p[1] % q)
            return alpha(norm(*p))

        rows.append((IrrepLabel("linear", (i,)), ClassFunction(cd, values(lin))))

    for i, alpha in enumerate(fq_chars):
        def stw(t, alpha=alpha):
            kind, p = t
            if kind == "central":
                return q * alpha(p * p % q)
            if kind == "jordan":
                return 0.0
            if kind == "split":
                return alpha(p[0] * p[1] % q)
            return -alpha(norm(*p))

        rows.append((IrrepLabel("steinberg", (i,)), ClassFunction(cd, values(stw))))

    for i in range(q - 1):
        for j in range(i + 1, q - 1):
            a_chr, b_chr = fq_chars[i], fq_chars[j]

            def ps(t, a_chr=a_chr, b_chr=b_chr):
                kind, p = t
                if kind == "central":
                    return (q + 1) * a_chr(p) * b_chr(p)
                if kind == "jordan":
                    return a_chr(p) * b_chr(p)
                if kind == "split":
                    x, y = p
                    return a_chr(x) * b_chr(y) + a_chr(y) * b_chr(x)
                return 0.0

            rows.append((IrrepLabel("principal", (i, j)), ClassFunction(cd, values(ps))))

    for k in _regular_fq2_indices(q):
        theta = fq2_chars[k]

        def cusp(t, theta=theta):
            kind, p = t
            if kind == "central":
                return (q - 1) * theta((p, 0))
            if kind == "jordan":
                return -theta((p, 0))
            if kind == "split":
                return 0.0
            a, b = p
            return -(theta((a, b)) + theta((a, (-b) % q)))

        rows.append((IrrepLabel("cuspidal", (k,)), ClassFunction(cd, values(cusp))))

    return IrrTable("GL2", cd, rows)


def gl2_is_cuspidal(label: IrrepLabel):
    return label.family == "cuspidal"


# ---------------------------------------------------------------------------
# SL2(F_q)


@lru_cache(maxsize=None)
def _sl2_borel_induced(q, chi_index):
    """Character of Ind_B^{SL2}(chi) computed by the full Frobenius sum."""
    cd = class_data("SL2", q)
    sl2 = named_subgroup("SL2", q)
    chi = mult_char_table("fq", q)[chi_index]
    vals = []
    inv = {g: minv(g, q) for g in sl2}
    for rep in cd.class_reps:
        total = 0.0 + 0.0j
        for x in sl2:
            y = mmul(mmul(x, rep, q), inv[x], q)
            if y[1][0] == 0:  # upper triangular
                total += chi(y[0][0])
        vals.append(total / (q * (q - 1)))  # |B| = q(q-1)
    return ClassFunction(cd, tuple(vals))


def _sl2_class_values(q, at_pm1, at_unip, at_split, at_elliptic):
    """Assemble an SL2 class function from values on the standard class
    shapes: (+-I), (z * u(x)), diag(a, a^-1), norm-one elliptic."""
    cd = class_data("SL2", q)
    d = smallest_nonsquare(q)
    vals = []
    ident = {}
    # identify classes by canonical shapes
    for g, tag in _sl2_canonical_reps(q):
        ident.setdefault(cd.class_of[g], tag)
    for i, rep in enumerate(cd.class_reps):
        kind, p = ident[i]
        if kind == "central":
            vals.append(at_pm1(p))
        elif kind == "unip":
            vals.append(at_unip(*p))
        elif kind == "split":
            vals.append(at_split(p))
        else:
            vals.append(at_elliptic(p))
    return ClassFunction(cd, tuple(vals))


@lru_cache(maxsize=None)
def _sl2_canonical_reps(q):
    d = smallest_nonsquare(q)
    out = []
    one, mone = 1, q - 1
    out.append((identity(2), ("central", 1)))
    out.append((((mone, 0), (0, mone)), ("central", -1)))
    for z in (1, -1):
        for x in (1, d):
            zz = z % q
            out.append(
                (((zz, x * zz % q), (0, zz)), ("unip", (z, x)))
            )
    for a in range(2, q - 1):
        from .ff import finv

        out.append((((a, 0), (0, finv(a, q))), ("split", a)))
    # norm-one torus elements a + b*sqrt(d), b != 0
    for a in range(q):
        for b in range(1, q):
            if (a * a - d * b * b) % q == 1:
                out.append((((a, b * d % q), (b, a)), ("elliptic", (a, b))))
    return tuple(out)


@lru_cache(maxsize=None)
def sl2_irr_table(q):
    """The full SL2(F_q) character table with structural labels.

    The four halved rows are labeled so that tau1 / tau1p are the halves
    whose Whittaker space for the square-class character (gamma = 1) is
    nonzero; this matches the usual normalization and is certified by the
    Whittaker computation downstream.
    """
    check_q(q)
    cd = class_data("SL2", q)
    assert cd.n_classes == q + 4
    rows = []
    trivial = ClassFunction(cd, tuple(1.0 for _ in cd.class_reps))
    rows.append((IrrepLabel("trivial"), trivial))
    rows.append((IrrepLabel("steinberg"), _sl2_borel_induced(q, 0) - trivial))
    for i in range(1, q - 1):
        if (2 * i) % (q - 1) == 0:
            continue  # chi^2 = 1 handled by the halved rows
        if min(i, q - 1 - i) != i:
            continue
        rows.append((IrrepLabel("principal", (i,)), _sl2_borel_induced(q, i)))

    # cuspidal rows from regular characters of the norm-one torus
    n1 = q + 1
    theta_chars = mult_char_table("norm1", q)
    for m in range(1, n1):
        if (2 * m) % n1 == 0:
            continue
        if min(m, n1 - m) != m:
            continue
        theta = theta_chars[m]
        om = theta(((-1) % q, 0))

        def cusp(z, theta=theta, om=om):
            return (q - 1) * (om if z == -1 else 1)

        rows.append(
            (
                IrrepLabel("cuspidal", (m,)),
                _sl2_class_values(
                    q,
                    at_pm1=cusp,
                    at_unip=lambda z, x, om=om: -(om if z == -1 else 1),
                    at_split=lambda a: 0.0,
                    at_elliptic=lambda p, theta=theta: -(
                        theta(p) + theta((p[0], (-p[1]) % q))
                    ),
                ),
            )
        )

    # halved rows: components of Ind_B(chi2) and the two small cuspidals
    G = gauss_sum(q)
    eps = legendre(-1, q)
    chi2 = mult_char_table("fq", q)[(q - 1) // 2]
    theta2 = mult_char_table("norm1", q)[(q + 1) // 2]
    halves = {}
    for s in (1, -1):
        halves[("ps", s)] = _sl2_class_values(
            q,
            at_pm1=lambda z, s=s: (q + 1) / 2 * (eps if z == -1 else 1),
            at_unip=lambda z, x, s=s: (eps if z == -1 else 1)
            * (1 + s * legendre(x, q) * G)
            / 2,
            at_split=lambda a: chi2(a),
            at_elliptic=lambda p: 0.0,
        )
        halves[("cusp", s)] = _sl2_class_values(
            q,
            at_pm1=lambda z, s=s: (q - 1) / 2 * (-eps if z == -1 else 1),
            at_unip=lambda z, x, s=s: (-eps if z == -1 else 1)
            * (-1 + s * legendre(x, q) * G)
            / 2,
            at_split=lambda a: 0.0,
            at_elliptic=lambda p, theta2=theta2: -theta2(p),
        )

    def whittaker_dim(chi, gamma):
        total = sum(
            psi0(-gamma * x, q) * chi.at(((1, x % q), (0, 1))) for x in range(q)
        )
        return total.real / q

    for fam, names in (("ps", ("tau1", "tau2")), ("cusp", ("tau1p", "tau2p"))):
        plus, minus = halves[(fam, 1)], halves[(fam, -1)]
        if whittaker_dim(plus, 1) > 0.5:
            first, second = plus, minus
        else:
            first, second = minus, plus
        rows.append((IrrepLabel(names[0]), first))
        rows.append((IrrepLabel(names[1]), second))

    return IrrTable("SL2", cd, rows)


def sl2_is_cuspidal(label: IrrepLabel):
    return label.family in ("cuspidal", "tau1p", "tau2p")


def sl2_central_character(chi: ClassFunction, q):
    """omega_tau(-1), the scalar by which -I acts."""
    mone = (q - 1) % q
    val = chi.at(((mone, 0), (0, mone))) / chi.dim
    r = round(val.real)
    if abs(val - r) > 1e-6 or r not in (1, -1):
        raise RuntimeError("central character is not +-1")
    return r


# ---------------------------------------------------------------------------
# O2(F_q, C) and T2(F_q, C)


@lru_cache(maxsize=None)
def o2_class_data(q):
    return class_data("O2C", q)


@lru_cache(maxsize=None)
def t2_irr_table(q):
    cd = class_data("T2C", q)
    fq_chars = mult_char_table("fq", q)
    rows = []
    for s in (0, 1):
        for j, mu in enumerate(fq_chars):
            vals = tuple(
                ((-1) ** s if g[0][0] == q - 1 else 1) * mu(g[1][1])
                for g in cd.class_reps
            )
            rows.append((IrrepLabel("linear", (s, j)), ClassFunction(cd, vals)))
    return IrrTable("T2C", cd, rows)


@lru_cache(maxsize=None)
def o2_irr_table(q):
    """Irr(O2) by the little-group method: 2(q-1) linear characters inflated
    from T2, plus two (q-1)-dimensional characters induced from the
    index-(q-1) subgroup {[[e,0],[y,e]]}."""
    cd = o2_class_data(q)
    fq_chars = mult_char_table("fq", q)
    rows = []
    for s in (0, 1):
        for j, mu in enumerate(fq_chars):
            vals = tuple(
                ((-1) ** s if g[0][0] == q - 1 else 1) * mu(g[1][1])
                for g in cd.class_reps
            )
            rows.append((IrrepLabel("linear", (s, j)), ClassFunction(cd, vals)))

    # the subgroup H = {+-1} x Nbar_{1,1} and its generic characters
    h_elements = [((e, 0), (y, e)) for e in (1, q - 1) for y in range(q)]
    h_grp = GroupSet("O2C-little", q, h_elements)
    h_cd = conjugacy_classes(h_grp)
    transversal = [((1, 0), (0, d)) for d in range(1, q)]
    from .ff import finv

    for s in (0, 1):
        hvals = tuple(
            ((-1) ** s if g[0][0] == q - 1 else 1)
            * psi0(g[1][0] * finv(g[0][0], q), q)
            for g in h_cd.class_reps
        )
        chi = ClassFunction(h_cd, hvals)
        rows.append((IrrepLabel("induced", (s,)), induce(chi, cd, transversal)))
    return IrrTable("O2C", cd, rows)


# ---------------------------------------------------------------------------
# L = F_q^x x SL2


@lru_cache(maxsize=None)
def l_class_data(q):
    """Classes of the Klingen Levi as products (t, SL2-class)."""
    grp = named_subgroup("L", q)
    sl2_cd = class_data("SL2", q)
    reps, sizes = [], []
    pair_index = {}
    for t in range(1, q):
        for i, rep in enumerate(sl2_cd.class_reps):
            pair_index[(t, i)] = len(reps)
            reps.append(embed_alpha(t, rep, q))
            sizes.append(sl2_cd.class_sizes[i])
    class_of = {}
    for g in grp:
        t = g[0][0]
        a = ((g[1][1], g[1][3]), (g[3][1], g[3][3]))
        class_of[g] = pair_index[(t, sl2_cd.class_of[a])]
    return ClassData(group=grp, class_reps=reps, class_sizes=sizes, class_of=class_of)


@lru_cache(maxsize=None)
def l_irr_table(q):
    """Irr(L) as the outer product of characters of F_q^x with Irr(SL2)."""
    cd = l_class_data(q)
    fq_chars = mult_char_table("fq", q)
    sl2 = sl2_irr_table(q)
    rows = []
    for j, eta in enumerate(fq_chars):
        for lab, chi in sl2.rows:
            vals = []
            for g in cd.class_reps:
                t = g[0][0]
                a = ((g[1][1], g[1][3]), (g[3][1], g[3][3]))
                vals.append(eta(t) * chi.at(a))
            label = IrrepLabel("pair", (j, lab.family) + lab.params)
            rows.append((label, ClassFunction(cd, tuple(vals))))
    return IrrTable("L", cd, rows)
