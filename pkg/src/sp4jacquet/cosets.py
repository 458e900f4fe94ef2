"""Isotropic-subspace models of the coset spaces P\\Sp4 and Q\\Sp4, orbit
decomposition under subgroup actions, double-coset representatives, and the
decomposability and stabilizer verifications.

The coset space P_k\\Sp4(F_q) is identified with Lambda(k), the set of
k-dimensional totally isotropic subspaces, via P_k g -> g^{-1}(X0) with
X0 = <e1, ..., ek>.  Under this identification the right translation action
of a subgroup K becomes the natural action of K on subspaces, so double
cosets P_k\\Sp4/K correspond to K-orbits on Lambda(k).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .ff import check_q, finv
from .matgrp import (
    EXPECTED_ORDER,
    GroupSet,
    generators,
    identity,
    in_L,
    in_M,
    in_N,
    in_P,
    in_Q,
    in_U,
    mat_apply,
    mat_det2,
    mmul,
    named_subgroup,
    sigma1,
    sigma2,
    symp_form,
    symp_inv,
    symplectic_section,
    tau1,
)


# ---------------------------------------------------------------------------
# subspaces in canonical echelon form


def rref(rows, q):
    """Reduced row-echelon form over F_q; returns the nonzero rows."""
    m = [list(r) for r in rows]
    nrows, ncols = len(m), len(m[0])
    pivot_row = 0
    for col in range(ncols):
        piv = next((r for r in range(pivot_row, nrows) if m[r][col] % q), None)
        if piv is None:
            continue
        m[pivot_row], m[piv] = m[piv], m[pivot_row]
        s = finv(m[pivot_row][col], q)
        m[pivot_row] = [x * s % q for x in m[pivot_row]]
        for r in range(nrows):
            if r != pivot_row and m[r][col] % q:
                f = m[r][col]
                m[r] = [(x - f * y) % q for x, y in zip(m[r], m[pivot_row])]
        pivot_row += 1
        if pivot_row == nrows:
            break
    return tuple(tuple(r) for r in m[:pivot_row] if any(x % q for x in r))


@dataclass(frozen=True)
class IsotropicSubspace:
    """A k-dimensional totally isotropic subspace of F_q^4, stored by its
    unique reduced row-echelon basis."""

    k: int
    q: int
    basis: tuple

    def __post_init__(self):
        if len(self.basis) != self.k:
            raise ValueError("basis rank does not match k")


def make_subspace(rows, q):
    b = rref(rows, q)
    return IsotropicSubspace(k=len(b), q=q, basis=b)


def is_isotropic(space):
    b, q = space.basis, space.q
    return all(
        symp_form(u, v, q) == 0 for i, u in enumerate(b) for v in b[: i + 1]
    )


def act(g, space):
    """Image subspace g(X)."""
    q = space.q
    return make_subspace([mat_apply(g, v, q) for v in space.basis], q)


def e_basis(q):
    e1, e2 = (1, 0, 0, 0), (0, 1, 0, 0)
    e1v, e2v = (0, 0, 1, 0), (0, 0, 0, 1)
    return e1, e2, e1v, e2v


def base_point(q, k):
    e1, e2, _, _ = e_basis(q)
    return make_subspace([e1, e2][:k], q)


@lru_cache(maxsize=None)
def isotropic_spaces(q, k):
    """All k-dimensional totally isotropic subspaces, in canonical order."""
    check_q(q)
    if k == 1:
        # every line is isotropic for an alternating form
        seen = set()
        for v in _nonzero_vectors(q):
            seen.add(make_subspace([v], q))
        out = sorted(seen, key=lambda s: s.basis)
        assert len(out) == (q**4 - 1) // (q - 1)
        return out
    if k == 2:
        seen = set()
        vecs = list(_nonzero_vectors(q))
        for i, u in enumerate(vecs):
            for v in vecs[i + 1 :]:
                if symp_form(u, v, q) != 0:
                    continue
                s = make_subspace([u, v], q)
                if s.k == 2:
                    seen.add(s)
        out = sorted(seen, key=lambda s: s.basis)
        assert len(out) == (q**2 + 1) * (q + 1)
        return out
    raise ValueError("k must be 1 or 2")


def _nonzero_vectors(q):
    for a in range(q):
        for b in range(q):
            for c in range(q):
                for d in range(q):
                    if a or b or c or d:
                        yield (a, b, c, d)


# ---------------------------------------------------------------------------
# orbit decomposition


@dataclass(frozen=True)
class GroupHandle:
    """A stand-in for a large GroupSet: enough for generator-driven orbit
    work without materializing the elements."""

    name: str
    q: int

    @property
    def order(self):
        return EXPECTED_ORDER[self.name](self.q)


@dataclass
class OrbitDecomposition:
    space: list
    orbits: list
    representatives: list
    witness: dict  # point -> group element mapping its orbit rep to it


def orbit_decompose(actors: GroupSet, space, use_generators=None):
    """Partition a point set under the action of a matrix group.

    The action graph is explored breadth-first from each unvisited point,
    recording a witness group element per point.  For large actor groups a
    verified generating set is used instead of the full element list.
    """
    q = actors.q
    if use_generators is None:
        use_generators = not hasattr(actors, "elements") or actors.order > 10**4
    gens = generators(actors.name, q) if use_generators else list(actors.elements)
    point_set = set(space)
    witness = {}
    orbits, reps = [], []
    for start in space:
        if start in witness:
            continue
        witness[start] = identity(4) if len(start.basis[0]) == 4 else identity(2)
        orbit = [start]
        frontier = [start]
        while frontier:
            nxt = []
            for p in frontier:
                for g in gens:
                    im = act(g, p)
                    if im not in witness:
                        if im not in point_set:
                            raise ValueError("action leaves the point set")
                        witness[im] = mmul(g, witness[p], q)
                        orbit.append(im)
                        nxt.append(im)
            frontier = nxt
        orbits.append(orbit)
        reps.append(start)
    return OrbitDecomposition(
        space=list(space), orbits=orbits, representatives=reps, witness=witness
    )


# ---------------------------------------------------------------------------
# double cosets


@dataclass
class DoubleCosetReport:
    ambient: str
    left: str
    right: str
    representatives: list
    sizes: list


def _line_section(line, q):
    """g in GL2 with g(<e2>) = line, for the projective-line model."""
    (a, b) = line.basis[0][:2] if len(line.basis[0]) == 2 else line.basis[0]
    for c in range(q):
        for d in range(q):
            g = ((c, a), (d, b))
            if mat_det2(g, q) != 0:
                return g
    raise ValueError("no section")


def projective_line(q):
    """Lines in F_q^2, canonical order (for the B-bar \\ GL2 model)."""
    seen = set()
    for a in range(q):
        for b in range(q):
            if a or b:
                seen.add(rref([(a, b)], q))
    pts = sorted(seen)
    return [IsotropicSubspace(k=1, q=q, basis=b) for b in pts]


_ORBIT_CACHE = {}


def lambda_orbits(right_group: GroupSet, k):
    """Cached orbit decomposition of the right group acting on Lambda(k)."""
    key = (right_group.name, right_group.q, k)
    if key not in _ORBIT_CACHE:
        _ORBIT_CACHE[key] = orbit_decompose(
            right_group, isotropic_spaces(right_group.q, k)
        )
    return _ORBIT_CACHE[key]


def double_coset_reps(space_model: str, right_group: GroupSet) -> DoubleCosetReport:
    """Double-coset representatives G0\\G/K via K-orbits on the coset model.

    space_model: 'lambda1' (G0 = Q), 'lambda2' (G0 = P), or 'projline'
    (G = GL2, G0 = B-bar).  Representatives are (section of orbit rep)^{-1}.
    """
    q = right_group.q
    if space_model in ("lambda1", "lambda2"):
        k = 1 if space_model == "lambda1" else 2
        left = "Q" if k == 1 else "P"
        dec = lambda_orbits(right_group, k)
        reps = [symp_inv(symplectic_section(p), q) for p in dec.representatives]
        left_order = EXPECTED_ORDER[left](q)
        sizes = [len(orb) * left_order for orb in dec.orbits]
        return DoubleCosetReport(
            ambient="Sp4", left=left, right=right_group.name,
            representatives=reps, sizes=sizes,
        )
    if space_model == "projline":
        space = projective_line(q)
        dec = orbit_decompose(right_group, space, use_generators=False)
        from .matgrp import minv

        reps = [minv(_line_section(p, q), q) for p in dec.representatives]
        sizes = [len(orb) * EXPECTED_ORDER["Bbar"](q) for orb in dec.orbits]
        return DoubleCosetReport(
            ambient="GL2", left="Bbar", right=right_group.name,
            representatives=reps, sizes=sizes,
        )
    raise ValueError(f"unknown space model {space_model!r}")


def same_double_coset(space_model, g, h, right_group):
    """Whether G0 g K = G0 h K, tested through the coset model: the points
    g^{-1}(X0), h^{-1}(X0) must lie in the same K-orbit."""
    from .matgrp import minv

    q = right_group.q
    if space_model == "projline":
        e2 = make_subspace([(0, 1)], q)
        dec = orbit_decompose(right_group, projective_line(q), use_generators=False)
        pg = act(minv(g, q), e2)
        ph = act(minv(h, q), e2)
        for orb in dec.orbits:
            if pg in orb:
                return ph in orb
        raise ValueError("point not found in any orbit")
    k = 1 if space_model == "lambda1" else 2
    x0 = base_point(q, k)
    dec = lambda_orbits(right_group, k)
    pg = act(symp_inv(g, q), x0)
    ph = act(symp_inv(h, q), x0)
    for orb in dec.orbits:
        if pg in orb:
            return ph in orb
    raise ValueError("point not found in any orbit")


# ---------------------------------------------------------------------------
# decomposability


def decomposability_check(H: GroupSet, H1: GroupSet, H2: GroupSet):
    """Whether H cap (H1*H2) = (H cap H1)*(H cap H2) as sets.

    Returns (True, None) or (False, witness) with a witness element of the
    larger side missing from the smaller.
    """
    q = H.q
    prod = {mmul(a, b, q) for a in H1 for b in H2}
    lhs = {h for h in H if h in prod}
    in1 = [h for h in H if h in H1.index]
    in2 = [h for h in H if h in H2.index]
    rhs = {mmul(a, b, q) for a in in1 for b in in2}
    if lhs == rhs:
        return True, None
    diff = lhs.symmetric_difference(rhs)
    return False, next(iter(diff))


def weyl_elements(parabolic, q):
    """The double-coset representatives entering the Mackey analysis."""
    t1, s1 = tau1(q), sigma1(q)
    if parabolic == "siegel":
        return [
            ("I4", identity(4)),
            ("sigma1", s1),
            ("tau1*sigma1", mmul(t1, s1, q)),
            ("sigma2", sigma2(q)),
        ]
    if parabolic == "klingen":
        return [
            ("I4", identity(4)),
            ("tau1", t1),
            ("sigma1", s1),
            ("tau1*sigma1", mmul(t1, s1, q)),
        ]
    raise ValueError(parabolic)


def _product_equal(lhs, part1, part2, q):
    rhs = {mmul(a, b, q) for a in part1 for b in part2}
    if lhs == rhs:
        return True, None
    return False, next(iter(lhs.symmetric_difference(rhs)))


def decomposability_suite(parabolic, q):
    """All six Mackey decomposability conditions for each Weyl element.

    For the Siegel parabolic the triple of reference subgroups is
    (P, M, N); for the Klingen parabolic it is (Q, L, U).  Conditions
    (1)-(3) live inside S_psi = M_psi N, conditions (4)-(6) inside the
    parabolic.  Returns a list of result records.
    """
    from .matgrp import in_Mpsi, in_Spsi

    if parabolic == "siegel":
        preds = {"big": in_P, "levi": in_M, "unip": in_N}
        big_name, levi_name, unip_name = "P", "M", "N"
    else:
        preds = {"big": in_Q, "levi": in_L, "unip": lambda g: in_U(g, q)}
        big_name, levi_name, unip_name = "Q", "L", "U"

    spsi = named_subgroup("Spsi", q)
    npsi = named_subgroup("N", q)
    mpsi = named_subgroup("Mpsi", q)
    results = []
    for wname, w in weyl_elements(parabolic, q):
        wi = symp_inv(w, q)
        conj_s = [(s, mmul(mmul(wi, s, q), w, q)) for s in spsi]
        conj_m = [(m, mmul(mmul(wi, m, q), w, q)) for m in mpsi]
        conj_n = [(n, mmul(mmul(wi, n, q), w, q)) for n in npsi]

        # conditions (1)-(3): w(H) cap S_psi = (w(H) cap M_psi)(w(H) cap N)
        for cond, key, hname in (
            (1, "big", big_name),
            (2, "levi", levi_name),
            (3, "unip", unip_name),
        ):
            pred = preds[key]
            lhs = {s for s, c in conj_s if pred(c)}
            p1 = {m for m, c in conj_m if pred(c)}
            p2 = {n for n, c in conj_n if pred(c)}
            ok, wit = _product_equal(lhs, p1, p2, q)
            results.append(
                {
                    "parabolic": parabolic,
                    "w": wname,
                    "condition": cond,
                    "statement": f"w({hname}) cap Spsi = (w({hname}) cap Mpsi)(w({hname}) cap N)",
                    "holds": ok,
                    "witness": wit,
                }
            )

        # conditions (4)-(6): w^{-1}(K) cap big = (... cap levi)(... cap unip)
        for cond, pairs, kname in (
            (4, conj_s, "Spsi"),
            (5, conj_m, "Mpsi"),
            (6, conj_n, "N"),
        ):
            lhs = {c for _, c in pairs if preds["big"](c)}
            p1 = {c for _, c in pairs if preds["levi"](c)}
            p2 = {c for _, c in pairs if preds["unip"](c)}
            ok, wit = _product_equal(lhs, p1, p2, q)
            results.append(
                {
                    "parabolic": parabolic,
                    "w": wname,
                    "condition": cond,
                    "statement": f"w^-1({kname}) cap {big_name} = (w^-1({kname}) cap {levi_name})(w^-1({kname}) cap {unip_name})",
                    "holds": ok,
                    "witness": wit,
                }
            )
    return results


# ---------------------------------------------------------------------------
# stabilizers of orbit representatives


def verify_stabilizer(j, parabolic_kind, q):
    """Check the explicit coordinate description of the stabilizer in P of
    the j-th orbit representative on Lambda(k).

    Siegel (k=2): stab_P(V_j) for V_j = sigma_j(V_0); the named answers are
    H0 = P, H1, H2 = M.  Klingen (k=1): stab_P(X_j) with X_1 = sigma_1(X_0);
    the named answers are D0 = P cap Q and D1.
    """
    p_grp = named_subgroup("P", q)
    if parabolic_kind == "siegel":
        target = {0: None, 1: "H1", 2: "M"}[j]
        w = {0: identity(4), 1: sigma1(q), 2: sigma2(q)}[j]
        point = act(w, base_point(q, 2))
    elif parabolic_kind == "klingen":
        target = {0: "D0", 1: "D1"}[j]
        w = {0: identity(4), 1: sigma1(q)}[j]
        point = act(w, base_point(q, 1))
    else:
        raise ValueError(parabolic_kind)
    stab = {p for p in p_grp if act(p, point) == point}
    if parabolic_kind == "siegel" and j == 0:
        return stab == set(p_grp.elements)
    if parabolic_kind == "klingen" and j == 0:
        expected = {p for p in p_grp if in_Q(p)}
        named = set(named_subgroup("D0", q).elements)
        return stab == expected == named
    return stab == set(named_subgroup(target, q).elements)
