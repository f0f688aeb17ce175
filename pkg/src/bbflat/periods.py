"""Exact period computations over Q(sqrt(D)).

A period is a complex line spanned by x + i y with (x,x) = (y,y) > 0 and
(x,y) = 0, all checked exactly in the field.  Specialness (the real 2-plane
meeting the lattice) is decided by an exact rational linear system, never by
floating point.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from . import intmat, lattice
from .errors import (
    InputError,
    InvalidPeriod,
    InvariantError,
    SearchBudgetExceeded,
)
from .k3assoc import K3Association
from .lattice import IntLattice, LatticeVec, QuotientMap
from .quadfield import (
    QuadScalar,
    gauss_solve,
    independent_rows,
    pairing_q,
    pairing_q_int,
    primitive_int_vector,
    qvec,
    qvec_int_shift,
    rational_kernel,
)


@dataclass(frozen=True)
class Period:
    """A validated point of the period domain of `lattice`, given by the real
    and imaginary parts of a generator."""

    lattice: IntLattice
    x: tuple[QuadScalar, ...]
    y: tuple[QuadScalar, ...]

    @property
    def D(self) -> int:
        return self.x[0].D

    def generator_pair(self):
        return self.x, self.y


def make_period(L: IntLattice, x, y, D: int | None = None) -> Period:
    """Validate (x,x) = (y,y) > 0 and (x,y) = 0 exactly."""
    if len(x) != L.rank or len(y) != L.rank:
        raise InvalidPeriod("generator length does not match lattice rank")
    if D is None:
        for v in tuple(x) + tuple(y):
            if isinstance(v, QuadScalar):
                D = v.D
                break
    if D is None:
        raise InvalidPeriod("generators carry no field parameter D")
    xv = qvec(x, D)
    yv = qvec(y, D)
    g = [list(r) for r in L.gram]
    xx = pairing_q(g, xv, xv)
    yy = pairing_q(g, yv, yv)
    xy = pairing_q(g, xv, yv)
    if xy:
        raise InvalidPeriod(f"(x,y) = {xy} != 0")
    if xx - yy:
        raise InvalidPeriod(f"(x,x) = {xx} differs from (y,y) = {yy}")
    if not xx.is_positive():
        raise InvalidPeriod(f"(x,x) = {xx} is not positive")
    return Period(L, xv, yv)


def _pairing_vec(period: Period, z) -> tuple[QuadScalar, QuadScalar]:
    """((x,z), (y,z)) for integer coordinates z."""
    g = [list(r) for r in period.lattice.gram]
    return (pairing_q_int(g, period.x, z), pairing_q_int(g, period.y, z))


def period_functional(period: Period, z: LatticeVec) -> tuple[QuadScalar, QuadScalar]:
    if not z.lattice.same_form(period.lattice):
        raise InputError("vector is not in the period's lattice")
    return _pairing_vec(period, list(z.coords))


# ---------------------------------------------------------------------------
# specialness

def _split_rows(x, y):
    """Rational and sqrt(D)-component rows of the two generators."""
    xr = [v.a for v in x]
    xs = [v.b for v in x]
    yr = [v.a for v in y]
    ys = [v.b for v in y]
    return xr, xs, yr, ys


def _minor_equations(x, y, pairs) -> list[list[Fraction]]:
    """Rational linear conditions on an integral lambda lying in
    span_R{x, y}: for column pairs (p, q), the bordered 3x3 minors of the
    matrix with rows x, y, lambda vanish; each field equation splits into its
    rational and sqrt(D) components."""
    n = len(x)
    eqs = []
    for p, q in pairs:
        c_pq = x[p] * y[q] - x[q] * y[p]
        for k in range(n):
            if k == p or k == q:
                continue
            # det over columns (p, q, k), expanded along the lambda row
            c1 = x[q] * y[k] - x[k] * y[q]   # coefficient of lambda_p
            c2 = x[k] * y[p] - x[p] * y[k]   # coefficient of lambda_q
            row_a = [Fraction(0)] * n
            row_b = [Fraction(0)] * n
            row_a[p], row_b[p] = c1.a, c1.b
            row_a[q], row_b[q] = c2.a, c2.b
            row_a[k], row_b[k] = c_pq.a, c_pq.b
            eqs.append(row_a)
            eqs.append(row_b)
    return eqs


def _independent_pair(x, y) -> tuple[int, int]:
    n = len(x)
    for p in range(n):
        for q in range(p + 1, n):
            if x[p] * y[q] - x[q] * y[p]:
                return p, q
    raise InvariantError("period generators are linearly dependent")


def is_special(period: Period, all_pairs: bool = False):
    """Decide whether span_R{x, y} contains a nonzero lattice vector.

    Returns (True, witness) or (False, None).  The default uses the bordered
    minors of one nonvanishing 2x2 block; all_pairs=True assembles the minors
    of every column pair (the independent full-rank check).
    """
    x, y = period.x, period.y
    n = len(x)
    if all_pairs:
        pairs = [(p, q) for p in range(n) for q in range(p + 1, n)]
    else:
        pairs = [_independent_pair(x, y)]
    eqs = independent_rows(_minor_equations(x, y, pairs), stop_rank=n)
    kernel = rational_kernel(eqs)
    if not kernel:
        return False, None
    witness = period.lattice.vec(primitive_int_vector(kernel[0]))
    if not verify_span_membership(period, witness):
        raise InvariantError("specialness witness failed direct substitution")
    return True, witness


def verify_span_membership(period: Period, lam: LatticeVec) -> bool:
    """Directly solve lam = s x + t y over the field and check all coords."""
    x, y = period.x, period.y
    p, q = _independent_pair(x, y)
    lamq = qvec(list(lam.coords), period.D)
    rows = [[x[p], y[p]], [x[q], y[q]]]
    sol = gauss_solve(rows, [lamq[p], lamq[q]])
    if sol is None:
        return False
    s, t = sol
    return not any(lamq[k] - (s * x[k] + t * y[k]) for k in range(len(x)))


# ---------------------------------------------------------------------------
# sampling

def iter_isotropic_vectors(L: IntLattice, rng: random.Random,
                           tries: int = 2000):
    """Yield nonzero integral vectors with (e, e) = 0: basis vectors first,
    then zeros of the binary forms on basis pairs (when the discriminant is a
    perfect square), then on random small pairs."""
    import math

    def solve_binary(u: LatticeVec, w: LatticeVec) -> LatticeVec | None:
        A = lattice.pairing(L, u, u)
        B = lattice.pairing(L, u, w)
        C = lattice.pairing(L, w, w)
        if A == 0:
            return u
        if C == 0:
            return w
        disc = B * B - A * C
        if disc < 0:
            return None
        r = math.isqrt(disc)
        if r * r != disc:
            return None
        # A s^2 + 2 B s t + C t^2 = 0 with (s : t) = (-B + r : A)
        s, t = -B + r, A
        g = math.gcd(s, t)
        if g == 0:
            return None
        cand = (s // g) * u + (t // g) * w
        return cand if not cand.is_zero() else None

    basis = [L.basis_vector(i) for i in range(L.rank)]
    for b in basis:
        if lattice.pairing(L, b, b) == 0:
            yield b
    for i in range(L.rank):
        for j in range(i + 1, L.rank):
            e = solve_binary(basis[i], basis[j])
            if e is not None and lattice.pairing(L, e, e) == 0:
                yield e
    for _ in range(tries):
        u = L.vec([rng.randint(-2, 2) for _ in range(L.rank)])
        w = L.vec([rng.randint(-2, 2) for _ in range(L.rank)])
        if u.is_zero() or w.is_zero():
            continue
        e = solve_binary(u, w)
        if e is not None and not e.is_zero() and lattice.pairing(L, e, e) == 0:
            yield e


def find_isotropic_vector(L: IntLattice, rng: random.Random,
                          tries: int = 2000) -> LatticeVec:
    for e in iter_isotropic_vectors(L, rng, tries):
        return e
    raise SearchBudgetExceeded("no isotropic vector found within the budget")


def isotropic_pair(L: IntLattice, rng: random.Random) -> tuple[LatticeVec, LatticeVec]:
    """Two linearly independent isotropic vectors with (e1, e2) = 0."""
    e1 = find_isotropic_vector(L, rng)
    comp = lattice.orthogonal_complement(L, [e1])
    sub = IntLattice(len(comp), tuple(tuple(r) for r in lattice.gram_of(
        L, comp.vectors)), "e1_perp")
    rows = comp.matrix()

    def back(vec: LatticeVec) -> LatticeVec:
        out = [0] * L.rank
        for c, row in zip(vec.coords, rows):
            for k, v in enumerate(row):
                out[k] += c * v
        return L.vec(out)

    for inner in iter_isotropic_vectors(sub, rng, tries=500):
        cand = back(inner)
        if intmat.mat_rank([list(e1.coords), list(cand.coords)]) == 2:
            return e1, cand
    raise SearchBudgetExceeded(
        "no orthogonal isotropic pair found; the lattice may not contain a "
        "totally isotropic plane")


def sample_nonspecial_period(L: IntLattice, D: int, seed: int,
                             height: int = 2, sqrt_height: int | None = None,
                             max_tries: int = 300) -> Period:
    """Deterministic randomized search for a non-special period over Q(sqrt D).

    Random field vectors u, w are slid along a pair of orthogonal isotropic
    integral directions so that (x,x) = (y,y) = T > 0 and (x,y) = 0 hold
    exactly by construction; special candidates are rejected.  Raising height
    or sqrt_height widens the search; sqrt_height = 0 restricts to rational
    candidates (which are always special).
    """
    p, q_, _rad = lattice.signature_with_radical(L)
    if p < 2:
        raise InputError("period sampling needs signature (>= 2, .)")
    if sqrt_height is None:
        sqrt_height = height
    rng = random.Random(seed)
    e1, e2 = isotropic_pair(L, rng)
    e1c, e2c = list(e1.coords), list(e2.coords)
    g = [list(r) for r in L.gram]

    def rand_vec():
        return qvec([QuadScalar(Fraction(rng.randint(-height, height)),
                                Fraction(rng.randint(-sqrt_height, sqrt_height)),
                                D)
                     for _ in range(L.rank)], D)

    for _ in range(max_tries):
        u = rand_vec()
        w = rand_vec()
        T = QuadScalar.of(2 * rng.randint(1, 3), D)
        e1_u = pairing_q_int(g, u, e1c)
        if not e1_u:
            continue
        # x = u + a e1 with (x,x) = T
        a = (T - pairing_q(g, u, u)) / (2 * e1_u)
        x = qvec_int_shift(u, a, e1c)
        # y = w + c e1 + k e2 with (x,y) = 0 and (y,y) = T (linear in c, k)
        x_e1 = pairing_q_int(g, x, e1c)
        x_e2 = pairing_q_int(g, x, e2c)
        w_e1 = pairing_q_int(g, w, e1c)
        w_e2 = pairing_q_int(g, w, e2c)
        det = x_e1 * (2 * w_e2) - x_e2 * (2 * w_e1)
        if not det:
            continue
        rhs1 = -pairing_q(g, x, w)
        rhs2 = T - pairing_q(g, w, w)
        c = (rhs1 * (2 * w_e2) - x_e2 * rhs2) / det
        k = (x_e1 * rhs2 - rhs1 * (2 * w_e1)) / det
        y = qvec_int_shift(qvec_int_shift(w, c, e1c), k, e2c)
        if pairing_q(g, x, y) or (pairing_q(g, x, x) - T) or (pairing_q(g, y, y) - T):
            raise InvariantError("isotropic slide produced an invalid period")
        period = Period(L, x, y)
        special, _w = is_special(period)
        if not special:
            return period
    raise SearchBudgetExceeded(
        f"no non-special period found in {max_tries} tries "
        f"(height={height}, sqrt_height={sqrt_height}, D={D})")


# ---------------------------------------------------------------------------
# the fibration q, its section, and the monodromy action

def q_project(period: Period, alpha: LatticeVec, quotient: QuotientMap) -> Period:
    """Image of a period orthogonal to alpha under the bundle map onto the
    period domain of quotient = alpha^perp / Z alpha."""
    L = period.lattice
    if not alpha.lattice.same_form(L) or not quotient.ambient.same_form(L):
        raise InputError("alpha/quotient do not match the period's lattice")
    fx, fy = _pairing_vec(period, list(alpha.coords))
    if fx or fy:
        raise InputError("period is not orthogonal to alpha")
    xq = _project_field(quotient, period.x)
    yq = _project_field(quotient, period.y)
    return make_period(quotient.quotient, xq, yq)


def _project_field(qm: QuotientMap, w):
    """Field-coefficient version of QuotientMap.project."""
    rows = [list(r) for r in qm.sub_rows]
    D = w[0].D
    cols = [[QuadScalar.of(rows[i][k], D) for i in range(len(rows))]
            for k in range(len(rows[0]))]
    sol = gauss_solve(cols, list(w))
    if sol is None:
        raise InputError("vector is outside the span of the sublattice")
    uinv = [list(r) for r in qm.u_inv]
    out = []
    for j in range(1, len(rows)):
        acc = QuadScalar.of(0, D)
        for i, s in enumerate(sol):
            c = uinv[i][j]
            if c and s:
                acc = acc + c * s
        out.append(acc)
    return tuple(out)


def _lift_field(qm: QuotientMap, coords):
    D = coords[0].D
    n = qm.ambient.rank
    out = [QuadScalar.of(0, D) for _ in range(n)]
    for c, row in zip(coords, qm.lift_rows):
        if c:
            for k, v in enumerate(row):
                if v:
                    out[k] = out[k] + v * c
    return tuple(out)


def tau_section(assoc: K3Association, gamma: LatticeVec, q_period: Period,
                lift_shift: int = 0) -> Period:
    """The section of q determined by gamma: the image period is spanned by
    x + (iota(x), gamma) alpha for a lift x of the Q_alpha generator.

    lift_shift adds that multiple of alpha to the lift first, exercising the
    independence of the result from the chosen lift.
    """
    mukai = assoc.embedding.target
    if not gamma.lattice.same_form(mukai):
        raise InputError("gamma must live in the rank-24 lattice")
    if (lattice.pairing(mukai, gamma, assoc.beta) != -1
            or lattice.pairing(mukai, gamma, gamma) != 0):
        raise InputError("gamma must satisfy (gamma,beta)=-1 and (gamma,gamma)=0")
    if not q_period.lattice.same_form(assoc.q_alpha):
        raise InputError("period is not over Q_alpha")
    qm = assoc.alpha_quotient
    parts = []
    for comp in q_period.generator_pair():
        lift = _lift_field(qm, comp)
        if lift_shift:
            lift = tuple(a + lift_shift * c
                         for a, c in zip(lift, qvec(list(assoc.alpha.coords),
                                                    q_period.D)))
        img = assoc.embedding.apply_qvec(lift)
        coef = pairing_q_int([list(r) for r in mukai.gram], img,
                             list(gamma.coords))
        out = tuple(a + coef * c for a, c in zip(lift, qvec(list(assoc.alpha.coords),
                                                            q_period.D)))
        parts.append(out)
    return make_period(assoc.alpha.lattice, parts[0], parts[1])


def g_act(period: Period, z: LatticeVec, alpha: LatticeVec) -> Period:
    """The unipotent monodromy action on periods orthogonal to alpha:
    w -> w + (w, z) alpha on each generator component."""
    L = period.lattice
    if not z.lattice.same_form(L) or not alpha.lattice.same_form(L):
        raise InputError("z/alpha do not match the period's lattice")
    if lattice.pairing(L, z, alpha) != 0:
        raise InputError("z must be orthogonal to alpha")
    fx, fy = _pairing_vec(period, list(alpha.coords))
    if fx or fy:
        raise InputError("period is not orthogonal to alpha")
    D = period.D
    acoords = qvec(list(alpha.coords), D)
    parts = []
    for comp in period.generator_pair():
        coef = pairing_q_int([list(r) for r in L.gram], comp, list(z.coords))
        parts.append(tuple(a + coef * c for a, c in zip(comp, acoords)))
    return make_period(L, parts[0], parts[1])


def cocycle_gamma_shift(assoc: K3Association, gamma: LatticeVec,
                        z: LatticeVec) -> LatticeVec:
    """delta = gamma + iota(z) + (gamma, iota(z)) beta + ((z,z)/2) beta, the
    class with g_[z] o tau_gamma = tau_delta."""
    mukai = assoc.embedding.target
    iz = assoc.embedding.apply(z)
    zz = lattice.pairing(assoc.alpha.lattice, z, z)
    coef = lattice.pairing(mukai, gamma, iz) + zz // 2
    return gamma + iz + coef * assoc.beta


def tilde_g(mukai: IntLattice, z: LatticeVec, beta: LatticeVec,
            v: LatticeVec | None = None) -> list[list[int]]:
    """Matrix of the isometry x -> x - (x,beta) z + [(x,z) - (x,beta)(z,z)/2] beta
    (columns are images of basis vectors)."""
    if not z.lattice.same_form(mukai) or not beta.lattice.same_form(mukai):
        raise InputError("z/beta must live in the given lattice")
    if lattice.pairing(mukai, z, beta) != 0:
        raise InputError("z must be orthogonal to beta")
    if v is not None and lattice.pairing(mukai, z, v) != 0:
        raise InputError("z must be orthogonal to v")
    zz = lattice.pairing(mukai, z, z)
    if zz % 2:
        raise InvariantError("(z,z) must be even in an even lattice")
    n = mukai.rank
    cols = []
    for i in range(n):
        e = mukai.basis_vector(i)
        eb = lattice.pairing(mukai, e, beta)
        ez = lattice.pairing(mukai, e, z)
        img = e - eb * z + (ez - eb * (zz // 2)) * beta
        cols.append(list(img.coords))
    return intmat.transpose(cols)


def apply_matrix(mat, v: LatticeVec) -> LatticeVec:
    return v.lattice.vec(intmat.mat_vec(mat, list(v.coords)))


# ---------------------------------------------------------------------------
# projective comparison of periods

def same_complex_line(p1: Period, p2: Period) -> bool:
    """Exact equality of the spanned complex lines: the generators differ by a
    complex scalar with entries in Q(sqrt D)."""
    if not p1.lattice.same_form(p2.lattice) or p1.D != p2.D:
        return False
    x, y = p1.x, p1.y
    x2, y2 = p2.x, p2.y
    k = next((i for i in range(len(x)) if x[i] or y[i]), None)
    if k is None:
        return False
    # (x2_k, y2_k) = [[p, -q], [q, p]] (x_k, y_k)
    den = x[k] * x[k] + y[k] * y[k]
    p = (x2[k] * x[k] + y2[k] * y[k]) / den
    q = (y2[k] * x[k] - x2[k] * y[k]) / den
    if not p and not q:
        return False
    for i in range(len(x)):
        if (x2[i] - (p * x[i] - q * y[i])) or (y2[i] - (q * x[i] + p * y[i])):
            return False
    return True


def same_real_plane(p1: Period, p2: Period) -> bool:
    """Equality of the real 2-planes spanned by the generators, decided by
    reduced row echelon forms over the field."""
    if not p1.lattice.same_form(p2.lattice) or p1.D != p2.D:
        return False

    def rref(rows):
        m = [list(r) for r in rows]
        lead = []
        r = 0
        for col in range(len(m[0])):
            piv = next((i for i in range(r, len(m)) if m[i][col]), None)
            if piv is None:
                continue
            m[r], m[piv] = m[piv], m[r]
            inv = m[r][col]
            m[r] = [v / inv for v in m[r]]
            for i in range(len(m)):
                if i != r and m[i][col]:
                    f = m[i][col]
                    m[i] = [a - f * b for a, b in zip(m[i], m[r])]
            lead.append(col)
            r += 1
        return m, lead

    m1, l1 = rref([p1.x, p1.y])
    m2, l2 = rref([p2.x, p2.y])
    if l1 != l2:
        return False
    for r1, r2 in zip(m1, m2):
        for a, b in zip(r1, r2):
            if a - b:
                return False
    return True


def periods_projectively_equal(p1: Period, p2: Period) -> bool:
    return same_complex_line(p1, p2)
