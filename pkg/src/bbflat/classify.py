"""Monodromy-orbit invariants of primitive isotropic classes.

A primitive isotropic class alpha in the rank-23 lattice U^3 + E8(-1)^2 +
<2-2n> is classified up to the monodromy group by the pair (d, b*): d is the
divisibility of (alpha, .) and b* the +-normalized residue mod d of the
coefficient of the degree-(2-2n) generator delta.  The count of classes for
fixed d is nu(d), checked here against a brute-force orbit enumeration in the
rank-2 model lattice with Gram ((2n-2)/d^2) * ((1,0),(0,0)).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from . import intmat, lattice
from .errors import (
    InputError,
    InvariantError,
    NotIsotropic,
    NotPrimitive,
    StabilizationError,
)
from .lattice import IntLattice, LatticeVec, standard_lattice


@dataclass(frozen=True)
class OrbitInvariant:
    n: int
    d: int
    b_star: int

    def __post_init__(self):
        if self.n < 2:
            raise InputError("n must be >= 2")
        if self.d < 1 or (self.n - 1) % (self.d * self.d):
            raise InputError("d^2 must divide n-1")
        if self.d == 1:
            if self.b_star != 0:
                raise InputError("b* must be 0 when d = 1")
        else:
            if not (0 <= self.b_star <= self.d // 2):
                raise InputError("b* out of canonical range [0, d/2]")
            if gcd(self.b_star, self.d) != 1:
                raise InputError("b* must be a unit mod d")

    def as_dict(self) -> dict:
        return {"n": self.n, "d": self.d, "b_star": self.b_star}


def _canonical_b(b: int, d: int) -> int:
    if d == 1:
        return 0
    return min(b % d, (-b) % d)


def classify_isotropic(n: int, alpha: LatticeVec) -> OrbitInvariant:
    """Monodromy invariant (d, b*) of a primitive isotropic class alpha."""
    L = standard_lattice("K3n", n)
    if not alpha.lattice.same_form(L):
        raise InputError(f"alpha does not live in the K3n({n}) lattice")
    if alpha.is_zero():
        raise InputError("alpha must be nonzero")
    if not lattice.is_primitive(L, alpha):
        raise NotPrimitive("alpha is not primitive")
    if lattice.pairing(L, alpha, alpha) != 0:
        raise NotIsotropic("alpha is not isotropic")
    d = lattice.divisibility(L, alpha)
    if (n - 1) % (d * d):
        raise InvariantError(f"d^2 = {d*d} does not divide n-1 = {n-1}")
    b = alpha.coords[-1]  # delta-coefficient in the fixed basis
    if d > 1 and gcd(b, d) != 1:
        raise InvariantError("delta-coefficient is not a unit mod d")
    return OrbitInvariant(n, d, _canonical_b(b, d))


def construct_alpha(n: int, d: int, b: int) -> LatticeVec:
    """The witness class alpha = d*xi + b*delta with
    xi = e1 - ((n-1) b^2 / d^2) f1, primitive isotropic of divisibility d."""
    if n < 2:
        raise InputError("n must be >= 2")
    if d < 1 or (n - 1) % (d * d):
        raise InputError("d^2 must divide n-1")
    if d > 1 and gcd(b, d) != 1:
        raise InputError("b must be a unit mod d")
    L = standard_lattice("K3n", n)
    m = (n - 1) // (d * d)
    coords = [0] * L.rank
    coords[0] = d                # e1
    coords[1] = -m * b * b * d   # f1
    coords[-1] = b               # delta
    return L.vec(coords)


def _totient(d: int) -> int:
    count = 0
    for k in range(1, d + 1):
        if gcd(k, d) == 1:
            count += 1
    return count


def nu(d: int) -> int:
    """Number of monodromy orbits of primitive isotropic classes with
    divisibility d: 1 for d <= 2, phi(d)/2 for d > 2."""
    if d < 1:
        raise InputError("d must be positive")
    if d <= 2:
        return 1
    return _totient(d) // 2


def enumerate_orbit_reps(n: int, d: int) -> list[OrbitInvariant]:
    """Canonical b* representatives for fixed (n, d); length equals nu(d)."""
    if (n - 1) % (d * d):
        raise InputError("d^2 must divide n-1")
    if d == 1:
        return [OrbitInvariant(n, 1, 0)]
    if d == 2:
        return [OrbitInvariant(n, 2, 1)]
    reps = [b for b in range(1, d // 2 + 1) if gcd(b, d) == 1]
    return [OrbitInvariant(n, d, b) for b in reps]


def brute_force_orbit_count(n: int, d: int, y_range: int, c_range: int) -> int:
    """Independent oracle for nu(d).

    Enumerates the primitive degree-(2n-2) vectors (x, y) of the rank-2 model
    lattice with |x| = d and |y| <= y_range, closes them under the isometries
    ((+-1, 0), (c, +-1)) with |c| <= c_range, and counts equivalence classes.
    """
    if n < 2 or d < 1 or (n - 1) % (d * d):
        raise InputError("need n >= 2 and d^2 | n-1")
    if y_range < 1 or c_range < 1:
        raise InputError("ranges must be positive")
    vecs = []
    index = {}
    for x in (d, -d):
        for y in range(-y_range, y_range + 1):
            if gcd(d, y) == 1:
                index[(x, y)] = len(vecs)
                vecs.append((x, y))
    parent = list(range(len(vecs)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i, j):
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[rj] = ri

    for (x, y), i in index.items():
        for eps in (1, -1):
            for eps2 in (1, -1):
                for c in range(-c_range, c_range + 1):
                    img = (eps * x, c * x + eps2 * y)
                    j = index.get(img)
                    if j is not None:
                        union(i, j)
    return len({find(i) for i in range(len(vecs))})


def stabilized_orbit_count(n: int, d: int, y_start: int = 8, c_start: int = 8,
                           cap: int = 4096) -> tuple[int, int]:
    """Double the enumeration ranges until two successive counts agree.
    Returns (count, range_used); raises StabilizationError at the cap."""
    y, c = max(y_start, d + 1), max(c_start, 2)
    prev = brute_force_orbit_count(n, d, y, c)
    while y <= cap:
        y2, c2 = 2 * y, 2 * c
        cur = brute_force_orbit_count(n, d, y2, c2)
        if cur == prev:
            return cur, y2
        prev, y, c = cur, y2, c2
    raise StabilizationError(
        f"orbit count failed to stabilize up to range {cap} for d={d}")


def reduce_gram_to_Lnd(n: int, d: int, b: int):
    """Unimodular A with A G A^t = ((2n-2)/d^2) * ((1,0),(0,0)), where
    G = ((2n-2)/d^2) * ((d^2, -bd), (-bd, b^2)) and A (d,-b)^t = (1,0)^t."""
    if (n - 1) % (d * d):
        raise InputError("d^2 must divide n-1")
    g, xx, yy = intmat.xgcd(d, -b)
    if g != 1:
        raise InputError("gcd(d, b) must be 1")
    m = (2 * n - 2) // (d * d)
    G = [[m * d * d, -m * b * d], [-m * b * d, m * b * b]]
    A = [[xx, yy], [b, d]]
    out = intmat.mat_mul(intmat.mat_mul(A, G), intmat.transpose(A))
    if out != [[m, 0], [0, 0]] or abs(intmat.det(A)) != 1:
        raise InvariantError("Gram reduction identity failed")
    return A, out


# ---------------------------------------------------------------------------
# Mukai-vector witness on a K3 surface

@dataclass(frozen=True)
class MukaiSetup:
    """A Mukai vector v = (0, d*lambda, s) in the rank-24 lattice of triples
    (r, c, s) with pairing ((r,c,s),(r',c',s')) = (c,c') - rs' - r's, together
    with alpha = (0,0,1) and the checks tying it to the invariant (d, b)."""

    n: int
    d: int
    b: int
    s: int
    lattice: IntLattice
    lam: LatticeVec          # in the K3 lattice
    v: LatticeVec
    alpha: LatticeVec
    v_perp: lattice.SublatticeBasis
    verification: tuple[tuple[str, bool, str], ...]

    def all_passed(self) -> bool:
        return all(ok for _, ok, _ in self.verification)


def mukai_rcs_lattice() -> IntLattice:
    """H^0 + H^2 + H^4 of a K3 surface with the Mukai pairing: coordinates
    (r, c_1..c_22, s), Gram = <(0,-1),(-1,0)> on (r,s) plus the K3 Gram."""
    k3 = standard_lattice("K3")
    rank = 24
    gram = intmat.zeros(rank, rank)
    gram[0][23] = -1
    gram[23][0] = -1
    for i in range(22):
        for j in range(22):
            gram[1 + i][1 + j] = k3.gram[i][j]
    return IntLattice(rank, tuple(tuple(r) for r in gram), "Mukai(r,c,s)")


def rcs_vec(L: IntLattice, r: int, c, s: int) -> LatticeVec:
    return L.vec([r] + list(c) + [s])


def mukai_example(n: int, d: int, b: int) -> MukaiSetup:
    if n < 2 or d < 1 or (n - 1) % (d * d):
        raise InputError("need n >= 2 and d^2 | n-1")
    if d > 1 and gcd(b, d) != 1:
        raise InputError("b must be a unit mod d")
    s = pow(b, -1, d) if d > 1 else 1
    k3 = standard_lattice("K3")
    deg = (n - 1) // (d * d)
    lam_coords = [0] * 22
    lam_coords[0] = 1
    lam_coords[1] = -deg
    lam = k3.vec(lam_coords)

    L = mukai_rcs_lattice()
    v = rcs_vec(L, 0, [d * x for x in lam.coords], s)
    alpha = rcs_vec(L, 0, [0] * 22, 1)

    checks = []
    vv = lattice.pairing(L, v, v)
    checks.append(("v_square_is_2n_minus_2", vv == 2 * n - 2, f"(v,v)={vv}"))
    checks.append(("v_primitive", lattice.is_primitive(L, v),
                   f"content={v.content()}"))
    v_perp = lattice.orthogonal_complement(L, [v])
    pair_gcds = [abs(lattice.pairing(L, alpha, w)) for w in v_perp.vectors]
    div_alpha = intmat.content(pair_gcds)
    checks.append(("alpha_divisibility_on_v_perp", div_alpha == d,
                   f"div={div_alpha} expected {d}"))
    rs_ok = all(w.coords[0] % d == 0 for w in v_perp.vectors)
    checks.append(("d_divides_rank_component", rs_ok,
                   "r-coordinate of every v_perp basis vector is 0 mod d"))
    diff = alpha - b * v
    integral = all(c % d == 0 for c in diff.coords)
    checks.append(("alpha_minus_b_v_divisible_by_d", integral,
                   f"(alpha - {b}v)/{d} integral: {integral}"))
    checks.append(("s_inverts_b_mod_d", (1 - b * s) % d == 0,
                   f"s={s}"))
    return MukaiSetup(n=n, d=d, b=b, s=s, lattice=L, lam=lam, v=v,
                      alpha=alpha, v_perp=v_perp,
                      verification=tuple(checks))
