"""Even integral lattices with exact arithmetic.

Vectors are coordinate rows in a fixed basis; the bilinear form is given by an
integer Gram matrix (degenerate Grams are allowed).  All operations are pure
functions on immutable values.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import intmat
from .errors import (
    DegenerateLattice,
    DimensionMismatch,
    InputError,
    InvariantError,
    NotIsotropic,
    NotPrimitive,
    NullFunctional,
)


@dataclass(frozen=True)
class IntLattice:
    """A free abelian group of finite rank with an integer Gram matrix."""

    rank: int
    gram: tuple[tuple[int, ...], ...]
    label: str | None = None

    def __post_init__(self):
        g = tuple(tuple(int(v) for v in row) for row in self.gram)
        object.__setattr__(self, "gram", g)
        if len(g) != self.rank or any(len(row) != self.rank for row in g):
            raise DimensionMismatch("gram matrix shape does not match rank")
        for i in range(self.rank):
            if g[i][i] % 2:
                raise InputError("lattice is not even: odd diagonal entry")
            for j in range(i):
                if g[i][j] != g[j][i]:
                    raise InputError("gram matrix is not symmetric")

    def vec(self, coords) -> "LatticeVec":
        return LatticeVec(self, tuple(int(v) for v in coords))

    def basis_vector(self, i: int) -> "LatticeVec":
        return self.vec([1 if j == i else 0 for j in range(self.rank)])

    def zero(self) -> "LatticeVec":
        return self.vec([0] * self.rank)

    def same_form(self, other: "IntLattice") -> bool:
        return self.rank == other.rank and self.gram == other.gram

    def __repr__(self):
        name = self.label or "IntLattice"
        return f"<{name} rank={self.rank}>"


@dataclass(frozen=True)
class LatticeVec:
    lattice: IntLattice
    coords: tuple[int, ...]

    def __post_init__(self):
        c = tuple(int(v) for v in self.coords)
        object.__setattr__(self, "coords", c)
        if len(c) != self.lattice.rank:
            raise DimensionMismatch("coordinate length does not match lattice rank")

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.coords)

    def content(self) -> int:
        return intmat.content(self.coords)

    def __add__(self, other: "LatticeVec") -> "LatticeVec":
        _check_same(self.lattice, other)
        return self.lattice.vec([a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other: "LatticeVec") -> "LatticeVec":
        _check_same(self.lattice, other)
        return self.lattice.vec([a - b for a, b in zip(self.coords, other.coords)])

    def __neg__(self) -> "LatticeVec":
        return self.lattice.vec([-a for a in self.coords])

    def __rmul__(self, k: int) -> "LatticeVec":
        return self.lattice.vec([k * a for a in self.coords])

    def __repr__(self):
        return f"LatticeVec{self.coords}"


@dataclass(frozen=True)
class SublatticeBasis:
    lattice: IntLattice
    vectors: tuple[LatticeVec, ...]
    saturated: bool = False

    def __post_init__(self):
        for v in self.vectors:
            _check_same(self.lattice, v)
        if self.vectors and intmat.mat_rank(self.matrix()) != len(self.vectors):
            raise InputError("sublattice basis vectors are linearly dependent")

    def matrix(self) -> list[list[int]]:
        return [list(v.coords) for v in self.vectors]

    def __len__(self):
        return len(self.vectors)


@dataclass(frozen=True)
class SnfDecomposition:
    left: tuple[tuple[int, ...], ...]
    diag: tuple[int, ...]
    right: tuple[tuple[int, ...], ...]

    def reconstruct(self, rows: int, cols: int) -> list[list[int]]:
        """Recover the original matrix as left^-1 @ D @ right^-1."""
        d = intmat.zeros(rows, cols)
        for i, v in enumerate(self.diag):
            d[i][i] = v
        li = intmat.inv_unimodular([list(r) for r in self.left])
        ri = intmat.inv_unimodular([list(r) for r in self.right])
        return intmat.mat_mul(intmat.mat_mul(li, d), ri)


def _check_same(L: IntLattice, v: LatticeVec):
    if v.lattice is not L and not v.lattice.same_form(L):
        raise DimensionMismatch("vector belongs to a different lattice")


# ---------------------------------------------------------------------------
# standard lattices

_U_GRAM = ((0, -1), (-1, 0))

# Bourbaki E8 numbering: chain 1-3-4-5-6-7-8 with node 2 attached to node 4.
_E8_EDGES = ((1, 3), (2, 4), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8))


def _e8_minus_gram() -> tuple[tuple[int, ...], ...]:
    g = [[0] * 8 for _ in range(8)]
    for i in range(8):
        g[i][i] = -2
    for a, b in _E8_EDGES:
        g[a - 1][b - 1] = 1
        g[b - 1][a - 1] = 1
    return tuple(tuple(row) for row in g)


def direct_sum(lattices, label: str | None = None) -> IntLattice:
    rank = sum(L.rank for L in lattices)
    gram = intmat.zeros(rank, rank)
    off = 0
    for L in lattices:
        for i in range(L.rank):
            for j in range(L.rank):
                gram[off + i][off + j] = L.gram[i][j]
        off += L.rank
    return IntLattice(rank, tuple(tuple(r) for r in gram), label)


def standard_lattice(name: str, n: int | None = None) -> IntLattice:
    """Named lattices: U, E8minus, Mukai = U^4 + E8(-1)^2, K3 = U^3 + E8(-1)^2,
    K3n = U^3 + E8(-1)^2 + <2-2n> (last basis vector is delta).
    """
    if name == "K3n":
        if n is None or n < 2:
            raise InputError("K3n requires an integer n >= 2")
    elif n is not None:
        raise InputError(f"lattice {name!r} takes no parameter n")
    U = IntLattice(2, _U_GRAM, "U")
    E8 = IntLattice(8, _e8_minus_gram(), "E8(-1)")
    if name == "U":
        return U
    if name == "E8minus":
        return E8
    if name == "Mukai":
        return direct_sum([U, U, U, U, E8, E8], "Mukai")
    if name == "K3":
        return direct_sum([U, U, U, E8, E8], "K3")
    if name == "K3n":
        tail = IntLattice(1, ((2 - 2 * n,),), f"<{2 - 2 * n}>")
        return direct_sum([U, U, U, E8, E8, tail], f"K3n({n})")
    raise InputError(f"unknown lattice name {name!r}")


# ---------------------------------------------------------------------------
# basic operations

def pairing(L: IntLattice, x: LatticeVec, y: LatticeVec) -> int:
    _check_same(L, x)
    _check_same(L, y)
    gy = intmat.mat_vec([list(r) for r in L.gram], list(y.coords))
    return sum(a * b for a, b in zip(x.coords, gy))


def gram_of(L: IntLattice, vectors) -> list[list[int]]:
    vs = list(vectors)
    return [[pairing(L, a, b) for b in vs] for a in vs]


def is_primitive(L: IntLattice, x: LatticeVec) -> bool:
    _check_same(L, x)
    if x.is_zero():
        raise InputError("zero vector has no primitivity")
    return x.content() == 1

def divisibility(L: IntLattice, x: LatticeVec) -> int:
    """div(x, .): the gcd of the pairings of x against the whole lattice."""
    _check_same(L, x)
    if x.is_zero():
        raise InputError("zero vector has no divisibility")
    gx = intmat.vec_mat(list(x.coords), [list(r) for r in L.gram])
    d = intmat.content(gx)
    if d == 0:
        raise NullFunctional("vector pairs to zero with every lattice vector")
    return d


def reflection(L: IntLattice, e: LatticeVec, x: LatticeVec,
               negated: bool = False) -> LatticeVec:
    """R_e(x) = x - (2(x,e)/(e,e)) e; with negated=True, -R_e(x)."""
    ee = pairing(L, e, e)
    if ee == 0:
        raise InputError("cannot reflect in an isotropic vector")
    xe2 = 2 * pairing(L, x, e)
    if xe2 % ee:
        raise InputError("reflection is not integral for this vector")
    q = xe2 // ee
    out = [a - q * b for a, b in zip(x.coords, e.coords)]
    if negated:
        out = [-v for v in out]
    return L.vec(out)


# ---------------------------------------------------------------------------
# sublattices

def orthogonal_complement(L: IntLattice, S: SublatticeBasis | list[LatticeVec]) -> SublatticeBasis:
    """Saturated basis of {x in L : (x, s) = 0 for all s in S}."""
    vectors = S.vectors if isinstance(S, SublatticeBasis) else tuple(S)
    rows = []
    g = [list(r) for r in L.gram]
    for v in vectors:
        _check_same(L, v)
        rows.append(intmat.vec_mat(list(v.coords), g))
    if not rows:
        basis = intmat.identity(L.rank)
    else:
        basis = intmat.kernel_basis(rows)
    return SublatticeBasis(L, tuple(L.vec(r) for r in basis), saturated=True)


def saturation(L: IntLattice, S: SublatticeBasis | list[LatticeVec]) -> SublatticeBasis:
    """Basis of (span_Q S) intersected with L."""
    vectors = S.vectors if isinstance(S, SublatticeBasis) else tuple(S)
    m = [list(v.coords) for v in vectors]
    if not m:
        return SublatticeBasis(L, (), saturated=True)
    _, d, right = intmat.snf(m)
    rinv = intmat.inv_unimodular(right)
    rows = [rinv[i] for i in range(min(len(m), L.rank)) if d[i][i] != 0]
    rows = intmat.hnf_rows(rows)
    return SublatticeBasis(L, tuple(L.vec(r) for r in rows), saturated=True)


def sublattice_eq(a: SublatticeBasis, b: SublatticeBasis) -> bool:
    return intmat.hnf_rows(a.matrix()) == intmat.hnf_rows(b.matrix())


def member_coords(S: SublatticeBasis, x: LatticeVec) -> list[int] | None:
    """Integer coordinates of x in the basis S, or None if x is outside."""
    m = intmat.transpose(S.matrix())
    return intmat.solve_int(m, list(x.coords))


# ---------------------------------------------------------------------------
# Smith normal form and derived invariants

def smith_normal_form(mat) -> SnfDecomposition:
    rows = [list(r) for r in mat]
    L, d, R = intmat.snf(rows)
    n = min(len(rows), len(rows[0]) if rows else 0)
    return SnfDecomposition(
        left=tuple(tuple(r) for r in L),
        diag=tuple(d[i][i] for i in range(n)),
        right=tuple(tuple(r) for r in R),
    )


def discriminant_group(L: IntLattice) -> tuple[int, ...]:
    """Elementary divisors > 1 of the Gram matrix (the group L*/L)."""
    dec = smith_normal_form([list(r) for r in L.gram])
    if any(v == 0 for v in dec.diag):
        raise DegenerateLattice(
            "discriminant group requires a nondegenerate Gram",
            rank_deficiency=sum(1 for v in dec.diag if v == 0),
        )
    return tuple(v for v in dec.diag if v > 1)


def _congruence_signature(gram) -> tuple[int, int, int]:
    n = len(gram)
    g = [[Fraction(v) for v in row] for row in gram]
    pos = neg = 0
    for t in range(n):
        piv = next((i for i in range(t, n) if g[i][i]), None)
        if piv is None:
            pair = next(((i, j) for i in range(t, n) for j in range(i + 1, n)
                         if g[i][j]), None)
            if pair is None:
                return pos, neg, n - t  # remaining block is the radical
            i, j = pair
            # row/col addition creates a nonzero diagonal entry
            for k in range(n):
                g[i][k] += g[j][k]
            for k in range(n):
                g[k][i] += g[k][j]
            piv = i
        if piv != t:
            g[piv], g[t] = g[t], g[piv]
            for row in g:
                row[piv], row[t] = row[t], row[piv]
        d = g[t][t]
        if d > 0:
            pos += 1
        else:
            neg += 1
        for i in range(t + 1, n):
            if g[i][t]:
                f = g[i][t] / d
                for k in range(n):
                    g[i][k] -= f * g[t][k]
                for k in range(n):
                    g[k][i] -= f * g[k][t]  # f is symmetric in row/col
    return pos, neg, 0


def signature(L: IntLattice) -> tuple[int, int]:
    """(p, q) counts of positive/negative eigenvalues, computed exactly by
    rational congruence diagonalization."""
    pos, neg, rad = _congruence_signature(L.gram)
    if rad:
        raise DegenerateLattice("degenerate Gram matrix", rank_deficiency=rad)
    return pos, neg


def signature_with_radical(L: IntLattice) -> tuple[int, int, int]:
    """(p, q, r): positive/negative counts plus the radical rank."""
    return _congruence_signature(L.gram)


def quotient_group_order(L: IntLattice, A: SublatticeBasis,
                         B: SublatticeBasis) -> tuple[int, ...]:
    """Elementary divisors of L/(A+B); free quotient rank reported as zeros."""
    rows = A.matrix() + B.matrix()
    if not rows:
        return tuple([0] * L.rank)
    _, d, _ = intmat.snf(rows)
    m = min(len(rows), L.rank)
    diag = [d[i][i] for i in range(m)]
    torsion = [v for v in diag if v > 1]
    free = L.rank - sum(1 for v in diag if v != 0)
    return tuple(torsion + [0] * free)


# ---------------------------------------------------------------------------
# quotient by an isotropic vector

@dataclass(frozen=True)
class QuotientMap:
    """The quotient M/Zx of a sublattice M by a primitive isotropic x in M,
    with explicit projection and section maps.

    lift_rows[i] is the ambient-coordinate lift of the i-th quotient basis
    vector; projection solves membership in M and drops the x-component.
    """

    ambient: IntLattice
    quotient: IntLattice
    x: LatticeVec
    sub_rows: tuple[tuple[int, ...], ...]
    u_inv: tuple[tuple[int, ...], ...]   # coords in sub basis -> coords in (x, lifts) basis
    lift_rows: tuple[tuple[int, ...], ...]

    def project(self, w: LatticeVec) -> tuple[int, ...]:
        _check_same(self.ambient, w)
        a = intmat.solve_int(intmat.transpose([list(r) for r in self.sub_rows]),
                             list(w.coords))
        if a is None:
            raise InputError("vector is not in the sublattice being quotiented")
        b = intmat.vec_mat(a, [list(r) for r in self.u_inv])
        return tuple(b[1:])

    def section(self, coset: tuple[int, ...] | list[int]) -> LatticeVec:
        coset = list(coset)
        if len(coset) != self.quotient.rank:
            raise DimensionMismatch("coset coordinate length mismatch")
        out = [0] * self.ambient.rank
        for c, row in zip(coset, self.lift_rows):
            for k, v in enumerate(row):
                out[k] += c * v
        return self.ambient.vec(out)

    def quotient_vec(self, w: LatticeVec) -> LatticeVec:
        return self.quotient.vec(self.project(w))


def quotient_mod_isotropic(L: IntLattice, x: LatticeVec,
                           restrict_to: SublatticeBasis) -> QuotientMap:
    """Quotient restrict_to/Zx with the induced Gram, for x primitive
    isotropic in restrict_to with restrict_to contained in x^perp."""
    _check_same(L, x)
    if pairing(L, x, x) != 0:
        raise NotIsotropic("x must be isotropic")
    rows = restrict_to.matrix()
    for v in restrict_to.vectors:
        if pairing(L, x, v) != 0:
            raise InputError("restrict_to is not contained in x^perp")
    c = intmat.solve_int(intmat.transpose(rows), list(x.coords))
    if c is None:
        raise InputError("x does not lie in restrict_to")
    if intmat.content(c) != 1:
        raise NotPrimitive("x is not primitive in restrict_to")
    U = intmat.complete_primitive_row(c)
    u_inv = intmat.inv_unimodular(U)
    T = intmat.mat_mul(U, rows)         # T[0] == x
    lifts = T[1:]
    m = len(rows)
    qgram = [[0] * (m - 1) for _ in range(m - 1)]
    for i in range(m - 1):
        vi = L.vec(lifts[i])
        for j in range(i, m - 1):
            val = pairing(L, vi, L.vec(lifts[j]))
            qgram[i][j] = val
            qgram[j][i] = val
    label = f"({L.label or 'L'})/<{list(x.coords)}>"
    Q = IntLattice(m - 1, tuple(tuple(r) for r in qgram), label)
    return QuotientMap(
        ambient=L,
        quotient=Q,
        x=x,
        sub_rows=tuple(tuple(r) for r in rows),
        u_inv=tuple(tuple(r) for r in u_inv),
        lift_rows=tuple(tuple(r) for r in lifts),
    )


def assert_snf_contract(dec: SnfDecomposition, mat) -> None:
    """Raise InvariantError unless dec is a valid SNF of mat."""
    rows = [list(r) for r in mat]
    left = [list(r) for r in dec.left]
    right = [list(r) for r in dec.right]
    prod = intmat.mat_mul(intmat.mat_mul(left, rows), right)
    r = len(rows)
    c = len(rows[0]) if rows else 0
    expect = intmat.zeros(r, c)
    for i, v in enumerate(dec.diag):
        expect[i][i] = v
    if prod != expect:
        raise InvariantError("SNF reconstruction failed")
    if abs(intmat.det(left)) != 1 or abs(intmat.det(right)) != 1:
        raise InvariantError("SNF transforms are not unimodular")
    for a, b in zip(dec.diag, dec.diag[1:]):
        if a == 0 and b != 0:
            raise InvariantError("SNF zero ordering violated")
        if a != 0 and b % a:
            raise InvariantError("SNF divisibility chain violated")
