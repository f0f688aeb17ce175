"""From an isotropic class alpha to its associated K3 lattice.

The pipeline embeds the rank-23 lattice into the rank-24 Mukai lattice,
quotients beta^perp by Z*beta to obtain a copy of the K3 lattice, reads off
v-bar = d*xi, and produces an explicit integer isometry from
Q_alpha = alpha^perp / Z*alpha onto the sublattice xi^perp, certified by Gram
preservation and sublattice equality.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import intmat, lattice
from .errors import InputError, InvariantError, NotIsotropic, NotPrimitive
from .lattice import (
    IntLattice,
    LatticeVec,
    QuotientMap,
    SublatticeBasis,
    standard_lattice,
)


@dataclass(frozen=True)
class Embedding:
    """A primitive isometric embedding source -> target given by an integer
    matrix (columns are images of source basis vectors), together with a
    generator of the rank-1 orthogonal complement of the image."""

    source: IntLattice
    target: IntLattice
    matrix: tuple[tuple[int, ...], ...]
    v_perp_gen: LatticeVec

    def __post_init__(self):
        m = [list(r) for r in self.matrix]
        gs = [list(r) for r in self.source.gram]
        gt = [list(r) for r in self.target.gram]
        pulled = intmat.mat_mul(intmat.mat_mul(intmat.transpose(m), gt), m)
        if pulled != gs:
            raise InvariantError("embedding does not preserve the Gram matrix")
        if any(d != 1 for d in intmat.snf_diagonal(m)):
            raise InvariantError("embedding image is not a primitive sublattice")
        v = self.v_perp_gen
        img_rows = intmat.transpose(m)
        gv = intmat.mat_vec(gt, list(v.coords))
        if any(sum(a * b for a, b in zip(row, gv)) != 0 for row in img_rows):
            raise InvariantError("v is not orthogonal to the embedded image")

    def apply(self, x: LatticeVec) -> LatticeVec:
        if not x.lattice.same_form(self.source):
            raise InputError("vector is not in the embedding source")
        out = intmat.mat_vec([list(r) for r in self.matrix], list(x.coords))
        return self.target.vec(out)

    def apply_qvec(self, x):
        """Image of a field vector given in source coordinates."""
        rows = [list(r) for r in self.matrix]
        zero = x[0] - x[0]
        out = []
        for row in rows:
            acc = zero
            for c, xi in zip(row, x):
                if c and xi:
                    acc = acc + c * xi
            out.append(acc)
        return tuple(out)


def standard_embedding(n: int) -> Embedding:
    """The fixed embedding of U^3 + E8(-1)^2 + <2-2n> into the Mukai lattice:
    identity on U^3 and both E8 summands, delta -> e4 + (n-1) f4, with
    complement generator v = e4 + (1-n) f4 of square 2n-2."""
    if n < 2:
        raise InputError("n must be >= 2")
    src = standard_lattice("K3n", n)
    tgt = standard_lattice("Mukai")
    cols = []
    for j in range(6):                       # U^3 onto the first three U
        col = [0] * 24
        col[j] = 1
        cols.append(col)
    for j in range(16):                      # both E8 summands
        col = [0] * 24
        col[8 + j] = 1
        cols.append(col)
    delta_col = [0] * 24                     # delta -> e4 + (n-1) f4
    delta_col[6] = 1
    delta_col[7] = n - 1
    cols.append(delta_col)
    matrix = tuple(tuple(row) for row in intmat.transpose(cols))
    v = [0] * 24
    v[6] = 1
    v[7] = 1 - n
    emb = Embedding(src, tgt, matrix, tgt.vec(v))
    if lattice.pairing(tgt, emb.v_perp_gen, emb.v_perp_gen) != 2 * n - 2:
        raise InvariantError("(v,v) != 2n-2")
    return emb


@dataclass(frozen=True)
class InvariantReport:
    rank: int
    signature: tuple[int, int]
    elementary_divisors: tuple[int, ...]
    match: bool

    def as_dict(self) -> dict:
        return {
            "rank": self.rank,
            "signature": list(self.signature),
            "elementary_divisors": list(self.elementary_divisors),
            "match": self.match,
        }


@dataclass(frozen=True)
class K3Association:
    n: int
    alpha: LatticeVec
    embedding: Embedding
    beta: LatticeVec
    k3_quotient: QuotientMap          # beta^perp / Z beta, rank 22
    v_bar: LatticeVec
    d: int
    xi: LatticeVec
    alpha_quotient: QuotientMap       # alpha^perp / Z alpha, rank 21
    iota_bar: tuple[tuple[int, ...], ...]
    invariant_report: InvariantReport
    checks: tuple[tuple[str, bool, str], ...]

    @property
    def k3_lattice(self) -> IntLattice:
        return self.k3_quotient.quotient

    @property
    def q_alpha(self) -> IntLattice:
        return self.alpha_quotient.quotient

    def all_passed(self) -> bool:
        return self.invariant_report.match and all(ok for _, ok, _ in self.checks)


def lemma_target_lattice(n: int, d: int) -> IntLattice:
    """E8(-1)^2 + U^2 + <(2-2n)/d^2>, the abstract model for Q_alpha."""
    e8 = standard_lattice("E8minus")
    u = standard_lattice("U")
    tail = IntLattice(1, (((2 - 2 * n) // (d * d),),), None)
    return lattice.direct_sum([e8, e8, u, u, tail],
                              f"E8(-1)^2+U^2+<{(2-2*n)//(d*d)}>")


def associate_k3(n: int, alpha: LatticeVec) -> K3Association:
    L = standard_lattice("K3n", n)
    if not alpha.lattice.same_form(L):
        raise InputError(f"alpha does not live in the K3n({n}) lattice")
    if alpha.is_zero() or not lattice.is_primitive(L, alpha):
        raise NotPrimitive("alpha must be nonzero and primitive")
    if lattice.pairing(L, alpha, alpha) != 0:
        raise NotIsotropic("alpha must be isotropic")

    emb = standard_embedding(n)
    mukai = emb.target
    beta = emb.apply(alpha)
    v = emb.v_perp_gen

    beta_perp = lattice.orthogonal_complement(mukai, [beta])
    k3q = lattice.quotient_mod_isotropic(mukai, beta, beta_perp)
    checks = []
    k3 = k3q.quotient
    sig = lattice.signature(k3)
    disc = lattice.discriminant_group(k3)
    checks.append(("k3_lattice_invariants",
                   k3.rank == 22 and sig == (3, 19) and disc == (),
                   f"rank={k3.rank} signature={sig} divisors={list(disc)}"))

    v_bar_coords = k3q.project(v)
    v_bar = k3.vec(v_bar_coords)
    d = v_bar.content()
    d_alpha = lattice.divisibility(L, alpha)
    checks.append(("content_of_v_bar_equals_divisibility", d == d_alpha,
                   f"content={d} divisibility={d_alpha}"))
    vv = lattice.pairing(k3, v_bar, v_bar)
    checks.append(("v_bar_square_is_2n_minus_2", vv == 2 * n - 2, f"(v,v)={vv}"))
    xi = k3.vec([c // d for c in v_bar.coords])
    xixi = lattice.pairing(k3, xi, xi)
    checks.append(("xi_square", xixi == (2 * n - 2) // (d * d),
                   f"(xi,xi)={xixi}"))

    alpha_perp = lattice.orthogonal_complement(L, [alpha])
    aq = lattice.quotient_mod_isotropic(L, alpha, alpha_perp)
    q_alpha = aq.quotient

    # induced map Q_alpha -> Lambda_k3: lift, embed, project
    cols = []
    for i in range(q_alpha.rank):
        unit = [0] * q_alpha.rank
        unit[i] = 1
        w = aq.section(unit)
        wt = emb.apply(w)
        cols.append(list(k3q.project(wt)))
    iota_bar = intmat.transpose(cols)  # 22 x 21

    # certificate (a): Gram preservation
    gk3 = [list(r) for r in k3.gram]
    pulled = intmat.mat_mul(intmat.mat_mul(intmat.transpose(iota_bar), gk3),
                            iota_bar)
    gram_ok = pulled == [list(r) for r in q_alpha.gram]
    checks.append(("iota_bar_preserves_gram", gram_ok, "pullback Gram equality"))

    # certificate (b): the image is exactly the saturated sublattice xi^perp
    xi_perp = lattice.orthogonal_complement(k3, [xi])
    image_rows = intmat.hnf_rows(cols)
    target_rows = intmat.hnf_rows(xi_perp.matrix())
    onto_ok = image_rows == target_rows
    checks.append(("iota_bar_image_is_xi_perp", onto_ok,
                   "HNF of image equals HNF of xi^perp"))

    # invariant-level match against the abstract direct-sum model
    target = lemma_target_lattice(n, d)
    t_sig = lattice.signature(target)
    t_div = lattice.discriminant_group(target)
    q_sig = lattice.signature(q_alpha)
    q_div = lattice.discriminant_group(q_alpha)
    match = (q_alpha.rank == target.rank and q_sig == t_sig and q_div == t_div
             and gram_ok and onto_ok)
    report = InvariantReport(q_alpha.rank, q_sig, q_div, match)

    return K3Association(
        n=n, alpha=alpha, embedding=emb, beta=beta, k3_quotient=k3q,
        v_bar=v_bar, d=d, xi=xi, alpha_quotient=aq,
        iota_bar=tuple(tuple(r) for r in iota_bar),
        invariant_report=report, checks=tuple(checks),
    )


def find_gamma(mukai: IntLattice, beta: LatticeVec) -> LatticeVec:
    """A class gamma with (gamma, beta) = -1 and (gamma, gamma) = 0.

    Solves (gamma0, beta) = -1 over the integers (the pairing functional of a
    primitive class in a unimodular lattice is surjective), then corrects
    gamma = gamma0 + ((gamma0, gamma0)/2) beta onto the isotropic quadric.
    """
    if beta.is_zero() or not lattice.is_primitive(mukai, beta):
        raise NotPrimitive("beta must be primitive")
    if lattice.pairing(mukai, beta, beta) != 0:
        raise NotIsotropic("beta must be isotropic")
    w = intmat.vec_mat(list(beta.coords), [list(r) for r in mukai.gram])
    if intmat.content(w) != 1:
        raise InvariantError("pairing functional of beta is not surjective")
    sol = intmat.solve_int([w], [-1])
    gamma0 = mukai.vec(sol)
    g00 = lattice.pairing(mukai, gamma0, gamma0)
    gamma = gamma0 + (g00 // 2) * beta
    if (lattice.pairing(mukai, gamma, beta) != -1
            or lattice.pairing(mukai, gamma, gamma) != 0):
        raise InvariantError("gamma construction failed")
    return gamma


def sigma_gamma(mukai: IntLattice, beta: LatticeVec, gamma: LatticeVec,
                x: LatticeVec) -> LatticeVec:
    """Retraction beta^perp -> Z beta of the split sequence: -(x, gamma) beta."""
    if lattice.pairing(mukai, x, beta) != 0:
        raise InputError("x must be orthogonal to beta")
    return (-lattice.pairing(mukai, x, gamma)) * beta


def tau_tilde_gamma(mukai: IntLattice, beta: LatticeVec, gamma: LatticeVec,
                    y_lift: LatticeVec) -> LatticeVec:
    """Section of beta^perp -> beta^perp/Z beta determined by gamma, evaluated
    on a lift: y_lift + (y_lift, gamma) beta (independent of the lift)."""
    if lattice.pairing(mukai, y_lift, beta) != 0:
        raise InputError("lift must be orthogonal to beta")
    return y_lift + lattice.pairing(mukai, y_lift, gamma) * beta
