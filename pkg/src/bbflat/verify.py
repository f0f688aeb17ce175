"""Seeded property suites behind `bbflat verify`.

Each suite returns (name, passed, detail) triples; the CLI renders them and
sets the exit code.  Budgets: "small" keeps every suite under about a minute,
"full" runs the complete grids.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import gcd

from . import classify, density, intmat, k3assoc, lattice, periods
from .errors import BBFlatError
from .lattice import standard_lattice


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""

    def as_dict(self) -> dict:
        return {"name": self.name, "pass": self.passed, "detail": self.detail}


def _random_even_symmetric(rng: random.Random, n: int, bound: int) -> list[list[int]]:
    g = [[0] * n for _ in range(n)]
    for i in range(n):
        g[i][i] = 2 * rng.randint(-bound // 2, bound // 2)
        for j in range(i):
            v = rng.randint(-bound, bound)
            g[i][j] = v
            g[j][i] = v
    return g


def _random_matrix(rng: random.Random, r: int, c: int, bound: int) -> list[list[int]]:
    return [[rng.randint(-bound, bound) for _ in range(c)] for _ in range(r)]


def _grid(n_max: int, d_max: int):
    for n in range(2, n_max + 1):
        d = 1
        while d * d <= n - 1 and d <= d_max:
            if (n - 1) % (d * d) == 0:
                yield n, d
            d += 1


def _valid_b_values(d: int):
    if d == 1:
        return [0]
    return [b for b in range(1, d) if gcd(b, d) == 1]


# ---------------------------------------------------------------------------

def suite_lattice(rng: random.Random, budget: str, tamper: bool = False) -> list[Check]:
    checks = []
    max_rank = 24 if budget == "full" else 8
    trials = 12 if budget == "full" else 6
    bound = 10 ** 6 if budget == "full" else 50

    ok = True
    detail = ""
    for _ in range(trials):
        r = rng.randint(1, max_rank)
        c = rng.randint(1, max_rank)
        m = _random_matrix(rng, r, c, bound)
        dec = lattice.smith_normal_form(m)
        try:
            lattice.assert_snf_contract(dec, m)
        except BBFlatError as exc:
            ok = False
            detail = str(exc)
            break
    checks.append(Check("snf_reconstruction_and_chain", ok, detail))

    U = standard_lattice("U")
    mukai = standard_lattice("Mukai")
    gram_u = ((0, -1), (-1, 0)) if not tamper else ((0, -1), (-1, -2))
    checks.append(Check("standard_U_gram", U.gram == gram_u,
                        f"gram={U.gram}"))
    checks.append(Check("mukai_signature",
                        lattice.signature(mukai) == (4, 20),
                        str(lattice.signature(mukai))))
    sig_ok = True
    for n in (2, 3, 7):
        k3n = standard_lattice("K3n", n)
        if lattice.signature(k3n) != (3, 20):
            sig_ok = False
    checks.append(Check("k3n_signature", sig_ok, "(3,20) for n in {2,3,7}"))

    ok = True
    for n in range(2, 11):
        disc = lattice.discriminant_group(standard_lattice("K3n", n))
        if disc != (2 * n - 2,):
            ok = False
    checks.append(Check("k3n_discriminant_2n_minus_2", ok, "n in 2..10"))

    ok = True
    detail = ""
    for _ in range(trials):
        n1 = rng.randint(1, 6)
        n2 = rng.randint(1, 6)
        g1 = _random_even_symmetric(rng, n1, 20)
        g2 = _random_even_symmetric(rng, n2, 20)
        if intmat.det(g1) == 0 or intmat.det(g2) == 0:
            continue
        L1 = lattice.IntLattice(n1, tuple(tuple(r) for r in g1))
        L2 = lattice.IntLattice(n2, tuple(tuple(r) for r in g2))
        s1 = lattice.signature(L1)
        s2 = lattice.signature(L2)
        s12 = lattice.signature(lattice.direct_sum([L1, L2]))
        if (s1[0] + s2[0], s1[1] + s2[1]) != s12:
            ok = False
            detail = f"{s1}+{s2} != {s12}"
            break
    checks.append(Check("signature_additivity", ok, detail))

    ok = True
    detail = ""
    for _ in range(trials):
        L = standard_lattice("K3n", rng.randint(2, 6))
        k = rng.randint(1, 4)
        vecs = []
        while len(vecs) < k:
            v = L.vec([rng.randint(-3, 3) for _ in range(L.rank)])
            if not v.is_zero():
                try:
                    lattice.SublatticeBasis(L, tuple(vecs + [v]))
                    vecs.append(v)
                except BBFlatError:
                    pass
        S = lattice.SublatticeBasis(L, tuple(vecs))
        sat1 = lattice.saturation(L, S)
        sat2 = lattice.saturation(L, sat1)
        if not lattice.sublattice_eq(sat1, sat2):
            ok = False
            detail = "saturation not idempotent"
            break
        comp = lattice.orthogonal_complement(L, S)
        if not comp.saturated or not lattice.sublattice_eq(
                comp, lattice.saturation(L, comp)):
            ok = False
            detail = "complement is not saturated"
            break
    checks.append(Check("saturation_idempotent_complement_saturated", ok, detail))

    # quotient Gram must not depend on the coset representatives
    L = standard_lattice("K3n", 5)
    alpha = classify.construct_alpha(5, 2, 1)
    perp = lattice.orthogonal_complement(L, [alpha])
    qm = lattice.quotient_mod_isotropic(L, alpha, perp)
    ok = True
    for _ in range(trials):
        shifted = [list(row) for row in qm.lift_rows]
        for row in shifted:
            k = rng.randint(-3, 3)
            for idx, a in enumerate(alpha.coords):
                row[idx] += k * a
        gram2 = [[lattice.pairing(L, L.vec(a), L.vec(b)) for b in shifted]
                 for a in shifted]
        if gram2 != [list(r) for r in qm.quotient.gram]:
            ok = False
            break
    checks.append(Check("quotient_gram_representative_independent", ok, ""))
    return checks


def suite_classifier(rng: random.Random, budget: str) -> list[Check]:
    checks = []
    n_max = 101 if budget == "full" else 50
    d_max = 10 if budget == "full" else 5

    ok = True
    detail = ""
    count = 0
    for n, d in _grid(n_max, d_max):
        for b in _valid_b_values(d):
            alpha = classify.construct_alpha(n, d, b)
            L = alpha.lattice
            if not lattice.is_primitive(L, alpha):
                ok, detail = False, f"not primitive at {(n,d,b)}"
                break
            if lattice.pairing(L, alpha, alpha) != 0:
                ok, detail = False, f"not isotropic at {(n,d,b)}"
                break
            inv = classify.classify_isotropic(n, alpha)
            want_b = min(b % d, (-b) % d) if d > 1 else 0
            if inv.d != d or inv.b_star != want_b:
                ok, detail = False, f"round trip failed at {(n,d,b)} -> {inv}"
                break
            count += 1
        if not ok:
            break
    checks.append(Check("classification_round_trip", ok,
                        detail or f"{count} triples"))

    ok = True
    for n, d, b in [(5, 2, 1), (10, 3, 1), (26, 5, 2), (50, 7, 3)]:
        alpha = classify.construct_alpha(n, d, b)
        L = alpha.lattice
        tau = L.vec([0, 0, 1, -1] + [0] * (L.rank - 4))  # (tau,tau)=2, (tau,alpha)=0
        neg = lattice.reflection(L, tau, alpha, negated=True)
        if classify.classify_isotropic(n, neg) != classify.classify_isotropic(n, alpha):
            ok = False
    checks.append(Check("classification_reflection_invariant", ok, ""))

    expected = {1: 1, 2: 1, 3: 1, 4: 1, 5: 2, 7: 3, 12: 2}
    ok = all(classify.nu(d) == v for d, v in expected.items())
    checks.append(Check("nu_table", ok, str({d: classify.nu(d) for d in expected})))

    ok = True
    detail = ""
    d_oracle = 8 if budget == "full" else 5
    for d in range(1, d_oracle + 1):
        n = d * d + 1
        got, rng_used = classify.stabilized_orbit_count(n, d)
        if got != classify.nu(d):
            ok, detail = False, f"d={d}: oracle {got} != nu {classify.nu(d)}"
            break
        if len(classify.enumerate_orbit_reps(n, d)) != classify.nu(d):
            ok, detail = False, f"d={d}: rep count mismatch"
            break
    checks.append(Check("orbit_count_oracle", ok, detail))

    ok = True
    for n, d in _grid(n_max, d_max):
        for b in _valid_b_values(d):
            A, out = classify.reduce_gram_to_Lnd(n, d, b)
            m = (2 * n - 2) // (d * d)
            if out != [[m, 0], [0, 0]] or abs(intmat.det(A)) != 1:
                ok = False
    checks.append(Check("gram_reduction", ok, ""))

    ok = True
    detail = ""
    for n, d in _grid(min(n_max, 50), d_max):
        for b in _valid_b_values(d):
            setup = classify.mukai_example(n, d, b)
            if not setup.all_passed():
                ok = False
                detail = f"failed at {(n, d, b)}"
                break
        if not ok:
            break
    checks.append(Check("mukai_witness", ok, detail))
    return checks


def suite_k3(rng: random.Random, budget: str) -> list[Check]:
    checks = []
    n_max = 50 if budget == "full" else 12

    ok = True
    detail = ""
    ran = 0
    for n, d in _grid(n_max, 7):
        bs = _valid_b_values(d)
        b = bs[ran % len(bs)]
        alpha = classify.construct_alpha(n, d, b)
        assoc = k3assoc.associate_k3(n, alpha)
        if not assoc.all_passed() or assoc.d != d:
            ok = False
            detail = f"failed at {(n, d, b)}"
            break
        ran += 1
    checks.append(Check("associate_k3_invariants", ok,
                        detail or f"{ran} associations"))

    ok = True
    for n, d, b in [(2, 1, 0), (5, 2, 1), (17, 4, 3)]:
        alpha = classify.construct_alpha(n, d, b)
        assoc = k3assoc.associate_k3(n, alpha)
        mukai = assoc.embedding.target
        gamma = k3assoc.find_gamma(mukai, assoc.beta)
        if (lattice.pairing(mukai, gamma, assoc.beta) != -1
                or lattice.pairing(mukai, gamma, gamma) != 0):
            ok = False
        if k3assoc.sigma_gamma(mukai, assoc.beta, gamma, assoc.beta) != assoc.beta:
            ok = False
        lift = assoc.embedding.apply(assoc.alpha_quotient.section(
            [1] + [0] * (assoc.q_alpha.rank - 1)))
        t1 = k3assoc.tau_tilde_gamma(mukai, assoc.beta, gamma, lift)
        t2 = k3assoc.tau_tilde_gamma(mukai, assoc.beta, gamma,
                                     lift + 3 * assoc.beta)
        if t1 != t2:
            ok = False
        if (lattice.pairing(mukai, t1, gamma) != 0
                or lattice.pairing(mukai, t1, assoc.beta) != 0):
            ok = False
    checks.append(Check("split_sequence_identities", ok, ""))
    return checks


def suite_period(rng: random.Random, budget: str) -> list[Check]:
    checks = []
    n_z = 1000 if budget == "full" else 100
    n_periods = 20 if budget == "full" else 5

    alpha = standard_lattice("K3n", 2).basis_vector(0)
    assoc = k3assoc.associate_k3(2, alpha)
    mukai = assoc.embedding.target
    L = alpha.lattice
    gamma = k3assoc.find_gamma(mukai, assoc.beta)
    q_alpha = assoc.q_alpha
    perp_rows = [list(r) for r in assoc.alpha_quotient.lift_rows]

    def random_z():
        coeffs = [rng.randint(-2, 2) for _ in perp_rows]
        out = [0] * L.rank
        for cf, row in zip(coeffs, perp_rows):
            for k, v in enumerate(row):
                out[k] += cf * v
        return L.vec(out)

    # sampler output is valid and certified non-special by the full minor check
    ok = True
    detail = ""
    qps = []
    for i in range(n_periods):
        try:
            p = periods.sample_nonspecial_period(q_alpha, 2, seed=1000 + i)
        except BBFlatError as exc:
            ok, detail = False, str(exc)
            break
        qps.append(p)
        special_full, _ = periods.is_special(p, all_pairs=True)
        if special_full:
            ok, detail = False, f"sampler period {i} is special"
            break
    checks.append(Check("sampler_non_special", ok, detail))

    u2 = lattice.direct_sum([standard_lattice("U"), standard_lattice("U")], "U+U")
    rat = periods.make_period(u2, [1, -1, 0, 0], [0, 0, 1, -1], D=2)
    special, witness = periods.is_special(rat)
    ok = special and witness is not None and periods.verify_span_membership(rat, witness)
    checks.append(Check("rational_period_special_with_witness", ok,
                        f"witness={witness.coords if witness else None}"))

    ok = True
    if qps:
        for i, qp in enumerate(qps):
            tau_p = periods.tau_section(assoc, gamma, qp)
            back = periods.q_project(tau_p, alpha, assoc.alpha_quotient)
            if not periods.periods_projectively_equal(back, qp):
                ok = False
                break
            z = random_z()
            lhs = periods.g_act(tau_p, z, alpha)
            delta = periods.cocycle_gamma_shift(assoc, gamma, z)
            rhs = periods.tau_section(assoc, delta, qp)
            if not periods.periods_projectively_equal(lhs, rhs):
                ok = False
                break
            if not periods.periods_projectively_equal(
                    periods.q_project(lhs, alpha, assoc.alpha_quotient), qp):
                ok = False
                break
    checks.append(Check("section_and_cocycle_identities", ok, ""))

    beta, v = assoc.beta, assoc.embedding.v_perp_gen
    bv_perp = lattice.orthogonal_complement(mukai, [beta, v])
    gm = [list(r) for r in mukai.gram]
    ok = True
    detail = ""
    prev = None
    for i in range(n_z):
        zc = [rng.randint(-2, 2) for _ in range(len(bv_perp))]
        z = mukai.zero()
        for cf, w in zip(zc, bv_perp.vectors):
            z = z + cf * w
        T = periods.tilde_g(mukai, z, beta, v)
        tgt = intmat.mat_mul(intmat.mat_mul(intmat.transpose(T), gm), T)
        if tgt != gm:
            ok, detail = False, "Gram not preserved"
            break
        if periods.apply_matrix(T, beta) != beta or periods.apply_matrix(T, v) != v:
            ok, detail = False, "beta or v moved"
            break
        # trivial action on beta^perp / Z beta: image differs by (w,z) beta
        for w in bv_perp.vectors[:3]:
            img = periods.apply_matrix(T, w) - w
            if img != lattice.pairing(mukai, w, z) * beta:
                ok, detail = False, "action mod Z beta is not trivial"
                break
        if not ok:
            break
        if prev is not None:
            z_prev, T_prev = prev
            z_sum = z_prev + z
            if intmat.mat_mul(T_prev, T) != periods.tilde_g(mukai, z_sum, beta, v):
                ok, detail = False, "homomorphism identity failed"
                break
            prev = None
        else:
            prev = (z, T)
    checks.append(Check("tilde_g_isometry_homomorphism", ok, detail))

    ok = True
    detail = ""
    if qps:
        targets = [complex(0.125, 0.375), complex(-0.4, 0.7)]
        if budget == "full":
            targets += [complex(0.9, -0.2)]
        try:
            for t in targets:
                cert = density.density_approximate(qps[0], t, 1e-3)
                err2 = density.reverify_certificate(qps[0], cert,
                                                    2 * cert.verify_bits)
                if cert.achieved_error >= 1e-3:
                    ok, detail = False, "error above epsilon"
                if err2 > 2 * cert.achieved_error + 1e-15:
                    ok, detail = False, "reverification drifted"
                if any(r > 11 / 12 + 1e-9 for r in cert.shrink_trace):
                    ok, detail = False, "shrink factor violated"
        except BBFlatError as exc:
            ok, detail = False, str(exc)
    checks.append(Check("density_certificates", ok, detail))
    return checks


SUITES = {
    "lattice": suite_lattice,
    "classifier": suite_classifier,
    "k3": suite_k3,
    "period": suite_period,
}


def run_suites(names, budget: str = "small", seed: int = 0,
               tamper: bool = False) -> list[Check]:
    checks = []
    for name in names:
        rng = random.Random(seed)
        fn = SUITES[name]
        if name == "lattice":
            checks.extend(fn(rng, budget, tamper=tamper))
        else:
            checks.extend(fn(rng, budget))
    return checks
