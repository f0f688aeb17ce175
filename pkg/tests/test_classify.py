from math import gcd

import pytest

from bbflat import (
    brute_force_orbit_count,
    classify,
    classify_isotropic,
    construct_alpha,
    divisibility,
    enumerate_orbit_reps,
    is_primitive,
    mukai_example,
    nu,
    pairing,
    reduce_gram_to_Lnd,
    reflection,
    standard_lattice,
)
from bbflat.classify import OrbitInvariant, stabilized_orbit_count
from bbflat.errors import InputError, NotIsotropic, NotPrimitive
from bbflat import intmat


def valid_b(d):
    return [0] if d == 1 else [b for b in range(1, d) if gcd(b, d) == 1]


def grid(n_max, d_max):
    for n in range(2, n_max + 1):
        d = 1
        while d * d <= n - 1 and d <= d_max:
            if (n - 1) % (d * d) == 0:
                yield n, d
            d += 1


def test_orbit_invariant_validation():
    OrbitInvariant(5, 2, 1)
    OrbitInvariant(2, 1, 0)
    with pytest.raises(InputError):
        OrbitInvariant(5, 3, 1)  # 9 does not divide 4
    with pytest.raises(InputError):
        OrbitInvariant(5, 1, 1)  # b* must be 0 for d = 1
    with pytest.raises(InputError):
        OrbitInvariant(26, 5, 4)  # out of canonical range
    with pytest.raises(InputError):
        OrbitInvariant(37, 6, 3)  # not a unit


def test_construct_alpha_examples():
    a = construct_alpha(5, 2, 1)
    assert list(a.coords[:2]) == [2, -2] and a.coords[-1] == 1
    assert pairing(a.lattice, a, a) == 0
    assert construct_alpha(2, 1, 0) == standard_lattice("K3n", 2).basis_vector(0)
    a10 = construct_alpha(10, 3, 1)
    assert list(a10.coords[:2]) == [3, -3] and a10.coords[-1] == 1
    assert pairing(a10.lattice, a10, a10) == 0


def test_construct_alpha_errors():
    with pytest.raises(InputError):
        construct_alpha(5, 3, 1)
    with pytest.raises(InputError):
        construct_alpha(26, 5, 5)
    with pytest.raises(InputError):
        construct_alpha(1, 1, 0)


def test_classify_examples():
    k2 = standard_lattice("K3n", 2)
    assert classify_isotropic(2, k2.basis_vector(0)) == OrbitInvariant(2, 1, 0)
    a = construct_alpha(5, 2, 1)
    assert classify_isotropic(5, a) == OrbitInvariant(5, 2, 1)
    assert classify_isotropic(26, construct_alpha(26, 5, 2)) == \
        OrbitInvariant(26, 5, 2)


def test_classify_preconditions():
    k2 = standard_lattice("K3n", 2)
    with pytest.raises(NotIsotropic):
        classify_isotropic(2, k2.vec([1, -1] + [0] * 21))
    with pytest.raises(NotPrimitive):
        classify_isotropic(2, k2.vec([2, 0] + [0] * 21))
    with pytest.raises(InputError):
        classify_isotropic(2, k2.zero())


def test_round_trip_grid():
    count = 0
    for n, d in grid(101, 10):
        for b in valid_b(d):
            a = construct_alpha(n, d, b)
            L = a.lattice
            assert is_primitive(L, a)
            assert pairing(L, a, a) == 0
            assert divisibility(L, a) == d
            inv = classify_isotropic(n, a)
            want = min(b % d, (-b) % d) if d > 1 else 0
            assert inv == OrbitInvariant(n, d, want), (n, d, b)
            count += 1
    assert count > 150


def test_classify_invariant_under_minus():
    for n, d, b in [(5, 2, 1), (26, 5, 2), (50, 7, 3), (10, 3, 2)]:
        a = construct_alpha(n, d, b)
        L = a.lattice
        tau = L.vec([0, 0, 1, -1] + [0] * (L.rank - 4))
        rho_a = reflection(L, tau, a, negated=True)
        assert rho_a == -1 * a
        assert classify_isotropic(n, rho_a) == classify_isotropic(n, a)


def test_nu():
    assert [nu(d) for d in range(1, 13)] == [1, 1, 1, 1, 2, 1, 3, 2, 3, 2, 5, 2]
    with pytest.raises(InputError):
        nu(0)


def test_enumerate_orbit_reps():
    assert [r.b_star for r in enumerate_orbit_reps(5, 2)] == [1]
    assert [r.b_star for r in enumerate_orbit_reps(26, 5)] == [1, 2]
    assert [r.b_star for r in enumerate_orbit_reps(50, 7)] == [1, 2, 3]
    assert [r.b_star for r in enumerate_orbit_reps(2, 1)] == [0]
    with pytest.raises(InputError):
        enumerate_orbit_reps(6, 2)
    for d in range(1, 11):
        assert len(enumerate_orbit_reps(d * d + 1, d)) == nu(d)


def test_brute_force_examples():
    assert brute_force_orbit_count(5, 2, 20, 20) == 1
    assert brute_force_orbit_count(26, 5, 50, 50) == 2
    assert brute_force_orbit_count(2, 1, 10, 10) == 1


def test_oracle_stabilized_matches_nu():
    for d in range(1, 9):
        n = d * d + 1
        count, _rng = stabilized_orbit_count(n, d)
        assert count == nu(d), d


def test_reduce_gram():
    A, out = reduce_gram_to_Lnd(5, 2, 1)
    assert out == [[2, 0], [0, 0]]
    A, out = reduce_gram_to_Lnd(2, 1, 0)
    assert out == [[2, 0], [0, 0]]
    for n, d in grid(60, 8):
        for b in valid_b(d):
            A, out = reduce_gram_to_Lnd(n, d, b)
            assert abs(intmat.det(A)) == 1
            assert out == [[(2 * n - 2) // (d * d), 0], [0, 0]]
    with pytest.raises(InputError):
        reduce_gram_to_Lnd(17, 4, 2)


def test_mukai_example_cases():
    s5 = mukai_example(5, 2, 1)
    assert s5.s == 1
    assert pairing(s5.lattice, s5.v, s5.v) == 8
    assert s5.all_passed()

    s2 = mukai_example(2, 1, 0)
    assert s2.s == 1
    lam = s2.lam
    assert pairing(standard_lattice("K3"), lam, lam) == 2
    assert s2.all_passed()

    s26 = mukai_example(26, 5, 2)
    assert s26.s == 3  # 2*3 = 6 = 1 mod 5
    diff = s26.alpha - 2 * s26.v
    assert all(c % 5 == 0 for c in diff.coords)
    assert s26.all_passed()


def test_mukai_example_r_divisibility_property():
    for n, d, b in [(5, 2, 1), (10, 3, 2), (17, 4, 3), (26, 5, 3)]:
        setup = mukai_example(n, d, b)
        for w in setup.v_perp.vectors:
            assert w.coords[0] % d == 0


def test_mukai_rcs_pairing_convention():
    L = classify.mukai_rcs_lattice()
    one = classify.rcs_vec(L, 1, [0] * 22, 0)
    pt = classify.rcs_vec(L, 0, [0] * 22, 1)
    assert pairing(L, one, pt) == -1
    assert pairing(L, one, one) == 0
    assert pairing(L, pt, pt) == 0
