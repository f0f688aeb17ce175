import random

import pytest

from bbflat import (
    IntLattice,
    SublatticeBasis,
    classify,
    direct_sum,
    discriminant_group,
    divisibility,
    is_primitive,
    orthogonal_complement,
    pairing,
    quotient_group_order,
    quotient_mod_isotropic,
    reflection,
    saturation,
    signature,
    smith_normal_form,
    standard_lattice,
)
from bbflat.errors import (
    DegenerateLattice,
    InputError,
    NullFunctional,
)
from bbflat.k3assoc import standard_embedding
from bbflat.lattice import assert_snf_contract, sublattice_eq


U = standard_lattice("U")
MUKAI = standard_lattice("Mukai")
K3 = standard_lattice("K3")


def _float_signature(gram):
    """Independent oracle: eigenvalue signs of the Gram matrix."""
    import numpy as np

    eigs = np.linalg.eigvalsh(np.array(gram, dtype=float))
    return (int((eigs > 1e-9).sum()), int((eigs < -1e-9).sum()))


def test_standard_lattice_shapes():
    assert U.rank == 2 and U.gram == ((0, -1), (-1, 0))
    assert MUKAI.rank == 24
    assert K3.rank == 22
    k2 = standard_lattice("K3n", 2)
    assert k2.rank == 23 and k2.gram[22][22] == -2
    e8 = standard_lattice("E8minus")
    assert signature(e8) == (0, 8)
    assert discriminant_group(e8) == ()


def test_standard_lattice_errors():
    with pytest.raises(InputError):
        standard_lattice("K3n")
    with pytest.raises(InputError):
        standard_lattice("K3n", 1)
    with pytest.raises(InputError):
        standard_lattice("U", 3)
    with pytest.raises(InputError):
        standard_lattice("nope")


def test_lattice_validation():
    with pytest.raises(InputError):
        IntLattice(2, ((1, 0), (0, 2)))  # odd diagonal
    with pytest.raises(InputError):
        IntLattice(2, ((0, 1), (2, 0)))  # not symmetric


def test_pairing_examples():
    e, f = U.basis_vector(0), U.basis_vector(1)
    assert pairing(U, e, f) == -1
    k5 = standard_lattice("K3n", 5)
    delta = k5.basis_vector(22)
    assert pairing(k5, delta, delta) == -8
    assert pairing(k5, k5.basis_vector(3), k5.zero()) == 0


def test_pairing_symmetry_evenness():
    rng = random.Random(1)
    for _ in range(30):
        x = MUKAI.vec([rng.randint(-4, 4) for _ in range(24)])
        y = MUKAI.vec([rng.randint(-4, 4) for _ in range(24)])
        assert pairing(MUKAI, x, y) == pairing(MUKAI, y, x)
        assert pairing(MUKAI, x, x) % 2 == 0


def test_primitivity_and_divisibility():
    assert is_primitive(U, U.vec([1, 0]))
    assert not is_primitive(U, U.vec([2, 4]))
    with pytest.raises(InputError):
        is_primitive(U, U.zero())
    assert divisibility(U, U.vec([2, 0])) == 2
    k2 = standard_lattice("K3n", 2)
    assert divisibility(k2, k2.basis_vector(0)) == 1
    alpha = classify.construct_alpha(5, 2, 1)
    assert is_primitive(alpha.lattice, alpha)
    assert divisibility(alpha.lattice, alpha) == 2
    degenerate = IntLattice(2, ((0, 0), (0, 2)))
    with pytest.raises(NullFunctional):
        divisibility(degenerate, degenerate.vec([1, 0]))


def test_signature_standard_and_oracle():
    assert signature(U) == (1, 1)
    assert signature(MUKAI) == (4, 20)
    for n in (2, 5, 10):
        assert signature(standard_lattice("K3n", n)) == (3, 20)
    # float-eigenvalue cross-check
    for L in (U, K3, MUKAI, standard_lattice("K3n", 7)):
        assert signature(L) == _float_signature(L.gram)


def test_signature_degenerate_reports_deficiency():
    L = IntLattice(3, ((0, 0, 0), (0, 2, 0), (0, 0, -2)))
    with pytest.raises(DegenerateLattice) as exc:
        signature(L)
    assert exc.value.rank_deficiency == 1


def test_signature_additivity_random():
    rng = random.Random(7)
    from bbflat import intmat

    made = 0
    while made < 8:
        n1, n2 = rng.randint(1, 5), rng.randint(1, 5)
        g1 = [[0] * n1 for _ in range(n1)]
        g2 = [[0] * n2 for _ in range(n2)]
        for g, n in ((g1, n1), (g2, n2)):
            for i in range(n):
                g[i][i] = 2 * rng.randint(-5, 5)
                for j in range(i):
                    g[i][j] = g[j][i] = rng.randint(-5, 5)
        if intmat.det(g1) == 0 or intmat.det(g2) == 0:
            continue
        L1 = IntLattice(n1, tuple(tuple(r) for r in g1))
        L2 = IntLattice(n2, tuple(tuple(r) for r in g2))
        s1, s2 = signature(L1), signature(L2)
        s = signature(direct_sum([L1, L2]))
        assert s == (s1[0] + s2[0], s1[1] + s2[1])
        made += 1


def test_reflection():
    e = U.vec([1, 1])  # (e,e) = -2
    assert pairing(U, e, e) == -2
    assert reflection(U, e, e) == -1 * e
    k5 = standard_lattice("K3n", 5)
    alpha = classify.construct_alpha(5, 2, 1)
    tau = k5.vec([0, 0, 1, -1] + [0] * 19)
    assert pairing(k5, tau, tau) == 2
    assert pairing(k5, tau, alpha) == 0
    assert reflection(k5, tau, alpha, negated=True) == -1 * alpha
    # involution
    x = k5.vec(list(range(1, 24)))
    assert reflection(k5, tau, reflection(k5, tau, x)) == x
    with pytest.raises(InputError):
        reflection(U, U.vec([1, 0]), x=U.vec([0, 1]))  # isotropic mirror
    e4 = U.vec([1, 2])  # (e4,e4) = -4 does not divide 2(x,e4) = -2
    with pytest.raises(InputError):
        reflection(U, e4, U.vec([0, 1]))


def test_orthogonal_complement_examples():
    e = U.vec([1, 0])
    comp = orthogonal_complement(U, [e])
    assert comp.saturated and comp.matrix() == [[1, 0]]

    emb = standard_embedding(5)
    v = emb.v_perp_gen
    comp = orthogonal_complement(MUKAI, [v])
    sub = IntLattice(23, tuple(tuple(pairing(MUKAI, a, b) for b in comp.vectors)
                               for a in comp.vectors))
    assert sub.rank == 23
    assert signature(sub) == (3, 20)
    assert discriminant_group(sub) == (8,)

    k2 = standard_lattice("K3n", 2)
    delta = k2.basis_vector(22)
    comp = orthogonal_complement(k2, [delta])
    sub = IntLattice(22, tuple(tuple(pairing(k2, a, b) for b in comp.vectors)
                               for a in comp.vectors))
    assert signature(sub) == (3, 19)
    assert discriminant_group(sub) == ()


def test_complement_of_complement_roundtrip():
    rng = random.Random(3)
    L = standard_lattice("K3n", 3)
    for _ in range(5):
        vs = []
        while len(vs) < 2:
            v = L.vec([rng.randint(-2, 2) for _ in range(L.rank)])
            try:
                SublatticeBasis(L, tuple(vs + [v]))
                vs.append(v)
            except InputError:
                pass
        S = saturation(L, vs)
        gram = [[pairing(L, a, b) for b in S.vectors] for a in S.vectors]
        from bbflat import intmat
        if intmat.det(gram) == 0:
            continue
        back = orthogonal_complement(L, orthogonal_complement(L, S))
        assert sublattice_eq(back, S)


def test_saturation_examples():
    assert saturation(U, [U.vec([2, 0])]).matrix() == [[1, 0]]
    # whole lattice fixed point
    basis = [U.basis_vector(i) for i in range(2)]
    assert sublattice_eq(saturation(U, basis),
                         SublatticeBasis(U, tuple(basis), True))
    # span{beta, v} in the Mukai lattice saturates to a rank-2 degenerate
    # lattice of the shape scale * ((1,0),(0,0)) with scale (2n-2)/d^2 = 2
    emb = standard_embedding(5)
    beta = emb.apply(classify.construct_alpha(5, 2, 1))
    sat = saturation(MUKAI, [beta, emb.v_perp_gen])
    gram = [[pairing(MUKAI, a, b) for b in sat.vectors] for a in sat.vectors]
    dec = smith_normal_form(gram)
    assert list(dec.diag) == [2, 0]


def test_saturation_idempotent():
    rng = random.Random(11)
    L = standard_lattice("K3n", 5)
    for _ in range(5):
        vs = []
        while len(vs) < 3:
            v = L.vec([rng.randint(-3, 3) for _ in range(L.rank)])
            try:
                SublatticeBasis(L, tuple(vs + [v]))
                vs.append(v)
            except InputError:
                pass
        s1 = saturation(L, vs)
        assert sublattice_eq(s1, saturation(L, s1))


def test_smith_normal_form_examples():
    dec = smith_normal_form([[1, 0], [0, 1]])
    assert list(dec.diag) == [1, 1]
    dec = smith_normal_form([[2, 0], [0, 0]])
    assert list(dec.diag) == [2, 0]
    k5 = standard_lattice("K3n", 5)
    dec = smith_normal_form([list(r) for r in k5.gram])
    assert sorted(dec.diag) == [1] * 22 + [8]
    assert_snf_contract(dec, [list(r) for r in k5.gram])


def test_discriminant_group():
    assert discriminant_group(U) == ()
    assert discriminant_group(standard_lattice("K3n", 5)) == (8,)
    for n in range(2, 11):
        assert discriminant_group(standard_lattice("K3n", n)) == (2 * n - 2,)
    tail = IntLattice(1, ((-2,),))
    e8 = standard_lattice("E8minus")
    model = direct_sum([e8, e8, U, U, tail])
    assert discriminant_group(model) == (2,)
    with pytest.raises(DegenerateLattice):
        discriminant_group(IntLattice(2, ((0, 0), (0, 2))))


def test_quotient_mod_isotropic():
    u2 = direct_sum([U, U], "U+U")
    e1 = u2.basis_vector(0)
    perp = orthogonal_complement(u2, [e1])
    qm = quotient_mod_isotropic(u2, e1, perp)
    assert qm.quotient.rank == 2
    # the quotient contains an isotropic generator image
    q = qm.quotient
    assert any(q.gram[i][i] == 0 for i in range(2))
    # projection/section round trip on random cosets
    rng = random.Random(5)
    for _ in range(20):
        coset = [rng.randint(-5, 5) for _ in range(q.rank)]
        assert list(qm.project(qm.section(coset))) == coset


def test_quotient_preconditions():
    u2 = direct_sum([U, U], "U+U")
    e1 = u2.basis_vector(0)
    perp = orthogonal_complement(u2, [e1])
    from bbflat.errors import NotIsotropic, NotPrimitive

    with pytest.raises(NotIsotropic):
        quotient_mod_isotropic(u2, u2.vec([1, -1, 0, 0]), perp)
    with pytest.raises(NotPrimitive):
        quotient_mod_isotropic(u2, 2 * e1, perp)
    with pytest.raises(InputError):
        quotient_mod_isotropic(u2, u2.basis_vector(2), perp)


def test_quotient_group_order_examples():
    for n in (2, 5):
        lam = K3.vec([1, -(n - 1)] + [0] * 20)
        ns = SublatticeBasis(K3, (lam,))
        sp = orthogonal_complement(K3, ns)
        assert quotient_group_order(K3, sp, ns) == (2 * n - 2,)
    # A + B = L gives the trivial group
    half = SublatticeBasis(K3, tuple(K3.basis_vector(i) for i in range(11)))
    rest = SublatticeBasis(K3, tuple(K3.basis_vector(i) for i in range(11, 22)))
    assert quotient_group_order(K3, half, rest) == ()
    # free part reported as zeros
    a = SublatticeBasis(U, (U.vec([1, 0]),))
    b = SublatticeBasis(U, (U.vec([2, 0]),))
    assert quotient_group_order(U, a, b) == (0,)
