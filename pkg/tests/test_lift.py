import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from transtoric import exactlin as el
from transtoric.fan import underlying_complex
from transtoric.gallery import (EXAMPLES, TRIPLES, RandomFanConfig, example, example_triple,
                                random_marked_fans)
from transtoric.lift import (C2Triple, DimensionMismatch, NotInClass, check_principal,
                             generator_matrix, quotient, realize, validate_triple)
from transtoric.markedfan import MarkedFan, NotValidated, are_isomorphic, verify_isomorphism

CP1_TRIPLE = C2Triple.build(1, [[1], [-1]], [[0], [1]])


def test_l0_triple_all_true():
    rep = validate_triple(example_triple("cp2"))
    assert rep.ok and all(rep.flags().values())


def test_dependent_pair_not_injective():
    T = C2Triple.build(3, [[1, 0, 0], [0, 1, 0]], [[0], [1]], [([1, 1, 1], [1, 1, 1])])
    rep = validate_triple(T)
    assert not rep.p_injective
    assert "C2 axiom (3): p|h not injective" in rep.diagnostics


def test_incomplete_quotient_flagged():
    T = C2Triple.build(2, [[1, 0], [0, 1]], [[0], [1]])
    rep = validate_triple(T)
    assert not rep.quotient_complete and not rep.ok


def test_singular_fan_flagged():
    T = C2Triple.build(2, [[1, 0], [1, 2], [-1, -1]], [[0, 1], [1, 2], [0, 2]])
    rep = validate_triple(T)
    assert not rep.nonsingular
    assert any(d.startswith("C2 axiom (2)") for d in rep.diagnostics)


def test_realize_cp1():
    M = example("cp1")
    T = realize(M)
    assert T.N == 3 and T.l == 1
    assert T.rays == ((1, 0, 0), (0, 1, 0))
    psi = generator_matrix(M)
    assert psi == [[1, -1, 1]]
    for re, im in T.h:
        assert el.matvec(psi, re) == [0] and el.matvec(psi, im) == [0]
    assert validate_triple(T).ok


def test_realize_point_and_cp2():
    T = realize(example("point"))
    assert T.N == 0 and T.rays == () and T.l == 0
    T = realize(example("cp2"))
    assert (T.N, T.l) == (4, 1)
    assert el.rank(generator_matrix(example("cp2"))) == 2


def test_realize_rejects_invalid():
    M = MarkedFan.build(2, [[1, 0], [0, 1]], [[1, 0], [0, 1]], [[0, 1]])
    with pytest.raises(NotInClass):
        realize(M)


def test_realize_with_extra_generators():
    M = example("cp2")
    T = realize(M, extra_gens=[[1, 0], [0, 1], [1, 1]])
    assert T.N == 6 and T.l == 2 and validate_triple(T).ok
    assert are_isomorphic(quotient(T), M) is not None
    with pytest.raises(NotInClass):
        realize(M, extra_gens=[[1, 0], [0, 1]])         # N - dim = 3 is odd
    half = MarkedFan.build(1, [[Fraction(1, 2)]], [[1], [-1]], [[0], [1]])
    with pytest.raises(NotInClass):
        realize(half, extra_gens=[[3]])                # generates Z, not (1/2)Z
    assert realize(half, extra_gens=[[Fraction(1, 2)]]).N == 3

@pytest.mark.parametrize("name", list(EXAMPLES))
def test_realization_invariants(name):
    M = example(name)
    T = realize(M)
    assert T.N - 2 * T.l == M.dim
    rep = validate_triple(T)
    assert rep.ok, rep.diagnostics
    Q = quotient(T)
    assert Q.nrays == M.nrays
    assert underlying_complex(Q.fan) == underlying_complex(M.fan)


def test_quotient_l0_is_identity_on_data():
    Q = quotient(example_triple("cp2"))
    assert Q.lam == example("cp2").lam
    assert el.lattices_equal(Q.gamma, el.identity(2), 2)


def test_quotient_hopf_triple():
    T = example_triple("hopf")
    assert T.N == 3 and T.l == 1
    assert T.rays == ((1, 0, 0), (0, 1, 0))
    Q = quotient(T)
    assert Q.dim == 1 and Q.nrays == 2
    (a,), (b,) = Q.lam
    assert a * b < 0


def test_quotient_rejects_invalid():
    with pytest.raises(NotValidated):
        quotient(C2Triple.build(2, [[1, 0], [0, 1]], [[0], [1]]))


@pytest.mark.parametrize("name", list(TRIPLES))
def test_triple_json_round_trip(name):
    T = example_triple(name)
    assert C2Triple.from_json(json.loads(json.dumps(T.to_json()))) == T


def test_principal_identity():
    for name in TRIPLES:
        T = example_triple(name)
        rep = check_principal(el.identity(T.N), T, T)
        assert rep.principal and rep.kernel_connected, rep.diagnostics


def test_principal_cp1_projection():
    T0 = realize(example("cp1"))
    rep = check_principal([[1, -1, 1]], T0, CP1_TRIPLE)
    assert rep.principal and rep.kernel_connected


def test_principal_disconnected_kernel():
    T0 = realize(example("cp1"))
    rep = check_principal([[2, -2, 2]], T0, CP1_TRIPLE)
    assert not rep.kernel_connected


def test_principal_collapsing_rays():
    T0 = C2Triple.build(2, [[1, 0], [0, 1]], [[0], [1]])
    T = C2Triple.build(1, [[1], [-1]], [[0], [1]])
    rep = check_principal([[1, 1]], T0, T)
    assert not rep.principal and not rep.generator_bijection


def test_principal_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        check_principal([[1, 0]], CP1_TRIPLE, CP1_TRIPLE)


def test_principal_h_not_contained():
    T0 = example_triple("torus")
    # i * (1, i) = (i, -1): the same complex line, different real pair
    T = C2Triple.build(2, [], [[]], [([0, -1], [1, 0])])
    assert check_principal(el.identity(2), T0, T).h_compatible
    T1 = C2Triple.build(2, [], [[]], [([1, 0], [0, 2])])    # the line through (1, 2i)
    assert not check_principal(el.identity(2), T0, T1).h_compatible


@given(st.integers(0, 29))
def test_round_trip_on_random_distortions(k):
    _, M = random_marked_fans(RandomFanConfig(count=30))[k]
    N = quotient(realize(M))
    iso = are_isomorphic(N, M)
    assert iso is not None and verify_isomorphism(N, M, iso)
