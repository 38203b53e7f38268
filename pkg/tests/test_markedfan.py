import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from transtoric import exactlin as el
from transtoric.gallery import EXAMPLES, EXTRAS, example, polytopal_bases
from transtoric.markedfan import (MarkedFan, MarkedFanIso, NotValidated, ParseError, SchemaError,
                                  are_isomorphic, format_rat, invert_isomorphism, parse_rat,
                                  require_class, validate_marked_fan, verify_isomorphism)
from strategies import unimodular

CP1 = MarkedFan.build(1, [[1]], [[1], [-1]], [[0], [1]])


def test_cp1_valid():
    assert all(validate_marked_fan(CP1).flags().values())


def test_marking_outside_group():
    M = MarkedFan.build(1, [[1]], [[1], [Fraction(-1, 2)]], [[0], [1]])
    rep = validate_marked_fan(M)
    assert not rep.lambda_in_gamma and rep.complete
    assert any("axiom (4)" in d for d in rep.diagnostics)
    with pytest.raises(NotValidated):
        require_class(M)


def test_hopf_model_valid():
    rep = validate_marked_fan(example("hopf"))
    assert rep.in_class


def test_group_must_span():
    M = MarkedFan.build(2, [[1, 0]], [[1, 0], [-1, 0]], [[0], [1]])
    rep = validate_marked_fan(M)
    assert not rep.gamma_spans and not rep.in_class


@pytest.mark.parametrize("name", list(EXAMPLES) + list(EXTRAS))
def test_gallery_validates_and_round_trips_json(name):
    M = example(name)
    assert validate_marked_fan(M).in_class
    text = json.dumps(M.to_json())
    assert MarkedFan.from_json(json.loads(text)) == M


def test_rational_parsing():
    assert parse_rat("3/4") == Fraction(3, 4)
    assert parse_rat(-2) == -2
    assert parse_rat("-10") == -10
    for bad in (1.5, "1.5", True, "a/b", None, "1/-2"):
        with pytest.raises(ParseError):
            parse_rat(bad)
    assert format_rat(Fraction(-6, 4)) == "-3/2"


def test_schema_errors():
    with pytest.raises(SchemaError):
        MarkedFan.from_json({"dim": 1, "gamma": [[1]], "cones": []})
    with pytest.raises(SchemaError):
        MarkedFan.from_json({"dim": 2, "gamma": [[1]], "lambda": [], "cones": []})


def test_iso_reflexive_identity():
    iso = are_isomorphic(example("cp2"), example("cp2"))
    assert iso.matrix == el.identity(2) and iso.ray_bijection == [0, 1, 2]


def test_iso_coordinate_permutation():
    M = example("cp2")
    P = [[0, 1], [1, 0]]
    iso = are_isomorphic(M, M.transform(P))
    assert iso is not None and verify_isomorphism(M, M.transform(P), iso)


def test_scaled_markings_not_isomorphic():
    scaled = MarkedFan.build(1, [[1]], [[2], [-2]], [[0], [1]])
    assert are_isomorphic(CP1, scaled) is None


def test_isomorphism_needs_group_match():
    # same fan and markings, group of index 2 in the other
    M1 = MarkedFan.build(1, [[1]], [[2], [-2]], [[0], [1]])
    M2 = MarkedFan.build(1, [[2]], [[2], [-2]], [[0], [1]])
    assert are_isomorphic(M1, M2) is None


def test_different_fans_not_isomorphic():
    assert are_isomorphic(example("cp1xcp1"), example("hirzebruch1")) is None
    assert are_isomorphic(example("cp2"), example("cp1xcp1")) is None


@pytest.mark.parametrize("name", sorted(polytopal_bases()) + ["hopf", "calabi-eckmann-model"])
@given(data=st.data())
def test_iso_invariant_under_change_of_coordinates(name, data):
    M = example(name)
    A = data.draw(unimodular(M.dim))
    perm = data.draw(st.permutations(range(M.nrays)))
    N = M.transform(A).relabel(perm)
    iso = are_isomorphic(M, N)
    assert iso is not None and verify_isomorphism(M, N, iso)
    back = invert_isomorphism(iso)
    assert verify_isomorphism(N, M, back)
    assert are_isomorphic(N, M) is not None


def test_bad_witness_rejected():
    M = example("cp2")
    assert not verify_isomorphism(M, M, MarkedFanIso([[2, 0], [0, 2]], [0, 1, 2]))
    assert not verify_isomorphism(M, M, MarkedFanIso(el.identity(2), [1, 0, 2]))
