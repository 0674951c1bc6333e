import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mmtensor.errors import NotASubtransversal, NotNearTransversal, NotTight, UnknownElement
from mmtensor.fixtures import (ZA_BASES, example_z1_tensor_left, example_z2_tensor_right,
                               example_za, example_zb)
from mmtensor.gen import random_tensor_pair
from mmtensor.multimatroid import (Carrier, Multimatroid, SkewClass, mm_check_axioms,
                                   mm_enumerate, mm_is_tight, mm_minor, mm_nullity, mm_rank,
                                   mm_singular, mm_slack)
from mmtensor.transition import q_poly

from oracles import is_tight as oracle_tight
from oracles import rank_from_bases

FIXTURES = {"ZA": example_za, "ZB": example_zb, "Z1": example_z1_tensor_left,
            "Z2": example_z2_tensor_right}


def pair_class(bases):
    return Multimatroid.from_bases([SkewClass("e", ("e1", "e2"))], bases)


@pytest.fixture
def za():
    return example_za()


def test_za_rank_one_transversal(za):
    assert mm_rank(za, {"a_bar", "b_bar", "c_dot"}) == 1
    assert mm_nullity(za, {"a_bar", "b_bar", "c_dot"}) == 2


def test_za_other_non_bases_have_rank_two(za):
    bases = {frozenset(b) for b in ZA_BASES}
    others = [T for T in za.transversals() if T not in bases]
    assert len(others) == 11
    ranks = sorted(za.rank(T) for T in others)
    assert ranks == [1] + [2] * 10


def test_za_rank_of_a_pair(za):
    # frozen from max |B ∩ S| over the 16 bases
    assert mm_rank(za, {"a_dot", "b_bar"}) == 2


def test_rank_of_empty_set_is_zero():
    for make in FIXTURES.values():
        assert mm_rank(make(), []) == 0
        assert mm_nullity(make(), []) == 0


def test_bases_have_nullity_zero(za):
    assert all(za.nullity(B) == 0 for B in ZA_BASES)


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_fixture_axioms_and_tightness(name):
    Z = FIXTURES[name]()
    assert mm_check_axioms(Z).ok
    assert mm_is_tight(Z)


def test_single_class_axioms():
    assert mm_check_axioms(pair_class([["e1"], ["e2"]])).ok


def test_rank_zero_everywhere_breaks_r2():
    report = mm_check_axioms(pair_class([]))
    assert not report.ok
    assert any(v.startswith("R2") and "[]" in v for v in report.violations)


def test_slack_examples(za):
    assert mm_slack(za, {"a_dot", "b_bar"}) == "c_dot"
    assert mm_slack(za, {"b_dot", "c_bar"}) == "a_dot"
    assert mm_slack(example_z1_tensor_left(), {"alpha21"}) == "alpha11"


def test_slack_errors(za):
    with pytest.raises(NotNearTransversal):
        za.slack({"a_dot"})
    with pytest.raises(NotASubtransversal):
        za.rank({"a_dot", "a_bar"})
    with pytest.raises(UnknownElement):
        za.rank({"nope"})
    loose = Multimatroid.from_bases([SkewClass("e", ("e1", "e2")), SkewClass("f", ("f1", "f2"))],
                                    [["e1", "f1"], ["e2", "f2"], ["e1", "f2"], ["e2", "f1"]])
    assert not loose.is_tight()
    with pytest.raises(NotTight):
        loose.slack({"e1"})


def test_minor_polynomial_of_right_factor():
    Z2 = example_z2_tensor_right()
    q = q_poly(mm_minor(Z2, "e1"))
    assert q.to_text() == ("x.beta11 * x.beta21 * t^2 + x.beta11 * x.beta22 * t + "
                           "x.beta12 * x.beta21 * t + x.beta12 * x.beta22")


def test_minor_of_one_class_is_empty():
    Zm = mm_minor(pair_class([["e1"], ["e2"]]), "e1")
    assert len(Zm.carrier) == 0
    assert q_poly(Zm) == 1
    assert mm_enumerate(Zm) == [frozenset()]


def test_minors_of_tight_are_tight(za):
    for e in za.carrier.elems:
        assert mm_is_tight(za.minor(e))


def test_minor_unknown_element(za):
    with pytest.raises(UnknownElement):
        za.minor("z_dot")


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_minor_rank_consistency(name):
    Z = FIXTURES[name]()
    for e in Z.carrier.elems:
        M = Z.minor(e)
        re = Z.rank([e])
        for S in M.subtransversals():
            assert M.rank(S) + re == Z.rank(S | {e})


def test_enumeration_counts():
    assert len(mm_enumerate(example_za(), "transversal")) == 27
    empty = Multimatroid(Carrier([]), [[]])
    assert mm_enumerate(empty) == [frozenset()]
    assert len(example_z2_tensor_right().near_transversals("e")) == 4
    assert len(mm_enumerate(example_za(), "sub")) == 64
    assert len(mm_enumerate(example_za(), "near")) == 27
    with pytest.raises(ValueError):
        mm_enumerate(example_za(), "other")


def test_enumeration_is_deterministic(za):
    assert mm_enumerate(za, "sub") == mm_enumerate(example_za(), "sub")


def test_singularity(za):
    assert not any(mm_singular(za, e) for e in za.carrier.elems)
    Z = Multimatroid.from_bases([SkewClass("e", ("e1", "e2")), SkewClass("f", ("f1", "f2"))],
                                [["e1", "f1"], ["e2", "f1"]])
    assert mm_singular(Z, "f2")
    assert mm_singular(Z, "f")
    assert not mm_singular(Z, "e")
    with pytest.raises(UnknownElement):
        mm_singular(Z, "g")


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_rank_matches_oracle(name):
    Z = FIXTURES[name]()
    bases = Z.bases
    for S in Z.subtransversals():
        assert Z.rank(S) == rank_from_bases(bases, S)


@pytest.mark.parametrize("name", ["ZA", "ZB", "Z2"])
def test_rank_monotone_and_submodular(name):
    Z = FIXTURES[name]()
    subs = Z.subtransversals()
    c = Z.carrier
    for A in subs:
        for B in subs:
            U = A | B
            if not c.is_subtransversal(c.mask(U)):
                continue
            if A <= B:
                assert Z.rank(A) <= Z.rank(B)
            assert Z.rank(A) + Z.rank(B) >= Z.rank(U) + Z.rank(A & B)


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_tightness_matches_oracle(name):
    Z = FIXTURES[name]()
    classes = [c.elems for c in Z.carrier.classes]
    assert oracle_tight(classes, Z.bases) == Z.is_tight()


def test_maximal_independent_sets_are_transversals(za):
    from mmtensor.multimatroid import maximal_independent_masks
    for m in maximal_independent_masks(za):
        assert m.bit_count() == len(za.carrier)


def test_equality_and_relabel(za):
    again = example_za()
    assert za == again
    renamed = za.relabel({e: e.upper() for e in za.carrier.elems})
    assert renamed != za
    back = renamed.relabel({e.upper(): e for e in za.carrier.elems})
    assert back == za
    assert za.minor("a_dot").materialize() == za.minor("a_dot")


def test_carrier_validation():
    from mmtensor.errors import MalformedInput
    with pytest.raises(MalformedInput):
        Carrier([SkewClass("a", ("x", "y")), SkewClass("b", ("y", "z"))])
    with pytest.raises(MalformedInput):
        Carrier([SkewClass("a", ("x", "y")), SkewClass("a", ("u", "v"))])


@given(st.integers(0, 10_000))
def test_generated_factors_satisfy_axioms(seed):
    pair = random_tensor_pair(random.Random(seed), max_classes=3)
    for Z in (pair["left"], pair["right"]):
        assert Z.is_tight()
        assert Z.check_axioms().ok
