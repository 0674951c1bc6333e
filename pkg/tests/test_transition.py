import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mmtensor.algebra import MultiPoly
from mmtensor.compose import tensor
from mmtensor.errors import NotTight, SingularClass
from mmtensor.fixtures import example_z1_tensor_left, example_z2_tensor_right, example_za, example_zb
from mmtensor.gen import random_tensor_pair
from mmtensor.multimatroid import Multimatroid, SkewClass
from mmtensor.transition import (brylawski_check, brylawski_rhs, linear_system_check, phi_map,
                                 q_poly, slack_sums, weight_var)

from golden import Q_Z1, Q_Z2_E1, Q_Z2_E2, Y1, Y2, ZA_UV0, beta_poly, tensor_poly
from oracles import transition_value


def uv0(Z):
    kind = {"dot": "u", "bar": "v", "hat": 0}
    return {e: kind[e.rsplit("_", 1)[1]] for e in Z.carrier.elems}


def test_za_specialisation():
    Z = example_za()
    assert q_poly(Z, uv0(Z)).to_text() == ZA_UV0


def test_za_term_counts():
    Z = example_za()
    q = q_poly(Z)
    assert len(q) == 27
    # 16 bases, one transversal of nullity two, the other ten of nullity one
    assert q_poly(Z, {e: 1 for e in Z.carrier.elems}) == MultiPoly.parse("16 + 10 * t + t^2")


def test_worked_tensor_polynomials():
    Z1, Z2 = example_z1_tensor_left(), example_z2_tensor_right()
    assert q_poly(Z1).to_text() == Q_Z1
    assert q_poly(Z2.minor("e1")) == beta_poly(Q_Z2_E1)
    assert q_poly(Z2.minor("e2")) == beta_poly(Q_Z2_E2)
    assert slack_sums(Z2, "e") == [beta_poly(Y1), beta_poly(Y2)]
    Z, _ = tensor(Z1, Z2, "e")
    assert q_poly(Z) == tensor_poly()
    assert brylawski_rhs(Z1, Z2, "e") == tensor_poly()


def test_phi_images():
    phi = phi_map(example_z1_tensor_left(), example_z2_tensor_right(), "e")
    assert set(phi) == {weight_var(a) for a in ("alpha11", "alpha12", "alpha21", "alpha22")}
    assert phi["x.alpha22"] == MultiPoly.parse("x.beta12@alpha2 * x.beta22@alpha2")


def test_t_value_substitution():
    Z = example_za()
    assert q_poly(Z, uv0(Z), t_value=1) == MultiPoly.parse("u^3 + 3 * u * v^2 + 3 * u^2 * v + v^3")
    assert q_poly(Z, {e: 1 for e in Z.carrier.elems}, t_value=0) == 16


@pytest.mark.parametrize("make", [example_za, example_zb, example_z1_tensor_left,
                                  example_z2_tensor_right])
def test_numeric_value_matches_oracle(make):
    Z = make()
    rng = random.Random(5)
    w = {e: Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for e in Z.carrier.elems}
    t = Fraction(3, 2)
    classes = [c.elems for c in Z.carrier.classes]
    assert q_poly(Z, w, t_value=t) == transition_value(classes, Z.bases, w, t)


def test_slack_sums_total_is_near_transversal_sum():
    Z = example_za()
    ys = slack_sums(Z, "a", {e: 1 for e in Z.carrier.elems})
    assert len(ys) == 3
    assert sum(y.evaluate({"t": 1}) for y in ys) == len(Z.near_transversals("a"))


@pytest.mark.parametrize("make,cls", [(example_za, "a"), (example_za, "c"), (example_zb, "e"),
                                      (example_z2_tensor_right, "e"),
                                      (example_z1_tensor_left, "alpha1")])
def test_linear_system(make, cls):
    assert linear_system_check(make(), cls)


def test_slack_sums_hypotheses():
    loose = Multimatroid.from_bases([SkewClass("e", ("e1", "e2")), SkewClass("f", ("f1", "f2"))],
                                    [["e1", "f1"], ["e2", "f2"], ["e1", "f2"], ["e2", "f1"]])
    with pytest.raises(NotTight):
        slack_sums(loose, "e")
    single = Multimatroid.from_bases([SkewClass("e", ("e1", "e2")), SkewClass("f", ("f1", "f2"))],
                                     [["e1", "f1"]])
    with pytest.raises(SingularClass):
        slack_sums(single, "f")


def test_brylawski_check_reports_difference():
    ok, lhs, rhs, diff = brylawski_check(example_z1_tensor_left(), example_z2_tensor_right(), "e")
    assert ok and diff is None and lhs == rhs


@settings(max_examples=25)
@given(st.integers(0, 100_000))
def test_tensor_identity_random(seed):
    p = random_tensor_pair(random.Random(seed))
    ok, *_ = brylawski_check(p["left"], p["right"], p["class"])
    assert ok
    assert linear_system_check(p["right"], p["class"])
