import json
import math
import re
from fractions import Fraction as F

import numpy as np
import pytest

from sl2classes.ids import NEG_I, P_MP, P_PM, P_PP, I, Elliptic, Hyperbolic
from sl2classes.matrix_core import classify, Mat2
from sl2classes.mc_oracle import (
    common_eigenvector,
    common_eigenvector_exclusion_check,
    phi_homomorphism_check,
    predicted_trace_interval,
    probe_targets,
    trace_formula_check,
    trace_range_check,
    verify_product,
    witness_search,
)
from sl2classes.notation import parse_notation as P
from sl2classes.product_engine import product_n

E = lambda a: Elliptic(F(a))  # noqa: E731


def test_parabolic_cube_is_sound_and_covered():
    rep = verify_product([P_PP] * 3, P("{I}^c"), 10**5, 7)
    assert rep.sound and rep.covered
    assert rep.rejection_rate < 1e-3


def test_half_turn_square():
    rep = verify_product([E("1/2")] * 2, P("-I | C4-"), 10**5, 7)
    assert rep.ok
    found = {t["target"] for t in rep.coverage_targets if t["found"]}
    assert {"-I", "C4[-2]"} <= found


def test_single_factor_is_trivially_sound():
    rep = verify_product([E("1/3")], P("C3[1/3]"), 10**3, 1)
    assert rep.ok and rep.trials == 10**3


def test_wrong_prediction_is_caught():
    rep = verify_product([P_PP] * 3, P("{I,-I}^c & C3]0,1["), 10**3, 0, coverage=False)
    assert not rep.sound
    rep = verify_product([E("1/2")] * 2, P("C3<[1,2]>"), 10**3, 0)
    assert not rep.covered


def test_reports_are_reproducible():
    a = verify_product([E("1/3"), P_PM], product_n([E("1/3"), P_PM]), 2000, 5)
    b = verify_product([E("1/3"), P_PM], product_n([E("1/3"), P_PM]), 2000, 5)
    assert a.to_json() == b.to_json()
    assert list(json.loads(a.to_json())) == [
        "query", "predicted", "trials", "seed", "rejections", "violations",
        "coverage_targets", "trace_envelope",
    ]


def test_summary_line():
    rep = verify_product([P_PP, P_PP], product_n([P_PP, P_PP]), 500, 0)
    assert re.fullmatch(r"C2\[\+\+\] \* C2\[\+\+\] \| 500 \| 0 \| coverage \d+/\d+ \| trace \[.*,.*\]",
                        rep.summary())


def test_probe_targets_are_members():
    x = P("(I | C3[0,1/3[)^c")
    targets = probe_targets(x)
    assert NEG_I in targets and I not in targets
    assert all(t in x for t in targets)


@pytest.mark.parametrize("x,y", [
    (E("1/3"), E("1/3")),
    (P_PP, P_PM),
    (E("1/4"), P_PP),
    (E("1/4"), P_PM),
    (P_PP, P_PP),
    (Hyperbolic(2), E("1/3")),
])
def test_trace_envelopes(x, y):
    res = trace_range_check(x, y, 10**5, 0)
    assert res.verdict, res.notes


def test_trace_envelope_values():
    iv = predicted_trace_interval(E("1/3"), E("1/3"))
    assert iv.hi == pytest.approx(-1.0) and iv.hi_closed
    res = trace_range_check(E("1/3"), E("1/3"), 10**5, 0)
    assert abs(res.observed[1] + 1) <= 1e-3 and res.observed[1] <= -1 + 1e-9
    res = trace_range_check(P_PP, P_PM, 10**5, 0)
    assert res.attained and abs(res.observed[0] - 2) <= 1e-3


def test_trace_formula():
    assert trace_formula_check(F(1, 2), F(1, 2), 10**4) <= 1e-9
    assert trace_formula_check(F(1, 3), F(1, 6), 10**4) <= 1e-9
    # with a tiny conjugator the off-diagonal term vanishes
    assert trace_formula_check(F(1, 3), F(1, 6), 100, spread=0.0) <= 1e-12


def test_phi_homomorphism():
    hom, res = phi_homomorphism_check(10**4)
    assert hom <= 1e-12 and res <= 1e-12


def test_common_eigenvector_examples():
    a = np.array([[1.0, 0.0], [1.0, 1.0]])
    assert common_eigenvector(a, a)
    b = np.array([[1.0, 1.0], [0.0, 1.0]])
    assert not common_eigenvector(a, b)
    assert abs(np.trace(a @ b) - 3) < 1e-15
    assert isinstance(classify(Mat2.from_array(a @ b)), Hyperbolic)
    r = np.array([[0.5, -math.sqrt(3) / 2], [math.sqrt(3) / 2, 0.5]])
    d = np.diag([2.0, 0.5])
    assert not common_eigenvector(r, d)
    assert classify(Mat2.from_array(r @ d)) in P("C3<[0,1]>")


def test_exclusion_check():
    res = common_eigenvector_exclusion_check(2000, 0)
    assert res.ok, res.violations[:3]
    assert res.checked > 0


def test_witness_search_needs_structure():
    # P++ in P++^3 only occurs with a common eigenvector
    w = witness_search([P_PP] * 3, P_PP, 10**4, 0)
    assert w.found
    prod = np.eye(2)
    for f in w.factors:
        prod = prod @ np.array(f).reshape(2, 2)
    # entries can be large, so check the class by trace and orientation only
    assert abs(np.trace(prod) - 2) <= 1e-6 * np.abs(prod).max()
    assert prod[1, 0] - prod[0, 1] > 0


def test_parabolic_triple_stays_in_lower_half():
    # samples of P++ P++ P+- never land on rotations in ]1,2[
    q = [P_PP, P_PP, P_PM]
    rep = verify_product(q, P("(-I | C3[1,2[)^c"), 2 * 10**5, 3, coverage=False)
    assert rep.sound


def test_parabolic_quadruple_minus_identity_witness():
    # -I lies in P++ P++ P+- C3[1/4]; I does not
    assert witness_search([P_PP, P_PP, P_PM, E("1/4")], NEG_I, 10**5, 0).found
    assert product_n([P_PP, P_PP, P_PM, E("1/4")]) == P("{I}^c")
    assert witness_search([P_PP, P_PM, P_PM, E("1/4")], I, 10**5, 0).found
    assert witness_search([P_PM, P_PM, E("1/4"), E("1/3")], I, 10**5, 0).found


def test_negative_parabolic_witness():
    assert witness_search([E("1/3"), E("2/3")], P_MP, 10**4, 0).found
