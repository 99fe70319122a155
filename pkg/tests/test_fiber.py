import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from strata.components import EmptyStratum, find_component, list_components
from strata.fiber import (
    H0Basis,
    ImageDimResult,
    ImageStatus,
    Undetermined,
    generic_fiber_dimension,
    generic_h0,
    image_dimension,
)
from strata.stratum import GenusTooSmall, MarkingSet, Stratum, expected_image_dimension, stratum_dimension
from strata.sweep import SPORADIC
from strata.witness import HyperellipticComponent, brute_force_witness


def irr():
    return find_component(Stratum(2, 4, (3, 3, 3, 3)), "irr")


def test_h0_examples():
    assert generic_h0(irr(), {1, 2, 3, 4}).value == 2
    v = generic_h0(find_component(Stratum(1, 3, (5, 1, -2))), {1, 2, 3})
    assert v.value == 1 and v.basis is H0Basis.WITNESS
    # n = g + 2
    c = find_component(Stratum(1, 2, (3, 1, 1, -1, -2)))
    v = generic_h0(c, MarkingSet.full(5))
    assert v.value == 4 and v.basis is H0Basis.RIEMANN_ROCH


def test_fiber_dimension_examples():
    assert generic_fiber_dimension(find_component(Stratum(1, 2, (3, 1, -2))), {1, 2}) == 0
    assert generic_fiber_dimension(irr(), {1, 2, 3, 4}) == 1
    q = list_components(Stratum(2, 2, (2, 1, 1)))[0]
    assert generic_fiber_dimension(q, {2, 3}) == 1


def test_image_dimension_examples():
    r = image_dimension(find_component(Stratum(1, 3, (4, 3, -3))))
    assert (r.dim, r.status) == (6, ImageStatus.EXPECTED)
    assert image_dimension(irr()).to_json() == {"dim": 8, "status": "Exceptional", "h0": 2}
    reg = find_component(Stratum(2, 4, (3, 3, 3, 3)), "reg")
    assert (image_dimension(reg).dim, image_dimension(reg).status) == (9, ImageStatus.EXPECTED)


@pytest.mark.parametrize("g,mu", SPORADIC)
def test_sporadic_rulings(g, mu):
    s = Stratum(2, g, mu)
    for c in list_components(s):
        r = image_dimension(c)
        if c.is_hyperelliptic:
            assert r.status is ImageStatus.HYPERELLIPTIC
        elif mu == (3, 3, 3, 3) and c.label.kind.value == "irreducible":
            assert r.dim == 8
        else:
            assert r.dim == expected_image_dimension(s)


def test_case_analysis_values():
    for c in list_components(Stratum(2, 3, (6, 3, -1))):
        assert image_dimension(c).dim == 6
    for c in list_components(Stratum(2, 3, (3, 3, 3, -1))):
        assert image_dimension(c).dim == 6
    for c in list_components(Stratum(2, 4, (6, 3, 3))):
        if not c.is_hyperelliptic:
            assert image_dimension(c).dim == 8


def test_statuses_and_errors():
    hol = find_component(Stratum(1, 3, (3, 1)))
    assert image_dimension(hol) == ImageDimResult(6, ImageStatus.EXPECTED)
    hyp = find_component(Stratum(1, 2, (2, 2, -1, -1)), "hyp")
    assert image_dimension(hyp).status is ImageStatus.HYPERELLIPTIC
    with pytest.raises(GenusTooSmall):
        image_dimension(find_component(Stratum(2, 1, (1, 1, -1, -1))))
    hyp3 = find_component(Stratum(1, 3, (5, 5, -3, -3)), "hyp")
    with pytest.raises(HyperellipticComponent):
        generic_h0(hyp3, {1, 2})
    even = find_component(Stratum(1, 3, (2, 2, 2, -1, -1)), "even")
    with pytest.raises(Undetermined):
        generic_h0(even, {1, 2, 3})
    with pytest.raises(Undetermined):
        generic_h0(find_component(Stratum(2, 4, (3, 3, 3, 3)), "reg"), {1, 2})


def test_oracle_as_engine():
    c = find_component(Stratum(1, 3, (5, 1, -2)))
    assert generic_h0(c, {1, 2, 3}, witness_engine=brute_force_witness).value == 1


meromorphic = st.tuples(st.integers(2, 4), st.lists(st.integers(-5, 6).filter(bool), min_size=1, max_size=4))


@settings(max_examples=80, deadline=None, suppress_health_check=[HealthCheck.filter_too_much])
@given(meromorphic)
def test_theorem_formula_and_riemann_roch(data):
    g, head = data
    last = 2 * g - 2 - sum(head)
    if last >= -1 or last < -8:
        return
    s = Stratum(1, g, tuple(head) + (last,))
    try:
        comps = list_components(s)
    except EmptyStratum:
        return
    for c in comps:
        if c.is_hyperelliptic:
            continue
        r = image_dimension(c)
        assert r.dim == min(2 * g - 3 + s.n, 3 * g - 3) == expected_image_dimension(s)
        assert r.dim <= stratum_dimension(s)
        assert generic_fiber_dimension(c, MarkingSet.full(s.n)) == max(0, s.n - g)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 4), st.integers(0, 2**16))
def test_h0_monotone(g, seed):
    import random

    rng = random.Random(seed)
    mu = (2 * g + 1, 1, -2, -2)
    c = find_component(Stratum(1, g, mu))
    A = set(rng.sample(range(1, 5), rng.randint(0, 4)))
    sub = {i for i in A if rng.random() < 0.5}
    assert generic_h0(c, sub).value <= generic_h0(c, A).value
