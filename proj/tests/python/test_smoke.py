import math

import pytest

import discpack


def test_constants():
    assert discpack.delta1() == pytest.approx(math.pi / (2 * math.sqrt(3)), abs=1e-15)
    assert discpack.r_blind() == pytest.approx(0.74299, abs=1e-5)
    assert discpack.florian_bound(1.0) == pytest.approx(discpack.delta1(), abs=1e-12)


def test_ratios():
    rows = discpack.ratios(1e-12)
    assert len(rows) == 12
    r3 = next(row for row in rows if row["name"] == "r3")
    assert r3["hi"] - r3["lo"] <= 1e-12
    assert abs(r3["lo"] - 0.5332964167) <= 1e-9


def test_flow():
    density, domain = discpack.eval_flow("flow-841-mid", 0.5)
    assert density == pytest.approx(discpack.closed_form_841(0.5), abs=1e-12)
    assert len(domain["discs"]) == 4
    with pytest.raises(discpack.DomainError):
        discpack.eval_flow("flow-841-mid", 0.9)
    with pytest.raises(discpack.FormatError):
        discpack.eval_flow("no-such-recipe", 0.5)


def test_lower_bound():
    rows = discpack.lower_bound([0.1, 0.42, 0.9], discpack.builtin_recipes())
    assert rows[0][1] > discpack.delta1()
    assert rows[1][2] == "flow-841-mid"
    assert rows[2][1] == discpack.delta1()


def test_certify_and_sweep():
    trace = discpack.certify("blind", 0.743, 0.99)
    assert trace["status"] == "success"
    failed = discpack.certify("blind", 0.70, 0.72)
    assert failed["status"] == "depth_exceeded"
    d = discpack.find_delta("threshold:0.92", 0.5, 0.6)
    assert 0.92 <= d <= 0.9201
    samples, failures = discpack.sweep("blind", [0.5, 0.8])
    assert failures == [0.5]
    assert discpack.lipschitz_envelope(samples, 0.8) == samples[0][1]
    value, source = discpack.best_upper(0.3)
    assert source == "florian"
    assert value == discpack.florian_bound(0.3)
