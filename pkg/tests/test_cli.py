"""End-to-end command-line behavior through the in-process entry point."""

import json

import pytest

from markov_mutator.cli import run


def invoke(capsys, *argv):
    code = run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def invoke_json(capsys, *argv):
    code, out, err = invoke(capsys, *argv, "--json")
    assert code == 0, err
    return json.loads(out)


# classify


def test_classify_fixed_point_matrix(capsys):
    code, out, err = invoke(capsys, "classify", "4 1 2 / 1 4 2")
    assert code == 0
    assert "cyclicity: positive-cyclic" in out
    assert "decision: cluster_cyclic" in out
    assert "markov: 4" in out
    assert "fixed point: yes" in out


def test_classify_matrix_json(capsys):
    payload = invoke_json(capsys, "classify", "4 1 2 / 1 4 2")
    assert payload["matrix"] == "4 1 2 / 1 4 2"
    assert payload["cyclicity"] == "positive-cyclic"
    assert payload["decision"] == "cluster_cyclic"
    assert payload["markov"] == 4
    assert payload["products"] == [4, 4, 4]
    assert payload["fixed_point"] is True
    assert payload["caps"]["depth"] == 12
    assert payload["caps"]["entry_bound"] == 10**9


def test_classify_accepts_three_by_three_json(capsys):
    direct = invoke_json(capsys, "classify", "4 1 2 / 1 4 2")
    via_matrix = invoke_json(capsys, "classify", "[[0,-2,1],[2,0,-1],[-4,4,0]]")
    assert via_matrix == direct


def test_classify_acyclic_decision_carries_witness(capsys):
    payload = invoke_json(capsys, "classify", "1 1 1 / 1 1 1")
    assert payload["decision"] == "cluster_acyclic"
    assert payload["violated"] == "product_xx_lt_4"
    assert payload["witness_path"] == [1]
    assert payload["fixed_point"] is False


def test_classify_exact_triple_with_descent(capsys):
    payload = invoke_json(capsys, "classify", "6, 15, 3")
    assert payload["triple"] == "6, 15, 3"
    assert payload["backend"] == "exact"
    # two directions still grow, one strictly shrinks: mid-descent
    assert payload["class"] == "M2"
    assert payload["markov"] == 0
    assert payload["cluster_positive"] is True
    assert payload["ab"]["kind"] == "A"
    assert payload["ab"]["iterations"] == 2
    assert payload["ab"]["representative"] == "3, 3, 3"
    assert payload["ab"]["path"] == [2, 1]
    assert payload["caps"] == {"descent_cap": 10000}


def test_classify_float_triple(capsys):
    payload = invoke_json(capsys, "classify", "3.5, 3.5, 2.0")
    assert payload["backend"] == "float"
    assert payload["class"] == "M1"
    assert payload["cluster_positive"] is True
    assert payload["ab"]["kind"] == "A"


def test_classify_non_gated_triple_has_no_descent(capsys):
    payload = invoke_json(capsys, "classify", "1, 1, 1")
    assert payload["cluster_positive"] is False
    assert "ab" not in payload


def test_classify_bad_matrix_is_domain_error(capsys):
    code, out, err = invoke(capsys, "classify", "1 2 3 / 4 5 6")
    assert code == 1
    assert err.startswith("error:")


# reduce


def test_reduce_json(capsys):
    payload = invoke_json(capsys, "reduce", "6 3 3 / 6 3 3")
    assert payload == {
        "representative": "3 3 3 / 3 3 3",
        "path": [1],
        "explored": 2,
        "is_minimal_certified": True,
    }


def test_reduce_rejects_non_cluster_cyclic(capsys):
    code, out, err = invoke(capsys, "reduce", "1 1 1 / 1 1 1")
    assert code == 1
    assert "error:" in err


# orbit


def test_orbit_fixed_point(capsys):
    payload = invoke_json(capsys, "orbit", "2 2 2 / 2 2 2", "--depth", "5")
    assert payload["members"] == ["2 2 2 / 2 2 2"]
    assert payload["count"] == 1
    assert payload["pruned"] == 0
    assert payload["caps"] == {"depth": 5, "entry_bound": 10**9}


def test_orbit_human_lines(capsys):
    code, out, err = invoke(capsys, "orbit", "3 3 3 / 3 3 3", "--depth", "3")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "count: 22"
    assert lines[1] == "pruned: 0"
    assert "6 15 3 / 6 15 3" in lines


# enumerate


def test_enumerate_markov_zero_json(capsys):
    payload = invoke_json(capsys, "enumerate", "--markov", "0")
    assert [r["squares"] for r in payload] == [
        [25, 20, 5],
        [18, 12, 6],
        [16, 8, 8],
        [9, 9, 9],
    ]
    assert payload[0] == {
        "p": "5",
        "q": "2*sqrt(5)",
        "r": "sqrt(5)",
        "squares": [25, 20, 5],
        "markov": 0,
    }


def test_enumerate_table_alignment(capsys):
    code, out, err = invoke(capsys, "enumerate", "--markov", "0")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].split() == ["p", "q", "r", "C"]
    assert lines[1].split() == ["5", "2*sqrt(5)", "sqrt(5)", "0"]
    assert lines[4].split() == ["3", "3", "3", "0"]
    # column starts align between header and rows
    assert lines[0].index("q") == lines[1].index("2*sqrt(5)")


def test_enumerate_constant_four_needs_cap(capsys):
    code, out, err = invoke(capsys, "enumerate", "--markov", "4")
    assert code == 1
    assert "p_square_cap" in err


def test_enumerate_constant_four_with_cap(capsys):
    payload = invoke_json(capsys, "enumerate", "--markov", "4", "--p-square-cap", "9")
    assert [r["squares"] for r in payload] == [[a, a, 4] for a in range(4, 10)]


# witness, fixed-points, lift, chebyshev


def test_witness_json(capsys):
    payload = invoke_json(capsys, "witness", "--markov", "-7")
    assert payload == {
        "triple": "2*sqrt(15), 4*sqrt(3), sqrt(5)",
        "markov": -7,
        "lift": "6 4 5 / 10 12 1",
    }


def test_fixed_points_listing(capsys):
    payload = invoke_json(capsys, "fixed-points")
    assert len(payload) == 7
    assert payload[0] == "1 2 4 / 4 2 1"
    assert "2 2 2 / 2 2 2" in payload
    assert payload == sorted(payload)


def test_lift_text_and_json(capsys):
    code, out, err = invoke(capsys, "lift", "5, 2*sqrt(5), sqrt(5)")
    assert code == 0
    assert out.strip() == "5 10 1 / 5 2 5"
    payload = invoke_json(capsys, "lift", "5, 2*sqrt(5), sqrt(5)")
    assert payload == {"triple": "5, 2*sqrt(5), sqrt(5)", "lift": "5 10 1 / 5 2 5"}


def test_lift_rejects_floats(capsys):
    code, out, err = invoke(capsys, "lift", "2.0, 3.0, 6.0")
    assert code == 1
    assert err.startswith("error:")


def test_chebyshev_exact(capsys):
    code, out, err = invoke(capsys, "chebyshev", "5", "2")
    assert code == 0 and out.strip() == "6"
    payload = invoke_json(capsys, "chebyshev", "3", "sqrt(5)")
    assert payload["text"] == "3*sqrt(5)"
    assert payload["u"] == {"sign": 1, "coeff": 3, "radicand": 5}


def test_chebyshev_float(capsys):
    code, out, err = invoke(capsys, "chebyshev", "5", "2.5")
    assert code == 0
    assert float(out.strip()) == pytest.approx(42.65625)


def test_chebyshev_negative_index_seed(capsys):
    code, out, err = invoke(capsys, "chebyshev", "-2", "7")
    assert code == 0 and out.strip() == "-1"


def test_chebyshev_overflow_is_resource_error(capsys):
    code, out, err = invoke(capsys, "chebyshev", "200", "3")
    assert code == 2
    assert err.startswith("error:")


# sweep


def test_sweep_tally(capsys):
    payload = invoke_json(capsys, "sweep", "--max-entry", "3")
    assert payload == {
        "max_entry": 3,
        "total": 93,
        "cluster_cyclic": 17,
        "cluster_acyclic": 76,
    }


def test_sweep_rejects_nonpositive_bound(capsys):
    code, out, err = invoke(capsys, "sweep", "--max-entry", "0")
    assert code == 1


def test_sweep_threaded_matches_sequential(capsys, monkeypatch):
    monkeypatch.delenv("MARKOV_MUTATOR_THREADS", raising=False)
    baseline = invoke_json(capsys, "sweep", "--max-entry", "3")
    monkeypatch.setenv("MARKOV_MUTATOR_THREADS", "4")
    assert invoke_json(capsys, "sweep", "--max-entry", "3") == baseline


# plumbing


def test_output_is_deterministic(capsys):
    first = invoke(capsys, "enumerate", "--markov", "-13", "--json")
    second = invoke(capsys, "enumerate", "--markov", "-13", "--json")
    assert first == second


def test_help_mentions_default_caps(capsys):
    code, out, err = invoke(capsys, "--help")
    assert code == 0
    assert "default caps: breadth-first depth 12" in out


def test_unknown_command_is_usage_error(capsys):
    code, out, err = invoke(capsys, "bogus")
    assert code == 2


def test_missing_required_flag_is_usage_error(capsys):
    code, out, err = invoke(capsys, "enumerate")
    assert code == 2
