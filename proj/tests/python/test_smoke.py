"""Smoke tests for the python module: known exact values, no heavy sweeps."""

import json

import pytest

dl = pytest.importorskip("distortion_lab")


def test_plurality_and_mechanism1():
    rankings = [[0, 1, 2], [0, 1, 2], [1, 0, 2]]
    assert dl.plurality_winner(rankings) == 0
    assert dl.mechanism1(rankings, ["1/2", "1/2", "1/2"]) == 0
    # A stronger predicted first-place welfare flips the winner.
    assert dl.mechanism1([[0, 1], [1, 0]], ["1/2", "3/4"]) == 1


def test_mechanism2_reduces_to_mechanism1_at_lambda_one():
    rankings = [[0, 1, 2], [1, 2, 0], [1, 0, 2], [2, 1, 0]]
    tops = ["1/2", "1/3", "1/2", "5/6"]
    result = dl.mechanism2(rankings, tops, "1")
    assert result["winner"] == dl.mechanism1(rankings, tops)


def test_shortlist_contents_on_tradeoff_values():
    # Derived first-place welfare (5/2 vs 25/4) keeps only the stronger block.
    gen = dl.generate("tradeoff_lb", m=5, lambda_="1")
    assert gen["expected"]["predicted_sw_a"] == "35/2"
    instance = json.loads(gen["instance"])
    assert instance["n"] == 60


def test_matching_round_trip():
    identity = [["1/1", "0/1"], ["0/1", "1/1"]]
    result = dl.max_weight_matching(identity)
    assert result["item_of"] == [0, 1]
    assert result["welfare"] == "2/1"

    mech = dl.mechanism_full([[0, 1], [1, 0]], [["3/4", "1/4"], ["1/4", "3/4"]])
    assert mech["item_of"] == [0, 1]
    assert mech["top_matched_agent"] == 0


def test_mechanism3_disjoint_tops():
    rankings = [[0, 1, 2], [1, 2, 0], [2, 0, 1]]
    truncated = [["1/2"], ["1/2"], ["1/2"]]
    result = dl.mechanism3(rankings, 1, truncated)
    assert result["item_of"] == [0, 1, 2]


def test_worst_ratio_known_value():
    report = dl.worst_ratio_voting([[0, 1], [1, 0]], 0)
    assert report["ratio"] == "3/1"
    assert report["witness_best"] == 1
    assert report["witness_truth"] == [["1/2", "1/2"], ["0/1", "1/1"]]


def test_hybrid_generator_table():
    gen = dl.generate("hybrid_lb", n=8, m=5, k=2)
    assert gen["expected"]["predicted_ratio"] == "4/7"
    instance = json.loads(gen["instance"])
    assert instance["rankings"][0] == [0, 3, 2, 4, 1]
    truth = json.loads(gen["adversarial_truths"]["geometric_topk"])
    assert truth["truth"][0][4] == "0/1"


def test_validation_reports_are_data():
    violations = dl.validate_profile([[0, 1]], [["1/2", "1/3"]])
    assert len(violations) == 1
    assert "row-sum" in violations[0]
