"""Smoke tests for the Python module: parse, compute, validate, generate."""

import pytest

import fuzzybisim as fb

SAMPLE = """\
v a
v b
v c
v d
v e
v f
v g
e a r c 1
e a r d 0.7
e a r e 1
e b r e 1
e b r f 1
e b r g 0.6
e c r a 1
e f r a 1
e g r b 1
"""


@pytest.fixture
def sample():
    return fb.FuzzyGraph.parse(SAMPLE)


def test_graph_properties(sample):
    assert sample.vertex_count == 7
    assert sample.edge_count == 9
    assert sample.labels == ["r"]
    assert sample.vertices == list("abcdefg")
    assert sample.distinct_degree_count == 3
    assert str(sample.degree_between("a", "r", "d")) == "0.7"
    assert str(sample.degree_between("d", "r", "a")) == "0"
    assert fb.FuzzyGraph.parse(sample.serialize()).serialize() == sample.serialize()


def test_plain_partition(sample):
    assert fb.compute(sample) == [["a", "b"], ["c", "f", "g"], ["d", "e"]]
    assert fb.initial_partition(sample) == [["a", "b", "c", "f", "g"], ["d", "e"]]


def test_counting_partition(sample):
    assert fb.compute(sample, counting=True) == [
        ["a"], ["b"], ["c", "f"], ["d", "e"], ["g"],
    ]


def test_stats(sample):
    blocks, stats = fb.compute_with_stats(sample)
    assert blocks == fb.compute(sample)
    assert stats["blocks"] == 3
    assert stats["split_calls"] == 2
    assert stats["max_split_participation"] >= 1


def test_definition_checks(sample):
    plain = fb.compute(sample)
    pairs = [(x, y) for block in plain for x in block for y in block]
    assert fb.is_bisimulation(sample, pairs)
    assert fb.is_stable(sample, plain)
    counting = fb.compute(sample, counting=True)
    assert fb.is_stable(sample, counting, counting=True)
    assert fb.refines(sample, counting, plain)
    assert not fb.is_stable(sample, [list("abcdefg")])


def test_degree_helpers(sample):
    assert str(fb.sup_degree(sample, "a", "r", ["c", "d"])) == "1"
    assert str(fb.sup_degree(sample, "a", "r", ["d"])) == "0.7"
    assert fb.count_at_degree(sample, "a", "r", "1", ["c", "d", "e"]) == 2
    assert fb.count_at_degree(sample, "a", "r", fb.Degree("0.7"), ["d"]) == 1


def test_degree_type():
    assert fb.Degree("0.500") == fb.Degree("0.5")
    assert fb.Degree("0.25") < fb.Degree("1")
    assert fb.Degree("0.25").scaled == 250_000_000
    assert repr(fb.Degree("0.1")) == "Degree('0.1')"
    with pytest.raises(ValueError):
        fb.Degree("1.5")
    with pytest.raises(ValueError):
        fb.Degree("abc")


def test_errors(sample):
    with pytest.raises(RuntimeError, match="line 1"):
        fb.FuzzyGraph.parse("x nonsense\n")
    with pytest.raises(ValueError, match="unknown vertex"):
        fb.sup_degree(sample, "zz", "r", ["a"])
    with pytest.raises(ValueError, match="unknown edge label"):
        fb.sup_degree(sample, "a", "s", ["a"])


def test_random_graph_matches_oracle():
    for seed in range(10):
        g = fb.random_graph(8, 20, 4, 2, seed=seed)
        assert g.vertex_count == 8
        assert fb.compute(g) == fb.naive_partition(g)
        assert fb.compute(g, counting=True) == fb.naive_partition(g, counting=True)
        assert fb.refines(g, fb.compute(g, counting=True), fb.compute(g))


def test_random_graph_deterministic():
    a = fb.random_graph(9, 25, 3, 2, seed=123)
    b = fb.random_graph(9, 25, 3, 2, seed=123)
    assert a.serialize() == b.serialize()
    assert a.serialize() != fb.random_graph(9, 25, 3, 2, seed=124).serialize()
