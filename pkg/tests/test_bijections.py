"""Roundtrip and counting tests for the three diagram bijections."""

import pytest

from chordlab.bijections import (
    RootShareTriple,
    TreeSeed,
    all_seeds,
    nabla,
    nabla_inv,
    parse_ztree,
    phi,
    phi_inv,
    serialize_ztree,
    theta,
    theta_inv,
)
from chordlab.chord import ChordDiagram, enumerate_diagrams
from chordlab.gfseries import connected_counts, stack_tree_series

CROSSING = ChordDiagram.from_literal("2: 3 4 1 2")
NESTED = ChordDiagram.from_literal("2: 4 3 2 1")
SINGLE = ChordDiagram.from_literal("1: 2 1")


def connected_diagrams(n):
    return (d for d in enumerate_diagrams(n) if d.is_connected())


def test_phi_crossing_to_nested():
    assert phi(CROSSING) == NESTED
    assert phi_inv(NESTED) == CROSSING


def test_phi_preconditions():
    with pytest.raises(ValueError):
        phi(SINGLE)
    with pytest.raises(ValueError):
        phi(ChordDiagram.from_literal("2: 2 1 4 3"))
    with pytest.raises(ValueError):
        phi_inv(CROSSING)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_phi_roundtrip_exhaustive(n):
    for d in connected_diagrams(n):
        image = phi(d)
        assert image.n == d.n
        assert phi_inv(image) == d


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_phi_image_is_exactly_two_component_indecomposables(n):
    images = {phi(d) for d in connected_diagrams(n)}
    target = {
        d
        for d in enumerate_diagrams(n)
        if d.is_indecomposable() and len(d.components()) == 2
    }
    assert images == target
    # sizes follow C(x) - x: 1, 4, 27, 248 at n = 2..5
    assert len(images) == connected_counts(n)[n]


def test_nabla_two_chords():
    triple = nabla(CROSSING)
    assert triple == RootShareTriple(SINGLE, SINGLE, 1)
    assert nabla_inv(triple) == CROSSING


def test_nabla_rejects_bad_triples():
    with pytest.raises(ValueError):
        RootShareTriple(SINGLE, SINGLE, 2)  # last interval is forbidden
    with pytest.raises(ValueError):
        RootShareTriple(NESTED, SINGLE, 1)  # nested pair is not connected
    with pytest.raises(ValueError):
        nabla(NESTED)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_nabla_roundtrip_exhaustive(n):
    for d in connected_diagrams(n):
        t = nabla(d)
        assert t.c1.n + t.c2.n == n
        assert nabla_inv(t) == d


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_nabla_inv_covers_connected(n):
    # sum over triples of sizes: C_n = sum_{a+b=n} C_a C_b (2b-1)
    counts = connected_counts(n)
    assert counts[n] == sum(
        counts[a] * counts[n - a] * (2 * (n - a) - 1) for a in range(1, n)
    )
    rebuilt = set()
    for a in range(1, n):
        b = n - a
        for c1 in connected_diagrams(a):
            for c2 in connected_diagrams(b):
                for k in range(1, 2 * b):
                    rebuilt.add(nabla_inv(RootShareTriple(c1, c2, k)))
    assert rebuilt == set(connected_diagrams(n))


def test_theta_single_chord_seed():
    seed = TreeSeed.from_diagrams(ChordDiagram(()), ChordDiagram(()))
    tree = theta(seed)
    assert tree.stack == [0]
    assert tree.structure is None
    assert not tree.children
    assert theta_inv(tree) == seed


def test_theta_stack_absorption():
    seed = TreeSeed.from_diagrams(SINGLE, ChordDiagram(()))
    tree = theta(seed)
    assert tree.stack == [0, 1]
    assert serialize_ztree(tree) == "(0.1;-;)"
    assert theta_inv(tree) == seed


def test_theta_right_child():
    seed = TreeSeed.from_diagrams(ChordDiagram(()), SINGLE)
    tree = theta(seed)
    assert tree.stack == [0]
    assert tree.structure is not None
    assert tree.structure.diagram == SINGLE
    assert serialize_ztree(tree) == "(0;1: 2 1;(1;-;))"
    assert theta_inv(tree) == seed


@pytest.mark.parametrize("total", [1, 2, 3, 4, 5])
def test_theta_roundtrip_exhaustive(total):
    for seed in all_seeds(total):
        tree = theta(seed)
        tree.validate()
        assert tree.size() == total
        assert theta_inv(tree) == seed


@pytest.mark.parametrize("total", [1, 2, 3, 4, 5, 6, 7])
def test_theta_image_count_matches_series(total):
    z = stack_tree_series(total)
    images = {serialize_ztree(theta(seed)) for seed in all_seeds(total)}
    assert len(images) == z[total]


def test_theta_structures_have_at_most_two_components():
    for seed in all_seeds(5):
        tree = theta(seed)
        stack = [tree]
        while stack:
            v = stack.pop()
            if v.structure is not None:
                assert len(v.structure.diagram.components()) <= 2
            stack.extend(v.children.values())


def test_serialization_roundtrip():
    for seed in all_seeds(4):
        tree = theta(seed)
        text = serialize_ztree(tree)
        again = parse_ztree(text)
        assert serialize_ztree(again) == text
        assert theta_inv(again) == seed


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        parse_ztree("(1;-;) trailing")
    with pytest.raises(ValueError):
        parse_ztree("(1;-;(2;-;))")


def test_labeled_diagram_validation():
    from chordlab.bijections import LabeledDiagram, from_tokens

    with pytest.raises(ValueError):
        LabeledDiagram(CROSSING, (1,))
    with pytest.raises(ValueError):
        LabeledDiagram(CROSSING, (1, 1))
    with pytest.raises(ValueError):
        from_tokens([1, 2, 1])  # label 2 unpaired
    with pytest.raises(ValueError):
        TreeSeed(0, bijections_fresh(SINGLE, 0), bijections_fresh(SINGLE, 1))


def bijections_fresh(d, start):
    from chordlab.bijections import with_fresh_labels

    return with_fresh_labels(d, start=start)


def test_ztree_validate_rejects_malformed():
    from chordlab.bijections import ZTreeVertex, with_fresh_labels

    with pytest.raises(ValueError):
        ZTreeVertex([]).validate()
    leafy = ZTreeVertex([0])
    leafy.children = {1: ZTreeVertex([1])}
    with pytest.raises(ValueError):
        leafy.validate()
    mismatched = ZTreeVertex([0], with_fresh_labels(SINGLE, start=5), {})
    with pytest.raises(ValueError):
        mismatched.validate()
