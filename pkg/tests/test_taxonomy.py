import itertools

import pytest

from trajscope.taxonomy import (Combination, CombinationError, PARENT,
                                TaxonomyNode, combination_from_slug, family,
                                valid_combinations, validate_combination)


def test_exactly_seven_combinations():
    assert len(valid_combinations()) == 7


def test_contains_curvature_indentation():
    slugs = {c.slug for c in valid_combinations()}
    assert "curvature-indentation" in slugs


def test_kinematic_speed_rejected():
    with pytest.raises(CombinationError):
        validate_combination(TaxonomyNode.KINEMATIC, TaxonomyNode.SPEED)


def test_self_pair_rejected():
    with pytest.raises(CombinationError):
        validate_combination(TaxonomyNode.SPEED, TaxonomyNode.SPEED)


def test_root_with_other_roots_child_rejected():
    with pytest.raises(CombinationError):
        validate_combination(TaxonomyNode.GEOMETRIC, TaxonomyNode.SPEED)
    with pytest.raises(CombinationError):
        validate_combination(TaxonomyNode.KINEMATIC, TaxonomyNode.CURVATURE)


def test_root_pair_axis_assignment():
    combo = validate_combination(TaxonomyNode.GEOMETRIC, TaxonomyNode.KINEMATIC)
    assert combo.x_node is TaxonomyNode.KINEMATIC
    assert combo.y_node is TaxonomyNode.GEOMETRIC


def test_cross_family_axis_assignment():
    combo = validate_combination(TaxonomyNode.ACCELERATION, TaxonomyNode.CURVATURE)
    assert combo.x_node is TaxonomyNode.ACCELERATION
    assert combo.y_node is TaxonomyNode.CURVATURE
    combo = validate_combination(TaxonomyNode.SPEED, TaxonomyNode.CURVATURE)
    assert combo.x_node is TaxonomyNode.SPEED
    assert combo.y_node is TaxonomyNode.CURVATURE


def test_same_family_alphabetical_x():
    combo = validate_combination(TaxonomyNode.SPEED, TaxonomyNode.ACCELERATION)
    assert combo.x_node is TaxonomyNode.ACCELERATION
    assert combo.y_node is TaxonomyNode.SPEED
    combo = validate_combination(TaxonomyNode.INDENTATION, TaxonomyNode.CURVATURE)
    assert combo.x_node is TaxonomyNode.CURVATURE
    assert combo.y_node is TaxonomyNode.INDENTATION


def test_order_of_arguments_is_irrelevant():
    ab = validate_combination(TaxonomyNode.GEOMETRIC, TaxonomyNode.KINEMATIC)
    ba = validate_combination(TaxonomyNode.KINEMATIC, TaxonomyNode.GEOMETRIC)
    assert ab == ba


def test_combinatorial_regeneration_matches_hardcoded_list():
    """Valid pairs = all unordered pairs minus self, parent-child, and
    root-with-other-root's-child pairs."""
    regenerated = set()
    for a, b in itertools.combinations(TaxonomyNode, 2):
        if PARENT[a] is b or PARENT[b] is a:
            continue
        if (PARENT[a] is None) != (PARENT[b] is None):
            continue
        regenerated.add(frozenset((a, b)))
    hardcoded = {frozenset(c.nodes()) for c in valid_combinations()}
    assert regenerated == hardcoded
    assert len(hardcoded) == 7


def test_slug_round_trip():
    for combo in valid_combinations():
        assert combination_from_slug(combo.slug) == combo


def test_slug_rejects_invalid():
    with pytest.raises(CombinationError):
        combination_from_slug("kinematic-speed")
    with pytest.raises(CombinationError):
        combination_from_slug("banana-speed")
    with pytest.raises(CombinationError):
        combination_from_slug("speed")


def test_family_helper():
    assert family(TaxonomyNode.SPEED) is TaxonomyNode.KINEMATIC
    assert family(TaxonomyNode.GEOMETRIC) is TaxonomyNode.GEOMETRIC


def test_slug_is_alphabetical():
    assert Combination(TaxonomyNode.KINEMATIC, TaxonomyNode.GEOMETRIC).slug == "geometric-kinematic"
