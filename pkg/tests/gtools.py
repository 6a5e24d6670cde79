"""Small shared helpers for building test groups."""

from csection.catalog import build_group, named_spec, product_spec
from csection.groups import PermGroup
from csection.perms import parse_cycle_lists


def named(name, *params):
    return build_group(named_spec(name, *params))


def product(name_a, params_a, name_b, params_b):
    return build_group(product_spec(name_a, params_a, name_b, params_b))


def from_cycles(degree, cycle_lists):
    """Group from 1-indexed cycle notation."""
    return PermGroup(degree, parse_cycle_lists(degree, cycle_lists))


def elements_of(G):
    return [p.images for p in G.elements()]


def quaternion():
    """Q8 in its regular representation: i and j as degree-8 permutations."""
    return from_cycles(8, [
        [[1, 3, 2, 4], [5, 8, 6, 7]],
        [[1, 5, 2, 6], [3, 7, 4, 8]],
    ])
