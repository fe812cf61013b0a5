"""Shared helpers: independent brute-force oracles and random corpora."""

from __future__ import annotations

import itertools
import random

import pytest

from choresched.core import Instance, Schedule, is_feasible
from choresched.checkers import is_maximal


def naive_enumerate_maximal(instance: Instance) -> list[Schedule]:
    """Second, unpruned enumerator used only to cross-check the real one.

    Walks the full (n+1)^m assignment space and filters.
    """
    graph = instance.graph()
    out = []
    options = list(range(instance.n)) + [None]
    for combo in itertools.product(options, repeat=instance.m):
        schedule = Schedule(instance.n, combo)
        if is_feasible(schedule, graph) and is_maximal(schedule, graph):
            out.append(schedule)
    return out


def random_feasible_schedule(rng: random.Random, instance: Instance) -> Schedule:
    """A random feasible (not necessarily maximal) schedule."""
    graph = instance.graph()
    assignment: list[int | None] = [None] * instance.m
    masks = [0] * instance.n
    for c in range(instance.m):
        options = [None] + [
            a for a in range(instance.n) if not graph.neighbor_masks[c] & masks[a]
        ]
        pick = rng.choice(options)
        assignment[c] = pick
        if pick is not None:
            masks[pick] |= 1 << c
    return Schedule(instance.n, tuple(assignment))


@pytest.fixture(scope="session")
def rng_factory():
    def make(seed: int) -> random.Random:
        return random.Random(seed)

    return make
