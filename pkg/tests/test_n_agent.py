"""Weighted round robin, bundle splits, and the bounded-component solver."""

import random

import pytest

from choresched.checkers import check_ef, check_ef1, is_complete, is_maximal
from choresched.core import (
    AdditiveValuations,
    Chore,
    InputError,
    Instance,
    Schedule,
    build_conflict_graph,
    path_instance,
)
from choresched.generate import (
    random_bounded_components_instance,
    random_dichotomous_path_instance,
)
from choresched.n_agent import (
    bounded_components_solution,
    dichotomous_path_solution,
    envy_graph,
    solve_identical_bounded_components,
    solve_identical_dichotomous_path,
    split_pair_bundle,
    split_triple_bundle,
)
from choresched.oracle import exists, ExistenceQuery


def real_counts(schedule, heavy_ids):
    return [
        (
            sum(1 for c in b if c in heavy_ids),
            sum(1 for c in b if c not in heavy_ids),
        )
        for b in schedule.bundles()
    ]


class TestEnvyGraph:
    def test_equal_bundles_no_edges(self):
        inst = path_instance([[-2, -2]] * 2)
        schedule = Schedule.from_bundles(2, 2, [{0}, {1}])
        assert envy_graph(schedule, inst).edges == frozenset()

    def test_single_edge_from_worse_off(self):
        inst = path_instance([[-3, -1]] * 2)
        schedule = Schedule.from_bundles(2, 2, [{0}, {1}])
        graph = envy_graph(schedule, inst)
        assert graph.edges == frozenset({(0, 1)})
        assert graph.topological_order() == (0, 1)

    def test_identical_profiles_always_acyclic(self):
        from conftest import random_feasible_schedule

        rng = random.Random(5)
        for _ in range(300):
            m = rng.randint(1, 8)
            n = rng.randint(2, 4)
            row = [rng.randint(-9, 0) for _ in range(m)]
            inst = path_instance([row] * n)
            schedule = random_feasible_schedule(rng, inst)
            assert envy_graph(schedule, inst).is_acyclic()


class TestSplitPairBundle:
    def build(self, intervals, heavy, dummies=()):
        chores = tuple(Chore(id=i, start=s, finish=f) for i, (s, f) in enumerate(intervals))
        return build_conflict_graph(chores), set(heavy), frozenset(dummies)

    def test_two_edges_split_across(self):
        # two H-L edges, no isolated chores
        graph, heavy, dummies = self.build(
            [(0, 2), (1, 3), (10, 12), (11, 13)], heavy=[0, 2]
        )
        a, b = split_pair_bundle([0, 1, 2, 3], graph, heavy, dummies)
        for side in (a, b):
            assert sum(1 for c in side if c in heavy) == 1
            assert sum(1 for c in side if c not in heavy) == 1
        assert {0, 1} not in (set(a), set(b))  # edge endpoints separated

    def test_four_isolated_chores(self):
        graph, heavy, dummies = self.build(
            [(0, 1), (3, 4), (6, 7), (9, 10)], heavy=[0, 1]
        )
        a, b = split_pair_bundle([0, 1, 2, 3], graph, heavy, dummies)
        for side in (a, b):
            assert sum(1 for c in side if c in heavy) == 1
            assert len(side) == 2

    def test_one_edge_plus_compensating_isolated(self):
        # odd edge count: the edge's heavy pairs with the isolated light
        graph, heavy, dummies = self.build(
            [(0, 2), (1, 3), (6, 7), (9, 10)], heavy=[0, 2]
        )
        a, b = split_pair_bundle([0, 1, 2, 3], graph, heavy, dummies)
        sides = {frozenset(a), frozenset(b)}
        assert sides == {frozenset({0, 3}), frozenset({1, 2})}

    def test_same_kind_edge_rejected(self):
        graph, heavy, dummies = self.build([(0, 2), (1, 3)], heavy=[0, 1])
        from choresched.core import InternalInvariantError

        with pytest.raises(InternalInvariantError):
            split_pair_bundle([0, 1], graph, heavy, dummies)

    def test_odd_counts_rejected(self):
        graph, heavy, dummies = self.build([(0, 1), (3, 4), (6, 7)], heavy=[0])
        from choresched.core import InternalInvariantError

        with pytest.raises(InternalInvariantError):
            split_pair_bundle([0, 1, 2], graph, heavy, dummies)


class TestSplitTripleBundle:
    def build(self, intervals, heavy, dummies=()):
        chores = tuple(Chore(id=i, start=s, finish=f) for i, (s, f) in enumerate(intervals))
        return build_conflict_graph(chores), set(heavy), frozenset(dummies)

    def test_three_chore_path_goes_to_three_agents(self):
        graph, heavy, dummies = self.build(
            [(0, 2), (1, 3), (2, 4)], heavy=[0, 2]
        )
        # pad with isolated chores so counts are multiples of three
        graph, heavy, dummies = self.build(
            [(0, 2), (1, 3), (2, 4), (10, 11), (13, 14), (16, 17)],
            heavy=[0, 2, 3],
            dummies=[3, 4, 5],
        )
        parts = split_triple_bundle(range(6), graph, heavy, dummies)
        assert {len(p & {0, 1, 2}) for p in parts} == {1}

    def test_four_chore_path_alternating(self):
        # H, L, H, L along the path: someone takes the two non-adjacent ends
        graph, heavy, dummies = self.build(
            [(0, 2), (1, 3), (2, 4), (3, 5), (10, 11), (13, 14)],
            heavy=[0, 2, 4],
            dummies=[4, 5],
        )
        parts = split_triple_bundle(range(6), graph, heavy, dummies)
        path_parts = [p & {0, 1, 2, 3} for p in parts]
        sizes = sorted(len(p) for p in path_parts)
        assert sizes == [1, 1, 2]
        double = next(p for p in path_parts if len(p) == 2)
        assert double in ({0, 3}, {0, 2}, {1, 3})  # non-adjacent positions
        for p, full in zip(path_parts, parts):
            assert sum(1 for c in full if c in heavy) == 1
            assert sum(1 for c in full if c not in heavy) == 1

    def test_isolated_only(self):
        graph, heavy, dummies = self.build(
            [(0, 1), (3, 4), (6, 7), (9, 10), (12, 13), (15, 16)],
            heavy=[0, 1, 2],
        )
        parts = split_triple_bundle(range(6), graph, heavy, dummies)
        for p in parts:
            assert sum(1 for c in p if c in heavy) == 1
            assert len(p) == 2

    def test_oversized_component_rejected(self):
        graph, heavy, dummies = self.build(
            [(0, 2), (1, 3), (2, 4), (3, 5), (4, 6), (20, 21)], heavy=[0, 2, 4]
        )
        from choresched.core import InternalInvariantError

        with pytest.raises(InternalInvariantError):
            split_triple_bundle(range(6), graph, heavy, dummies)


class TestDichotomousPath:
    def test_eight_heavy_chores_two_each(self):
        inst = path_instance([[-5] * 8] * 4)
        schedule = solve_identical_dichotomous_path(inst, allow_uniform=True)
        assert is_complete(schedule)
        assert all(len(schedule.bundle(i)) == 2 for i in range(4))
        assert check_ef(schedule, inst).holds

    def test_empty_instance(self):
        inst = Instance(4, (), AdditiveValuations([[]] * 4))
        schedule = solve_identical_dichotomous_path(inst)
        assert schedule.m == 0
        assert is_complete(schedule)

    def test_distinct_rejections(self):
        with pytest.raises(InputError, match="four agents"):
            solve_identical_dichotomous_path(path_instance([[-1, -2]] * 3))
        chores = tuple(
            Chore(id=i, start=s, finish=f)
            for i, (s, f) in enumerate([(0, 3), (0, 1), (1, 2), (2, 3)])
        )
        star = Instance(4, chores, AdditiveValuations([[-1, -2, -1, -2]] * 4))
        with pytest.raises(InputError, match="path"):
            solve_identical_dichotomous_path(star)
        mixed = path_instance([[-1, -2], [-2, -1], [-1, -2], [-1, -2]])
        with pytest.raises(InputError, match="identical"):
            solve_identical_dichotomous_path(mixed)
        triple_valued = path_instance([[-1, -2, -3]] * 4)
        with pytest.raises(InputError, match="dichotomous"):
            solve_identical_dichotomous_path(triple_valued)
        uniform = path_instance([[-1, -1]] * 4)
        with pytest.raises(InputError, match="dichotomous"):
            solve_identical_dichotomous_path(uniform)
        assert is_complete(solve_identical_dichotomous_path(uniform, allow_uniform=True))

    def test_padded_run_is_envy_free_and_tagged(self):
        rng = random.Random(9)
        inst = random_dichotomous_path_instance(rng, 5, 11)
        sol = dichotomous_path_solution(inst)
        assert check_ef(sol.padded_schedule, sol.padded_instance).holds
        assert all(
            sol.padded_instance.chores[d].label == "dummy" for d in sol.dummy_ids
        )
        # exactly one triple, holding 1.5x the pair counts of each kind
        triples = [s for s in sol.meta_agents if s.is_triple]
        assert len(triples) == 1
        heavy = {
            c
            for c in range(sol.padded_instance.m)
            if sol.padded_instance.valuations.chore_value(0, c) == sol.heavy_value
        }
        per_meta = {
            s.index: sum(1 for c in s.picks if c in heavy) for s in sol.meta_agents
        }
        pair_h = {per_meta[s.index] for s in sol.meta_agents if not s.is_triple}
        assert len(pair_h) == 1
        assert per_meta[triples[0].index] * 2 == 3 * pair_h.pop()

    def test_every_heavy_light_pattern_up_to_ten_chores(self):
        # exhaustive over chore-type patterns: every way of labeling a path
        # of 2..10 chores heavy/light, for an even and an odd agent count
        import itertools

        for n in (4, 5):
            for m in range(2, 11):
                for bits in itertools.product((0, 1), repeat=m):
                    if len(set(bits)) == 1:
                        continue  # needs both values to be dichotomous
                    row = [-7 if b else -2 for b in bits]
                    inst = path_instance([row] * n)
                    sol = dichotomous_path_solution(inst)
                    assert is_complete(sol.schedule)
                    assert check_ef1(sol.schedule, inst).holds
                    assert check_ef(sol.padded_schedule, sol.padded_instance).holds

    def test_random_instances_ef1_complete_balanced(self):
        for n in (4, 5, 6, 7, 8):
            rng = random.Random(1000 + n)
            for _ in range(300):
                inst = random_dichotomous_path_instance(rng, n, rng.randint(2, 14))
                sol = dichotomous_path_solution(inst)
                assert is_complete(sol.schedule)
                assert is_maximal(sol.schedule, inst.graph())
                assert check_ef1(sol.schedule, inst).holds
                heavy = {
                    c
                    for c in range(inst.m)
                    if inst.valuations.chore_value(0, c) == sol.heavy_value
                }
                counts = real_counts(sol.schedule, heavy)
                for kind in (0, 1):
                    spread = max(c[kind] for c in counts) - min(c[kind] for c in counts)
                    assert spread <= 1


class TestBoundedComponents:
    def test_edgeless_round_robin(self):
        inst = Instance(
            3,
            tuple(Chore(id=i, start=3 * i, finish=3 * i + 1) for i in range(7)),
            AdditiveValuations([[-4, -1, -3, -2, -5, -1, -2]] * 3),
        )
        schedule = solve_identical_bounded_components(inst)
        assert is_complete(schedule)
        assert check_ef1(schedule, inst).holds

    def test_two_agents_matches_oracle_verdicts(self):
        rng = random.Random(15)
        for _ in range(200):
            inst = random_bounded_components_instance(rng, 2, rng.randint(1, 8))
            schedule = solve_identical_bounded_components(inst)
            assert check_ef1(schedule, inst).holds
            assert is_maximal(schedule, inst.graph())
            witness = exists(ExistenceQuery(instance=inst, criterion="ef1"))
            assert witness is not None

    def test_random_instances_with_intermediate_acyclicity(self):
        for n in (2, 3, 4):
            rng = random.Random(2000 + n)
            for _ in range(300):
                inst = random_bounded_components_instance(rng, n, rng.randint(1, 12))
                schedule, intermediates = bounded_components_solution(inst)
                assert check_ef1(schedule, inst).holds
                assert is_maximal(schedule, inst.graph())
                for partial in intermediates:
                    assert envy_graph(partial, inst).is_acyclic()

    def test_oversized_component_rejected(self):
        inst = path_instance([[-1, -1, -1, -1]] * 3)  # one component of 4 > n = 3
        with pytest.raises(InputError, match="component"):
            solve_identical_bounded_components(inst)

    def test_non_identical_rejected(self):
        inst = Instance(
            2,
            tuple(Chore(id=i, start=3 * i, finish=3 * i + 1) for i in range(2)),
            AdditiveValuations([[-1, -2], [-2, -1]]),
        )
        with pytest.raises(InputError, match="identical"):
            solve_identical_bounded_components(inst)
