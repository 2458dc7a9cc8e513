"""Budget DP, buying, and the scoring-rule solvers."""

import itertools
import random
from fractions import Fraction

import pytest

import shiftbribe as sb
from shiftbribe.scoring_solvers import _max_budget


def caps_product(inst):
    return itertools.product(*[range(cf.max_reachable + 1) for cf in inst.costs])


def exhaustive_best_buy(inst, budget):
    """(max gain, min cost among gain maximizers, lex-smallest action)."""
    best = None
    for t in caps_product(inst):
        cost = sum(inst.costs[i].price(ti) for i, ti in enumerate(t))
        if cost > budget:
            continue
        g = sum(sb.gain(inst, i, ti) for i, ti in enumerate(t))
        key = (-g, cost, t)
        if best is None or key < best:
            best = key
    return -best[0], best[1], best[2]


class TestBuy:
    def test_zero_budget(self, thm6_k1):
        action, g = sb.buy(thm6_k1, 0)
        assert g == 0
        assert tuple(action.shifts) == (0,) * 6

    def test_negative_budget_rejected(self, thm6_k1):
        with pytest.raises(ValueError):
            sb.buy(thm6_k1, -1)

    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_theorem6_budget_kt_buys_cheap_unit_shifts(self, k):
        inst = sb.gen_theorem6(k)
        t_unit = 2 * k
        action, g = sb.buy(inst, k * t_unit)
        assert g == k
        assert sum(action.shifts[: 4 * k]) == k
        assert all(t in (0, 1) for t in action.shifts[: 4 * k])
        assert action.shifts[4 * k] == 0 and action.shifts[4 * k + 1] == 0
        assert sb.total_cost(inst, action) == k * t_unit

    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_theorem6_above_kt_buys_only_expensive_voter(self, k):
        # just past budget k*T the deep shifts become the unique best buy
        inst = sb.gen_theorem6(k)
        t_unit = 2 * k
        budget = (k + 1) * t_unit - 1
        action, g = sb.buy(inst, budget)
        assert g == k + 1
        expected = (0,) * (4 * k) + (k + 1, 0)
        assert tuple(action.shifts) == expected

    def test_matches_exhaustive_enumeration(self):
        for seed in range(30):
            inst = sb.gen_random(seed, 3, 4, 4)
            top = _max_budget(inst)
            for budget in range(top + 2):
                action, g = sb.buy(inst, budget)
                want_gain, want_cost, want_t = exhaustive_best_buy(inst, budget)
                assert g == want_gain
                assert sb.total_cost(inst, action) == want_cost
                assert tuple(action.shifts) == want_t

    def test_non_scoring_rejected(self):
        e = sb.Election(("p", "c"), ((1, 0),))
        inst = sb.ShiftBriberyInstance(e, (sb.CostFunction((1,)),), sb.MAXIMIN)
        with pytest.raises(sb.IncompatibleRule):
            sb.buy(inst, 3)


class TestBudgetDpTable:
    def test_base_row(self):
        inst = sb.gen_random(0, 2, 3, 3)
        table = sb.build_budget_dp(inst, 5)
        assert table.rows[0][0] == 0
        assert all(v is None for v in table.rows[0][1:])

    def test_recurrence_consistency(self):
        for seed in (1, 2, 3):
            inst = sb.gen_random(seed, 3, 4, 4)
            budget = _max_budget(inst)
            table = sb.build_budget_dp(inst, budget)
            for i in range(1, inst.num_voters + 1):
                cf = inst.costs[i - 1]
                for j in range(budget + 1):
                    best = None
                    for k in range(cf.max_reachable + 1):
                        p = cf.price(k)
                        if p > j:
                            continue
                        prev = table.rows[i - 1][j - p]
                        if prev is None:
                            continue
                        v = prev + sb.gain(inst, i - 1, k)
                        if best is None or v > best:
                            best = v
                    assert table.rows[i][j] == best

    def test_buy_agrees_with_table(self):
        inst = sb.gen_random(9, 3, 4, 5)
        budget = _max_budget(inst)
        table = sb.build_budget_dp(inst, budget)
        for b in range(budget + 1):
            action, g = sb.buy(inst, b)
            reachable = [v for v in table.rows[-1][: b + 1] if v is not None]
            assert g == max(reachable)
            assert sb.total_cost(inst, action) == min(
                j for j in range(b + 1) if table.rows[-1][j] == g
            )


class TestSolveTwoPass:
    def test_already_winner(self):
        e = sb.Election(("p", "c"), ((0, 1),))
        inst = sb.ShiftBriberyInstance(e, (sb.CostFunction(()),), sb.ScoringRule(sb.borda(2)))
        assert sb.solve_two_pass(inst) == (0, sb.ShiftAction((0,)))

    @pytest.mark.parametrize("k", [1, 2, 4])
    def test_theorem6_optimal(self, k):
        inst = sb.gen_theorem6(k)
        cost, action = sb.solve_two_pass(inst)
        assert cost == 2 * k * (2 * k)
        assert sb.is_successful(inst, action)
        assert sb.total_cost(inst, action) <= cost

    def test_two_sided_bound_on_random_instances(self):
        for seed in range(80):
            rng = random.Random(seed)
            inst = sb.gen_random(seed, rng.randint(1, 4), rng.randint(1, 4), 6)
            opt, _ = sb.exact_shift_opt(inst)
            cost, action = sb.solve_two_pass(inst)
            assert opt <= cost <= 2 * opt, (seed, opt, cost)
            assert sb.is_successful(inst, action)

    def test_guard(self, thm6_k1):
        with pytest.raises(sb.GuardExceeded, match="solve_two_pass_scaled"):
            sb.solve_two_pass(thm6_k1, cell_guard=10)


class TestSolveSinglePass:
    def test_already_winner(self):
        e = sb.Election(("p", "c"), ((0, 1),))
        inst = sb.ShiftBriberyInstance(e, (sb.CostFunction(()),), sb.ScoringRule(sb.borda(2)))
        assert sb.solve_single_pass(inst)[0] == 0

    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_theorem6_value_and_action(self, k):
        inst = sb.gen_theorem6(k)
        cost, action = sb.solve_single_pass(inst)
        assert cost == 4 * k * (2 * k) - 3 * k
        assert tuple(action.shifts) == (0,) * (4 * k) + (4 * k, 0)

    def test_never_beats_two_pass(self):
        for seed in range(60):
            rng = random.Random(seed + 31)
            inst = sb.gen_random(seed, rng.randint(1, 4), rng.randint(1, 4), 6)
            assert sb.solve_single_pass(inst)[0] >= sb.solve_two_pass(inst)[0]


class TestSolveTwoPassScaled:
    def test_already_winner(self):
        e = sb.Election(("p", "c"), ((0, 1),))
        inst = sb.ShiftBriberyInstance(e, (sb.CostFunction(()),), sb.ScoringRule(sb.borda(2)))
        assert sb.solve_two_pass_scaled(inst, Fraction(1, 2))[0] == 0

    def test_eps_must_be_positive(self, thm6_k1):
        with pytest.raises(ValueError):
            sb.solve_two_pass_scaled(thm6_k1, 0)
        with pytest.raises(ValueError):
            sb.solve_two_pass_scaled(thm6_k1, Fraction(-1, 2))

    def test_unit_prices_match_exact_solver(self):
        # all prices equal: scaling is proportional, so the scaled scheme
        # must reproduce the two-pass cost even with the exact run disabled
        for seed in range(20):
            base = sb.gen_random(seed, 3, 4, 1)
            costs = tuple(
                sb.CostFunction((1,) * cf.cap) if cf.cap else cf for cf in base.costs
            )
            inst = sb.ShiftBriberyInstance(base.election, costs, base.rule)
            want = sb.solve_two_pass(inst)[0]
            got = sb.solve_two_pass_scaled(inst, Fraction(1, 2), exact_threshold=0)[0]
            assert got == want, seed

    def test_envelope_on_random_instances(self):
        for seed in range(60):
            rng = random.Random(seed + 77)
            inst = sb.gen_random(seed, rng.randint(1, 4), rng.randint(1, 4), 6)
            opt, _ = sb.exact_shift_opt(inst)
            cost, action = sb.solve_two_pass_scaled(inst, Fraction(1, 2))
            assert opt <= cost, (seed, opt, cost)
            assert 2 * cost <= 5 * opt, (seed, opt, cost)  # (2 + 1/2) * opt
            assert sb.is_successful(inst, action)

    def test_scaled_path_alone_stays_within_bound(self):
        for seed in range(40):
            inst = sb.gen_random(seed, 4, 4, 6)
            opt, _ = sb.exact_shift_opt(inst)
            cost, _ = sb.solve_two_pass_scaled(inst, Fraction(1, 2), exact_threshold=0)
            assert opt <= cost
            assert 2 * cost <= 5 * opt, (seed, opt, cost)


class TestSolveBootstrap:
    def test_already_winner(self):
        e = sb.Election(("p", "c"), ((0, 1),))
        inst = sb.ShiftBriberyInstance(e, (sb.CostFunction(()),), sb.ScoringRule(sb.borda(2)))
        assert sb.solve_bootstrap(inst) == (0, sb.ShiftAction((0,)))

    def test_theorem6_k1_within_twice_optimal(self, thm6_k1):
        opt, _ = sb.exact_shift_opt(thm6_k1)
        cost, action = sb.solve_bootstrap(thm6_k1)
        assert opt <= cost <= 2 * opt
        assert sb.is_successful(thm6_k1, action)

    def test_two_sided_bound_on_random_instances(self):
        for seed in range(60):
            rng = random.Random(seed + 101)
            inst = sb.gen_random(seed, rng.randint(1, 4), rng.randint(1, 4), 6)
            opt, _ = sb.exact_shift_opt(inst)
            cost, action = sb.solve_bootstrap(inst)
            assert opt <= cost <= 2 * opt, (seed, opt, cost)
            assert sb.is_successful(inst, action)


class TestSolveBootstrapWeighted:
    def test_requires_weights(self, thm6_k1):
        with pytest.raises(sb.IncompatibleRule):
            sb.solve_bootstrap_weighted(thm6_k1)

    def test_unit_weights_match_unweighted(self):
        for seed in range(20):
            plain = sb.gen_random(seed, 3, 3, 5)
            weighted = sb.ShiftBriberyInstance(
                sb.Election(
                    plain.election.candidates,
                    plain.election.voters,
                    (1,) * plain.num_voters,
                ),
                plain.costs,
                plain.rule,
            )
            assert (
                sb.solve_bootstrap_weighted(weighted)[0] == sb.solve_bootstrap(plain)[0]
            )

    def test_two_voter_weighted_example(self):
        e = sb.Election(("p", "a", "b"), ((1, 2, 0), (1, 2, 0)), (3, 1))
        costs = (sb.CostFunction((1, 2)), sb.CostFunction((1, 2)))
        inst = sb.ShiftBriberyInstance(e, costs, sb.ScoringRule(sb.borda(3)))
        opt, _ = sb.exact_shift_opt(inst)
        assert opt == 2  # shift the heavy voter to the top
        cost, action = sb.solve_bootstrap_weighted(inst)
        assert opt <= cost <= 2 * opt
        assert sb.is_successful(inst, action)

    def test_huge_weight_single_voter(self):
        e = sb.Election(("p", "c"), ((1, 0),), (10**6,))
        inst = sb.ShiftBriberyInstance(
            e, (sb.CostFunction((7,)),), sb.ScoringRule(sb.borda(2))
        )
        assert sb.solve_bootstrap_weighted(inst)[0] == 7

    def test_envelope_on_random_weighted_instances(self):
        for seed in range(40):
            rng = random.Random(seed + 55)
            inst = sb.gen_random(
                seed, rng.randint(1, 4), rng.randint(1, 4), 6, weighted=True
            )
            opt, _ = sb.exact_shift_opt(inst)
            cost, action = sb.solve_bootstrap_weighted(inst)
            assert opt <= cost <= 2 * opt, (seed, opt, cost)
            assert sb.is_successful(inst, action)


class TestDoubleGainCheck:
    def test_requires_successful_s(self, thm6_k1):
        with pytest.raises(ValueError):
            sb.double_gain_check(thm6_k1, sb.ShiftAction.zero(6), sb.ShiftAction.zero(6))

    def test_zero_gain_winner_accepts_anything(self):
        e = sb.Election(("p", "c"), ((0, 1), (0, 1)))
        inst = sb.ShiftBriberyInstance(
            e, (sb.CostFunction(()), sb.CostFunction(())), sb.ScoringRule(sb.borda(2))
        )
        zero = sb.ShiftAction.zero(2)
        assert sb.double_gain_check(inst, zero, zero)

    def test_applying_s_twice_passes_and_wins(self):
        # under Borda each unit shift is worth one point, so doubling a
        # successful action (caps allowing) doubles its gain exactly
        for seed in range(200):
            rng = random.Random(seed + 443)
            inst = sb.gen_random(seed, rng.randint(2, 4), rng.randint(2, 4), 4)
            caps = [cf.cap for cf in inst.costs]
            candidate = None
            for t in caps_product(inst):
                if all(2 * ti <= caps[i] for i, ti in enumerate(t)) and sb.is_successful(
                    inst, sb.ShiftAction(t)
                ):
                    candidate = sb.ShiftAction(t)
                    break
            if candidate is None:
                continue
            doubled = candidate + candidate
            assert sb.double_gain_check(inst, candidate, doubled)
            assert sb.is_successful(inst, doubled)
            return
        raise AssertionError("no doubling-friendly instance found")

    def test_doubling_implies_success(self):
        # wherever the predicate holds, the action must be successful
        checked = 0
        for seed in range(120):
            rng = random.Random(seed + 7)
            inst = sb.gen_random(seed, rng.randint(1, 4), rng.randint(2, 4), 4)
            caps = [cf.cap for cf in inst.costs]
            s = None
            for t in caps_product(inst):
                if sb.is_successful(inst, sb.ShiftAction(t)):
                    s = sb.ShiftAction(t)
                    break
            if s is None:
                continue
            for _ in range(6):
                r = sb.ShiftAction(tuple(rng.randint(0, c) for c in caps))
                if sb.double_gain_check(inst, s, r):
                    checked += 1
                    assert sb.is_successful(inst, r), (seed, s, r)
        assert checked > 50
