"""Shift-bribery instances: price functions, shift actions, and costs.

A shift-bribery instance couples an election (candidate 0 is the preferred
candidate) with one monotone price function per voter: the price of shifting
the preferred candidate upwards by a given number of positions in that vote.
The goal of all solvers is a cheapest shift action after which candidate 0
is a winner under the instance's voting rule.
"""

from dataclasses import dataclass
from typing import Optional, Union

from .errors import IncompatibleRule
from .elections import (
    CopelandAlpha,
    Election,
    ScoringVector,
    _check_i64,
    apply_shift,
    copeland_scores,
    maximin_scores,
    pairwise_tally,
    scoring_scores,
    winners,
)


@dataclass(frozen=True)
class CostFunction:
    """Per-voter shift prices.

    ``prices[k - 1]`` is the price of shifting the preferred candidate up by
    ``k`` positions; shifting by 0 is free and shifting beyond the table is
    priced like the last entry (the candidate is already on top by then).
    Prices are non-negative, non-decreasing integers.  An entry of ``None``
    marks the shift amount as unreachable (not purchasable at any price);
    once a shift is unreachable all larger shifts are too.
    """

    prices: tuple

    def __post_init__(self):
        object.__setattr__(self, "prices", tuple(self.prices))
        prev = 0
        seen_none = False
        for k, p in enumerate(self.prices, start=1):
            if p is None:
                seen_none = True
                continue
            if seen_none:
                raise ValueError("unreachable marks must form a suffix of the price table")
            if p < 0:
                raise ValueError(f"price for shift {k} is negative")
            if p < prev:
                raise ValueError(f"price table decreases at shift {k}")
            prev = p

    @property
    def cap(self) -> int:
        """Largest meaningful shift amount (the table length)."""
        return len(self.prices)

    @property
    def max_reachable(self) -> int:
        """Largest shift amount with a finite price."""
        k = 0
        for p in self.prices:
            if p is None:
                break
            k += 1
        return k

    def price(self, k: int) -> Optional[int]:
        """Price of shifting by ``k`` (clamped to the cap); ``None`` if
        unreachable."""
        if k < 0:
            raise ValueError("shift amounts must be non-negative")
        if k == 0:
            return 0
        k = min(k, len(self.prices))
        if k == 0:
            return 0
        return self.prices[k - 1]


@dataclass(frozen=True)
class ShiftAction:
    """A vector of upward shifts of the preferred candidate, one per voter."""

    shifts: tuple

    def __post_init__(self):
        object.__setattr__(self, "shifts", tuple(self.shifts))
        for t in self.shifts:
            if t < 0:
                raise ValueError("shift amounts must be non-negative")

    def __len__(self) -> int:
        return len(self.shifts)

    def __getitem__(self, i: int) -> int:
        return self.shifts[i]

    def __iter__(self):
        return iter(self.shifts)

    def __add__(self, other: "ShiftAction") -> "ShiftAction":
        if len(self.shifts) != len(other.shifts):
            raise ValueError("cannot add shift actions of different lengths")
        return ShiftAction(tuple(a + b for a, b in zip(self.shifts, other.shifts)))

    @classmethod
    def zero(cls, n: int) -> "ShiftAction":
        return cls((0,) * n)


@dataclass(frozen=True)
class ScoringRule:
    vector: ScoringVector


@dataclass(frozen=True)
class CopelandRule:
    alpha: CopelandAlpha


@dataclass(frozen=True)
class MaximinRule:
    pass


Rule = Union[ScoringRule, CopelandRule, MaximinRule]

MAXIMIN = MaximinRule()


@dataclass(frozen=True)
class ShiftBriberyInstance:
    """An election, one cost function per voter, and a voting rule.

    Candidate 0 is the preferred candidate.  Every cost function's table
    length must equal that voter's current rank of candidate 0 minus one.
    """

    election: Election
    costs: tuple
    rule: Rule

    def __post_init__(self):
        object.__setattr__(self, "costs", tuple(self.costs))
        if len(self.costs) != self.election.num_voters:
            raise ValueError("need exactly one cost function per voter")
        for i, cf in enumerate(self.costs):
            expected_cap = self.election.rank_of(i, 0) - 1
            if cf.cap != expected_cap:
                raise ValueError(
                    f"voter {i}: cost function covers {cf.cap} shifts but the "
                    f"preferred candidate is at rank {expected_cap + 1}"
                )
        if isinstance(self.rule, ScoringRule):
            if len(self.rule.vector) != self.election.num_candidates:
                raise ValueError("scoring vector length must match the number of candidates")

    @property
    def num_voters(self) -> int:
        return self.election.num_voters

    @property
    def num_candidates(self) -> int:
        return self.election.num_candidates

    @property
    def is_weighted(self) -> bool:
        return self.election.weights is not None


def rule_scores(election: Election, rule: Rule) -> list:
    """Per-candidate scores of ``election`` under ``rule``."""
    if isinstance(rule, ScoringRule):
        return scoring_scores(election, rule.vector)
    if isinstance(rule, CopelandRule):
        return copeland_scores(pairwise_tally(election), rule.alpha)
    if isinstance(rule, MaximinRule):
        return maximin_scores(pairwise_tally(election))
    raise TypeError(f"unknown rule: {rule!r}")


def total_cost(inst: ShiftBriberyInstance, action: ShiftAction) -> int:
    """Total price of ``action``: the sum of per-voter prices at the clamped
    shift amounts.  Raises if the action uses an unreachable shift."""
    if len(action) != inst.num_voters:
        raise ValueError("shift action length must equal the number of voters")
    total = 0
    for i, t in enumerate(action):
        p = inst.costs[i].price(t)
        if p is None:
            raise ValueError(f"voter {i}: shift by {t} is unreachable")
        total += p
    return _check_i64(total, "total bribery cost")


def rebase(inst: ShiftBriberyInstance, action: ShiftAction) -> ShiftBriberyInstance:
    """The instance left after performing ``action``.

    The election is shifted and each price table is re-anchored so that
    ``new_price(k) = old_price(k + t_i) - old_price(t_i)``, with the caps
    reduced by the (clamped) amounts already shifted.  The input instance is
    unchanged.
    """
    if len(action) != inst.num_voters:
        raise ValueError("shift action length must equal the number of voters")
    new_election = apply_shift(inst.election, action.shifts)
    new_costs = []
    for i, cf in enumerate(inst.costs):
        t = min(action[i], cf.cap)
        if t == 0:
            new_costs.append(cf)
            continue
        paid = cf.price(t)
        if paid is None:
            raise ValueError(f"voter {i}: cannot rebase over unreachable shift {t}")
        new_prices = tuple(
            None if cf.prices[t + k] is None else cf.prices[t + k] - paid
            for k in range(cf.cap - t)
        )
        new_costs.append(CostFunction(new_prices))
    return ShiftBriberyInstance(new_election, tuple(new_costs), inst.rule)


def gain(inst: ShiftBriberyInstance, voter: int, k: int) -> int:
    """Score increase of the preferred candidate when shifted up by ``k``
    positions (clamped to the top) in ``voter``'s order.

    Only defined for scoring rules.  Weighted voters behave like unit-weight
    voters with a per-voter scoring vector scaled by their weight.
    """
    if not isinstance(inst.rule, ScoringRule):
        raise IncompatibleRule("gain is defined for scoring rules only")
    if k < 0:
        raise ValueError("shift amounts must be non-negative")
    alpha = inst.rule.vector
    r = inst.election.rank_of(voter, 0)
    kk = min(k, r - 1)
    w = inst.election.weight(voter)
    return _check_i64(w * (alpha[r - kk - 1] - alpha[r - 1]), "score gain")


def is_successful(inst: ShiftBriberyInstance, action: ShiftAction) -> bool:
    """Whether the preferred candidate wins after applying ``action``."""
    if len(action) != inst.num_voters:
        raise ValueError("shift action length must equal the number of voters")
    shifted = apply_shift(inst.election, action.shifts)
    return 0 in winners(rule_scores(shifted, inst.rule))
