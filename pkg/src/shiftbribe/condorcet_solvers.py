"""Shift-bribery solvers for Copeland-alpha and maximin.

Copeland-alpha is handled through microbribery in the irrational-voter
model: voters become antisymmetric preference tables, and instead of shifts
one buys flips of single table entries involving the preferred candidate.
With all finite flip prices restricted to pairs involving the preferred
candidate, optimal microbribery is polynomial (``solve_copeland_micro``),
and translating a shift-bribery instance through it loses at most a factor
m in cost (``solve_copeland_shift``).

Maximin is handled through pairwise-support covering: for every target
score k, the preferred candidate needs a minimum pairwise support against
every rival, which is a set-multicover problem over (voter, shift) moves
solved greedily within a logarithmic factor (``cover_targets_greedy``,
``solve_maximin_shift``).

Weighted instances are rejected by all solvers in this module; weighted
microbribery is inapproximable in general and the covering bound is stated
for unit weights.
"""

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .bribery import (
    CopelandRule,
    MaximinRule,
    ShiftAction,
    ShiftBriberyInstance,
    is_successful,
    total_cost,
)
from .elections import CopelandAlpha, maximin_scores, pairwise_tally
from .errors import IncompatibleRule, Infeasible

_WIN, _TIE, _LOSS = 0, 1, 2  # pairwise outcome for the preferred candidate


@dataclass(frozen=True)
class FlipCostFunction:
    """Prices for flipping one voter's table entries against the preferred
    candidate.

    ``costs`` maps a rival candidate index to the price of flipping that
    voter's (preferred, rival) entry; an absent rival means the flip is
    unavailable (infinite price).  Flip prices are symmetric by definition,
    so one orientation is stored.  Flips between two non-preferred
    candidates are never available.
    """

    costs: dict

    def __post_init__(self):
        for c, price in self.costs.items():
            if c == 0:
                raise ValueError("flips must involve a rival, not the preferred candidate")
            if price < 0:
                raise ValueError("flip prices must be non-negative")

    def price(self, rival: int) -> Optional[int]:
        return self.costs.get(rival)


@dataclass(frozen=True)
class MicrobriberyInstance:
    """Preference tables plus per-voter flip prices; candidate 0 is the
    preferred candidate.

    Each table is an antisymmetric m x m matrix with entries +1/-1 off the
    diagonal: entry (j, k) is +1 when the voter prefers candidate j to
    candidate k.  Tables may encode cyclic preferences.
    """

    tables: tuple
    flip_costs: tuple

    def __post_init__(self):
        object.__setattr__(
            self, "tables", tuple(tuple(tuple(row) for row in t) for t in self.tables)
        )
        object.__setattr__(self, "flip_costs", tuple(self.flip_costs))
        if not self.tables:
            raise ValueError("need at least one voter")
        m = len(self.tables[0])
        if m < 1:
            raise ValueError("need at least one candidate")
        for i, table in enumerate(self.tables):
            if len(table) != m or any(len(row) != m for row in table):
                raise ValueError(f"voter {i}: table is not {m} x {m}")
            for j in range(m):
                if table[j][j] != 0:
                    raise ValueError(f"voter {i}: diagonal entries must be 0")
                for k in range(j + 1, m):
                    if table[j][k] not in (-1, 1) or table[j][k] != -table[k][j]:
                        raise ValueError(f"voter {i}: table is not antisymmetric +-1")
        if len(self.flip_costs) != len(self.tables):
            raise ValueError("need one flip cost function per voter")

    @property
    def num_voters(self) -> int:
        return len(self.tables)

    @property
    def num_candidates(self) -> int:
        return len(self.tables[0])


@dataclass(frozen=True)
class FlipSet:
    """Per-voter sets of rivals whose pairwise entry against the preferred
    candidate gets flipped."""

    flips: tuple

    def __post_init__(self):
        object.__setattr__(self, "flips", tuple(frozenset(s) for s in self.flips))
        for i, s in enumerate(self.flips):
            if 0 in s:
                raise ValueError(f"voter {i}: flips must name rivals only")

    def __len__(self) -> int:
        return len(self.flips)

    def __getitem__(self, i: int):
        return self.flips[i]


def flip_set_cost(m_inst: MicrobriberyInstance, flips: FlipSet) -> int:
    """Total price of a flip set."""
    total = 0
    for i, s in enumerate(flips.flips):
        for c in s:
            p = m_inst.flip_costs[i].price(c)
            if p is None:
                raise ValueError(f"voter {i}: flip against rival {c} is unavailable")
            total += p
    return total


def _margins(m_inst: MicrobriberyInstance) -> list:
    """margin[c] = (#voters preferring rival c) - (#preferring candidate 0);
    positive means c currently beats the preferred candidate."""
    m = m_inst.num_candidates
    margins = [0] * m
    for table in m_inst.tables:
        for c in range(1, m):
            margins[c] += table[c][0]
    return margins


def _rival_base_scaled(m_inst: MicrobriberyInstance, alpha: CopelandAlpha) -> list:
    """Scaled Copeland score of each rival from rival-vs-rival pairs only
    (those cannot be flipped)."""
    m = m_inst.num_candidates
    base = [0] * m
    for c in range(1, m):
        for d in range(1, m):
            if d == c:
                continue
            margin = sum(table[c][d] for table in m_inst.tables)
            if margin > 0:
                base[c] += alpha.denominator
            elif margin == 0:
                base[c] += alpha.numerator
    return base


def _outcome_options(m_inst: MicrobriberyInstance, rival: int, margin: int):
    """Cheapest flips forcing each pairwise outcome against one rival.

    Returns a dict outcome -> (cost, flips) for the outcomes that are
    purchasable; flips are (voter, rival) pairs.  One flip moves the margin
    by exactly 2, so its parity is fixed and a tie needs an even margin.
    """
    against = []  # voters currently preferring the rival
    for_pref = []  # voters currently preferring candidate 0
    for i, table in enumerate(m_inst.tables):
        p = m_inst.flip_costs[i].price(rival)
        if p is None:
            continue
        if table[rival][0] == 1:
            against.append((p, i))
        else:
            for_pref.append((p, i))
    against.sort()
    for_pref.sort()

    def cheapest(pool, count):
        if count > len(pool):
            return None
        cost = sum(p for p, _ in pool[:count])
        return cost, [(i, rival) for _, i in pool[:count]]

    options = {}
    for outcome in (_WIN, _TIE, _LOSS):
        if outcome == _WIN:
            need = margin // 2 + 1 if margin >= 0 else 0
            picked = cheapest(against, need)
        elif outcome == _TIE:
            if margin % 2 != 0:
                picked = None
            elif margin >= 0:
                picked = cheapest(against, margin // 2)
            else:
                picked = cheapest(for_pref, (-margin) // 2)
        else:
            need = (-margin) // 2 + 1 if margin <= 0 else 0
            picked = cheapest(for_pref, need)
        if picked is not None:
            options[outcome] = picked
    return options


def solve_copeland_micro(
    m_inst: MicrobriberyInstance, alpha: CopelandAlpha
) -> Tuple[int, FlipSet]:
    """Optimal microbribery making candidate 0 a Copeland-alpha winner,
    when only flips involving candidate 0 are available.

    Enumerates every target pattern (i wins, j ties) for the preferred
    candidate whose scaled score i*den + j*num lies between the current
    score and m - 1.  Any pattern with a lower score is dominated: dropping
    the flips that downgrade the preferred candidate's own pairs keeps the
    bribery successful and no more expensive.  For each pattern, a dynamic
    program over the rivals picks a pairwise outcome per rival (with its
    cheapest flip price) such that the outcome counts match the pattern and
    every rival's score stays at or below the pattern score.  The global
    minimum over patterns is optimal.
    """
    n, m = m_inst.num_voters, m_inst.num_candidates
    den, num = alpha.denominator, alpha.numerator
    margins = _margins(m_inst)
    base = _rival_base_scaled(m_inst, alpha)
    current_scaled = 0
    for c in range(1, m):
        if margins[c] < 0:
            current_scaled += den
        elif margins[c] == 0:
            current_scaled += num
    rival_options = {c: _outcome_options(m_inst, c, margins[c]) for c in range(1, m)}
    outcome_rival_gain = {_WIN: 0, _TIE: num, _LOSS: den}

    best_cost: Optional[int] = None
    best_choice = None
    for wins in range(m):
        for ties in range(m - wins):
            k_scaled = wins * den + ties * num
            if not current_scaled <= k_scaled <= (m - 1) * den:
                continue
            # dp[(w, t)] = (cost, choices) over rivals 1..c
            dp: Dict[Tuple[int, int], Tuple[int, tuple]] = {(0, 0): (0, ())}
            for c in range(1, m):
                options = rival_options[c]
                nxt: Dict[Tuple[int, int], Tuple[int, tuple]] = {}
                for (w, t), (cost, chosen) in dp.items():
                    for outcome, (ocost, _) in options.items():
                        if base[c] + outcome_rival_gain[outcome] > k_scaled:
                            continue
                        w2 = w + (1 if outcome == _WIN else 0)
                        t2 = t + (1 if outcome == _TIE else 0)
                        if w2 > wins or t2 > ties:
                            continue
                        key = (w2, t2)
                        val = (cost + ocost, chosen + (outcome,))
                        if key not in nxt or val[0] < nxt[key][0]:
                            nxt[key] = val
                dp = nxt
                if not dp:
                    break
            hit = dp.get((wins, ties))
            if hit is not None and (best_cost is None or hit[0] < best_cost):
                best_cost = hit[0]
                best_choice = hit[1]
    if best_cost is None:
        raise Infeasible("no flip set makes the preferred candidate a winner")
    flips: List[set] = [set() for _ in range(n)]
    for c, outcome in enumerate(best_choice, start=1):
        _, picked = rival_options[c][outcome]
        for voter, rival in picked:
            flips[voter].add(rival)
    return best_cost, FlipSet(tuple(frozenset(s) for s in flips))


def _candidates_above(inst: ShiftBriberyInstance, voter: int) -> list:
    """Rivals ranked above the preferred candidate, nearest first."""
    order = inst.election.voters[voter]
    idx = order.index(0)
    return [order[idx - 1 - d] for d in range(idx)]


def shift_to_micro(inst: ShiftBriberyInstance) -> MicrobriberyInstance:
    """Translate a shift-bribery instance into microbribery.

    Orders become preference tables.  For each voter, flipping the entry
    against the d-th candidate above the preferred one (nearest first) is
    priced like shifting up by d positions; all other flips are
    unavailable.
    """
    m = inst.num_candidates
    tables = []
    costs = []
    for i, order in enumerate(inst.election.voters):
        position = {c: pos for pos, c in enumerate(order)}
        table = [
            [0 if a == b else (1 if position[a] < position[b] else -1) for b in range(m)]
            for a in range(m)
        ]
        tables.append(tuple(tuple(row) for row in table))
        flip_prices = {}
        for d, rival in enumerate(_candidates_above(inst, i), start=1):
            p = inst.costs[i].price(d)
            if p is not None:
                flip_prices[rival] = p
        costs.append(FlipCostFunction(flip_prices))
    return MicrobriberyInstance(tuple(tables), tuple(costs))


def micro_to_shift(inst: ShiftBriberyInstance, flips: FlipSet) -> ShiftAction:
    """Smallest shift action dominating a flip set from ``shift_to_micro``:
    shift each voter far enough to pass every flipped rival."""
    if len(flips) != inst.num_voters:
        raise ValueError("flip set length must equal the number of voters")
    shifts = []
    for i in range(inst.num_voters):
        above = _candidates_above(inst, i)
        depth = {c: d for d, c in enumerate(above, start=1)}
        s = 0
        for c in flips[i]:
            if c not in depth:
                raise ValueError(
                    f"voter {i}: flip against rival {c}, who is not above the "
                    "preferred candidate"
                )
            s = max(s, depth[c])
        shifts.append(s)
    return ShiftAction(tuple(shifts))


def _require_unweighted(inst: ShiftBriberyInstance, what: str):
    if inst.election.weights is not None and any(w != 1 for w in inst.election.weights):
        raise IncompatibleRule(f"{what} supports unweighted voters only")


def solve_copeland_shift(inst: ShiftBriberyInstance) -> Tuple[int, ShiftAction]:
    """m-approximation for Copeland-alpha shift bribery.

    Reduces to microbribery with flips priced by shift distances, solves it
    optimally, and shifts each voter up to the deepest flipped rival.  The
    shift action costs no more than the flip set, which costs no more than
    the flip set induced by an optimal shift action, which costs at most m
    times that action; hence the factor m.
    """
    if not isinstance(inst.rule, CopelandRule):
        raise IncompatibleRule("solve_copeland_shift requires the Copeland rule")
    _require_unweighted(inst, "solve_copeland_shift")
    micro = shift_to_micro(inst)
    _, flips = solve_copeland_micro(micro, inst.rule.alpha)
    action = micro_to_shift(inst, flips)
    if not is_successful(inst, action):
        raise AssertionError("microbribery reduction produced an unsuccessful action")
    return total_cost(inst, action), action


def cover_targets_greedy(
    inst: ShiftBriberyInstance, targets: Sequence
) -> ShiftAction:
    """Cheap shift action raising pairwise support against every rival.

    Given per-rival demands ``targets[c - 1]``, finds an action after which
    the preferred candidate is preferred to rival c by at least
    ``min(current_support + targets[c - 1], n)`` voters.  Greedy weighted
    set-multicover: repeatedly buy the (voter, extra shift) move minimizing
    price per unit of remaining deficit it removes (passing a rival with
    remaining deficit removes one unit); ties prefer the smaller voter
    index, then the smaller shift.  The cost is within the classical
    harmonic-number factor of the cheapest action meeting the demands.
    """
    _require_unweighted(inst, "cover_targets_greedy")
    n, m = inst.num_voters, inst.num_candidates
    if len(targets) != m - 1:
        raise ValueError("need one target per rival")
    if any(k < 0 for k in targets):
        raise ValueError("targets must be non-negative")
    tally = pairwise_tally(inst.election)
    deficits = [0] * m
    for c in range(1, m):
        required = min(tally.n_matrix[0][c] + targets[c - 1], n)
        deficits[c] = max(0, required - tally.n_matrix[0][c])

    orders = [list(order) for order in inst.election.voters]
    shifts = [0] * n
    while any(deficits[c] > 0 for c in range(1, m)):
        best = None  # (price, reduction, voter, amount, passed)
        for i in range(n):
            idx = orders[i].index(0)
            if idx == 0:
                continue
            paid = inst.costs[i].price(shifts[i])
            reduction = 0
            passed = []
            for a in range(1, idx + 1):
                price_total = inst.costs[i].price(shifts[i] + a)
                if price_total is None:
                    break
                rival = orders[i][idx - a]
                passed.append(rival)
                if deficits[rival] > 0:
                    reduction += 1
                if reduction == 0:
                    continue
                price = price_total - paid
                if (
                    best is None
                    or price * best[1] < best[0] * reduction
                    or (price * best[1] == best[0] * reduction and (i, a) < (best[2], best[3]))
                ):
                    best = (price, reduction, i, a, list(passed))
        if best is None:
            raise Infeasible("targets cannot be met with the purchasable shifts")
        _, _, i, a, passed = best
        idx = orders[i].index(0)
        for rival in passed:
            if deficits[rival] > 0:
                deficits[rival] -= 1
        del orders[i][idx]
        orders[i].insert(idx - a, 0)
        shifts[i] += a
    return ShiftAction(tuple(shifts))


def solve_maximin_shift(inst: ShiftBriberyInstance) -> Tuple[int, ShiftAction]:
    """Logarithmic-factor approximation for maximin shift bribery.

    For every target score k between the preferred candidate's current
    maximin score and n, the candidate needs pairwise support of at least k
    against every rival, and at least n - k against every rival currently
    scoring above k (which caps that rival's score at k).  Each k yields a
    covering problem solved by ``cover_targets_greedy``; the cheapest
    successful action over all k is returned.
    """
    if not isinstance(inst.rule, MaximinRule):
        raise IncompatibleRule("solve_maximin_shift requires the maximin rule")
    _require_unweighted(inst, "solve_maximin_shift")
    n, m = inst.num_voters, inst.num_candidates
    tally = pairwise_tally(inst.election)
    scores = maximin_scores(tally)
    best: Optional[Tuple[int, ShiftAction]] = None
    for k in range(scores[0], n + 1):
        targets = []
        for c in range(1, m):
            needed = k
            if scores[c] > k:
                needed = max(needed, n - k)
            targets.append(max(0, needed - tally.n_matrix[0][c]))
        try:
            action = cover_targets_greedy(inst, targets)
        except Infeasible:
            continue
        if not is_successful(inst, action):
            continue
        cost = total_cost(inst, action)
        if best is None or cost < best[0]:
            best = (cost, action)
    if best is None:
        raise Infeasible("no successful shift action exists")
    return best
