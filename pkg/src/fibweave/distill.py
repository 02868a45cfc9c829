"""Entanglement distillation with a single mobile anyon, end to end.

The scenario: pairs of anyons are drawn from a noisy source that yields a
nontrivial pair with probability p and a trivial (vacuum) pair otherwise,
laid out left and right of a partition.  One mobile anyon (the star),
itself half of a nontrivial pair, weaves through the row to fuse the
nontrivial content of each side into one composite per side and entangle
the two composites, then retraces the addition so the mobile pair ends
unentangled.  Success is the creation of a nontrivial composite across the
partition: both side composites carry charge 1 and their joint channel is
the vacuum.

Gadgets are weave programs compiled from the gate-word recursions: the
addition gadget from the five-token seed (entry error tau^-(2*5^j)), the
integration gadget from the off-diagonal recursion at even order.  The
protocol is simulated on two independent routes: 'physical', expanding
every gadget to elementary adjacent exchanges over all anyons, and
'composite', folding finished groups into composite objects and braiding
through their total charges.  Their agreement is a structural check, not a
definition: neither route feeds the other.

Closed-form success floors for perfect gadgets are returned as exact
rationals; gadget-level probabilities come from the simulation routes.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, asdict
from fractions import Fraction

import numpy as np

from .chain import Chain, root
from .model import F_NP, TAU_F, fuse
from .weave import (
    ACCEPTED_LOOP_ISOTOPY,
    compile_weave,
    gadget_exchanges,
    invert_program,
)
from .words import (
    SEED_S,
    SEED_WEAVE,
    generator_braid_count,
    generator_word,
    m_word,
    n_word,
)

MAX_PROTOCOL_ANYONS = 12


class PlanningError(ValueError):
    """A requested protocol layout that cannot be scheduled."""


# ---------------------------------------------------------------------------
# Planning
# ---------------------------------------------------------------------------

def round_up_to_even(j):
    return j if j % 2 == 0 else j + 1


def plan_one_mobile(n_left, n_right, j, jN=None):
    """Gadget programs and operation schedule for the one-mobile protocol.

    The schedule: carry the star leftward across every pair (all transits
    are through vacuum-total pairs and act trivially), then per pair from
    left to right: transit onto it, run the addition gadget, and if the
    pair is not the first on its side, integrate it with the side's
    composite web.  Finish by integrating the left web with the right web
    and applying the inverse of the addition sequence across the
    partition.
    """
    if n_left < 1 or n_right < 1:
        raise PlanningError("each side needs at least one pair")
    total_anyons = 2 * (n_left + n_right) + 2
    if total_anyons > MAX_PROTOCOL_ANYONS:
        raise PlanningError(
            f"{total_anyons} anyons exceeds the protocol limit of {MAX_PROTOCOL_ANYONS}"
        )
    if j < 0:
        raise PlanningError(f"gadget order j must be >= 0, got {j}")
    if jN is None:
        jN = round_up_to_even(j)
    if jN % 2 != 0:
        raise PlanningError(
            "integration gadgets exist only at even order: "
            f"an order-{jN} word ends in the wrong machine state"
        )
    add = compile_weave(m_word(j, SEED_WEAVE), ("Nested", "D"))
    integrate = compile_weave(n_word(jN), ("Pair", "D"))
    inverse = invert_program(add)
    n = n_left + n_right
    schedule = [{"op": "transit-left", "pair": k} for k in range(n, 1, -1)]
    for k in range(1, n + 1):
        side = "L" if k <= n_left else "R"
        if k > 1:
            schedule.append({"op": "transit-right", "pair": k})
        schedule.append({"op": "add", "pair": k, "side": side})
        first = k == 1 or k == n_left + 1
        if not first:
            schedule.append({"op": "integrate", "pair": k, "side": side})
    schedule.append({"op": "cross-integrate"})
    schedule.append({"op": "inverse-add"})
    return {
        "n_left": n_left,
        "n_right": n_right,
        "j": j,
        "jN": jN,
        "add_program": add,
        "integrate_program": integrate,
        "inverse_program": inverse,
        "schedule": schedule,
        "add_exchanges": len(gadget_exchanges(add, 1)),
        "accepted_isotopy": ACCEPTED_LOOP_ISOTOPY,
    }


# ---------------------------------------------------------------------------
# Protocol state and execution
# ---------------------------------------------------------------------------

def init_protocol_state(assign_charges):
    """Row [partner, pair_1, ..., pair_n, star]; every pair and the
    (partner, star) pair created from vacuum."""
    states = {((1,), (0, 1)): 1.0 + 0j}
    for c in assign_charges:
        new = {}
        for (ch, p), a in states.items():
            if c == 0:
                new[(ch + (0, 0), p + (1, 1))] = a
            else:
                # vacuum pair inside ambient charge 1: superposed channels
                for x in (0, 1):
                    new[(ch + (1, 1), p + (x, 1))] = a * F_NP[x, 0]
        states = new
    return Chain({(ch + (1,), p + (0,)): a for (ch, p), a in states.items()})


class _Executor:
    """Runs a plan on one route, tracking object labels and geometry."""

    def __init__(self, assign_left, assign_right, plan, composite_route):
        self.plan = plan
        self.comp = composite_route
        self.assign = tuple(assign_left) + tuple(assign_right)
        self.n_left = plan["n_left"]
        self.state = init_protocol_state(self.assign)
        self.labels = [("partner",)]
        for k in range(1, len(self.assign) + 1):
            self.labels += [("pair", k, 0), ("pair", k, 1)]
        self.labels.append(("star",))
        self.exchanges = 0

    # -- geometry helpers ------------------------------------------

    def _star(self):
        return self.labels.index(("star",))

    def _extent(self, pred):
        idxs = [i for i, t in enumerate(self.labels) if pred(t)]
        if not idxs or idxs != list(range(idxs[0], idxs[0] + len(idxs))):
            raise AssertionError(f"group not contiguous: {self.labels}")
        return idxs[0], len(idxs)

    def _braid(self, pos, ccw):
        self.state = self.state.braid_adjacent(pos, ccw)
        self.exchanges += 1

    # -- operations ------------------------------------------------

    def transit(self, rightward):
        """Carry the star across the adjacent pair (two same-handed
        exchanges; trivial on vacuum-total pairs)."""
        si = self._star()
        for _ in range(2):
            if rightward:
                self._braid(si + 1, True)
                self.labels[si], self.labels[si + 1] = self.labels[si + 1], self.labels[si]
                si += 1
            else:
                self._braid(si, True)
                self.labels[si - 1], self.labels[si] = self.labels[si], self.labels[si - 1]
                si -= 1

    def run_gadget(self, program, pred1, pred2):
        i1, m1 = self._extent(pred1)
        i2, m2 = self._extent(pred2)
        if i2 != i1 + m1 or self._star() != i2 + m2:
            raise AssertionError(f"gadget geometry violated: {self.labels}")
        for pos, ccw in gadget_exchanges(program, i1 + 1, m1, m2):
            self._braid(pos, ccw)

    def merge_group(self, pred, new_label):
        i0, m = self._extent(pred)
        for _ in range(m - 1):
            self.state = self.state.merge(i0 + 1).prune()
        del self.labels[i0:i0 + m]
        self.labels.insert(i0, new_label)

    def _web(self, side):
        return lambda t: t[0] == "web" and t[1] == side

    def execute(self):
        plan = self.plan
        add, integ, inverse = (
            plan["add_program"],
            plan["integrate_program"],
            plan["inverse_program"],
        )
        for step in plan["schedule"]:
            op = step["op"]
            if op == "transit-left":
                self.transit(False)
            elif op == "transit-right":
                self.transit(True)
            elif op == "add":
                k = step["pair"]
                self.run_gadget(
                    add,
                    lambda t, k=k: t == ("pair", k, 0),
                    lambda t, k=k: t == ("pair", k, 1),
                )
                side = step["side"]
                first = not any(t[0] in ("web", "pairc") and t[1] == side for t in self.labels)
                if self.comp:
                    self.merge_group(
                        lambda t, k=k: t[0] == "pair" and t[1] == k, ("pairc", side, k)
                    )
                    if first:
                        i0, _ = self._extent(lambda t: t == ("pairc", side, k))
                        self.labels[i0] = ("web", side)
                else:
                    for i, t in enumerate(self.labels):
                        if t[0] == "pair" and t[1] == k:
                            self.labels[i] = ("web", side, k, t[2])
            elif op == "integrate":
                side = step["side"]
                k = step["pair"]
                pred2 = (
                    (lambda t: t == ("pairc", side, k))
                    if self.comp
                    else (lambda t: t[0] == "web" and t[1] == side and t[2] == k)
                )
                pred1 = (
                    self._web(side)
                    if self.comp
                    else (lambda t: t[0] == "web" and t[1] == side and t[2] < k)
                )
                self.run_gadget(integ, pred1, pred2)
                if self.comp:
                    self.merge_group(
                        lambda t: t == ("pairc", side, k) or t == ("web", side),
                        ("web", side),
                    )
            elif op == "cross-integrate":
                self.run_gadget(integ, self._web("L"), self._web("R"))
            elif op == "inverse-add":
                self.run_gadget(inverse, self._web("L"), self._web("R"))
            else:
                raise AssertionError(f"unknown op {op}")
            self.state.prune(1e-18)
        return self

    # -- readout ---------------------------------------------------

    def readout(self):
        """Fold each side into one composite and change basis to the
        joint channel of the two composites.

        Success amplitude per internal sector: sum_l F[l, 0] amp(1, 1, l)
        over the label l between the composites; probabilities add across
        sectors.  Also reports the left marginal P[left composite = 1].
        """
        self.merge_group(self._web("L"), ("final", "L"))
        self.merge_group(self._web("R"), ("final", "R"))
        sectors = {}
        marginal = 0.0
        for (ch, p), a in self.state.amps.items():
            d_left, d_right = ch[1], ch[2]
            if root(d_left) == 1:
                marginal += abs(a) ** 2
            if root(d_left) == 1 and root(d_right) == 1:
                sectors.setdefault((d_left, d_right), {}).setdefault(p[2], 0)
                sectors[(d_left, d_right)][p[2]] += a
        joint = sum(
            abs(sum(F_NP[l, 0] * amps.get(l, 0) for l in (0, 1))) ** 2
            for amps in sectors.values()
        )
        return {
            "probability": float(joint),
            "marginal_left": float(marginal),
            "norm": self.state.norm(),
            "exchanges": self.exchanges,
        }


def run_end_to_end(assign_left, assign_right, j, jN=None, route="physical"):
    """Run the full protocol for one definite pair-charge assignment.

    Returns a dict with the joint success probability (both side
    composites nontrivial and jointly in the vacuum channel), the left
    marginal, the route used, and exchange counts.
    """
    if route not in ("physical", "composite"):
        raise ValueError(f"route must be 'physical' or 'composite', got {route!r}")
    for c in tuple(assign_left) + tuple(assign_right):
        if c not in (0, 1):
            raise ValueError(f"pair charges must be 0 or 1, got {c!r}")
    plan = plan_one_mobile(len(assign_left), len(assign_right), j, jN)
    ex = _Executor(assign_left, assign_right, plan, route == "composite").execute()
    result = ex.readout()
    result.update(
        {
            "route": route,
            "j": plan["j"],
            "jN": plan["jN"],
            "assign_left": tuple(assign_left),
            "assign_right": tuple(assign_right),
            "accepted_isotopy": ACCEPTED_LOOP_ISOTOPY,
            "add_exchanges": plan["add_exchanges"],
        }
    )
    return result


# ---------------------------------------------------------------------------
# Closed forms and exact aggregation
# ---------------------------------------------------------------------------

def one_mobile_floor(n, p):
    """(1 - (1-p)^n)^2: both sides hold at least one nontrivial pair."""
    p = Fraction(p)
    return (1 - (1 - p) ** n) ** 2


def hierarchical_floor(n, p):
    p = Fraction(p)
    return 1 - (1 - p) ** n


def merge_success(p, eps):
    """1 - (1-p)^2 - eps p^2: one pairwise merge with failure rate eps."""
    p, eps = Fraction(p), Fraction(eps)
    return 1 - (1 - p) ** 2 - eps * p**2


def epsilon_prob(j):
    """Residual of the order-j addition gadget, amplitude and probability."""
    amp = TAU_F ** -(2 * 5**j)
    return {"amplitude_residual": amp, "probability": amp**2}


def hierarchical_success(n, p, eps=0):
    """Pairwise-merge tree over n pairs: q_{k+1} = 1 - (1-q_k)^2 - eps q_k^2."""
    if n < 2 or n & (n - 1) != 0:
        raise PlanningError(f"hierarchical merging needs a power-of-two pair count, got {n}")
    q = Fraction(p)
    eps = Fraction(eps)
    for _ in range(int(math.log2(n))):
        q = 1 - (1 - q) ** 2 - eps * q**2
    return q


def one_mobile_assignment_success(assign_left, assign_right, j, jN=None):
    """Gadget-level success probability for one definite assignment,
    computed on the composite route."""
    return run_end_to_end(assign_left, assign_right, j, jN, route="composite")[
        "probability"
    ]


def _assignments(n):
    out = [()]
    for _ in range(n):
        out = [a + (c,) for a in out for c in (0, 1)]
    return out


def exact_success(scheme, n, p, j=None, eps=None):
    """Exact success probability of a scheme over n pairs per side.

    With no gadget order (perfect gadgets) the closed forms are returned
    as exact rationals.  With a gadget order j, the one-mobile scheme is
    aggregated over all pair-charge assignments with the per-assignment
    probabilities simulated on the composite route; the hierarchical
    recursion takes the order-j residual as its merge failure rate unless
    eps is given explicitly.
    """
    if scheme == "one-mobile":
        if j is None:
            return one_mobile_floor(n, p)
        if n > 2:
            raise PlanningError(
                "gadget-level enumeration is supported for at most 2 pairs per side"
            )
        p = float(p)
        total = 0.0
        for left in _assignments(n):
            for right in _assignments(n):
                weight = 1.0
                for c in left + right:
                    weight *= p if c else 1 - p
                if any(left) and any(right):
                    total += weight * one_mobile_assignment_success(left, right, j)
        return total
    if scheme == "hierarchical":
        if eps is None:
            eps = 0 if j is None else epsilon_prob(j)["probability"]
        return hierarchical_success(n, p, eps)
    raise ValueError(f"unknown scheme {scheme!r}")


# ---------------------------------------------------------------------------
# Monte Carlo
# ---------------------------------------------------------------------------

def monte_carlo(scheme, n, p, trials, seed, j=None, eps=None):
    """Sample the scheme with a counter-based generator (Philox).

    Returns estimate, standard error and the raw success count.  The
    stream is fully determined by the seed.
    """
    rng = np.random.Generator(np.random.Philox(key=np.uint64(seed)))
    p = float(p)
    if scheme == "one-mobile":
        left = rng.random((trials, n)) < p
        right = rng.random((trials, n)) < p
        if j is None:
            success = left.any(axis=1) & right.any(axis=1)
        else:
            if n > 2:
                raise PlanningError(
                    "gadget-level enumeration is supported for at most 2 pairs per side"
                )
            probs = {
                (l, r): one_mobile_assignment_success(l, r, j)
                if any(l) and any(r)
                else 0.0
                for l in _assignments(n)
                for r in _assignments(n)
            }
            per_trial = np.array(
                [
                    probs[(tuple(int(c) for c in l), tuple(int(c) for c in r))]
                    for l, r in zip(left, right)
                ]
            )
            success = rng.random(trials) < per_trial
    elif scheme == "hierarchical":
        if n < 2 or n & (n - 1) != 0:
            raise PlanningError(
                f"hierarchical merging needs a power-of-two pair count, got {n}"
            )
        if eps is None:
            eps = 0.0 if j is None else epsilon_prob(j)["probability"]
        eps = float(eps)
        level = rng.random((trials, n)) < p
        while level.shape[1] > 1:
            a, b = level[:, 0::2], level[:, 1::2]
            both = a & b
            fail = rng.random(both.shape) < eps
            level = (a | b) & ~(both & fail)
        success = level[:, 0]
    else:
        raise ValueError(f"unknown scheme {scheme!r}")
    k = int(success.sum())
    est = k / trials
    return {
        "successes": k,
        "trials": trials,
        "estimate": est,
        "std_error": math.sqrt(max(est * (1 - est), 1e-300) / trials),
    }


# ---------------------------------------------------------------------------
# Braid-cost accounting
# ---------------------------------------------------------------------------

def gadget_word_length(j):
    """Elementary exchanges of the order-j word in generator form (3*5^j - 2)."""
    return generator_braid_count(generator_word(j))


def braid_cost(n, j):
    """Exchange-count ledger for hierarchically merging n pairs at order j.

    Level k performs n/2^k merges, each a length-l_j word whose strands
    span composites of 2^{k-1} pairs, costing l_j * (2^{k-1})^2 exchanges
    per merge when every generator is expanded through the span.  Reports
    each level, the literal total l_j * n(n-1)/2, and the dominant final
    level l_j * (n/2)^2 that carries the quadratic scaling.
    """
    if n < 2 or n & (n - 1) != 0:
        raise PlanningError(f"hierarchical merging needs a power-of-two pair count, got {n}")
    lj = gadget_word_length(j)
    levels = []
    total = 0
    for k in range(1, int(math.log2(n)) + 1):
        merges = n >> k
        span = (1 << (k - 1)) ** 2
        cost = merges * lj * span
        total += cost
        levels.append(
            {
                "level": k,
                "merges": merges,
                "word_length": lj,
                "span_factor": span,
                "exchanges": cost,
            }
        )
    return {
        "n": n,
        "j": j,
        "word_length": lj,
        "levels": levels,
        "total_literal": total,
        "total_dominant": lj * (n // 2) ** 2,
        "asymptotics": {
            "this_scheme": "O(n^2 log(n/eps)) exchanges for n = Theta(1/p) pairs",
            "prior_exponent": "5 + delta",
            "this_exponent": 3,
            "with_fusion": "O((1/p) log^2(1/eps))",
        },
    }


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------

@dataclass
class DistillReport:
    scheme: str
    n: int
    j: int | None
    p: float
    exact_probability: float
    sampled_probability: float | None
    std_error: float | None
    braid_counts: dict
    seed: int | None

    def to_json(self):
        return json.dumps(asdict(self), sort_keys=True)


def simulate_report(scheme, n, p, trials=0, seed=None, j=None, eps=None):
    """Exact value plus optional sampling, bundled for serialization."""
    p_frac = p if isinstance(p, Fraction) else Fraction(str(p))
    exact = exact_success(scheme, n, p_frac, j=j, eps=eps)
    sampled = std_error = None
    if trials:
        mc = monte_carlo(scheme, n, float(p_frac), trials, seed or 0, j=j, eps=eps)
        sampled, std_error = mc["estimate"], mc["std_error"]
    if scheme == "one-mobile" and j is not None:
        plan = plan_one_mobile(n, n, j)
        res = run_end_to_end([1] * n, [1] * n, j, route="composite")
        counts = {"gadget": plan["add_exchanges"], "total": res["exchanges"]}
    elif scheme == "hierarchical" and j is not None:
        cost = braid_cost(n, j)
        counts = {"gadget": cost["word_length"], "total": cost["total_literal"]}
    else:
        counts = {"gadget": 0, "total": 0}
    return DistillReport(
        scheme=scheme,
        n=n,
        j=j,
        p=float(p_frac),
        exact_probability=float(exact),
        sampled_probability=sampled,
        std_error=std_error,
        braid_counts=counts,
        seed=seed,
    )
