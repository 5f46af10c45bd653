"""
Theorem engine module.

Executes the partial list coloring scheme behind lambda_t >= q_{s,t} n:

1. augment every t-list with fresh colors pi_1..pi_u (u = s - t) and take an
   s-list coloring phi of the augmented lists;
2. I_i = phi^-1(pi_i) are independent sets, H is everything else;
3. split the palette R into classes R_0..R_u (R_0 with probability q, every
   other class with probability (1 - q)/u);
4. color an H-vertex with phi(v) when phi(v) lands in R_0, and a vertex of I_i
   with a list color that lands in R_i.

Every vertex ends up colored with probability q. derandomize fixes the classes
one color at a time by conditional expectations, which never lets the expected
count drop below q n.
"""
import logging
import math
from typing import Dict, List, Optional

import numpy as np

from app.core.config import settings
from app.core.exceptions import (
    GuaranteeViolationError,
    InvalidParametersError,
    SchemeInapplicableError,
)
from app.schemas.graph import Graph, ListAssignment, PartialColoring
from app.schemas.scheme import (
    ColorPartition,
    MonteCarloEstimate,
    SchemeOutcome,
    SchemeState,
)
from app.services.analytic_bounds import compute_q, make_params
from app.services.exact_solvers import find_list_coloring
from app.services.graph_core import check_covers, degeneracy_bound, validate_partial

logger = logging.getLogger(__name__)

# Arithmetic slack when asserting the conditional expectation never decreases.
_EXPECTATION_SLACK = 1e-12


def build_scheme(
    g: Graph,
    l: ListAssignment,
    s: int,
    budget: Optional[int] = None,
) -> SchemeState:
    """
    Augment the lists and split the vertices into H and I_1..I_u.

    Args:
        g: graph
        l: lists of a common size t
        s: augmented list size, s > t
        budget: node budget for the coloring search

    Returns:
        SchemeState: phi, the augmentation colors, I_1..I_u, H and R

    Raises:
        InvalidParametersError: on an empty graph, or unless the lists share a size t with s > t > 0
        SchemeInapplicableError: if the augmented lists admit no coloring
    """
    if g.n == 0:
        raise InvalidParametersError("the scheme needs a graph with at least one vertex")
    check_covers(g, l)
    t = l.list_size
    if t is None:
        raise InvalidParametersError("the scheme needs lists of one common size t")
    params = make_params(s, t)
    u = params.u
    greedy_bound = degeneracy_bound(g)
    if s < greedy_bound:
        logger.warning(
            f"s={s} is below degeneracy + 1 = {greedy_bound}; the graph may not be {s}-choosable"
        )

    palette = l.palette
    base = max(palette)
    pi_colors = [base + i for i in range(1, u + 1)]
    augmented = ListAssignment(
        lists={v: l.lists[v] | frozenset(pi_colors) for v in g.vertices},
        uniform_size=s,
    )

    phi = find_list_coloring(g, augmented, budget)
    if phi is None:
        logger.error(f"No {s}-list coloring of the augmented lists exists")
        raise SchemeInapplicableError(
            f"graph has no coloring from the augmented {s}-lists; it is not {s}-choosable"
        )

    colors = phi.colored
    independent_sets = [
        frozenset(v for v, c in colors.items() if c == pi) for pi in pi_colors
    ]
    core = frozenset(v for v, c in colors.items() if c in palette)
    state = SchemeState(
        s=s,
        t=t,
        lists=l,
        phi=colors,
        pi_colors=pi_colors,
        independent_sets=independent_sets,
        core=core,
        palette=palette,
    )
    logger.info(
        f"Scheme built: n={g.n}, t={t}, s={s}, |H|={len(core)}, "
        f"|I_i|={[len(members) for members in independent_sets]}"
    )
    return state


def _check_q(q: float) -> None:
    if not (0.0 < q < 1.0):
        raise InvalidParametersError(f"q must lie in (0, 1), got {q}")


def _class_probabilities(q: float, u: int) -> np.ndarray:
    return np.array([q] + [(1.0 - q) / u] * u)


def random_partition(state: SchemeState, q: float, seed: int) -> ColorPartition:
    """
    Put every color of R, in ascending order, in R_0 with probability q and in
    each R_i (1 <= i <= u) with probability (1 - q)/u.
    """
    _check_q(q)
    rng = np.random.default_rng(seed)
    colors = sorted(state.palette)
    draws = rng.choice(state.u + 1, size=len(colors), p=_class_probabilities(q, state.u))
    return ColorPartition.from_assignment(
        {c: int(k) for c, k in zip(colors, draws)},
        state.u,
    )


def color_from_partition(state: SchemeState, partition: ColorPartition) -> PartialColoring:
    """Apply the coloring rule for H and I_1..I_u to one partition of R."""
    colors: Dict[int, Optional[int]] = {}
    r0 = partition.classes[0]
    for v in state.core:
        colors[v] = state.phi[v] if state.phi[v] in r0 else None
    for i, members in enumerate(state.independent_sets, start=1):
        ri = partition.classes[i]
        for v in members:
            usable = state.lists.lists[v] & ri
            colors[v] = min(usable) if usable else None
    return PartialColoring(colors=dict(sorted(colors.items())))


def monte_carlo(
    g: Graph,
    l: ListAssignment,
    s: int,
    trials: int,
    seed: int,
    state: Optional[SchemeState] = None,
) -> MonteCarloEstimate:
    """
    Estimate the colored fraction of the random scheme.

    Trial k uses seed + k, so trials are independent of each other and of how
    they are scheduled.
    """
    if trials <= 0:
        raise InvalidParametersError(f"trials must be positive, got {trials}")
    if g.n == 0:
        raise InvalidParametersError("Monte Carlo needs a graph with at least one vertex")
    state = build_scheme(g, l, s) if state is None else state
    q = compute_q(make_params(state.s, state.t)).q

    fractions = np.empty(trials)
    for k in range(trials):
        partition = random_partition(state, q, seed + k)
        fractions[k] = color_from_partition(state, partition).colored_count / g.n

    stddev = float(fractions.std(ddof=1)) if trials > 1 else 0.0
    estimate = MonteCarloEstimate(
        q=q,
        trials=trials,
        seed=seed,
        mean_fraction=float(fractions.mean()),
        stddev=stddev,
        stderr=stddev / math.sqrt(trials),
    )
    logger.info(
        f"Monte Carlo: mean fraction {estimate.mean_fraction:.4f} "
        f"(q={q:.4f}, stderr={estimate.stderr:.4f}, trials={trials})"
    )
    return estimate


class ConditionalExpectation:
    """
    Expected number of colored vertices given the classes decided so far.

    An H-vertex contributes 1, 0 or q as phi(v) is decided into R_0, decided
    elsewhere or undecided. A vertex of I_i with list L contributes
    1 - prod_{c in L} m(c), where m(c) is 0 if c is in R_i, 1 if c is decided
    elsewhere and 1 - (1 - q)/u while undecided.
    """

    def __init__(self, state: SchemeState, q: float):
        self.state = state
        self.q = q
        self.miss = 1.0 - (1.0 - q) / state.u
        self.decided: Dict[int, int] = {}
        self.vertex_class = {v: 0 for v in state.core}
        for i, members in enumerate(state.independent_sets, start=1):
            for v in members:
                self.vertex_class[v] = i

        self.affected: Dict[int, List[int]] = {c: [] for c in state.palette}
        for v in state.core:
            self.affected[state.phi[v]].append(v)
        for i, members in enumerate(state.independent_sets, start=1):
            for v in members:
                for c in state.lists.lists[v]:
                    self.affected[c].append(v)

        self.terms = {v: self._term(v) for v in self.vertex_class}
        self.total = sum(self.terms.values())

    def _term(self, v: int) -> float:
        i = self.vertex_class[v]
        if i == 0:
            k = self.decided.get(self.state.phi[v])
            if k is None:
                return self.q
            return 1.0 if k == 0 else 0.0
        product = 1.0
        for c in self.state.lists.lists[v]:
            k = self.decided.get(c)
            if k is None:
                product *= self.miss
            elif k == i:
                return 1.0
        return 1.0 - product

    def value_if(self, color: int, k: int) -> float:
        """Expectation after deciding color into R_k."""
        previous = self.decided.get(color)
        self.decided[color] = k
        delta = sum(self._term(v) - self.terms[v] for v in self.affected[color])
        if previous is None:
            del self.decided[color]
        else:
            self.decided[color] = previous
        return self.total + delta

    def decide(self, color: int, k: int) -> float:
        self.decided[color] = k
        for v in self.affected[color]:
            new_term = self._term(v)
            self.total += new_term - self.terms[v]
            self.terms[v] = new_term
        return self.total


def derandomize(
    g: Graph,
    l: ListAssignment,
    s: int,
    state: Optional[SchemeState] = None,
    q: Optional[float] = None,
) -> SchemeOutcome:
    """
    Fix the partition by conditional expectations.

    Colors of R are decided in ascending order, each into the class that
    maximises the conditional expected colored count (ties to R_0, then the
    lowest index). The expectation starts at q n and never decreases, so the
    final coloring has at least ceil(q n - slack) colored vertices.

    Args:
        g: graph
        l: lists of a common size t
        s: augmented list size
        state: a prebuilt scheme (built from g, l, s when omitted)
        q: override for q_{s,t}; defaults to compute_q at tol 1e-12

    Raises:
        SchemeInapplicableError: propagated from build_scheme
        GuaranteeViolationError: if the expectation decreases or the bound fails
    """
    state = build_scheme(g, l, s) if state is None else state
    q = compute_q(make_params(state.s, state.t), tol=1e-12).q if q is None else q
    _check_q(q)

    expectation = ConditionalExpectation(state, q)
    trace = [expectation.total]
    logger.debug(f"Initial expectation {expectation.total:.9f} vs q n = {q * g.n:.9f}")

    for color in sorted(state.palette):
        best_k, best_value = 0, expectation.value_if(color, 0)
        for k in range(1, state.u + 1):
            value = expectation.value_if(color, k)
            if value > best_value:
                best_k, best_value = k, value
        before = expectation.total
        after = expectation.decide(color, best_k)
        if after < before - _EXPECTATION_SLACK:
            raise GuaranteeViolationError(
                f"conditional expectation fell from {before} to {after} at color {color}"
            )
        trace.append(after)

    partition = ColorPartition.from_assignment(expectation.decided, state.u)
    coloring = color_from_partition(state, partition)
    colored_count = coloring.colored_count
    guaranteed = math.ceil(q * g.n - settings.GUARANTEE_SLACK)
    if colored_count < guaranteed:
        raise GuaranteeViolationError(
            f"derandomized scheme colored {colored_count} < ceil(q n - slack) = {guaranteed}"
        )

    check = validate_partial(g, state.lists, coloring)
    if not check.ok:
        raise GuaranteeViolationError(f"scheme produced an invalid coloring: {check.violations}")

    logger.info(f"Derandomized scheme colored {colored_count}/{g.n} (guarantee {guaranteed})")
    return SchemeOutcome(
        s=state.s,
        t=state.t,
        coloring=coloring,
        colored_count=colored_count,
        expected_count=trace[0],
        guaranteed_minimum=guaranteed,
        q_used=q,
        seed=None,
        partition=partition,
        expectation_trace=trace,
    )


def run_random_scheme(
    g: Graph,
    l: ListAssignment,
    s: int,
    seed: int,
    state: Optional[SchemeState] = None,
) -> SchemeOutcome:
    """One draw of the random scheme, reported like a derandomized outcome."""
    state = build_scheme(g, l, s) if state is None else state
    q = compute_q(make_params(state.s, state.t)).q
    partition = random_partition(state, q, seed)
    coloring = color_from_partition(state, partition)
    return SchemeOutcome(
        s=state.s,
        t=state.t,
        coloring=coloring,
        colored_count=coloring.colored_count,
        expected_count=q * g.n,
        guaranteed_minimum=0,
        q_used=q,
        seed=seed,
        partition=partition,
    )
