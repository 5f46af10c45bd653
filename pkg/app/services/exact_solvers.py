"""
Exact solvers module.

Brute-force oracles for small graphs: list coloring existence, maximum partial
list coloring, s-choosability, the list-chromatic number and lambda_t.

Assignments are enumerated in restricted-growth form: vertices are scanned in
index order, each list in sorted order, and a color may only be introduced as
(largest color used so far) + 1. This quotients out color renaming, so a palette
of n * size colors is complete: no assignment needs more distinct colors.
"""
import itertools
import logging
from typing import Dict, FrozenSet, Iterator, List, Mapping, Optional, Sequence, Tuple

import networkx as nx

from app.core.config import settings
from app.core.exceptions import InvalidParametersError, ResourceBudgetExceeded
from app.schemas.graph import Graph, ListAssignment, PartialColoring
from app.schemas.solvers import ChiResult, ChoosabilityResult, LambdaResult
from app.services.graph_core import check_covers, degeneracy_bound, to_networkx

logger = logging.getLogger(__name__)

Lists = Mapping[int, FrozenSet[int]]


class SearchCounter:
    """Counts search nodes and enforces the node budget."""

    def __init__(self, budget: Optional[int] = None):
        self.budget = settings.NODE_BUDGET if budget is None else budget
        self.nodes = 0

    def tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.budget:
            logger.error(f"Node budget of {self.budget} exhausted")
            raise ResourceBudgetExceeded(self.nodes, self.budget)


def _earlier_neighbors(g: Graph) -> Dict[int, Tuple[int, ...]]:
    return {v: tuple(sorted(w for w in g.adjacency[v] if w < v)) for v in g.vertices}


def _backtrack(
    order: Sequence[int],
    lists: Lists,
    earlier: Mapping[int, Sequence[int]],
    counter: SearchCounter,
) -> Optional[Dict[int, int]]:
    """
    First total list coloring of the vertices in order, or None.

    earlier[v] must list exactly the neighbors of v that precede it in order.
    Iterative so that depth is not bounded by the recursion limit.
    """
    size = len(order)
    options: List[List[int]] = [[] for _ in range(size)]
    cursor = [0] * size
    colors: Dict[int, int] = {}
    pos = 0
    entering = True
    while 0 <= pos < size:
        v = order[pos]
        if entering:
            counter.tick()
            taken = {colors[w] for w in earlier[v]}
            options[pos] = [c for c in sorted(lists[v]) if c not in taken]
            cursor[pos] = 0
        if cursor[pos] < len(options[pos]):
            colors[v] = options[pos][cursor[pos]]
            cursor[pos] += 1
            pos += 1
            entering = True
        else:
            colors.pop(v, None)
            pos -= 1
            entering = False
    return colors if pos == size else None


def find_list_coloring(
    g: Graph,
    l: ListAssignment,
    budget: Optional[int] = None,
) -> Optional[PartialColoring]:
    """
    Find a total proper coloring from the lists, or None.

    Vertices are processed in index order and colors in ascending order, so the
    answer is the lexicographically first coloring.
    """
    check_covers(g, l)
    counter = SearchCounter(budget)
    colors = _backtrack(list(g.vertices), l.lists, _earlier_neighbors(g), counter)
    if colors is None:
        return None
    return PartialColoring(colors=colors)


def _max_partial(
    vertices: Sequence[int],
    lists: Lists,
    earlier: Mapping[int, Sequence[int]],
    counter: SearchCounter,
) -> Tuple[int, Dict[int, Optional[int]]]:
    size = len(vertices)
    colors: Dict[int, Optional[int]] = {}
    best_count = -1
    best_colors: Dict[int, Optional[int]] = {}

    def search(i: int, count: int) -> None:
        nonlocal best_count, best_colors
        counter.tick()
        # only strictly better colorings replace the incumbent
        if count + (size - i) <= best_count:
            return
        if i == size:
            best_count = count
            best_colors = dict(colors)
            return
        v = vertices[i]
        taken = {colors[w] for w in earlier[v]}
        for c in sorted(lists[v]):
            if c not in taken:
                colors[v] = c
                search(i + 1, count + 1)
                if best_count == size:
                    return
        colors[v] = None
        search(i + 1, count)

    search(0, 0)
    return best_count, best_colors


def max_partial_colorable(
    g: Graph,
    l: ListAssignment,
    budget: Optional[int] = None,
) -> Tuple[int, PartialColoring]:
    """
    Maximum number of vertices properly colorable from the lists.

    Branch and bound over per-vertex choices (list colors ascending, then
    uncolored), bounded by colored-so-far plus vertices remaining. Ties go to the
    first optimum in that order.

    Returns:
        Tuple[int, PartialColoring]: the optimum and a coloring attaining it
    """
    check_covers(g, l)
    counter = SearchCounter(budget)
    count, colors = _max_partial(list(g.vertices), l.lists, _earlier_neighbors(g), counter)
    return count, PartialColoring(colors=colors)


def canonical_list_choices(used: int, size: int, cap: int) -> Iterator[Tuple[FrozenSet[int], int]]:
    """
    Lists of the given size allowed for the next vertex.

    Colors 1..used are already introduced; new colors must be used + 1, used + 2, ...
    Yields (list, colors used afterwards), fewest new colors first.
    """
    for new in range(0, size + 1):
        reused = size - new
        if reused > used or used + new > cap:
            continue
        fresh = tuple(range(used + 1, used + new + 1))
        for old in itertools.combinations(range(1, used + 1), reused):
            yield frozenset(old + fresh), used + new


def iter_canonical_assignments(
    n: int,
    size: int,
    cap: Optional[int] = None,
) -> Iterator[Tuple[FrozenSet[int], ...]]:
    """All restricted-growth assignments of size-lists to n vertices."""
    cap = n * size if cap is None else cap

    def walk(i: int, used: int, prefix: Tuple[FrozenSet[int], ...]):
        if i == n:
            yield prefix
            return
        for choice, next_used in canonical_list_choices(used, size, cap):
            yield from walk(i + 1, next_used, prefix + (choice,))

    yield from walk(0, 0, ())


def _complete_prefix(n: int, lists: Dict[int, FrozenSet[int]], used: int, size: int, cap: int) -> ListAssignment:
    """Give the vertices after a bad prefix their first canonical lists."""
    completed = dict(lists)
    for v in range(len(lists) + 1, n + 1):
        choice, used = next(canonical_list_choices(used, size, cap))
        completed[v] = choice
    return ListAssignment(lists=completed, uniform_size=size)


def _check_size(name: str, size: int, n: int, palette_cap: Optional[int]) -> int:
    if size < 1:
        raise InvalidParametersError(f"{name} must be at least 1, got {size}")
    cap = n * size if palette_cap is None else palette_cap
    if cap < size:
        raise InvalidParametersError(f"palette_cap {cap} is smaller than {name}={size}")
    return cap


def is_s_choosable(
    g: Graph,
    s: int,
    palette_cap: Optional[int] = None,
    budget: Optional[int] = None,
) -> ChoosabilityResult:
    """
    Decide s-choosability by enumerating canonical s-list assignments.

    A witness coloring is carried down the enumeration; when it cannot be
    extended to the next vertex the prefix is re-solved exactly. An uncolorable
    prefix makes every extension uncolorable, so the first one ends the search.

    Args:
        g: graph
        s: list size
        palette_cap: number of colors available (default n * s, which is complete)
        budget: node budget (default settings.NODE_BUDGET)

    Returns:
        ChoosabilityResult: ok, and on failure the first bad assignment found

    Raises:
        ResourceBudgetExceeded: if the enumeration exceeds the budget
    """
    cap = _check_size("s", s, g.n, palette_cap)
    counter = SearchCounter(budget)
    earlier = _earlier_neighbors(g)
    n = g.n
    lists: Dict[int, FrozenSet[int]] = {}

    def walk(v: int, used: int, witness: Dict[int, int]) -> Optional[ListAssignment]:
        if v > n:
            return None
        for choice, next_used in canonical_list_choices(used, s, cap):
            counter.tick()
            lists[v] = choice
            taken = {witness[w] for w in earlier[v]}
            free = sorted(choice - taken)
            if free:
                extended = dict(witness)
                extended[v] = free[0]
            else:
                extended = _backtrack(range(1, v + 1), lists, earlier, counter)
            if extended is None:
                logger.debug(f"Uncolorable prefix at vertex {v}: {lists}")
                return _complete_prefix(n, lists, next_used, s, cap)
            bad = walk(v + 1, next_used, extended)
            if bad is not None:
                return bad
        del lists[v]
        return None

    bad = walk(1, 0, {})
    logger.info(f"is_s_choosable(s={s}) on n={n}: {bad is None} after {counter.nodes} nodes")
    return ChoosabilityResult(s=s, ok=bad is None, bad=bad, nodes=counter.nodes)


def chromatic_number(g: Graph, budget: Optional[int] = None) -> int:
    """Least k such that lists {1..k} on every vertex admit a coloring."""
    if g.n == 0:
        return 0
    counter = SearchCounter(budget)
    earlier = _earlier_neighbors(g)
    for k in range(1, g.n + 1):
        palette = frozenset(range(1, k + 1))
        if _backtrack(list(g.vertices), {v: palette for v in g.vertices}, earlier, counter) is not None:
            return k
    return g.n


def max_independent_set(g: Graph) -> FrozenSet[int]:
    """A maximum independent set, as a maximum clique of the complement."""
    if g.n == 0:
        return frozenset()
    clique, _ = nx.max_weight_clique(nx.complement(to_networkx(g)), weight=None)
    return frozenset(clique)


def chi_ell(
    g: Graph,
    palette_cap: Optional[int] = None,
    budget: Optional[int] = None,
) -> ChiResult:
    """
    List-chromatic number, chromatic number and a bad assignment for chi_ell - 1.

    chi <= chi_ell <= degeneracy + 1, so only s in [chi, degeneracy] is enumerated;
    for s < chi identical lists {1..s} are already bad.
    """
    if g.n == 0:
        return ChiResult(chi_ell=0, chi=0, bad_assignment=None)
    chi = chromatic_number(g, budget)
    upper = degeneracy_bound(g)

    bad: Optional[ListAssignment] = None
    if chi > 1:
        identical = frozenset(range(1, chi))
        bad = ListAssignment(lists={v: identical for v in g.vertices}, uniform_size=chi - 1)

    for s in range(max(chi, 1), upper):
        result = is_s_choosable(g, s, palette_cap, budget)
        if result.ok:
            return ChiResult(chi_ell=s, chi=chi, bad_assignment=bad)
        bad = result.bad
    return ChiResult(chi_ell=upper, chi=chi, bad_assignment=bad)


def lambda_t(
    g: Graph,
    t: int,
    palette_cap: Optional[int] = None,
    budget: Optional[int] = None,
) -> LambdaResult:
    """
    lambda_t: minimum over t-list assignments of the maximum colorable count.

    Prunes a prefix once its own maximum partial coloring already reaches the
    incumbent (extensions can only color more), and stops once the incumbent
    equals the independence number, which bounds lambda_t from below.

    Raises:
        ResourceBudgetExceeded: if the enumeration exceeds the budget
    """
    cap = _check_size("t", t, g.n, palette_cap)
    counter = SearchCounter(budget)
    earlier = _earlier_neighbors(g)
    n = g.n
    floor = len(max_independent_set(g))
    lists: Dict[int, FrozenSet[int]] = {}

    best_value = n + 1
    best_lists: Dict[int, FrozenSet[int]] = {}
    best_colors: Dict[int, Optional[int]] = {}
    visited = 0

    def walk(v: int, used: int) -> bool:
        """Returns True when the search can stop."""
        nonlocal best_value, best_lists, best_colors, visited
        if v > n:
            visited += 1
            count, colors = _max_partial(range(1, n + 1), lists, earlier, counter)
            if count < best_value:
                best_value, best_lists, best_colors = count, dict(lists), colors
                logger.debug(f"lambda_{t} incumbent {count} from {best_lists}")
            return best_value <= floor
        for choice, next_used in canonical_list_choices(used, t, cap):
            counter.tick()
            lists[v] = choice
            if 1 < v < n and best_value <= n:
                prefix_count, _ = _max_partial(range(1, v + 1), lists, earlier, counter)
                if prefix_count >= best_value:
                    continue
            if walk(v + 1, next_used):
                return True
        del lists[v]
        return False

    walk(1, 0)
    logger.info(f"lambda_{t} = {best_value} on n={n} ({visited} assignments, {counter.nodes} nodes)")
    return LambdaResult(
        t=t,
        value=best_value,
        witness_assignment=ListAssignment(lists=best_lists, uniform_size=t),
        witness_coloring=PartialColoring(colors=best_colors),
        assignments_visited=visited,
        nodes=counter.nodes,
    )


def lambda_t_naive(g: Graph, t: int, palette: Optional[int] = None) -> int:
    """
    lambda_t by plain enumeration: every t-subset of 1..palette per vertex and
    every color-or-uncolored choice per vertex. Only for tiny graphs.
    """
    palette = g.n * t if palette is None else palette
    subsets = list(itertools.combinations(range(1, palette + 1), t))
    vertices = list(g.vertices)
    best = g.n
    for assignment in itertools.product(subsets, repeat=g.n):
        most = 0
        for choice in itertools.product(*[lst + (None,) for lst in assignment]):
            colors = dict(zip(vertices, choice))
            if any(colors[a] is not None and colors[a] == colors[b] for a, b in g.edges):
                continue
            most = max(most, sum(c is not None for c in choice))
        best = min(best, most)
    return best
