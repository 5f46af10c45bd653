"""
Tests for the exact solvers service.
"""
import networkx as nx
import pytest

from app.core.exceptions import InvalidParametersError, ResourceBudgetExceeded
from app.schemas.graph import Graph, ListAssignment
from app.services import exact_solvers, graph_core, theorem_engine
from app.services.graph_core import GraphFamily


def test_find_list_coloring_identical_lists_on_k3(k3, identical_k3_lists):
    assert exact_solvers.find_list_coloring(k3, identical_k3_lists) is None


def test_find_list_coloring_is_lexicographically_first(k3):
    lists = ListAssignment(lists={v: frozenset({1, 2, 3}) for v in k3.vertices}, uniform_size=3)
    coloring = exact_solvers.find_list_coloring(k3, lists)
    assert coloring.colors == {1: 1, 2: 2, 3: 3}


def test_max_partial_colorable(k3, identical_k3_lists):
    count, coloring = exact_solvers.max_partial_colorable(k3, identical_k3_lists)
    assert count == 2
    check = graph_core.validate_partial(k3, identical_k3_lists, coloring)
    assert check.ok
    assert check.colored_count == 2


def test_canonical_assignments_of_single_colors_count_set_partitions():
    """Restricted-growth 1-lists on 3 vertices are the Bell(3) = 5 set partitions."""
    assignments = list(exact_solvers.iter_canonical_assignments(3, 1))
    assert len(assignments) == 5
    assert assignments[0] == (frozenset({1}),) * 3


def test_canonical_choices_introduce_colors_in_order():
    choices = list(exact_solvers.canonical_list_choices(used=1, size=2, cap=4))
    assert choices == [(frozenset({1, 2}), 2), (frozenset({2, 3}), 3)]


@pytest.mark.parametrize(
    "fixture_name,s,expected",
    [
        ("c4", 2, True),
        ("k3", 2, False),
        ("k3", 3, True),
        ("k33", 2, False),
        ("c5", 3, True),
    ],
)
def test_is_s_choosable(request, fixture_name, s, expected):
    g = request.getfixturevalue(fixture_name)
    result = exact_solvers.is_s_choosable(g, s)
    assert result.ok is expected
    if not expected:
        assert result.bad.list_size == s
        assert set(result.bad.lists) == set(g.vertices)
        assert exact_solvers.find_list_coloring(g, result.bad) is None


def test_is_s_choosable_respects_budget(k33):
    with pytest.raises(ResourceBudgetExceeded) as exc_info:
        exact_solvers.is_s_choosable(k33, 2, budget=3)
    assert exc_info.value.budget == 3


@pytest.mark.parametrize(
    "fixture_name,chi,chi_ell",
    [("k3", 3, 3), ("c4", 2, 2), ("c5", 3, 3)],
)
def test_chi_ell(request, fixture_name, chi, chi_ell):
    g = request.getfixturevalue(fixture_name)
    result = exact_solvers.chi_ell(g)
    assert (result.chi, result.chi_ell) == (chi, chi_ell)
    assert result.bad_assignment.list_size == chi_ell - 1
    assert exact_solvers.find_list_coloring(g, result.bad_assignment) is None


def test_chi_ell_of_edgeless_and_empty_graphs():
    edgeless = Graph(n=3)
    assert exact_solvers.chi_ell(edgeless).chi_ell == 1
    assert exact_solvers.chi_ell(edgeless).bad_assignment is None
    assert exact_solvers.chi_ell(Graph(n=0)).chi_ell == 0


def test_chromatic_number_and_independence(petersen, c5):
    assert exact_solvers.chromatic_number(petersen) == 3
    assert len(exact_solvers.max_independent_set(petersen)) == 4
    independent = exact_solvers.max_independent_set(c5)
    assert len(independent) == 2
    assert c5.is_independent(independent)


@pytest.mark.parametrize(
    "fixture_name,t,expected",
    [("k3", 1, 1), ("k3", 2, 2), ("k3", 3, 3), ("c5", 2, 4), ("c4", 1, 2)],
)
def test_lambda_t(request, fixture_name, t, expected):
    g = request.getfixturevalue(fixture_name)
    result = exact_solvers.lambda_t(g, t)
    assert result.value == expected
    check = graph_core.validate_partial(g, result.witness_assignment, result.witness_coloring)
    assert check.ok
    assert check.colored_count == expected


@pytest.mark.parametrize("t", [1, 2])
def test_lambda_t_agrees_with_naive_enumeration(k3, t):
    assert exact_solvers.lambda_t(k3, t).value == exact_solvers.lambda_t_naive(k3, t)


def test_lambda_t_on_path_agrees_with_naive():
    path = graph_core.generate(GraphFamily.PATH, 3)
    assert exact_solvers.lambda_t(path, 1).value == exact_solvers.lambda_t_naive(path, 1) == 2


def test_lambda_t_budget(c5):
    with pytest.raises(ResourceBudgetExceeded):
        exact_solvers.lambda_t(c5, 2, budget=10)


def test_lambda_t_rejects_bad_sizes(k3):
    with pytest.raises(InvalidParametersError):
        exact_solvers.lambda_t(k3, 0)
    with pytest.raises(InvalidParametersError):
        exact_solvers.lambda_t(k3, 2, palette_cap=1)


def _random_graph(n: int, seed: int) -> Graph:
    return graph_core.from_networkx(nx.gnp_random_graph(n, 0.5, seed=seed))


@pytest.mark.parametrize("seed", range(100))
def test_full_partial_coloring_iff_list_coloring_exists(seed):
    n = 2 + seed % 6
    g = _random_graph(n, seed)
    t = 1 + seed % 3
    lists = graph_core.random_list_assignment(g, t, palette=t + 2, seed=seed)
    count, _ = exact_solvers.max_partial_colorable(g, lists)
    assert (count == g.n) == (exact_solvers.find_list_coloring(g, lists) is not None)


@pytest.mark.parametrize("fixture_name,t_max", [("k3", 3), ("c4", 2), ("c5", 2)])
def test_lambda_t_is_monotone_in_t(request, fixture_name, t_max):
    g = request.getfixturevalue(fixture_name)
    values = [exact_solvers.lambda_t(g, t).value for t in range(1, t_max + 1)]
    assert values == sorted(values)


@pytest.mark.parametrize("seed", range(20))
def test_derandomized_scheme_never_beats_the_optimum(seed):
    g = _random_graph(4 + seed % 4, seed)
    t = 1 + seed % 2
    s = max(graph_core.degeneracy_bound(g), t + 1)
    lists = graph_core.random_list_assignment(g, t, palette=t + 2, seed=seed)
    outcome = theorem_engine.derandomize(g, lists, s)
    best, _ = exact_solvers.max_partial_colorable(g, lists)
    assert best >= outcome.colored_count
