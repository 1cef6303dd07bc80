"""独立集、生成秩与秩报告"""

from itertools import combinations

import pytest

from geomrank.gallery import example2
from geomrank.rank import (
    check_order,
    enumerate_bases,
    generating_rank,
    greedy_basis,
    greedy_spanning,
    independence_witness,
    is_generating,
    is_independent,
    is_independent_by_definition,
    max_independent,
    rank_report,
)
from geomrank.utils.budget import Budget
from geomrank.utils.errors import BudgetExceeded, InvalidPoint, NotDistinct, UnsupportedParameter


def test_independence_on_fano(fano):
    assert is_independent(fano, [0, 1, 3])
    assert not is_independent(fano, [0, 1, 2])
    assert is_independent(fano, [])


def test_criterion_matches_definition():
    G = example2(3)
    for size in range(5):
        for subset in combinations(range(G.n_points), size):
            assert is_independent(G, subset) == is_independent_by_definition(G, subset), subset


def test_check_order():
    G = example2(3)
    assert check_order(G, [3, 1]) == [3, 1]
    with pytest.raises(NotDistinct):
        check_order(G, [1, 1])
    with pytest.raises(InvalidPoint):
        check_order(G, [7])


def test_greedy_basis_on_fano(fano):
    basis = greedy_basis(fano, range(7))
    assert basis == [0, 1, 3]
    assert is_generating(fano, basis)


def test_greedy_basis_can_stall_without_exchange_property(example2_4):
    # C 先扫描：C 独立但不生成，其后的每个点都会使集合相关
    kept = greedy_basis(example2_4, [5, 6, 7, 8, 0, 1, 2, 3, 4])
    assert kept == [5, 6, 7, 8]
    assert is_independent(example2_4, kept)
    assert not is_generating(example2_4, kept)


def test_greedy_spanning_generates(example2_4):
    kept = greedy_spanning(example2_4, range(9))
    assert kept == [0, 1, 2]
    assert is_generating(example2_4, kept)


class TestGeneratingRank:
    def test_fano(self, fano):
        value = generating_rank(fano)
        assert value.exact and value.value == 3
        assert is_generating(fano, value.witness)

    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_example2_has_rank_three(self, n):
        G = example2(n)
        value = generating_rank(G)
        assert value.value == 3
        assert is_generating(G, value.witness)

    def test_pg32(self, pg32):
        assert generating_rank(pg32).value == 4

    def test_budget_exceeded_reports_bounds(self, pg32):
        with pytest.raises(BudgetExceeded) as info:
            generating_rank(pg32, Budget(span_calls=20))
        partial = info.value.partial
        assert partial["upper"] == 4
        assert 1 <= partial["lower"] <= 4
        assert is_generating(pg32, partial["witness"])


class TestBases:
    def test_fano_has_28_bases_of_size_three(self, fano):
        bases = enumerate_bases(fano)
        assert len(bases) == 28
        assert {len(b) for b in bases} == {3}
        assert bases == sorted(bases)

    def test_bases_are_minimal_generating_sets(self):
        G = example2(3)
        bases = enumerate_bases(G)
        assert min(len(b) for b in bases) == 3
        for b in bases:
            assert is_generating(G, b)
            assert not any(is_generating(G, [p for p in b if p != x]) for x in b)

    def test_refuses_large_geometry(self, pg32):
        with pytest.raises(UnsupportedParameter):
            enumerate_bases(pg32)


class TestIndependentSets:
    def test_witness_reaches_target(self, example2_4):
        found = independence_witness(example2_4, 4)
        assert found is not None and len(found) >= 4
        assert is_independent(example2_4, found)

    def test_impossible_target(self, fano):
        assert independence_witness(fano, 8) is None
        assert independence_witness(fano, 0) == []

    def test_max_independent_exact_on_small_geometry(self, example2_4):
        size, witness, exact = max_independent(example2_4)
        assert exact
        assert size >= 4 and len(witness) == size
        assert is_independent(example2_4, witness)

    def test_max_independent_fano(self, fano):
        assert max_independent(fano)[0] == 3


class TestRankReport:
    def test_fano(self, fano):
        report = rank_report(fano)
        assert report.rk_gen.value == 3
        assert report.rk_wo.value == 3
        assert report.ep.status == "holds"
        assert report.basis_sizes == [3] * 28
        assert report.basis_sizes_exhaustive
        assert report.rk_ind_lower == 3 and report.rk_ind_exact

    def test_example2(self, example2_4):
        report = rank_report(example2_4)
        assert report.rk_gen.value == 3
        assert report.rk_wo.value == 5
        assert report.ep.status == "fails"
        assert report.rk_ind_lower >= 4
        assert report.rk_gen.value < report.rk_wo.value

    def test_degrades_to_bounds_when_lattice_budget_is_small(self, fano):
        report = rank_report(fano, budget=Budget(lattice_subspaces=2))
        assert not report.rk_wo.exact
        assert report.rk_wo.lower == 3
        assert report.rk_gen.value == 3

    def test_json_is_stable(self, fano):
        assert rank_report(fano).model_dump_json() == rank_report(fano).model_dump_json()
