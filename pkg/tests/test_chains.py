"""子空间链、链与独立集的互换、最长链与极大链"""

import pytest

from geomrank.chains import (
    Chain,
    chain_extensions_above_top,
    chain_from_independent,
    condense_generating_chain,
    enumerate_subspaces,
    extend_to_maximal,
    greedy_maximal_chain,
    independent_from_chain,
    is_basis_chain,
    is_maximal_chain,
    iter_maximal_chains,
    longest_chain,
    maximal_chain_lengths,
)
from geomrank.gallery.example2 import example2
from geomrank.rank import is_generating, is_independent
from geomrank.utils.budget import Budget
from geomrank.utils.errors import (
    BudgetExceeded,
    DependentInput,
    EmptyChain,
    InvalidChain,
    NotGenerating,
)

FULL = list(range(7))
FANO_CHAIN = [[], [0], [0, 1, 2], FULL]


class TestChain:
    def test_length_is_members_minus_one(self, fano):
        chain = Chain(fano, FANO_CHAIN)
        assert chain.length == 3
        assert chain.bottom.to_list() == [] and chain.top == fano.points
        assert chain.to_lists() == FANO_CHAIN

    def test_members_must_be_subspaces(self, fano):
        with pytest.raises(InvalidChain):
            Chain(fano, [[], [0, 1]])

    def test_members_must_strictly_increase(self, fano):
        with pytest.raises(InvalidChain):
            Chain(fano, [[0], [0]])
        with pytest.raises(InvalidChain):
            Chain(fano, [[0, 1, 2], [0]])

    def test_empty_chain(self, fano):
        with pytest.raises(EmptyChain):
            Chain(fano, [])


class TestConstruction:
    def test_chain_from_independent(self, fano):
        chain = chain_from_independent(fano, [0, 1, 3])
        assert chain.to_lists() == FANO_CHAIN
        assert chain.length == 3

    def test_chain_from_dependent_input(self, fano):
        with pytest.raises(DependentInput):
            chain_from_independent(fano, [0, 1, 2])

    def test_independent_from_chain_canonical(self, fano):
        picked = independent_from_chain(fano, FANO_CHAIN)
        assert picked.points == [0, 1, 3]
        assert picked.independent

    def test_independent_from_chain_seeded(self, fano):
        picked = independent_from_chain(fano, FANO_CHAIN, picker="seeded", seed=5)
        assert picked.points[0] == 0
        assert picked.points[1] in (1, 2)
        assert picked.points[2] in (3, 4, 5, 6)
        assert picked.independent

    def test_independent_from_chain_needs_empty_bottom(self, fano):
        with pytest.raises(InvalidChain):
            independent_from_chain(fano, [[0], [0, 1, 2]])

    def test_roundtrip_length(self, example2_4):
        chain = chain_from_independent(example2_4, [5, 6, 7, 8])
        assert chain.length == 4
        assert independent_from_chain(example2_4, chain).points == [5, 6, 7, 8]

    def test_condense_generating_chain(self, fano):
        condensed = condense_generating_chain(fano, [0, 1, 2, 3])
        assert condensed.chain.to_lists() == FANO_CHAIN
        assert condensed.points == [0, 1, 3]
        assert is_generating(fano, condensed.points)

    def test_condense_requires_generating_input(self, fano):
        with pytest.raises(NotGenerating):
            condense_generating_chain(fano, [0, 1])

    def test_basis_chain_conditions_agree_under_exchange(self, fano):
        report = is_basis_chain(fano, [0, 1, 3])
        assert report.is_basis and report.top_is_full and report.chain_is_maximal
        assert report.chain_length == 3
        partial = is_basis_chain(fano, [0, 1])
        assert not partial.is_basis and not partial.top_is_full and not partial.chain_is_maximal

    def test_independent_non_basis_in_example2(self, example2_4):
        report = is_basis_chain(example2_4, [5, 6, 7, 8])
        assert not report.is_basis
        assert not report.chain_is_maximal
        assert report.chain_length == 4

    @pytest.mark.parametrize("name", ["fano", "example2_4"])
    def test_extracted_points_rebuild_every_maximal_chain(self, request, name):
        G = request.getfixturevalue(name)
        for chain in iter_maximal_chains(G):
            extracted = independent_from_chain(G, chain)
            assert is_generating(G, extracted.points)
            if extracted.independent:
                rebuilt = chain_from_independent(G, extracted.points)
            else:
                rebuilt = condense_generating_chain(G, extracted.points).chain
            assert rebuilt.masks == chain.masks

    def test_non_maximal_chain_can_yield_basis_without_exchange(self):
        # {4,5} 夹在 {4} 与 C 之间
        G = example2(3)
        C = [[], [4], [4, 5, 6], list(range(7))]
        assert not is_maximal_chain(G, C).is_maximal
        extracted = independent_from_chain(G, C)
        assert extracted.points == [4, 5, 0]
        assert extracted.independent
        assert is_independent(G, extracted.points) and is_generating(G, extracted.points)

    def test_no_extensions_above_top_under_exchange(self, fano):
        assert chain_extensions_above_top(fano, [0, 1, 3]) == []
        assert chain_extensions_above_top(fano, [0, 1]) == []


class TestLattice:
    def test_subspace_counts(self, fano, pg32):
        assert len(enumerate_subspaces(fano)) == 16
        assert len(enumerate_subspaces(pg32)) == 67

    def test_subspaces_in_canonical_order(self, fano):
        subspaces = enumerate_subspaces(fano)
        assert subspaces[0] == 0 and subspaces[-1] == fano.full_mask
        sizes = [s.bit_count() for s in subspaces]
        assert sizes == sorted(sizes)

    @pytest.mark.parametrize("name, expected", [("fano", 3), ("pg32", 4), ("example2_4", 5)])
    def test_longest_chain(self, request, name, expected):
        G = request.getfixturevalue(name)
        length, chain = longest_chain(G)
        assert length == expected
        assert chain.length == expected
        assert is_maximal_chain(G, chain).is_maximal

    def test_fano_has_21_maximal_chains_of_length_three(self, fano):
        report = maximal_chain_lengths(fano)
        assert report.lengths == {3: 21}
        assert report.exhaustive
        chains = list(iter_maximal_chains(fano))
        assert len(chains) == 21
        assert all(c.length == 3 for c in chains)

    def test_pg32_maximal_chains_have_equal_length(self, pg32):
        assert maximal_chain_lengths(pg32).distinct == [4]

    def test_example2_maximal_chains_have_different_lengths(self, example2_4):
        distinct = maximal_chain_lengths(example2_4).distinct
        assert distinct[0] == 3
        assert distinct[-1] == 5

    def test_greedy_maximal_chain(self, fano):
        chain = greedy_maximal_chain(fano)
        assert chain.length == 3
        assert is_maximal_chain(fano, chain).is_maximal

    def test_longest_chain_budget(self, fano):
        with pytest.raises(BudgetExceeded) as info:
            longest_chain(fano, Budget(lattice_subspaces=2))
        assert info.value.partial["lower"] == 3
        assert info.value.partial["exact"] is False

    def test_chain_lengths_budget(self, fano):
        with pytest.raises(BudgetExceeded) as info:
            maximal_chain_lengths(fano, Budget(lattice_subspaces=2))
        assert info.value.partial["lengths"] == {3: 1}
        assert info.value.partial["exhaustive"] is False


class TestMaximality:
    def test_maximal(self, fano):
        assert is_maximal_chain(fano, FANO_CHAIN).is_maximal

    def test_first_not_empty(self, fano):
        report = is_maximal_chain(fano, [[0], FULL])
        assert report.violation == "first_not_empty"

    def test_last_not_full(self, fano):
        report = is_maximal_chain(fano, [[], [0]])
        assert report.violation == "last_not_full"

    def test_not_a_cover(self, fano):
        report = is_maximal_chain(fano, [[], [0], FULL])
        assert not report.is_maximal
        assert report.violation == "not_a_cover"
        assert report.index == 1
        assert report.between == [0, 1, 2]

    def test_extend_to_maximal(self, fano):
        extended = extend_to_maximal(fano, [[0]])
        assert extended.to_lists() == FANO_CHAIN
        assert extended.contains_chain(Chain(fano, [[0]]))

    def test_extend_keeps_maximal_chain(self, fano):
        assert extend_to_maximal(fano, FANO_CHAIN).to_lists() == FANO_CHAIN

    def test_extend_in_example2_reaches_full_set(self, example2_4):
        extended = extend_to_maximal(example2_4, [[5, 6]])
        assert is_maximal_chain(example2_4, extended).is_maximal
        assert [5, 6] in extended.to_lists()
