"""极空间：构造、极秩、nice 子空间、商几何、余秩与忠实性"""

import os

import pytest

from geomrank.chains import chain_from_independent
from geomrank.config.config import get_config
from geomrank.core import check_exchange_property, span_mask
from geomrank.polar import (
    build_polar,
    check_faithful,
    corank,
    disjoint_maximal_singulars,
    embedding_bounds,
    expected_point_count,
    greedy_singular_chain,
    hyperbolic_line,
    is_nice,
    maximal_singular_subspaces,
    polar_rank,
    quotient_geometry,
)
from geomrank.rank import generating_rank, is_independent
from geomrank.utils.errors import (
    BudgetExceeded,
    DegeneratePolarRank,
    NotASubspace,
    NotDistinct,
    NotNice,
    UnsupportedParameter,
)
from geomrank.verify import resolve_polar

slow = pytest.mark.skipif(
    os.getenv("GEOM_SLOW_TESTS", "0").lower() not in ("1", "true", "yes"),
    reason="慢测试，设置 GEOM_SLOW_TESTS=1 后运行",
)


def _span_of_pair(PG, seed=None):
    M, M_prime = disjoint_maximal_singulars(PG, seed)
    return span_mask(PG.geometry, M.mask | M_prime.mask)


class TestConstruction:
    @pytest.mark.parametrize(
        "kind, n, q, points",
        [("sp", 2, 2, 15), ("sp", 2, 3, 40), ("o-par", 2, 3, 40), ("o-minus", 2, 2, 27), ("o-plus", 2, 2, 9), ("sp", 2, 5, 156)],
    )
    def test_point_counts(self, kind, n, q, points):
        assert expected_point_count(kind, n, q) == points
        assert resolve_polar(f"{kind}:{n}:{q}").geometry.n_points == points

    def test_line_counts(self, sp42, qminus52):
        assert sp42.geometry.n_lines == 15
        assert qminus52.geometry.n_lines == 45

    def test_embedding_rows_are_singular_points(self, sp42):
        assert sp42.embedding.shape == (15, 4)
        for i, row in enumerate(sp42.embedding):
            assert sp42.point_of(row) == i

    def test_sidecar(self, sp42):
        sidecar = sp42.sidecar()
        assert sidecar["field"] == {"q": 2, "poly": ""}
        assert sidecar["dim"] == 4
        assert len(sidecar["vectors"]) == 15

    def test_hermitian_is_gated(self):
        with pytest.raises(UnsupportedParameter):
            build_polar("herm", 2, 4)
        get_config().set("polar.enable_hermitian", True)
        assert build_polar("hermitian", 2, 4).geometry.n_points == 45

    def test_point_cap(self):
        get_config().set("polar.point_cap", 100)
        with pytest.raises(BudgetExceeded):
            build_polar("sp", 2, 5)

    def test_unknown_kind(self):
        with pytest.raises(UnsupportedParameter):
            build_polar("orthogonal", 2, 3)


class TestSingularSubspaces:
    @pytest.mark.parametrize("name, n", [("sp:2:2", 2), ("sp:3:2", 3), ("o-par:2:3", 2), ("o-minus:2:2", 2)])
    def test_polar_rank_methods_agree(self, name, n):
        PG = resolve_polar(name)
        assert polar_rank(PG, "witt") == n
        assert polar_rank(PG, "chain") == n
        assert len(greedy_singular_chain(PG)) == n + 1

    def test_unknown_rank_method(self, sp42):
        with pytest.raises(UnsupportedParameter):
            polar_rank(sp42, "bogus")

    def test_maximal_singular_subspaces_of_sp42_are_its_lines(self, sp42):
        maximals = maximal_singular_subspaces(sp42)
        assert len(maximals) == 15
        assert sorted(maximals) == sorted(sp42.geometry.line_masks)

    def test_disjoint_pair(self, q43):
        M, M_prime = disjoint_maximal_singulars(q43)
        assert len(M) == len(M_prime) == 4
        assert M.isdisjoint(M_prime)

    def test_disjoint_pair_seeded(self, q43):
        M, M_prime = disjoint_maximal_singulars(q43, seed=3)
        assert M.isdisjoint(M_prime)
        assert M.mask in maximal_singular_subspaces(q43)

    def test_hyperbolic_line_is_independent(self):
        PG = resolve_polar("sp:2:3")
        G = PG.geometry
        y = next(p for p in range(1, G.n_points) if not G.collinear(0, p))
        line = hyperbolic_line(PG, 0, y)
        assert len(line) == 4
        assert is_independent(G, line)
        assert chain_from_independent(G, line).length == 4

    def test_hyperbolic_line_needs_non_collinear_points(self, sp42):
        G = sp42.geometry
        y = next(p for p in range(1, G.n_points) if G.collinear(0, p))
        with pytest.raises(UnsupportedParameter):
            hyperbolic_line(sp42, 0, y)
        with pytest.raises(NotDistinct):
            hyperbolic_line(sp42, 0, 0)

    def test_embedding_bounds(self, sp42):
        bounds = embedding_bounds(sp42, generating_rank(sp42.geometry))
        assert bounds.embedding_dim == 4 and bounds.polar_rank == 2
        assert bounds.dim_at_least_twice_prk
        assert bounds.rk_gen == 5
        assert bounds.rk_gen_at_least_dim
        assert bounds.dim_equals_rk_gen is False

    @pytest.mark.parametrize("name", ["sp42", "q42", "q43", "qminus52"])
    def test_generating_rank_at_least_twice_polar_rank(self, request, name):
        PG = request.getfixturevalue(name)
        rk_gen = generating_rank(PG.geometry)
        assert rk_gen.exact
        assert rk_gen.value >= 2 * PG.prk_algebraic
        bounds = embedding_bounds(PG, rk_gen)
        assert bounds.dim_at_least_twice_prk and bounds.rk_gen_at_least_dim

    def test_embedding_bounds_without_rank(self, sp42):
        bounds = embedding_bounds(sp42)
        assert bounds.rk_gen is None and bounds.dim_equals_rk_gen is None


class TestNiceSubspaces:
    def test_whole_space_is_nice(self, q43):
        assert is_nice(q43, q43.geometry.full_mask)

    def test_span_of_disjoint_pair_is_nice(self, q43):
        assert is_nice(q43, _span_of_pair(q43))

    def test_singular_subspace_is_not_nice(self, q43):
        M, _ = disjoint_maximal_singulars(q43)
        assert not is_nice(q43, M)

    def test_requires_subspace(self, sp42):
        G = sp42.geometry
        # 同一条线上的两点，线上第三点不在其中
        y = next(p for p in range(1, G.n_points) if G.collinear(0, p))
        with pytest.raises(NotASubspace):
            is_nice(sp42, [0, y])

    def test_quotient_of_elliptic_quadric(self, qminus52):
        quotient = quotient_geometry(qminus52, _span_of_pair(qminus52))
        assert quotient.geometry.n_points == 3
        assert quotient.geometry.n_lines == 1
        assert check_exchange_property(quotient.geometry).status == "holds"

    def test_quotient_of_parabolic_quadric(self, q43):
        quotient = quotient_geometry(q43, _span_of_pair(q43))
        assert quotient.geometry.n_points == 1

    def test_quotient_rejects_whole_space(self, q43):
        with pytest.raises(UnsupportedParameter):
            quotient_geometry(q43, q43.geometry.full_mask)

    def test_quotient_rejects_non_nice(self, q43):
        M, _ = disjoint_maximal_singulars(q43)
        with pytest.raises(NotNice):
            quotient_geometry(q43, M)


class TestCorank:
    @pytest.mark.parametrize("name, value", [("sp:2:3", 0), ("o-par:2:3", 1), ("o-minus:2:2", 2)])
    def test_methods_agree(self, name, value):
        PG = resolve_polar(name)
        assert corank(PG, method="perp").value == value
        assert corank(PG, method="chain").value == value

    @pytest.mark.parametrize("seed", [1, 2, 3])
    def test_chain_value_does_not_depend_on_seed(self, q43, seed):
        report = corank(q43, method="chain", seed=seed)
        assert report.value == 1
        assert len(report.witness_chain) == 2

    def test_report_fields(self, q43):
        report = corank(q43, method="perp")
        assert report.ambient_dim == 5
        assert len(report.M) == len(report.M_prime) == 4
        assert len(report.witness_subspace) == 1

    def test_methods_disagree_on_unfaithful_embedding(self, sp42):
        assert corank(sp42, method="chain").value == 1
        assert corank(sp42, method="perp").value == 0

    def test_degenerate_polar_rank(self):
        with pytest.raises(DegeneratePolarRank):
            corank(build_polar("sp", 1, 3))

    def test_unknown_method_and_embedding(self, q43):
        with pytest.raises(UnsupportedParameter):
            corank(q43, method="bogus")
        with pytest.raises(UnsupportedParameter):
            corank(q43, embedding="universal")


class TestFaithfulness:
    def test_symplectic_over_gf2_is_not_faithful(self, sp42):
        report = check_faithful(sp42)
        assert not report.holds_on_tested
        violation = report.violation
        assert set(violation.S) < set(violation.pullback)

    def test_parabolic_over_gf2_is_faithful(self, q42):
        report = check_faithful(q42)
        assert report.holds_on_tested
        assert report.tested > 0

    def test_rank_decomposition(self, q42):
        quotient = quotient_geometry(q42, _span_of_pair(q42)).geometry
        assert 2 * q42.prk_algebraic + generating_rank(quotient).value == 5

    def test_sampled_mode(self, q42):
        report = check_faithful(q42, mode="sampled", seed=1, trials=20)
        assert report.mode == "sampled" and report.holds_on_tested

    def test_sp42_rank(self, sp42):
        assert generating_rank(sp42.geometry).value == 5


@slow
def test_sp45_generating_rank_is_four():
    PG = resolve_polar("sp:2:5")
    assert generating_rank(PG.geometry).value == 4
