"""示例几何：example2、射影空间、随机几何、自然数几何"""

import pytest

from geomrank.config.config import get_config
from geomrank.core import is_subspace
from geomrank.gallery import (
    b_set,
    c_b_set,
    c_set,
    divisors,
    e1_collinear,
    e1_in_prime_set,
    e1_lines_through,
    e1_lines_union,
    e1_span,
    e1_verify_prime_span,
    example2,
    is_prime,
    projective_space,
    random_geometries,
)
from geomrank.rank import is_generating, is_independent
from geomrank.utils.errors import BudgetExceeded, NotDistinct, UnsupportedField, UnsupportedParameter


class TestExample2:
    @pytest.mark.parametrize("n", [3, 4, 5, 8])
    def test_counts(self, n):
        G = example2(n)
        assert G.n_points == 2 * n + 1
        assert G.n_lines == 1 + n + n * (n - 1) + n * (n - 1) // 2

    def test_point_sets(self):
        assert b_set(4) == [1, 2, 3, 4]
        assert c_set(4) == [5, 6, 7, 8]
        assert c_b_set(4, 1) == [1, 6, 7, 8]

    def test_c_is_an_independent_subspace(self, example2_4):
        assert is_subspace(example2_4, c_set(4))
        assert is_independent(example2_4, c_set(4))
        assert not is_generating(example2_4, c_set(4))

    def test_c_b_is_independent_and_not_generating(self, example2_4):
        for b in b_set(4):
            X = c_b_set(4, b)
            assert is_independent(example2_4, X)
            assert not is_generating(example2_4, X)

    def test_rejects_small_n(self):
        with pytest.raises(UnsupportedParameter):
            example2(2)
        with pytest.raises(UnsupportedParameter):
            c_b_set(4, 5)


class TestProjective:
    def test_fano_name_and_lines(self, fano):
        assert fano.name == "fano"
        assert fano.n_lines == 7
        assert fano.lines[0].to_list() == [0, 1, 2]

    def test_pg32_counts(self, pg32):
        assert pg32.n_points == 15
        assert pg32.n_lines == 35

    def test_pg23_lines_have_four_points(self):
        G = projective_space(2, 3)
        assert G.n_points == 13 and G.n_lines == 13
        assert {len(line) for line in G.lines} == {4}

    def test_invalid_parameters(self):
        with pytest.raises(UnsupportedParameter):
            projective_space(0, 2)
        with pytest.raises(UnsupportedField):
            projective_space(2, 6)

    def test_point_cap(self):
        get_config().set("polar.point_cap", 10)
        with pytest.raises(BudgetExceeded):
            projective_space(3, 2)


class TestRandomGeometries:
    def test_deterministic(self):
        assert random_geometries(11, 20) == random_geometries(11, 20)

    def test_sizes(self):
        for G in random_geometries(3, 50):
            assert 1 <= G.n_points <= 9
            assert all(2 <= len(line) <= 4 for line in G.lines)


class TestNaturalNumberGeometry:
    def test_number_theory_helpers(self):
        assert divisors(12) == [1, 2, 3, 4, 6, 12]
        assert is_prime(97) and not is_prime(1) and not is_prime(91)

    def test_lines_through(self):
        assert e1_lines_through(0, 4) == [2, 4]
        assert e1_lines_through(2, 4) == [2]
        assert e1_lines_through(3, 5) == []

    def test_lines_through_needs_distinct_points(self):
        with pytest.raises(NotDistinct):
            e1_lines_through(3, 3)

    def test_collinear(self):
        assert e1_collinear(0, 7)
        assert e1_collinear(2, 4)
        assert not e1_collinear(4, 6)
        assert not e1_collinear(3, 5)

    def test_lines_union(self):
        assert e1_lines_union(4) == [0, 2, 4, 8, 12, 16]

    def test_prime_set_membership(self):
        assert e1_in_prime_set(0)
        assert e1_in_prime_set(6)
        assert e1_in_prime_set(77)
        assert not e1_in_prime_set(12)
        assert not e1_in_prime_set(8)
        assert not e1_in_prime_set(1)

    def test_span_of_non_collinear_pair_converges(self):
        result = e1_span([3, 5])
        assert result.status == "converged"
        assert result.points == [3, 5]

    def test_span_through_zero_is_truncated(self):
        result = e1_span([0, 4], magnitude_cap=100)
        assert result.status == "truncated"
        assert {0, 2, 4, 8, 16, 64}.issubset(result.points)
        assert max(result.points) <= 100

    def test_span_iteration_cap(self):
        result = e1_span([0, 4], magnitude_cap=100, iteration_cap=3)
        assert result.status == "iteration_cap"
        assert result.iterations == 3

    def test_span_rejects_bad_input(self):
        with pytest.raises(UnsupportedParameter):
            e1_span([-1, 3])
        with pytest.raises(UnsupportedParameter):
            e1_span([200], magnitude_cap=100)

    def test_verify_prime_span(self):
        report = e1_verify_prime_span(100)
        statuses = {c.name: c.status for c in report.checks}
        assert statuses == {
            "line_closed": "fail",
            "x0_in_T": "pass",
            "reachability": "pass",
            "dependence_evidence": "pass",
            "x0_independent": "fail",
        }
        assert report.check("line_closed").counterexample["line"] == 4
        assert report.check("x0_independent").counterexample["point"] == 2
        assert not report.all_passed

    def test_verify_prime_span_needs_bound(self):
        with pytest.raises(UnsupportedParameter):
            e1_verify_prime_span(3)
