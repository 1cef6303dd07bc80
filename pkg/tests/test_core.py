"""点集、几何、span 与交换性质"""

import pytest
from loguru import logger

from geomrank.chains import enumerate_subspaces
from geomrank.config.config import get_config, reset_config
from geomrank.core import (
    PointSet,
    SpanCache,
    build_geometry,
    check_exchange_property,
    covers,
    dump_geometry,
    geometry_from_dict,
    is_subspace,
    iter_bits,
    load_geometry,
    mask_of,
    replay_witness,
    span,
)
from geomrank.core.closure import cover_masks, is_subspace_mask, span_mask
from geomrank.gallery import example2, fano as build_fano, random_geometries
from geomrank.utils.budget import Budget
from geomrank.utils.errors import (
    BudgetExceeded,
    GeometryFormatError,
    InvalidLine,
    InvalidPoint,
    NotASubspace,
    UnsupportedParameter,
)
from geomrank.utils.schemas import CorankReport, EPReport, EPWitness, RankReport

FANO_LINES = [[0, 1, 2], [0, 3, 4], [0, 5, 6], [1, 3, 5], [1, 4, 6], [2, 3, 6], [2, 4, 5]]


class TestPointSet:
    def test_bits_roundtrip(self):
        assert mask_of([0, 2, 5]) == 0b100101
        assert list(iter_bits(0b100101)) == [0, 2, 5]

    def test_order_and_algebra(self):
        a = PointSet.of(6, [0, 2])
        b = PointSet.of(6, [0, 2, 4])
        assert a < b and a <= b and b > a
        assert not b < b
        assert (b - a).to_list() == [4]
        assert (a | PointSet.of(6, [5])).to_list() == [0, 2, 5]
        assert a.complement().to_list() == [1, 3, 4, 5]
        assert a.min() == 0
        assert len(b) == 3 and 4 in b and 1 not in b

    def test_out_of_range(self):
        with pytest.raises(InvalidPoint):
            PointSet.of(3, [3])
        with pytest.raises(InvalidPoint):
            PointSet(3, 0b1000)


class TestGeometry:
    def test_fano_lines_in_canonical_order(self, fano):
        assert fano.n_points == 7
        assert fano.to_dict()["lines"] == FANO_LINES
        fano.check_consistency()

    def test_dedupes_lines(self):
        G = build_geometry(3, [[0, 1], [1, 0], [1, 2]])
        assert G.n_lines == 2
        assert G.collinear(0, 1) and not G.collinear(0, 2)

    def test_rejects_short_line(self):
        with pytest.raises(InvalidLine):
            build_geometry(3, [[0]])

    def test_rejects_out_of_range_point(self):
        with pytest.raises(InvalidPoint):
            build_geometry(3, [[0, 5]])

    @pytest.mark.parametrize("lines", [[[0, "x"]], [[0, 1.5]], [[None, 1]]])
    def test_rejects_non_integer_point(self, lines):
        with pytest.raises(InvalidPoint):
            build_geometry(3, lines)

    def test_rejects_line_that_is_not_a_list(self):
        with pytest.raises(InvalidLine):
            build_geometry(3, [5])

    def test_rejects_non_integer_point_count(self):
        with pytest.raises(InvalidPoint):
            build_geometry("3", [])

    def test_rejects_empty_point_set(self):
        with pytest.raises(InvalidPoint):
            build_geometry(0, [])

    def test_from_dict_missing_field(self):
        with pytest.raises(GeometryFormatError):
            geometry_from_dict({"points": 3})

    def test_file_roundtrip(self, tmp_path, fano):
        path = dump_geometry(fano, tmp_path / "fano.json")
        assert load_geometry(path) == fano

    def test_missing_file(self, tmp_path):
        with pytest.raises(GeometryFormatError):
            load_geometry(tmp_path / "nope.json")


class TestSpan:
    def test_two_points_span_their_line(self, fano):
        assert span(fano, [0, 1]).to_list() == [0, 1, 2]

    def test_three_non_collinear_points_generate(self, fano):
        assert span(fano, [0, 1, 3]) == fano.points

    def test_empty_and_singleton_are_closed(self, fano):
        assert span(fano, []).to_list() == []
        assert span(fano, [4]).to_list() == [4]

    def test_span_is_idempotent(self, example2_4):
        once = span(example2_4, [1, 5])
        assert span(example2_4, once) == once
        assert is_subspace(example2_4, once)

    def test_is_subspace(self, fano):
        assert is_subspace(fano, [0, 1, 2])
        assert not is_subspace(fano, [0, 1])

    def test_covers_of_point_are_lines_through_it(self, fano):
        assert [c.to_list() for c in covers(fano, [0])] == [[0, 1, 2], [0, 3, 4], [0, 5, 6]]
        assert covers(fano, [0, 1, 2]) == [fano.points]

    def test_covers_requires_subspace(self, fano):
        with pytest.raises(NotASubspace):
            covers(fano, [0, 1])

    def test_span_cache(self, fano):
        cache = SpanCache(fano)
        assert cache(0b11) == 0b111
        assert cache.extend(0b111, 3) == fano.full_mask
        assert len(cache) >= 2

    def test_budget_is_charged(self, fano):
        with pytest.raises(BudgetExceeded):
            span(fano, [0, 1], budget=Budget(span_calls=0))


def _law_geometries():
    return [build_fano(), example2(3)] + random_geometries(11, 6, max_points=7)


def _brute_force_subspaces(G):
    return [m for m in range(G.full_mask + 1) if is_subspace_mask(G, m)]


@pytest.mark.parametrize("G", _law_geometries(), ids=lambda G: f"{G.name}-{G.n_points}-{len(G.line_masks)}")
class TestClosureLaws:
    def test_span_is_monotone(self, G):
        for X in range(G.full_mask + 1):
            closed = span_mask(G, X)
            assert closed & X == X
            for p in range(G.n_points):
                assert closed & ~span_mask(G, X | (1 << p)) == 0

    def test_span_is_least_subspace_containing_set(self, G):
        subspaces = _brute_force_subspaces(G)
        for X in range(G.full_mask + 1):
            meet = G.full_mask
            for S in subspaces:
                if S & X == X:
                    meet &= S
            assert span_mask(G, X) == meet

    def test_is_subspace_iff_closed(self, G):
        for S in range(G.full_mask + 1):
            assert is_subspace_mask(G, S) == (span_mask(G, S) == S)
            assert is_subspace(G, list(iter_bits(S))) == is_subspace_mask(G, S)

    def test_enumeration_finds_every_subspace(self, G):
        assert sorted(enumerate_subspaces(G)) == _brute_force_subspaces(G)

    def test_nothing_strictly_between_subspace_and_cover(self, G):
        subspaces = _brute_force_subspaces(G)
        for S in subspaces:
            found = cover_masks(G, S)
            for K in found:
                assert K & S == S and K != S
                assert not any(T != S and T != K and T & S == S and T & K == T for T in subspaces)
            # 每个真包含 S 的子空间都包含某个覆盖
            for T in subspaces:
                if T != S and T & S == S:
                    assert any(K & T == K for K in found)


class TestExchangeProperty:
    def test_fano_holds(self, fano):
        report = check_exchange_property(fano, mode="exhaustive")
        assert report.status == "holds"
        assert report.witness is None
        assert report.checks_performed > 0

    def test_example2_fails_with_replayable_witness(self, example2_4):
        report = check_exchange_property(example2_4, mode="exhaustive")
        assert report.status == "fails"
        assert replay_witness(example2_4, report.witness)

    def test_known_example2_witness(self):
        for n in (3, 4, 5):
            G = example2(n)
            witness = EPWitness(X=[n + 1, n + 2], x=1, y=n + 3)
            assert replay_witness(G, witness)

    def test_sampled_mode(self, pg32):
        report = check_exchange_property(pg32, mode="sampled", seed=7, trials=30)
        assert report.status == "sampled_ok"
        assert report.mode == "sampled"

    def test_sampled_is_deterministic(self, example2_4):
        a = check_exchange_property(example2_4, mode="sampled", seed=3, trials=200)
        b = check_exchange_property(example2_4, mode="sampled", seed=3, trials=200)
        assert a == b

    def test_exhaustive_refuses_large_geometry(self):
        with pytest.raises(BudgetExceeded) as info:
            check_exchange_property(example2(8), mode="exhaustive")
        assert info.value.partial["n_points"] == 17

    def test_unknown_mode(self, fano):
        with pytest.raises(UnsupportedParameter):
            check_exchange_property(fano, mode="bogus")


class TestConfigAndErrors:
    def test_defaults(self):
        config = get_config()
        assert config.get("ep.exhaustive_max_points") == 16
        assert config.get("rank.enumerate_bases_max_points") == 12
        assert config.get("suite.fuzz_seed") == 42
        assert config.get("no.such.key", "x") == "x"

    def test_nested_env_override(self, monkeypatch):
        monkeypatch.setenv("EP__SAMPLED_TRIALS", "7")
        reset_config()
        assert get_config().get("ep.sampled_trials") == 7

    def test_budget_env_accepts_scientific_notation(self, monkeypatch):
        monkeypatch.setenv("GEOM_BUDGET", "1e6")
        reset_config()
        assert Budget.from_config().span_calls == 1_000_000

    def test_malformed_budget_env_falls_back_with_warning(self, monkeypatch):
        messages = []
        sink = logger.add(messages.append, level="WARNING")
        try:
            monkeypatch.setenv("GEOM_BUDGET", "lots")
            reset_config()
            assert get_config().get("budget.span_calls") == 10_000_000
        finally:
            logger.remove(sink)
        assert any("GEOM_BUDGET" in str(m) for m in messages)

    def test_malformed_nested_override_keeps_default(self, monkeypatch):
        messages = []
        sink = logger.add(messages.append, level="WARNING")
        try:
            monkeypatch.setenv("EP__SAMPLED_TRIALS", "many")
            reset_config()
            assert get_config().get("ep.sampled_trials") == 10_000
        finally:
            logger.remove(sink)
        assert any("sampled_trials" in str(m) for m in messages)

    def test_roundtrip_chain_limit_default(self):
        assert get_config().get("suite.roundtrip_max_chains") == 1000

    @pytest.mark.parametrize("model", [EPReport, RankReport, CorankReport])
    def test_report_schema_examples_validate(self, model):
        example = model.model_config["json_schema_extra"]["example"]
        assert model.model_json_schema()["example"] == example
        model.model_validate(example)

    def test_budget_fresh_resets_counter(self):
        budget = Budget(span_calls=5)
        budget.charge(3)
        assert budget.fresh().used == 0
        assert budget.fresh().span_calls == 5

    def test_budget_payload_carries_partial(self):
        payload = BudgetExceeded("超出", {"lower": 2}).to_payload()
        assert payload == {"type": "BudgetExceeded", "message": "超出", "partial": {"lower": 2}}
