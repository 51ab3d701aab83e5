"""
Knödelグラフ構築モジュールのテスト
"""
import json

import pytest
from hypothesis import given, strategies as st

from src.core.knodel import (
    GraphView, KnodelParams, Side, VertexId, VertexSet, automorphism_reflect,
    automorphism_translate, compose, count_edges, cyclic_sequence, deleted_view, edges,
    full_view, index_distance, knodel, m_delta, m_delta_count, map_set, neighbors,
    neighborhoods_intersect_closed_form, neighborhoods_intersect_direct,
    open_neighborhood_of_set, preserves_adjacency, to_dimacs, to_json, transitivity_map, u, v,
)
from src.utils.utils import ValidationError


@st.composite
def graph_params(draw, max_n: int = 64, min_delta: int = 1):
    """有効な (Δ, n)"""
    n = draw(st.integers(min_value=max(2, 1 << min_delta), max_value=max_n).map(lambda x: x - x % 2))
    delta = draw(st.integers(min_value=min_delta, max_value=n.bit_length() - 1))
    return delta, n


@st.composite
def one_sided_subsets(draw, half: int):
    side = draw(st.sampled_from([Side.U, Side.V]))
    indices = draw(st.sets(st.integers(min_value=1, max_value=half), min_size=1))
    return VertexSet.of(VertexId(side, i) for i in indices)


class TestKnodelParams:
    """パラメータ検証のテスト"""

    def test_valid_params(self):
        params = KnodelParams(3, 8)
        assert params.half == 4
        assert params.name == "W(3,8)"

    def test_odd_n_rejected(self):
        with pytest.raises(ValidationError, match="偶数"):
            KnodelParams(2, 9)

    def test_small_n_rejected(self):
        with pytest.raises(ValidationError, match="2以上"):
            KnodelParams(1, 0)

    def test_delta_above_log2_rejected(self):
        with pytest.raises(ValidationError, match="floor"):
            KnodelParams(5, 16)

    def test_delta_zero_rejected(self):
        with pytest.raises(ValidationError):
            KnodelParams(0, 8)

    def test_non_integer_rejected(self):
        with pytest.raises(ValidationError):
            KnodelParams(3, 8.0)


class TestBuildGraph:
    """グラフ構築のテスト"""

    def test_k2(self):
        g = knodel(1, 2)
        assert edges(g) == [(u(1), v(1))]

    def test_w3_8_neighbors_of_u1(self):
        g = knodel(3, 8)
        assert neighbors(g, u(1)) == VertexSet.of([v(1), v(2), v(4)])

    def test_w4_16_regular(self):
        g = knodel(4, 16)
        assert all(len(neighbors(g, x)) == 4 for x in g.vertices())
        assert count_edges(g) == 32

    @given(graph_params(max_n=128))
    def test_regular_and_bipartite(self, params):
        """全頂点の次数が Δ で、近傍は反対側のみ"""
        g = knodel(*params)
        for x in g.vertices():
            nbrs = neighbors(g, x)
            assert len(nbrs) == g.delta
            assert nbrs.sides() == (x.side.other,)

    def test_deterministic(self):
        assert knodel(4, 26) == knodel(4, 26)


class TestNeighbors:
    """開近傍のテスト"""

    def test_v1_in_w3_8(self, w3_8):
        assert neighbors(w3_8, v(1)) == VertexSet.of([u(1), u(2), u(4)])

    def test_u3_in_w3_8(self, w3_8):
        assert neighbors(w3_8, u(3)) == VertexSet.of([v(2), v(3), v(4)])

    def test_matching_case(self):
        assert neighbors(knodel(1, 6), u(2)) == VertexSet.of([v(2)])

    def test_out_of_range_vertex(self, w3_8):
        with pytest.raises(ValidationError):
            neighbors(w3_8, u(5))

    def test_open_neighborhood_of_set(self, w3_8):
        result = open_neighborhood_of_set(w3_8, VertexSet.of([u(1), u(3)]))
        assert result == VertexSet.of([v(1), v(2), v(3), v(4)])


class TestVertexSet:
    """頂点集合のテスト"""

    def test_labels_and_order(self):
        s = VertexSet.from_labels(["v10", "u3", "v2"])
        assert s.labels() == ["u3", "v2", "v10"]
        assert s.format() == "{u3, v2, v10}"
        assert len(s) == 3

    def test_set_operations(self):
        a = VertexSet.of([u(1), v(1)])
        b = VertexSet.of([v(1), v(2)])
        assert (a | b).labels() == ["u1", "v1", "v2"]
        assert (a & b).labels() == ["v1"]
        assert (a - b).labels() == ["u1"]
        assert a.restrict(Side.V) == VertexSet.of([v(1)])

    def test_contains(self):
        s = VertexSet.of([u(4)])
        assert u(4) in s
        assert v(4) not in s

    def test_parse_vertex(self):
        assert VertexId.parse("u7") == u(7)
        assert VertexId.parse("V3") == v(3)
        assert str(v(3)) == "v3"

    @pytest.mark.parametrize("label", ["w1", "u0", "u", "7", ""])
    def test_parse_invalid(self, label):
        with pytest.raises(ValidationError):
            VertexId.parse(label)


class TestMDelta:
    """M_Δ のテスト"""

    @pytest.mark.parametrize("delta,expected", [
        (2, {1}),
        (3, {1, 2, 3}),
        (4, {1, 2, 3, 4, 6, 7}),
    ])
    def test_values(self, delta, expected):
        assert m_delta(delta) == expected

    def test_delta_one_rejected(self):
        with pytest.raises(ValidationError):
            m_delta(1)


class TestCyclicSequence:
    """巡回差分列と index-distance のテスト"""

    def test_three_elements(self):
        g = knodel(3, 16)
        seq = cyclic_sequence(g, VertexSet.of([u(1), u(4), u(6)]))
        assert seq.diffs == (3, 2, 3)
        assert seq.source_indices == (1, 4, 6)

    def test_singleton(self):
        g = knodel(2, 14)
        assert cyclic_sequence(g, VertexSet.of([u(2)])).diffs == (7,)

    def test_v_side(self):
        g = knodel(3, 26)
        seq = cyclic_sequence(g, VertexSet.of([v(1), v(5), v(10)]))
        assert seq.diffs == (4, 5, 4)
        assert seq.side is Side.V

    def test_empty_rejected(self, w3_8):
        with pytest.raises(ValidationError):
            cyclic_sequence(w3_8, VertexSet())

    def test_two_sided_rejected(self, w3_8):
        with pytest.raises(ValidationError):
            cyclic_sequence(w3_8, VertexSet.of([u(1), v(1)]))

    @given(st.data())
    def test_sum_is_half(self, data):
        delta, n = data.draw(graph_params(max_n=64))
        g = knodel(delta, n)
        subset = data.draw(one_sided_subsets(g.half))
        assert sum(cyclic_sequence(g, subset).diffs) == g.half

    @given(st.data())
    def test_index_distance_is_run_sum(self, data):
        """任意の2要素の index-distance は連続区間和、補区間和は n/2 − id"""
        delta, n = data.draw(graph_params(max_n=64))
        g = knodel(delta, n)
        subset = data.draw(one_sided_subsets(g.half))
        seq = cyclic_sequence(g, subset)
        runs = seq.run_sums()
        k = len(seq.diffs)
        members = list(subset)
        for x in range(k):
            for y in range(x + 1, k):
                distance = index_distance(g, members[x], members[y])
                candidates = {
                    (total, runs[((start + length) % k, k - length)])
                    for (start, length), total in runs.items() if length < k
                }
                assert (distance, g.half - distance) in candidates

    def test_m_delta_count(self):
        g = knodel(3, 16)
        # 差分列 (3, 2, 3): 3 と 2 と 3 が M_3 に属する
        assert m_delta_count(g, VertexSet.of([u(1), u(4), u(6)])) == 3

    @given(st.data())
    def test_m_delta_count_bound(self, data):
        """M_Δ に属する差分の個数 ≤ Δ|A| − |N(A)|"""
        delta = data.draw(st.sampled_from([3, 4]))
        n = data.draw(st.sampled_from([16, 32, 64]))
        g = knodel(delta, n)
        indices = data.draw(st.sets(st.integers(min_value=1, max_value=g.half), min_size=1))
        subset = VertexSet.of(u(i) for i in indices)
        bound = delta * len(subset) - len(open_neighborhood_of_set(g, subset))
        assert m_delta_count(g, subset) <= bound


class TestIndexDistance:
    """index-distance のテスト"""

    @pytest.mark.parametrize("n,a,b,expected", [
        (16, u(1), u(6), 3),
        (20, v(2), v(7), 5),
        (26, u(1), u(13), 1),
    ])
    def test_values(self, n, a, b, expected):
        g = knodel(2, n)
        assert index_distance(g, a, b) == expected
        assert index_distance(g, b, a) == expected

    def test_different_sides_rejected(self, w3_8):
        with pytest.raises(ValidationError):
            index_distance(w3_8, u(1), v(2))

    def test_same_vertex_rejected(self, w3_8):
        with pytest.raises(ValidationError):
            index_distance(w3_8, u(1), u(1))


class TestNeighborhoodIntersection:
    """共通近傍の閉形式判定のテスト"""

    def test_adjacent_indices(self):
        g = knodel(3, 16)
        assert neighborhoods_intersect_closed_form(g, u(1), u(2))
        assert neighborhoods_intersect_direct(g, u(1), u(2))

    def test_distance_five_in_w4_26(self):
        g = knodel(4, 26)
        pairs = [(u(i), u((i + 4) % 13 + 1)) for i in range(1, 14)]
        for a, b in pairs:
            assert index_distance(g, a, b) == 5
            assert not neighborhoods_intersect_closed_form(g, a, b)
            assert not neighborhoods_intersect_direct(g, a, b)

    @given(st.data())
    def test_closed_form_matches_direct(self, data):
        delta, n = data.draw(graph_params(max_n=128, min_delta=2))
        g = knodel(delta, n)
        side = data.draw(st.sampled_from([Side.U, Side.V]))
        i, j = data.draw(st.lists(st.integers(min_value=1, max_value=g.half),
                                  min_size=2, max_size=2, unique=True))
        a, b = VertexId(side, i), VertexId(side, j)
        assert neighborhoods_intersect_closed_form(g, a, b) == neighborhoods_intersect_direct(g, a, b)


class TestAutomorphisms:
    """自己同型写像のテスト"""

    def test_translate_zero_is_identity(self, w3_8):
        mapping = automorphism_translate(w3_8, 0)
        assert all(image == vertex for vertex, image in mapping.items())

    def test_translate_full_wrap_is_identity(self, w3_8):
        assert automorphism_translate(w3_8, w3_8.half) == automorphism_translate(w3_8, 0)

    def test_translate_edge_image(self, w3_8):
        mapping = automorphism_translate(w3_8, 1)
        assert mapping[u(1)] == u(2) and mapping[v(2)] == v(3)
        assert w3_8.adjacent(u(2), v(3))

    def test_reflect_maps_u1_to_v1(self, w3_8):
        mapping = automorphism_reflect(w3_8, 1)
        assert mapping[u(1)] == v(1)
        a, b = mapping[u(1)], mapping[v(4)]
        assert w3_8.adjacent(a, b)

    def test_reflect_twice_is_translation(self, w3_8):
        twice = compose(automorphism_reflect(w3_8, 1), automorphism_reflect(w3_8, 1))
        assert twice == automorphism_translate(w3_8, 0)

    @given(graph_params(max_n=64), st.integers(min_value=-50, max_value=50))
    def test_maps_preserve_edges(self, params, k):
        g = knodel(*params)
        assert preserves_adjacency(g, automorphism_translate(g, k))
        assert preserves_adjacency(g, automorphism_reflect(g, k))

    @pytest.mark.parametrize("delta,n", [(3, 16), (4, 26)])
    def test_transitivity_map(self, delta, n):
        g = knodel(delta, n)
        for target in g.vertices():
            mapping = transitivity_map(g, target)
            assert mapping[u(1)] == target
            assert preserves_adjacency(g, mapping)

    def test_map_set(self, w3_8):
        mapped = map_set(automorphism_translate(w3_8, 1), VertexSet.of([u(4), v(1)]))
        assert mapped == VertexSet.of([u(1), v(2)])


class TestGraphView:
    """削除ビューのテスト"""

    def test_full_view(self, w3_8):
        view = full_view(w3_8)
        assert view.vertex_count == 8
        assert view.name == "W(3,8)"

    def test_deleted_view(self, w3_8):
        view = deleted_view(w3_8, v(1))
        assert view.vertex_count == 7
        assert view.name == "W(3,8)-v1"
        assert view.degree(u(1)) == 2
        assert v(1) not in view.universe()
        assert len(view.universe()) == 7

    def test_deleted_vertex_not_addressable(self, w3_8):
        view = deleted_view(w3_8, v(1))
        with pytest.raises(ValidationError):
            view.neighbors(v(1))

    def test_delete_out_of_range(self, w3_8):
        with pytest.raises(ValidationError):
            deleted_view(w3_8, u(9))

    def test_closed_neighborhood(self, w3_8):
        view = GraphView(w3_8)
        assert view.closed_neighborhood(u(1)) == VertexSet.of([u(1), v(1), v(2), v(4)])


class TestExport:
    """DIMACS / JSON 出力のテスト"""

    def test_dimacs_header(self, w3_8):
        lines = to_dimacs(w3_8).splitlines()
        assert lines[0] == "p edge 8 12"
        assert lines[1] == "e 1 5"
        assert len(lines) == 13
        assert to_dimacs(w3_8).endswith("\n")

    def test_json_edges(self):
        payload = json.loads(to_json(knodel(4, 16)))
        assert payload["delta"] == 4 and payload["n"] == 16
        assert len(payload["edges"]) == 32
        assert all(1 <= a <= 8 < b <= 16 for a, b in payload["edges"])
