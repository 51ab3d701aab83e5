"""
Knödel支配数検証システム - Knödelグラフ構築モジュール

W(Δ, n) を二部 U, V（各 n/2 頂点）のビット集合で表現する。
外部ラベルは 1 始まり（u_i, v_j）、内部では 0 始まりの剰余を使う。
"""

import json
import logging
from dataclasses import dataclass
from enum import IntEnum
from typing import Dict, Iterable, Iterator, List, Optional, Tuple

from ..utils.utils import ValidationUtils, ValidationError

logger = logging.getLogger(__name__)


class Side(IntEnum):
    """頂点の所属パート（U が V より先に並ぶ）"""
    U = 0
    V = 1

    @property
    def letter(self) -> str:
        return self.name.lower()

    @property
    def other(self) -> "Side":
        return Side.V if self is Side.U else Side.U


@dataclass(frozen=True, order=True)
class VertexId:
    """パート付き 1 始まりの頂点ラベル"""
    side: Side
    index: int

    @classmethod
    def parse(cls, label: str) -> "VertexId":
        """'u7' / 'v3' 形式を解析"""
        letter, index = ValidationUtils.parse_vertex_label(label)
        return cls(Side.U if letter == "U" else Side.V, index)

    @property
    def label(self) -> str:
        return f"{self.side.letter}{self.index}"

    def __str__(self) -> str:
        return self.label


def u(index: int) -> VertexId:
    return VertexId(Side.U, index)


def v(index: int) -> VertexId:
    return VertexId(Side.V, index)


@dataclass(frozen=True)
class KnodelParams:
    """W(Δ, n) のパラメータ"""
    delta: int
    n: int

    def __post_init__(self):
        ValidationUtils.require_int("delta", self.delta)
        ValidationUtils.require_int("n", self.n)
        if self.n < 2:
            raise ValidationError(f"頂点数 n は2以上が必要です: n={self.n}")
        if self.n % 2 != 0:
            raise ValidationError(f"頂点数 n は偶数が必要です: n={self.n}")
        max_delta = self.n.bit_length() - 1  # floor(log2 n)
        if not 1 <= self.delta <= max_delta:
            raise ValidationError(
                f"次数 Δ は 1..{max_delta} (floor(log2 {self.n})) の範囲が必要です: delta={self.delta}"
            )

    @property
    def half(self) -> int:
        return self.n // 2

    @property
    def name(self) -> str:
        return f"W({self.delta},{self.n})"


@dataclass(frozen=True)
class VertexSet:
    """U 側と V 側の二つのビット集合（ビット i-1 が頂点番号 i）"""
    u_mask: int = 0
    v_mask: int = 0

    @classmethod
    def of(cls, vertices: Iterable[VertexId]) -> "VertexSet":
        u_mask = 0
        v_mask = 0
        for vertex in vertices:
            if vertex.index < 1:
                raise ValidationError(f"頂点番号は1以上が必要です: {vertex}")
            if vertex.side is Side.U:
                u_mask |= 1 << (vertex.index - 1)
            else:
                v_mask |= 1 << (vertex.index - 1)
        return cls(u_mask, v_mask)

    @classmethod
    def from_labels(cls, labels: Iterable[str]) -> "VertexSet":
        return cls.of(VertexId.parse(label) for label in labels)

    @classmethod
    def one_sided(cls, side: Side, mask: int) -> "VertexSet":
        return cls(mask, 0) if side is Side.U else cls(0, mask)

    def mask(self, side: Side) -> int:
        return self.u_mask if side is Side.U else self.v_mask

    def __len__(self) -> int:
        return self.u_mask.bit_count() + self.v_mask.bit_count()

    def __bool__(self) -> bool:
        return bool(self.u_mask or self.v_mask)

    def __iter__(self) -> Iterator[VertexId]:
        for side in (Side.U, Side.V):
            for index in _mask_indices(self.mask(side)):
                yield VertexId(side, index)

    def __contains__(self, vertex: VertexId) -> bool:
        return bool(self.mask(vertex.side) >> (vertex.index - 1) & 1) if vertex.index >= 1 else False

    def __or__(self, other: "VertexSet") -> "VertexSet":
        return VertexSet(self.u_mask | other.u_mask, self.v_mask | other.v_mask)

    def __and__(self, other: "VertexSet") -> "VertexSet":
        return VertexSet(self.u_mask & other.u_mask, self.v_mask & other.v_mask)

    def __sub__(self, other: "VertexSet") -> "VertexSet":
        return VertexSet(self.u_mask & ~other.u_mask, self.v_mask & ~other.v_mask)

    def add(self, vertex: VertexId) -> "VertexSet":
        return self | VertexSet.of([vertex])

    def remove(self, vertex: VertexId) -> "VertexSet":
        return self - VertexSet.of([vertex])

    def restrict(self, side: Side) -> "VertexSet":
        return VertexSet.one_sided(side, self.mask(side))

    def sides(self) -> Tuple[Side, ...]:
        return tuple(side for side in (Side.U, Side.V) if self.mask(side))

    def indices(self, side: Side) -> List[int]:
        return list(_mask_indices(self.mask(side)))

    def labels(self) -> List[str]:
        return [vertex.label for vertex in self]

    def format(self) -> str:
        return "{" + ", ".join(self.labels()) + "}"

    def __str__(self) -> str:
        return self.format()


def _mask_indices(mask: int) -> Iterator[int]:
    """ビット集合を 1 始まりの昇順番号列に展開"""
    while mask:
        low = mask & -mask
        yield low.bit_length()
        mask ^= low


@dataclass(frozen=True)
class KnodelGraph:
    """近傍をビット集合で前計算した Knödel グラフ"""
    params: KnodelParams
    half: int
    offsets: Tuple[int, ...]
    neighbors_of_u: Tuple[int, ...]  # i-1 番目: u_i の V 側近傍
    neighbors_of_v: Tuple[int, ...]  # j-1 番目: v_j の U 側近傍

    @property
    def delta(self) -> int:
        return self.params.delta

    @property
    def n(self) -> int:
        return self.params.n

    @property
    def name(self) -> str:
        return self.params.name

    def check_vertex(self, vertex: VertexId) -> VertexId:
        if not isinstance(vertex, VertexId):
            raise ValidationError(f"頂点の指定が不正です: {vertex!r}")
        if not 1 <= vertex.index <= self.half:
            raise ValidationError(
                f"頂点 {vertex} は {self.name} に存在しません（番号は 1..{self.half}）"
            )
        return vertex

    def check_set(self, vertex_set: VertexSet) -> VertexSet:
        limit = (1 << self.half) - 1
        if vertex_set.u_mask & ~limit or vertex_set.v_mask & ~limit:
            raise ValidationError(f"頂点集合 {vertex_set} に {self.name} の範囲外の頂点があります")
        return vertex_set

    def vertices(self) -> Iterator[VertexId]:
        for side in (Side.U, Side.V):
            for index in range(1, self.half + 1):
                yield VertexId(side, index)

    def all_vertices(self) -> VertexSet:
        full = (1 << self.half) - 1
        return VertexSet(full, full)

    def neighbor_mask(self, vertex: VertexId) -> int:
        """反対側パートの近傍ビット集合"""
        self.check_vertex(vertex)
        if vertex.side is Side.U:
            return self.neighbors_of_u[vertex.index - 1]
        return self.neighbors_of_v[vertex.index - 1]

    def adjacent(self, a: VertexId, b: VertexId) -> bool:
        if a.side == b.side:
            return False
        return bool(self.neighbor_mask(a) >> (self.check_vertex(b).index - 1) & 1)


def build_graph(params: KnodelParams) -> KnodelGraph:
    """W(Δ, n) を構築: u_i ~ v_j ⇔ j ≡ i + 2^k − 1 (mod n/2), k = 0..Δ−1"""
    if not isinstance(params, KnodelParams):
        raise ValidationError(f"KnodelParams が必要です: {params!r}")
    half = params.half
    offsets = tuple((1 << k) - 1 for k in range(params.delta))

    neighbors_of_u = [0] * half
    neighbors_of_v = [0] * half
    for r in range(half):
        for offset in offsets:
            s = (r + offset) % half
            neighbors_of_u[r] |= 1 << s
            neighbors_of_v[s] |= 1 << r

    graph = KnodelGraph(
        params=params,
        half=half,
        offsets=offsets,
        neighbors_of_u=tuple(neighbors_of_u),
        neighbors_of_v=tuple(neighbors_of_v),
    )
    logger.debug(f"{params.name} を構築しました (half={half}, offsets={offsets})")
    return graph


def knodel(delta: int, n: int) -> KnodelGraph:
    """build_graph の短縮形"""
    return build_graph(KnodelParams(delta, n))


def neighbors(g: KnodelGraph, vertex: VertexId) -> VertexSet:
    """開近傍 N(vertex)（片側の VertexSet）"""
    return VertexSet.one_sided(vertex.side.other, g.neighbor_mask(vertex))


def open_neighborhood_of_set(g: KnodelGraph, subset: VertexSet) -> VertexSet:
    """N(S) = ∪ N(x)"""
    g.check_set(subset)
    result = VertexSet()
    for vertex in subset:
        result = result | neighbors(g, vertex)
    return result


def edges(g: KnodelGraph) -> List[Tuple[VertexId, VertexId]]:
    """辺 (u_i, v_j) を i, j の昇順で列挙"""
    result = []
    for i in range(1, g.half + 1):
        for j in _mask_indices(g.neighbors_of_u[i - 1]):
            result.append((u(i), v(j)))
    return result


def count_edges(g: KnodelGraph) -> int:
    return sum(mask.bit_count() for mask in g.neighbors_of_u)


def m_delta(delta: int) -> frozenset:
    """M_Δ = {2^a − 2^b : 0 ≤ b < a < Δ}"""
    ValidationUtils.require_int("delta", delta)
    if delta < 2:
        raise ValidationError(f"M_Δ は Δ ≥ 2 でのみ定義されます: delta={delta}")
    return frozenset((1 << a) - (1 << b) for a in range(delta) for b in range(a))


@dataclass(frozen=True)
class CyclicSequence:
    """片側部分集合の巡回差分列"""
    side: Side
    source_indices: Tuple[int, ...]
    diffs: Tuple[int, ...]

    def run_sums(self) -> Dict[Tuple[int, int], int]:
        """(開始位置, 長さ) ごとの連続区間和（巡回）"""
        k = len(self.diffs)
        sums = {}
        for start in range(k):
            total = 0
            for length in range(1, k + 1):
                total += self.diffs[(start + length - 1) % k]
                sums[(start, length)] = total
        return sums


def _one_sided_indices(g: KnodelGraph, subset: VertexSet) -> Tuple[Side, List[int]]:
    g.check_set(subset)
    sides = subset.sides()
    if not sides:
        raise ValidationError("巡回差分列には空でない部分集合が必要です")
    if len(sides) > 1:
        raise ValidationError(f"部分集合 {subset} が U と V の両方にまたがっています")
    side = sides[0]
    return side, subset.indices(side)


def cyclic_sequence(g: KnodelGraph, subset: VertexSet) -> CyclicSequence:
    """n_j = i_{j+1} − i_j (j < k), n_k = n/2 + i_1 − i_k"""
    side, indices = _one_sided_indices(g, subset)
    diffs = [indices[j + 1] - indices[j] for j in range(len(indices) - 1)]
    diffs.append(g.half + indices[0] - indices[-1])
    return CyclicSequence(side=side, source_indices=tuple(indices), diffs=tuple(diffs))


def m_delta_count(g: KnodelGraph, subset: VertexSet) -> int:
    """巡回差分列のうち M_Δ に属する要素数"""
    members = m_delta(g.delta)
    return sum(1 for diff in cyclic_sequence(g, subset).diffs if diff in members)


def _check_same_side_pair(g: KnodelGraph, a: VertexId, b: VertexId):
    g.check_vertex(a)
    g.check_vertex(b)
    if a.side != b.side:
        raise ValidationError(f"index-distance は同じパートの頂点にのみ定義されます: {a}, {b}")
    if a.index == b.index:
        raise ValidationError(f"異なる2頂点が必要です: {a}, {b}")


def index_distance(g: KnodelGraph, a: VertexId, b: VertexId) -> int:
    """id(a, b) = min(|i − j|, n/2 − |i − j|)"""
    _check_same_side_pair(g, a, b)
    gap = abs(a.index - b.index)
    return min(gap, g.half - gap)


def neighborhoods_intersect_closed_form(g: KnodelGraph, a: VertexId, b: VertexId) -> bool:
    """N(a) ∩ N(b) ≠ ∅ を index-distance と M_Δ で判定"""
    distance = index_distance(g, a, b)
    members = m_delta(g.delta)
    return distance in members or (g.half - distance) in members


def neighborhoods_intersect_direct(g: KnodelGraph, a: VertexId, b: VertexId) -> bool:
    """N(a) ∩ N(b) ≠ ∅ をビット集合で直接判定"""
    return bool(g.neighbor_mask(a) & g.neighbor_mask(b))


# 自己同型写像
VertexMap = Dict[VertexId, VertexId]


def automorphism_translate(g: KnodelGraph, k: int) -> VertexMap:
    """(side, j) ↦ (side, ((j − 1 + k) mod n/2) + 1)"""
    ValidationUtils.require_int("k", k)
    return {
        vertex: VertexId(vertex.side, (vertex.index - 1 + k) % g.half + 1)
        for vertex in g.vertices()
    }


def automorphism_reflect(g: KnodelGraph, c: int) -> VertexMap:
    """(U, j) ↔ (V, ((c − j) mod n/2) + 1): パートを入れ替える自己同型"""
    ValidationUtils.require_int("c", c)
    return {
        vertex: VertexId(vertex.side.other, (c - vertex.index) % g.half + 1)
        for vertex in g.vertices()
    }


def compose(first: VertexMap, second: VertexMap) -> VertexMap:
    """second ∘ first"""
    return {vertex: second[image] for vertex, image in first.items()}


def map_set(mapping: VertexMap, vertex_set: VertexSet) -> VertexSet:
    return VertexSet.of(mapping[vertex] for vertex in vertex_set)


def preserves_adjacency(g: KnodelGraph, mapping: VertexMap) -> bool:
    """写像が辺集合を辺集合にちょうど写すか"""
    if sorted(mapping.values()) != sorted(g.vertices()):
        return False
    image = {frozenset((mapping[a], mapping[b])) for a, b in edges(g)}
    original = {frozenset(edge) for edge in edges(g)}
    return image == original


def transitivity_map(g: KnodelGraph, target: VertexId) -> VertexMap:
    """u_1 を target に写す自己同型（平行移動または反転）"""
    g.check_vertex(target)
    if target.side is Side.U:
        return automorphism_translate(g, target.index - 1)
    return automorphism_reflect(g, target.index)


@dataclass(frozen=True)
class GraphView:
    """頂点を高々1つ論理削除したグラフのビュー"""
    base: KnodelGraph
    deleted: Optional[VertexId] = None

    def __post_init__(self):
        if self.deleted is not None:
            self.base.check_vertex(self.deleted)

    @property
    def name(self) -> str:
        if self.deleted is None:
            return self.base.name
        return f"{self.base.name}-{self.deleted.label}"

    @property
    def vertex_count(self) -> int:
        return self.base.n - (0 if self.deleted is None else 1)

    def universe(self) -> VertexSet:
        full = self.base.all_vertices()
        if self.deleted is None:
            return full
        return full.remove(self.deleted)

    def contains(self, vertex: VertexId) -> bool:
        self.base.check_vertex(vertex)
        return vertex != self.deleted

    def check_vertex(self, vertex: VertexId) -> VertexId:
        if not self.contains(vertex):
            raise ValidationError(f"頂点 {vertex} は {self.name} から削除されています")
        return vertex

    def check_set(self, vertex_set: VertexSet) -> VertexSet:
        self.base.check_set(vertex_set)
        if self.deleted is not None and self.deleted in vertex_set:
            raise ValidationError(f"頂点集合 {vertex_set} に削除済み頂点 {self.deleted} が含まれます")
        return vertex_set

    def neighbors(self, vertex: VertexId) -> VertexSet:
        self.check_vertex(vertex)
        result = neighbors(self.base, vertex)
        if self.deleted is not None:
            result = result.remove(self.deleted)
        return result

    def closed_neighborhood(self, vertex: VertexId) -> VertexSet:
        return self.neighbors(vertex).add(vertex)

    def degree(self, vertex: VertexId) -> int:
        return len(self.neighbors(vertex))


def full_view(g: KnodelGraph) -> GraphView:
    return GraphView(g)


def deleted_view(g: KnodelGraph, w: VertexId) -> GraphView:
    """W(Δ, n) − w"""
    g.check_vertex(w)
    return GraphView(g, w)


def to_dimacs(g: KnodelGraph) -> str:
    """DIMACS 辺形式（u_i ↦ i, v_j ↦ n/2 + j）"""
    lines = [f"p edge {g.n} {count_edges(g)}"]
    for a, b in edges(g):
        lines.append(f"e {a.index} {g.half + b.index}")
    return "\n".join(lines) + "\n"


def to_json(g: KnodelGraph) -> str:
    """JSON 隣接形式 {"delta":Δ,"n":n,"edges":[[a,b],...]}"""
    payload = {
        "delta": g.delta,
        "n": g.n,
        "edges": [[a.index, g.half + b.index] for a, b in edges(g)],
    }
    return json.dumps(payload, separators=(",", ":")) + "\n"
