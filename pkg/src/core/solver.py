"""
Knödel支配数検証システム - 厳密支配数ソルバー

分枝限定法で GraphView の最小支配集合を求める。
頂点は内部で一本の整数ビット列に並べる（U: 0..h-1, V: h..2h-1）。
"""

import itertools
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Dict, Iterator, List, Optional, Tuple

from .config import config
from .cache_manager import cache_manager
from .knodel import (
    GraphView, KnodelGraph, Side, VertexId, VertexSet,
    deleted_view, full_view, v,
)
from ..utils.utils import BudgetExceededError, ConsistencyError, ValidationError

logger = logging.getLogger(__name__)

INFEASIBLE = 1 << 30
LOWER_BOUNDS = ("basic", "strong")


def _bits(mask: int) -> Iterator[int]:
    """立っているビット位置を昇順に列挙"""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class _CompiledView:
    """探索用に平坦化したビュー"""
    half: int
    delta: int
    universe: int
    u_part: int
    closed: Tuple[int, ...]  # 閉近傍（削除頂点は 0）

    def position(self, vertex: VertexId) -> int:
        if vertex.side is Side.U:
            return vertex.index - 1
        return self.half + vertex.index - 1

    def to_mask(self, vertex_set: VertexSet) -> int:
        return vertex_set.u_mask | (vertex_set.v_mask << self.half)

    def to_set(self, mask: int) -> VertexSet:
        return VertexSet(mask & self.u_part, mask >> self.half)


def _compile(view: GraphView) -> _CompiledView:
    g = view.base
    half = g.half
    closed = []
    for p in range(half):
        closed.append((1 << p) | (g.neighbors_of_u[p] << half))
    for s in range(half):
        closed.append((1 << (half + s)) | g.neighbors_of_v[s])

    universe = (1 << (2 * half)) - 1
    compiled = _CompiledView(half, g.delta, universe, (1 << half) - 1, tuple(closed))
    if view.deleted is not None:
        dp = compiled.position(view.deleted)
        universe &= ~(1 << dp)
        closed = [mask & universe for mask in closed]
        closed[dp] = 0
        compiled = _CompiledView(half, g.delta, universe, (1 << half) - 1, tuple(closed))
    return compiled


@dataclass(frozen=True)
class SolverOptions:
    """探索オプション（Noneは設定値を使う）"""
    node_budget: Optional[int] = None
    workers: Optional[int] = None
    lower_bound: Optional[str] = None
    symmetry_breaking: Optional[bool] = None
    use_cache: bool = True

    def resolved(self) -> "SolverOptions":
        lower_bound = self.lower_bound or config.LOWER_BOUND
        if lower_bound not in LOWER_BOUNDS:
            raise ValidationError(f"下界の種類が不正です: {lower_bound!r} (選択肢: {LOWER_BOUNDS})")
        budget = self.node_budget if self.node_budget is not None else config.node_budget()
        workers = self.workers if self.workers is not None else config.workers()
        if budget < 1 or workers < 1:
            raise ValidationError(f"node_budget と workers は正の整数が必要です: {budget}, {workers}")
        symmetry = config.SYMMETRY_BREAKING if self.symmetry_breaking is None else self.symmetry_breaking
        return replace(self, node_budget=budget, workers=workers,
                       lower_bound=lower_bound, symmetry_breaking=symmetry)


@dataclass(frozen=True)
class GammaResult:
    """厳密支配数と証拠集合"""
    gamma: int
    witness: VertexSet
    nodes_explored: int
    elapsed: float
    view_name: str = ""


# 探索状態: (選択集合, 要素数, 支配済み集合, 候補集合)
_State = Tuple[int, int, int, int]


class _BranchAndBound:
    """最も制約の強い未支配頂点で分枝する分枝限定法"""

    def __init__(self, compiled: _CompiledView, lower_bound: str, budget: int,
                 incumbent_size: int, incumbent_mask: int, name: str):
        self.c = compiled
        self.bound = self._strong_bound if lower_bound == "strong" else self._basic_bound
        self.budget = budget
        self.best_size = incumbent_size
        self.best_mask = incumbent_mask
        self.improved = False
        self.nodes = 0
        self.name = name

    def _basic_bound(self, undominated: int, allowed: int) -> int:
        # 一頂点が支配できるのは高々 Δ+1 頂点
        return -(-undominated.bit_count() // (self.c.delta + 1))

    def _strong_bound(self, undominated: int, allowed: int) -> int:
        closed = self.c.closed
        count = undominated.bit_count()

        gains = []
        same_u = cross_u = same_v = cross_v = 0
        und_u = undominated & self.c.u_part
        und_v = undominated & ~self.c.u_part
        for p in _bits(allowed):
            cover = closed[p] & undominated
            if not cover:
                continue
            gains.append(cover.bit_count())
            if p < self.c.half:
                same_u = max(same_u, (cover & und_u).bit_count())
                cross_u = max(cross_u, (cover & und_v).bit_count())
            else:
                same_v = max(same_v, (cover & und_v).bit_count())
                cross_v = max(cross_v, (cover & und_u).bit_count())

        # 利得の大きい順に足して被覆に必要な個数
        gains.sort(reverse=True)
        total = 0
        cover_bound = INFEASIBLE
        for k, gain in enumerate(gains, 1):
            total += gain
            if total >= count:
                cover_bound = k
                break
        if cover_bound == INFEASIBLE:
            return INFEASIBLE

        # 閉近傍が互いに素な未支配頂点はそれぞれ別の頂点を要する
        used = 0
        packing = 0
        for x in _bits(undominated):
            dominators = closed[x] & allowed
            if not dominators:
                return INFEASIBLE
            if not dominators & used:
                used |= dominators
                packing += 1

        need_u = und_u.bit_count()
        need_v = und_v.bit_count()
        two_sided = INFEASIBLE
        for x in range(count + 1):
            rest_u = need_u - x * same_u
            rest_v = need_v - x * cross_u
            y = 0
            if rest_u > 0:
                if not cross_v:
                    continue
                y = max(y, -(-rest_u // cross_v))
            if rest_v > 0:
                if not same_v:
                    continue
                y = max(y, -(-rest_v // same_v))
            two_sided = min(two_sided, x + y)
            if two_sided <= x:
                break

        return max(cover_bound, packing, two_sided)

    def expand(self, state: _State) -> List[_State]:
        """ノードを評価し、子ノードを返す（葉・枝刈りなら空）"""
        chosen, size, dominated, allowed = state
        self.nodes += 1
        if self.nodes > self.budget:
            logger.error(f"探索ノード上限超過: {self.name} nodes={self.nodes}")
            raise BudgetExceededError(self.name, self.nodes, self.budget)

        undominated = self.c.universe & ~dominated
        if not undominated:
            if size < self.best_size:
                self.best_size = size
                self.best_mask = chosen
                self.improved = True
            return []
        if size + 1 >= self.best_size:
            return []
        if size + self.bound(undominated, allowed) >= self.best_size:
            return []

        closed = self.c.closed
        target_dominators = 0
        fewest = INFEASIBLE
        for x in _bits(undominated):
            dominators = closed[x] & allowed
            live = dominators.bit_count()
            if live < fewest:
                fewest = live
                target_dominators = dominators
                if live <= 1:
                    break
        if fewest == 0:
            return []

        # 生きた支配候補が1つなら強制採用（子は1つだけ）
        children = []
        for p in _bits(target_dominators):
            children.append((chosen | (1 << p), size + 1, dominated | closed[p], allowed))
            allowed &= ~(1 << p)
        return children

    def search(self, state: _State):
        for child in self.expand(state):
            self.search(child)


def _solve_subtree(compiled: _CompiledView, lower_bound: str, budget: int,
                   incumbent_size: int, state: _State, name: str):
    """プロセスワーカー: 部分木を独立に探索"""
    engine = _BranchAndBound(compiled, lower_bound, budget, incumbent_size, 0, name)
    engine.search(state)
    return (engine.best_size if engine.improved else None), engine.best_mask, engine.nodes


def _greedy_mask(compiled: _CompiledView) -> int:
    dominated = 0
    chosen = 0
    while compiled.universe & ~dominated:
        undominated = compiled.universe & ~dominated
        best_p, best_gain = -1, 0
        for p in _bits(compiled.universe):
            gain = (compiled.closed[p] & undominated).bit_count()
            if gain > best_gain:
                best_p, best_gain = p, gain
        chosen |= 1 << best_p
        dominated |= compiled.closed[best_p]
    return chosen


def greedy_upper_bound(view: GraphView) -> VertexSet:
    """未支配頂点を最も多く支配する頂点を繰り返し選ぶ（同点は U 優先・番号の小さい順）"""
    compiled = _compile(view)
    return compiled.to_set(_greedy_mask(compiled))


def is_dominating(view: GraphView, d: VertexSet) -> bool:
    """削除されていない全頂点が d に属するか d の頂点に隣接するか"""
    view.check_set(d)
    compiled = _compile(view)
    dominated = 0
    for p in _bits(compiled.to_mask(d)):
        dominated |= compiled.closed[p]
    return dominated & compiled.universe == compiled.universe


def _cache_key(view: GraphView, options: SolverOptions) -> str:
    deleted = view.deleted.label if view.deleted is not None else "-"
    return (f"gamma:{view.base.delta}:{view.base.n}:{deleted}:"
            f"{options.lower_bound}:{int(bool(options.symmetry_breaking))}")


def exact_gamma(view: GraphView, options: Optional[SolverOptions] = None) -> GammaResult:
    """分枝限定法による厳密支配数"""
    options = (options or SolverOptions()).resolved()
    key = _cache_key(view, options)
    if options.use_cache:
        cached = cache_manager.get(key)
        if cached is not None:
            return cached

    started = time.perf_counter()
    compiled = _compile(view)
    greedy = _greedy_mask(compiled)
    engine = _BranchAndBound(compiled, options.lower_bound, options.node_budget,
                             greedy.bit_count(), greedy, view.name)

    root: _State = (0, 0, 0, compiled.universe)
    if view.deleted is None and options.symmetry_breaking:
        # 頂点推移性: u_1 を含む最小支配集合が必ず存在する
        root = (1, 1, compiled.closed[0], compiled.universe & ~1)

    if options.workers > 1:
        children = engine.expand(root)
        if len(children) > 1:
            _search_parallel(engine, compiled, options, children, view.name)
        else:
            for child in children:
                engine.search(child)
    else:
        engine.search(root)

    witness = compiled.to_set(engine.best_mask)
    result = GammaResult(
        gamma=engine.best_size,
        witness=witness,
        nodes_explored=engine.nodes,
        elapsed=time.perf_counter() - started,
        view_name=view.name,
    )
    if len(witness) != result.gamma or not is_dominating(view, witness):
        raise ConsistencyError(f"{view.name}: 証拠集合 {witness} が支配集合になっていません")

    logger.debug(
        f"{view.name}: gamma={result.gamma} nodes={result.nodes_explored} "
        f"elapsed={result.elapsed:.3f}s witness={witness}"
    )
    if options.use_cache:
        cache_manager.set(key, result)
    return result


def _search_parallel(engine: _BranchAndBound, compiled: _CompiledView,
                     options: SolverOptions, children: List[_State], name: str):
    """根の子部分木をワーカーに分配（結果は逐次探索と同一）"""
    incumbent = engine.best_size
    with ProcessPoolExecutor(max_workers=options.workers) as pool:
        futures = [
            pool.submit(_solve_subtree, compiled, options.lower_bound,
                        options.node_budget, incumbent, child, name)
            for child in children
        ]
        outcomes = [future.result() for future in futures]

    # 同じ大きさなら先の部分木を優先する
    for best_size, best_mask, nodes in outcomes:
        engine.nodes += nodes
        if best_size is not None and best_size < engine.best_size:
            engine.best_size = best_size
            engine.best_mask = best_mask
    if engine.nodes > options.node_budget:
        raise BudgetExceededError(name, engine.nodes, options.node_budget)


def brute_force_gamma(view: GraphView) -> Tuple[int, VertexSet]:
    """部分集合を要素数の小さい順に全列挙する検算用オラクル"""
    compiled = _compile(view)
    positions = list(_bits(compiled.universe))
    for k in range(len(positions) + 1):
        for combo in itertools.combinations(positions, k):
            dominated = 0
            for p in combo:
                dominated |= compiled.closed[p]
            if dominated == compiled.universe:
                mask = 0
                for p in combo:
                    mask |= 1 << p
                return k, compiled.to_set(mask)
    raise ConsistencyError(f"{view.name}: 支配集合が見つかりません")


def gamma_after_deletion(g: KnodelGraph, w: VertexId,
                         options: Optional[SolverOptions] = None) -> GammaResult:
    """γ(G − w)"""
    return exact_gamma(deleted_view(g, w), options)


def external_private_neighbors(view: GraphView, d: VertexSet, member: VertexId) -> VertexSet:
    """epn(member, d) = { x ∉ d : N(x) ∩ d = {member} }"""
    view.check_set(d)
    view.check_vertex(member)
    if member not in d:
        raise ValidationError(f"頂点 {member} は集合 {d} に含まれていません")
    compiled = _compile(view)
    d_mask = compiled.to_mask(d)
    member_bit = 1 << compiled.position(member)
    result = 0
    for x in _bits(compiled.universe & ~d_mask):
        open_nbrs = compiled.closed[x] & ~(1 << x)
        if open_nbrs & d_mask == member_bit:
            result |= 1 << x
    return compiled.to_set(result)


class DeletionMode(str, Enum):
    """削除プロファイルの計算方式"""
    REPRESENTATIVE = "representative"
    ALL = "all"


@dataclass(frozen=True)
class DeletionProfile:
    """各頂点 w の γ(G − w)"""
    base_gamma: int
    per_vertex: Dict[VertexId, int]
    mode: DeletionMode = DeletionMode.ALL
    nodes_explored: int = 0

    def values(self) -> List[int]:
        return [self.per_vertex[vertex] for vertex in sorted(self.per_vertex)]

    def is_constant(self) -> bool:
        return len(set(self.per_vertex.values())) <= 1

    def within_bracket(self) -> bool:
        return all(self.base_gamma - 1 <= value <= self.base_gamma
                   for value in self.per_vertex.values())

    @property
    def deletion_gamma(self) -> int:
        """代表値（v_1 削除時の値）"""
        first = VertexId(Side.V, 1)
        if first in self.per_vertex:
            return self.per_vertex[first]
        return min(self.per_vertex.values())


def deletion_profile(g: KnodelGraph, mode="representative",
                     options: Optional[SolverOptions] = None) -> DeletionProfile:
    """representative: v_1 のみ解いて全頂点に複製 / all: n 通りを独立に解く"""
    try:
        mode = DeletionMode(mode)
    except ValueError:
        raise ValidationError(f"削除モードが不正です: {mode!r}")
    base = exact_gamma(full_view(g), options)
    nodes = base.nodes_explored

    per_vertex: Dict[VertexId, int] = {}
    if mode is DeletionMode.REPRESENTATIVE:
        result = gamma_after_deletion(g, v(1), options)
        nodes += result.nodes_explored
        per_vertex = {vertex: result.gamma for vertex in g.vertices()}
    else:
        for vertex in g.vertices():
            result = gamma_after_deletion(g, vertex, options)
            nodes += result.nodes_explored
            per_vertex[vertex] = result.gamma
    return DeletionProfile(base.gamma, per_vertex, mode, nodes)


class Verdict(str, Enum):
    """臨界性の判定"""
    CRITICAL = "Critical"
    STABLE = "Stable"
    MIXED = "Mixed"


@dataclass(frozen=True)
class Classification:
    verdict: Verdict
    profile: DeletionProfile = field(repr=False, default=None)


def verdict_from_profile(profile: DeletionProfile) -> Verdict:
    values = profile.per_vertex.values()
    if all(value < profile.base_gamma for value in values):
        return Verdict.CRITICAL
    if all(value == profile.base_gamma for value in values):
        return Verdict.STABLE
    return Verdict.MIXED


def critical_vertices(profile: DeletionProfile) -> List[VertexId]:
    """γ(G − w) < γ(G) となる頂点"""
    return [vertex for vertex in sorted(profile.per_vertex)
            if profile.per_vertex[vertex] < profile.base_gamma]


def classify(g: KnodelGraph, mode: Optional[str] = None,
             options: Optional[SolverOptions] = None) -> Classification:
    """γ-critical / γ-stable の判定（Mixed は整合性エラー）"""
    mode = mode or config.default_deletion_mode(g.n)
    profile = deletion_profile(g, mode, options)
    if not profile.within_bracket():
        raise ConsistencyError(
            f"{g.name}: γ(G−w) が [γ−1, γ] = [{profile.base_gamma - 1}, {profile.base_gamma}] の範囲外です"
        )
    verdict = verdict_from_profile(profile)
    if verdict is Verdict.MIXED:
        logger.error(f"{g.name}: 頂点推移グラフで Mixed 判定が出ました")
        raise ConsistencyError(f"{g.name}: 頂点推移グラフで Mixed 判定が出ました（ソルバー不整合）")
    return Classification(verdict, profile)
