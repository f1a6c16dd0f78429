#!/usr/bin/env python
# encoding: utf-8
"""
条件基类

所有积分有界性条件的共同接口。上确界型条件只需实现 profile，
返回网格各层上的 F(r_k)；基类负责上确界判定。

条件分两类：
- 刻画投影有界性的条件（T4*、EImpr、T5*、KappaCrit），参与一致性矩阵与总体判定
- 辅助条件（C2*、L9*），只单独报告
"""

# 标准库导入
import threading
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

# 第三方库导入
import numpy as np

# 本地模块导入
from ..quad import DyadicGrid, SupVerdict, Verdict, dyadic_integrals, sup_verdict
from ..utils.configs import DEFAULT_NUMERICS, NumericsConfig
from ..utils.decorators import require_exponent
from ..utils.errors import DomainError
from ..weights import RadialWeight, probe_grid, tail_function, tail_on_grid


class OverallVerdict:
    """check_pair 的总体判定取值"""
    BOUNDED = "Bounded"
    UNBOUNDED = "Unbounded"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class ConditionResult:
    """单个条件的求值结果"""
    condition: str
    verdict: Verdict
    sup: Optional[SupVerdict] = None
    ratio: Optional[float] = None
    boundary: bool = False
    deepened: bool = False
    grid_depth: Optional[int] = None
    details: Dict[str, Any] = field(default_factory=dict)
    error: Optional[str] = None

    @property
    def bounded(self):
        return self.verdict is Verdict.BOUNDED

    @property
    def divergent(self):
        return self.verdict is Verdict.DIVERGENT

    def to_dict(self):
        # type: () -> Dict[str, Any]
        return {
            "condition": self.condition,
            "verdict": self.verdict.value,
            "sup": self.sup.to_dict() if self.sup else None,
            "ratio": self.ratio,
            "boundary": self.boundary,
            "deepened": self.deepened,
            "grid_depth": self.grid_depth,
            "details": self.details,
            "error": self.error,
        }


@dataclass(frozen=True)
class ConditionReport:
    """check_pair 的结果：逐条件判定、一致性矩阵与总体判定"""
    omega: str
    v: str
    p: float
    N: int
    results: Dict[str, ConditionResult]
    agreement: Dict[str, Dict[str, bool]]
    overall: str
    boundary: bool = False
    warnings: List[str] = field(default_factory=list)

    def to_dict(self):
        # type: () -> Dict[str, Any]
        return {
            "inputs": {"omega": self.omega, "v": self.v, "p": self.p, "N": self.N},
            "conditions": {cid: result.to_dict() for cid, result in self.results.items()},
            "agreement": self.agreement,
            "overall": self.overall,
            "boundary": self.boundary,
            "warnings": list(self.warnings),
        }


class WeightPair:
    """
    一对权重 (ω, v) 在给定网格上的共享量

    ω̂、v̂ 的向量化函数与网格值只计算一次，供同一次 check_pair 的各条件复用。
    """

    def __init__(self, omega, v, config=None):
        # type: (RadialWeight, RadialWeight, Optional[NumericsConfig]) -> None
        self.omega = omega
        self.v = v
        self.config = config or DEFAULT_NUMERICS
        self._tails = {}  # type: Dict[str, Any]
        self._grid_tails = {}  # type: Dict[Any, np.ndarray]
        # check_pair 的工作线程共享同一个实例
        self._lock = threading.Lock()

    def tail(self, which):
        """which 为 "omega" 或 "v"，返回向量化的 ω̂ 或 v̂"""
        with self._lock:
            if which not in self._tails:
                self._tails[which] = tail_function(getattr(self, which), self.config)
            return self._tails[which]

    def tail_on(self, which, grid):
        # type: (str, DyadicGrid) -> np.ndarray
        key = (which, grid.depth)
        with self._lock:
            if key not in self._grid_tails:
                self._grid_tails[key] = tail_on_grid(getattr(self, which), grid, self.config)
            return self._grid_tails[key]

    def density_on(self, which, grid):
        # type: (str, DyadicGrid) -> np.ndarray
        """ω 或 v 在网格上的值；为 0 时无法作除数"""
        values = np.asarray(getattr(self, which).omega(grid.s), dtype=float)
        if not np.all(values > 0.0):
            raise DomainError("{} 在网格上出现非正值，无法作除数".format(getattr(self, which).spec))
        return values

    def default_grid(self, depth=None):
        # type: (Optional[int]) -> DyadicGrid
        a = probe_grid(self.omega, self.config, depth)
        b = probe_grid(self.v, self.config, depth)
        return a if a.depth <= b.depth else b

    def head(self, g, grid):
        # type: (Any, DyadicGrid) -> np.ndarray
        """∫_{s_k}^1 g，即 r 坐标下的 ∫_0^{r_k}"""
        return dyadic_integrals(g, grid, config=self.config, with_tail=False).head

    def tail_integrals(self, g, grid):
        # type: (Any, DyadicGrid) -> np.ndarray
        """∫_0^{s_k} g，即 r 坐标下的 ∫_{r_k}^1；发散时为 inf"""
        return dyadic_integrals(g, grid, config=self.config, with_head=False).tail


class BaseCondition(ABC):
    """
    积分条件基类

    基本使用方法：
    condition = ConditionClass(config)
    result = condition.evaluate(omega, v, p, N)
    """
    # 由 @register_condition 设置
    ID = None  # type: Optional[str]

    # 指数下限；STRICT_MIN_P 为 True 时要求 p > MIN_P
    MIN_P = None  # type: Optional[float]
    STRICT_MIN_P = False

    # 是否刻画 P_ω 在 L^p_v 上的有界性（参与总体判定）
    CHARACTERIZES = True

    DESCRIPTION = ""

    def __init__(self, config=None):
        # type: (Optional[NumericsConfig]) -> None
        self.config = config or DEFAULT_NUMERICS

    @require_exponent
    def evaluate(self, omega, v, p, N=0, grid=None, pair=None):
        # type: (RadialWeight, RadialWeight, float, int, Optional[DyadicGrid], Optional[WeightPair]) -> ConditionResult
        """
        在网格上计算 F(r_k) 并判定其上确界

        Args:
            omega: 权重 ω
            v: 权重 v
            p: 指数
            N: 核导数阶数（仅 C2* 使用）
            grid: 二进网格，默认取两个权重共同可用的探测网格
            pair: 共享的权重对缓存

        Returns:
            ConditionResult
        """
        pair = pair or WeightPair(omega, v, self.config)
        grid = grid or pair.default_grid()
        values = self.profile(pair, p, N, grid)
        sup = sup_verdict(values, levels=grid.levels, config=self.config)
        return ConditionResult(self.ID, sup.verdict, sup=sup, grid_depth=grid.depth)

    @abstractmethod
    def profile(self, pair, p, N, grid):
        # type: (WeightPair, float, int, DyadicGrid) -> np.ndarray
        """网格各层上的 F(r_k)"""
        pass

    def __repr__(self):
        return "{}(id={!r})".format(self.__class__.__name__, self.ID)
