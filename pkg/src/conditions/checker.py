#!/usr/bin/env python
# encoding: utf-8
"""
条件求值与权重对检查

eval_condition 求值单个条件，Inconclusive 时在加深的网格上重算一次。
check_pair 在共享缓存预热后并行求值一组条件，给出一致性矩阵与总体判定；
条件之间的分歧如实报告，不做调和。
"""

# 标准库导入
import dataclasses
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, Iterable, List, Optional, Type

# 本地模块导入
from .base import BaseCondition, ConditionReport, ConditionResult, OverallVerdict, WeightPair
from .kappa import kappa_criterion
from ..quad import DyadicGrid, Verdict
from ..utils.configs import DEFAULT_NUMERICS, NumericsConfig
from ..utils.decorators import CONDITION_REGISTRY
from ..utils.errors import ConvergenceError, DomainError, LabError, ParseError
from ..weights import RadialWeight, WeightClass, classify

logger = logging.getLogger(__name__)

# 默认条件集合
DEFAULT_CONDITIONS_P1 = ("T5c", "T5d", "EImpr")
DEFAULT_CONDITIONS = ("T4c", "T4d", "T4e", "T4f", "T4g", "EImpr")

MAX_WORKERS = 4


def resolve_condition(condition_id):
    # type: (str) -> Type[BaseCondition]
    """按条件编号查找条件类（大小写不敏感）"""
    lowered = condition_id.lower()
    for registered_id, condition_cls in CONDITION_REGISTRY.items():
        if registered_id.lower() == lowered:
            return condition_cls
    raise ParseError("未知的条件编号: {}（可用: {}）".format(
        condition_id, ", ".join(sorted(CONDITION_REGISTRY))), token=condition_id)


def default_conditions(p):
    # type: (float) -> List[str]
    return list(DEFAULT_CONDITIONS_P1 if p == 1.0 else DEFAULT_CONDITIONS)


def eval_condition(condition_id, omega, v, p, N=0, config=None, grid=None, pair=None):
    # type: (str, RadialWeight, RadialWeight, float, int, Optional[NumericsConfig], Optional[DyadicGrid], Optional[WeightPair]) -> ConditionResult
    """
    求值单个条件

    上确界型条件判为 Inconclusive 时，在加深 deepen_step 层（不超过 max_depth）的网格上重算一次。

    Raises:
        ParseError: 未知的条件编号
        DomainError: p 不在该条件的适用范围内，或 N < 0
        NumericError: 求积失败
    """
    config = config or DEFAULT_NUMERICS
    if N < 0:
        raise DomainError("导数阶数 N 必须非负，当前: {}".format(N))
    condition = resolve_condition(condition_id)(config)
    pair = pair or WeightPair(omega, v, config)
    grid = grid or pair.default_grid()
    result = condition.evaluate(omega, v, p, N, grid=grid, pair=pair)
    if result.verdict is not Verdict.INCONCLUSIVE or result.sup is None:
        return result

    deeper = pair.default_grid(grid.deepened(config.deepen_step, config.max_depth).depth)
    if deeper.depth <= grid.depth:
        return result
    logger.debug("{} 判定不确定，网格加深到 {} 层重算".format(condition.ID, deeper.depth))
    result = condition.evaluate(omega, v, p, N, grid=deeper, pair=pair)
    return dataclasses.replace(result, deepened=True)


def _overall(results):
    # type: (Iterable[ConditionResult]) -> str
    verdicts = [result.verdict for result in results]
    bounded = Verdict.BOUNDED in verdicts
    divergent = Verdict.DIVERGENT in verdicts
    if bounded and not divergent:
        return OverallVerdict.BOUNDED
    if divergent and not bounded:
        return OverallVerdict.UNBOUNDED
    return OverallVerdict.INCONCLUSIVE


def _agreement(results):
    # type: (Dict[str, ConditionResult]) -> Dict[str, Dict[str, bool]]
    """两两一致：不出现一个 Bounded、另一个 Divergent"""
    conflict = {Verdict.BOUNDED, Verdict.DIVERGENT}
    return {
        a: {b: {ra.verdict, rb.verdict} != conflict for b, rb in results.items()}
        for a, ra in results.items()
    }


def check_pair(omega, v, p, conditions=None, N=0, config=None):
    # type: (RadialWeight, RadialWeight, float, Optional[Iterable[str]], int, Optional[NumericsConfig]) -> ConditionReport
    """
    对权重对 (ω, v) 求值一组条件

    Args:
        omega: 权重 ω
        v: 权重 v
        p: 指数
        conditions: 条件编号集合，默认 p = 1 时为 T5c/T5d/EImpr，p > 1 时为 T4c..T4g/EImpr
        N: C2* 条件的导数阶数

    Returns:
        ConditionReport：单个条件的失败记为 Inconclusive 并附错误信息
    """
    config = config or DEFAULT_NUMERICS
    requested = [resolve_condition(cid).ID for cid in (conditions or default_conditions(p))]
    requested = list(dict.fromkeys(requested))

    warnings = []  # type: List[str]
    regular = True
    for weight in (omega, v):
        report = classify(weight, config)
        if report.weight_class is not WeightClass.REGULAR:
            regular = False
            message = "{} 的类别为 {}，不是正则权重；条件照常求值".format(weight.spec, report.weight_class.value)
            logger.warning(message)
            warnings.append(message)

    pair = WeightPair(omega, v, config)
    grid = pair.default_grid()
    # 预热共享缓存，之后各条件只读
    for which in ("omega", "v"):
        pair.tail(which)
        pair.tail_on(which, grid)

    def run(condition_id):
        try:
            return eval_condition(condition_id, omega, v, p, N, config, grid, pair)
        except LabError as e:
            logger.warning("条件 {} 求值失败: {}".format(condition_id, e))
            return ConditionResult(condition_id, Verdict.INCONCLUSIVE, error=str(e))

    with ThreadPoolExecutor(max_workers=min(MAX_WORKERS, len(requested))) as pool:
        results = dict(zip(requested, pool.map(run, requested)))

    characterizing = {cid: result for cid, result in results.items() if resolve_condition(cid).CHARACTERIZES}
    overall = _overall(characterizing.values())

    boundary = any(result.boundary for result in results.values())
    if regular and "KappaCrit" not in results:
        try:
            boundary = kappa_criterion(omega, v, p, config).boundary
        except ConvergenceError as e:
            logger.debug("κ 外推未收敛，跳过边界检测: {}".format(e))
    if boundary:
        message = "κ_ω/κ_v 与 p = {} 在误差范围内相等，判定为边界情形".format(p)
        logger.warning(message)
        warnings.append(message)
        overall = OverallVerdict.INCONCLUSIVE

    return ConditionReport(omega.spec, v.spec, p, N, results, _agreement(characterizing), overall,
                           boundary, warnings)
