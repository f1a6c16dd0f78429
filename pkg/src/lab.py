#!/usr/bin/env python
# encoding: utf-8
"""
Bergman 数值实验室

命令行各子命令的实现：权重分类、条件检查、核求值与参数扫描。
每个 cmd_* 方法接收普通参数（可写入报告的 request 节），返回可序列化的结果，
--replay 依靠这一点重新运行报告中记录的请求。
"""

# 标准库导入
import math
from typing import TYPE_CHECKING, Any, Callable, Dict, List, Optional, Tuple

# 第三方库导入
import numpy as np

# 本地模块导入
from .conditions import check_pair, eval_condition, exponent_window, lemma9_check
from .kernel import (CoeffPoly, bergman_norm, circle_mean, kernel_coeffs_for, kernel_eval, reproducing_check,
                     thm1_mean_comparand, thm1_norm_comparand)
from .operators import bloch_probe, indicator_test, moment_necessity, opnorm_lower
from .oracle import forelli_rudin, std_kernel_derivative
from .quad import SupVerdict, Verdict, sup_verdict
from .utils.configs import NumericsConfig, RunConfig
from .utils.errors import DomainError, NumericError, ParseError
from .weights import RadialWeight, classify, doubling_report, parse_weight, probe_grid, psi_ratio_on_grid

if TYPE_CHECKING:
    # noinspection PyUnusedImports
    from .utils.application_context import ApplicationContext

COMMANDS = ("classify", "check", "kernel", "sweep")
KERNEL_MODES = ("eval", "mean", "norm")
# 与闭式参考值比较的相对容差
ORACLE_RTOL = 1e-9
# 再生性检查所用随机多项式的次数
REPRODUCING_DEGREE = 8
# 不依赖 p 的扫描量
PROFILE_ONLY_QUANTITIES = ("psi", "doubling")


def parse_complex(text, name):
    # type: (Any, str) -> complex
    """解析复数参数（如 "0.5"、"0.3+0.4j"）"""
    if isinstance(text, (int, float, complex)):
        return complex(text)
    try:
        return complex(str(text).replace(" ", ""))
    except ValueError:
        raise ParseError("{} 不是合法的复数: {!r}".format(name, text), token=str(text))


def parse_p_range(text):
    # type: (str) -> np.ndarray
    """
    解析 start:stop:num

    Raises:
        ParseError: 格式错误或 num < 0
    """
    parts = text.split(":")
    if len(parts) != 3:
        raise ParseError("p 范围格式应为 start:stop:num，当前: {}".format(text), token=text)
    try:
        start, stop, num = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise ParseError("p 范围格式应为 start:stop:num，当前: {}".format(text), token=text)
    if num < 0:
        raise ParseError("p 范围的点数必须非负，当前: {}".format(num), token=parts[2])
    return np.linspace(start, stop, num)


class BergmanLab:
    """
    实验室调度器

    持有条件注册表与配置管理器；数值计算本身在各模块的函数中完成。
    """

    def __init__(self, context):
        # type: ('ApplicationContext') -> None
        self.context = context
        self.logger = context.get_logger(self)
        self.config_manager = context.config_manager
        self.registry = context.get_condition_registry()

        self.logger.debug("实验室初始化完成")

    def run_config(self, overrides):
        # type: (Dict[str, Any]) -> RunConfig
        """
        合并配置文件与命令行覆盖项

        Raises:
            DomainError: 覆盖后的配置非法
        """
        try:
            return RunConfig.from_sources(self.config_manager.get_numerics_config(),
                                          self.config_manager.get_output_config(), overrides)
        except ValueError as e:
            raise DomainError("运行配置无效: {}".format(e))

    @staticmethod
    def build_request(command, arguments, numerics):
        # type: (str, Dict[str, Any], NumericsConfig) -> Dict[str, Any]
        return {"command": command, "arguments": dict(arguments), "numerics": numerics.to_dict()}

    def execute(self, command, arguments, numerics):
        # type: (str, Dict[str, Any], NumericsConfig) -> Dict[str, Any]
        """按子命令名分派"""
        if command not in COMMANDS:
            raise ParseError("未知的子命令: {}".format(command), token=command)
        handler = getattr(self, "cmd_{}".format(command))  # type: Callable[..., Dict[str, Any]]
        self.logger.info("开始执行 {}".format(command))
        result = handler(numerics=numerics, **arguments)
        self.logger.info("{} 执行完成".format(command))
        return result

    def replay(self, path):
        # type: (str) -> Tuple[bool, Dict[str, Any]]
        """
        重新运行报告中记录的请求

        Returns:
            (结果是否逐位相同, 新报告)
        """
        writer = self.context.get_report_writer()
        recorded = writer.read(path)
        request = recorded["request"]
        try:
            numerics = NumericsConfig.validate(request.get("numerics") or {})
        except ValueError as e:
            raise ParseError("报告中的数值配置无效: {}".format(e), token=str(path))
        result = self.execute(request.get("command", ""), request.get("arguments") or {}, numerics)
        fresh = writer.build(request, result)
        identical = fresh["result"] == recorded["result"]
        if identical:
            self.logger.info("重放结果与报告一致: {}".format(path))
        else:
            self.logger.warning("重放结果与报告不一致: {}".format(path))
        return identical, fresh

    # ------------------------------------------------------------------ classify

    def cmd_classify(self, numerics, weight, lemma9=None):
        # type: (NumericsConfig, str, Optional[float]) -> Dict[str, Any]
        """权重分类，附倍增与 κ 估计；给出 lemma9 时附加三种正则刻画"""
        w = parse_weight(weight)
        result = classify(w, numerics).to_dict()
        if lemma9 is not None:
            result["lemma9"] = lemma9_check(w, float(lemma9), numerics).to_dict()
        return result

    # ------------------------------------------------------------------ check

    def cmd_check(self, numerics, omega, v, p, conditions=None, N=0, window=False, probes=False):
        # type: (NumericsConfig, str, str, float, Optional[List[str]], int, bool, bool) -> Dict[str, Any]
        """权重对的条件检查；可选指数窗口与算子探测"""
        w_omega, w_v = parse_weight(omega), parse_weight(v)
        if conditions:
            conditions = [self.registry.get_condition_class(cid).ID for cid in conditions]
        report = check_pair(w_omega, w_v, float(p), conditions, int(N), numerics)
        result = report.to_dict()
        if window:
            result["window"] = self._guarded("指数窗口", lambda: exponent_window(w_omega, w_v, float(p), numerics))
        if probes:
            result["probes"] = self._operator_probes(w_omega, w_v, float(p), numerics)
        return result

    def _guarded(self, name, func):
        # type: (str, Callable[[], Any]) -> Any
        """可选附加项：数值或定义域错误记录在结果中；前置条件不满足时照常抛出"""
        try:
            return func()
        except (NumericError, DomainError) as e:
            self.logger.warning("{} 失败: {}".format(name, e))
            return e.to_dict()

    def _operator_probes(self, omega, v, p, numerics):
        # type: (RadialWeight, RadialWeight, float, NumericsConfig) -> Dict[str, Any]
        probes = {
            "opnorm_lower": self._guarded("算子范数下界", lambda: opnorm_lower(omega, v, p, config=numerics)),
            "bloch": self._guarded("Bloch 探测", lambda: bloch_probe(omega, config=numerics)),
        }
        if p > 1.0:
            probes["indicator"] = self._guarded("示性函数检验", lambda: indicator_test(omega, p, config=numerics))
            probes["moment_necessity"] = self._guarded(
                "矩必要条件", lambda: moment_necessity(omega, v, p, numerics.n_max, numerics))
        return probes

    # ------------------------------------------------------------------ kernel

    def cmd_kernel(self, numerics, weight, a, z=None, r=None, p=2.0, N=0, mode="eval", v=None):
        # type: (NumericsConfig, str, Any, Any, Optional[float], float, int, str, Optional[str]) -> Dict[str, Any]
        """
        核求值

        mode:
            eval: (B^ω_a)^{(N)}(z)，std 族与闭式比较，并做一次随机多项式的再生性检查
            mean: M_p^p(r, (B^ω_a)^{(N)})，附估计式的比较积分
            norm: ‖(B^ω_a)^{(N)}‖^p_{A^p_v}，附比较积分；pow 权重对附 Forelli-Rudin 闭式
        """
        if mode not in KERNEL_MODES:
            raise ParseError("未知的核求值模式: {}".format(mode), token=mode)
        w = parse_weight(weight)
        a = parse_complex(a, "a")
        N = int(N)
        p = float(p)
        result = {"weight": w.spec, "mode": mode, "a": a, "p": p, "N": N}  # type: Dict[str, Any]

        if mode == "eval":
            z = parse_complex(0.0 if z is None else z, "z")
            K = kernel_coeffs_for(w, abs(a) * abs(z), N, numerics)
            value = kernel_eval(K, a, z, N, config=numerics)
            result.update({"z": z, "value": value, "n_max": K.n_max})
            oracle = self._std_oracle(w, a, z, N)
            if oracle is not None:
                rel_err = abs(value - oracle) / max(abs(oracle), 1e-300)
                result["oracle"] = {"value": oracle, "rel_err": rel_err, "match": rel_err <= ORACLE_RTOL}
            result["reproducing"] = self._reproducing(w, a, numerics)
            return result

        if mode == "mean":
            if r is None:
                raise ParseError("mean 模式需要 --r", token="--r")
            r = float(r)
            K = kernel_coeffs_for(w, abs(a) * r, N, numerics)
            value = circle_mean(K, a, r, p, N, config=numerics)
            comparand = thm1_mean_comparand(w, p, N, a, r, numerics)
            result.update({"r": r, "value": value, "comparand": comparand,
                           "ratio": value / comparand if comparand > 0.0 else None, "n_max": K.n_max})
            return result

        w_v = parse_weight(v) if v else w
        K = kernel_coeffs_for(w, abs(a), N, numerics)
        value = bergman_norm(K, a, w_v, p, N, numerics)
        comparand = thm1_norm_comparand(w, w_v, p, N, a, numerics)
        result.update({"v": w_v.spec, "value": value, "comparand": comparand,
                       "ratio": value / comparand if comparand > 0.0 else None, "n_max": K.n_max})
        if N == 0 and w.family == "pow" and w_v.family == "pow" and w.factor == 1.0 and w_v.factor == 1.0:
            closed = forelli_rudin(w.param("a"), w_v.param("a"), p, abs(a))
            result["oracle"] = {"comparand": closed,
                                "rel_err": abs(comparand - closed) / max(abs(closed), 1e-300)}
        return result

    @staticmethod
    def _std_oracle(w, a, z, N):
        # type: (RadialWeight, complex, complex, int) -> Optional[complex]
        if w.family != "std":
            return None
        return std_kernel_derivative(w.param("a"), a, z, N) / w.factor

    def _reproducing(self, w, a, numerics):
        # type: (RadialWeight, complex, NumericsConfig) -> Dict[str, Any]
        rng = np.random.default_rng(numerics.seed)
        coefficients = rng.normal(size=REPRODUCING_DEGREE + 1) + 1j * rng.normal(size=REPRODUCING_DEGREE + 1)
        f = CoeffPoly(tuple(complex(c) for c in coefficients))
        try:
            inner, expected, rel_err = reproducing_check(f, w, a, config=numerics)
        except NumericError as e:
            self.logger.warning("再生性检查失败: {}".format(e))
            return e.to_dict()
        return {"inner": inner, "expected": expected, "rel_err": rel_err}

    # ------------------------------------------------------------------ sweep

    def cmd_sweep(self, numerics, quantity, omega, v=None, p=2.0, N=0, p_range=None):
        # type: (NumericsConfig, str, str, Optional[str], float, int, Optional[str]) -> Dict[str, Any]
        """
        扫描

        quantity 为条件编号、Q、psi 或 doubling。给出 p_range 时对每个 p 记录上确界估计
        （参数扫描），否则记录二进网格各层上的取值（profile 扫描）。

        Returns:
            {"quantity", "mode", "rows"}，rows 的键为 CSV 的固定列
        """
        w_omega = parse_weight(omega)
        w_v = parse_weight(v) if v else w_omega
        quantity = self._canonical_quantity(quantity)

        if p_range is None:
            sup, verdict = self._profile(quantity, w_omega, w_v, float(p), int(N), numerics)
            rows = [{"level": int(level), "r": 1.0 - 2.0 ** -int(level), "s": 2.0 ** -int(level),
                     "value": float(value), "verdict": verdict.value}
                    for level, value in zip(sup.levels, sup.values)]
            return {"quantity": quantity, "mode": "profile", "rows": rows}

        if quantity in PROFILE_ONLY_QUANTITIES:
            raise DomainError("{} 不依赖 p，不能做参数扫描".format(quantity))
        rows = []
        for p_value in parse_p_range(p_range):
            value, verdict = self._sup_at(quantity, w_omega, w_v, float(p_value), int(N), numerics)
            rows.append({"value": value, "verdict": verdict.value, "param": float(p_value)})
        if not rows:
            self.logger.warning("p 范围为空，只输出表头")
        return {"quantity": quantity, "mode": "parameter", "rows": rows}

    def _canonical_quantity(self, quantity):
        # type: (str) -> str
        lowered = quantity.lower()
        if lowered == "q":
            return "Q"
        if lowered in PROFILE_ONLY_QUANTITIES:
            return lowered
        return self.registry.get_condition_class(quantity).ID

    @staticmethod
    def _profile(quantity, omega, v, p, N, numerics):
        # type: (str, RadialWeight, RadialWeight, float, int, NumericsConfig) -> Tuple[SupVerdict, Verdict]
        """逐层取值与各行记录的判定；条件按其自身的判定记录"""
        if quantity == "Q":
            sup = indicator_test(omega, p, config=numerics)
        elif quantity == "psi":
            grid = probe_grid(omega, numerics)
            sup = sup_verdict(psi_ratio_on_grid(omega, grid, numerics), levels=grid.levels, config=numerics)
        elif quantity == "doubling":
            sup = doubling_report(omega, numerics).verdict
        else:
            result = eval_condition(quantity, omega, v, p, N, numerics)
            if result.sup is None or not result.sup.values:
                raise DomainError("条件 {} 没有逐层取值，不能做 profile 扫描（{}）".format(
                    quantity, result.error or result.verdict.value))
            return result.sup, result.verdict
        return sup, sup.verdict

    @staticmethod
    def _sup_at(quantity, omega, v, p, N, numerics):
        # type: (str, RadialWeight, RadialWeight, float, int, NumericsConfig) -> Tuple[float, Verdict]
        try:
            if quantity == "Q":
                sup = indicator_test(omega, p, config=numerics)
                return sup.sup_value, sup.verdict
            result = eval_condition(quantity, omega, v, p, N, numerics)
        except NumericError:
            return math.nan, Verdict.INCONCLUSIVE
        if result.ratio is not None:
            return result.ratio, result.verdict
        return (result.sup.sup_value if result.sup is not None else math.nan), result.verdict

    def cleanup(self):
        # type: () -> None
        self.logger.debug("实验室清理完成")
