#!/usr/bin/env python
# encoding: utf-8
"""
Bergman 数值实验室 - 主程序入口

径向权重分类、加权 Bergman 核求值、投影有界性条件检查与参数扫描。
结果以 JSON 报告（schema 1）或 CSV 输出，报告可用 --replay 重新运行。

使用方法:
    python3 main.py [全局选项] <子命令> [选项]

示例:
    python3 main.py classify --weight pow:a=1
    python3 main.py check --omega pow:a=0 --v pow:a=1 --p 3
    python3 main.py kernel --weight std:a=0 --a 0.5 --z 0.5 --mode eval
    python3 main.py sweep --quantity T4d --omega pow:a=0 --v pow:a=1 --p-range 1.1:4:30 --format csv

退出码:
    0 成功；1 未预期错误；2 解析或定义域错误；3 数值错误（含重放结果不一致）；4 前置条件不满足
"""

# 标准库导入
import argparse
import logging
import sys
import traceback
from typing import Any, Dict, List, Optional, Tuple

# 本地模块导入
from src.utils.application_context import ApplicationContext
from src.utils.errors import LabError, ParseError

EXIT_OK = 0
EXIT_UNEXPECTED = 1
EXIT_PARSE = 2
EXIT_MISMATCH = 3

# 可由命令行覆盖的 NumericsConfig 字段
NUMERIC_OVERRIDES = ("grid_depth", "tol", "slope_tol", "n_max", "x_max", "seed")


def get_version_info():
    # type: () -> str
    """获取版本信息，总是返回字符串"""
    try:
        from src.utils.config_manager import ConfigManager
        return ConfigManager().get_version_info()
    except Exception:
        return "bergman_lab 1.0.0"


def _common_options():
    # type: () -> argparse.ArgumentParser
    """各子命令共享的数值覆盖项与输出选项"""
    common = argparse.ArgumentParser(add_help=False)
    group = common.add_argument_group("数值与输出")
    group.add_argument("--grid-depth", type=int, help="二进探测网格深度（<= 48）")
    group.add_argument("--tol", type=float, help="求积容差")
    group.add_argument("--slope-tol", type=float, help="判为有界的最大尾部斜率")
    group.add_argument("--n-max", type=int, help="核系数个数")
    group.add_argument("--x-max", type=float, help="|a||z| 的上限")
    group.add_argument("--seed", type=int, help="随机探测点的种子")
    group.add_argument("--format", choices=["json", "csv"], help="输出格式（csv 仅用于 sweep）")
    group.add_argument("--out", type=str, help="输出文件路径，缺省写到标准输出")
    return common


def build_parser():
    # type: () -> argparse.ArgumentParser
    parser = argparse.ArgumentParser(
        description="径向权重与加权 Bergman 投影的数值实验室",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        allow_abbrev=False,
        epilog="""
示例用法:
  %(prog)s classify --weight log:a=2
  %(prog)s check --omega pow:a=0 --v pow:a=0 --p 1
  %(prog)s kernel --weight std:a=0 --a 0.8 --r 0.9 --p 2 --mode mean
  %(prog)s sweep --quantity Q --omega log:a=2 --p 2 --format csv --out q.csv
  %(prog)s --replay output/report.json
        """
    )
    parser.add_argument("-c", "--config", type=str, default="config/lab_config.yaml", help="配置文件路径")
    parser.add_argument("-V", "--version", action="version", version=get_version_info(), help="显示版本信息")
    parser.add_argument("-v", "--verbose", action="store_true", help="详细输出模式")
    parser.add_argument("--replay", type=str, help="重新运行 JSON 报告中记录的请求")

    common = _common_options()
    subparsers = parser.add_subparsers(dest="command")

    classify = subparsers.add_parser("classify", parents=[common], help="权重分类")
    classify.add_argument("--weight", required=True, help="权重描述，如 pow:a=1")
    classify.add_argument("--lemma9", type=float, metavar="A", help="同时检查参数 a 的三种正则刻画")

    check = subparsers.add_parser("check", parents=[common], help="投影有界性条件检查")
    check.add_argument("--omega", required=True, help="权重 ω")
    check.add_argument("--v", required=True, help="权重 v")
    check.add_argument("--p", type=float, required=True, help="指数 p")
    check.add_argument("--N", type=int, default=0, help="C2* 条件的导数阶数")
    check.add_argument("--conditions", type=str, help="条件编号，用逗号分隔（例如: T4c,T4d,EImpr）")
    check.add_argument("--window", action="store_true", help="同时估计自我改进指数窗口")
    check.add_argument("--probes", action="store_true", help="同时运行算子范数与 Bloch 探测")

    kernel = subparsers.add_parser("kernel", parents=[common], help="核求值")
    kernel.add_argument("--weight", required=True, help="权重 ω")
    kernel.add_argument("--a", type=str, required=True, help="核参数 a（可为复数）")
    position = kernel.add_mutually_exclusive_group()
    position.add_argument("--z", type=str, help="求值点 z（eval 模式）")
    position.add_argument("--r", type=float, help="圆周半径 r（mean 模式）")
    kernel.add_argument("--p", type=float, default=2.0, help="指数 p")
    kernel.add_argument("--N", type=int, default=0, help="z 方向导数阶数")
    kernel.add_argument("--mode", choices=["eval", "mean", "norm"], default="eval", help="求值模式")
    kernel.add_argument("--v", type=str, help="norm 模式的权重 v，缺省同 --weight")

    sweep = subparsers.add_parser("sweep", parents=[common], help="profile 或参数扫描")
    sweep.add_argument("--quantity", required=True, help="条件编号、Q、psi 或 doubling")
    sweep.add_argument("--omega", required=True, help="权重 ω")
    sweep.add_argument("--v", type=str, help="权重 v，缺省同 --omega")
    sweep.add_argument("--p", type=float, default=2.0, help="指数 p（profile 扫描）")
    sweep.add_argument("--N", type=int, default=0, help="C2* 条件的导数阶数")
    sweep.add_argument("--p-range", type=str, metavar="START:STOP:NUM", help="参数扫描的 p 范围")
    return parser


def collect_request(args, lab):
    # type: (argparse.Namespace, Any) -> Tuple[str, Dict[str, Any]]
    """把命令行参数整理为可写入报告的 (子命令, 参数)"""
    if args.command == "classify":
        return "classify", {"weight": args.weight, "lemma9": args.lemma9}
    if args.command == "check":
        conditions = lab.registry.parse_condition_list(args.conditions) if args.conditions else None
        return "check", {"omega": args.omega, "v": args.v, "p": args.p, "conditions": conditions,
                         "N": args.N, "window": args.window, "probes": args.probes}
    if args.command == "kernel":
        return "kernel", {"weight": args.weight, "a": args.a, "z": args.z, "r": args.r, "p": args.p,
                          "N": args.N, "mode": args.mode, "v": args.v}
    return "sweep", {"quantity": args.quantity, "omega": args.omega, "v": args.v, "p": args.p, "N": args.N,
                     "p_range": args.p_range}


def run_command(args, context):
    # type: (argparse.Namespace, ApplicationContext) -> int
    """执行一个子命令并写出结果"""
    lab = context.get_lab()
    overrides = {name: getattr(args, name) for name in NUMERIC_OVERRIDES}
    overrides["format"] = args.format
    overrides["out"] = args.out
    run = lab.run_config(overrides)

    command, arguments = collect_request(args, lab)
    if run.output_format == "csv" and command != "sweep":
        raise ParseError("csv 输出只用于 sweep", token="--format")

    result = lab.execute(command, arguments, run.numerics)
    if run.output_format == "csv":
        context.get_csv_writer().write(result["rows"], run.output_path)
    else:
        writer = context.get_report_writer()
        writer.write(writer.build(lab.build_request(command, arguments, run.numerics), result), run.output_path)
    return EXIT_OK


def run_replay(args, context):
    # type: (argparse.Namespace, ApplicationContext) -> int
    lab = context.get_lab()
    identical, report = lab.replay(args.replay)
    context.get_report_writer().write(report, getattr(args, "out", None))
    return EXIT_OK if identical else EXIT_MISMATCH


def main(argv=None):
    # type: (Optional[List[str]]) -> int
    """主函数，返回进程退出码"""
    parser = build_parser()
    args = parser.parse_args(argv)
    if not args.command and not args.replay:
        parser.print_help(sys.stderr)
        return EXIT_PARSE

    try:
        context = ApplicationContext(args.config)
    except (ValueError, OSError) as e:
        sys.stderr.write("配置加载失败: {}\n".format(e))
        return EXIT_PARSE
    logger = context.get_logger()

    if args.verbose:
        context.log_manager.set_level(logging.DEBUG)
        logger.debug("日志级别已设置为DEBUG")

    try:
        if args.replay:
            return run_replay(args, context)
        return run_command(args, context)
    except LabError as e:
        logger.error("{}: {}".format(e.__class__.__name__, e))
        return e.exit_code
    except Exception as e:
        logger.error("运行失败: {}".format(e))
        logger.debug(traceback.format_exc())
        return EXIT_UNEXPECTED
    finally:
        context.cleanup()


if __name__ == "__main__":
    sys.exit(main())
