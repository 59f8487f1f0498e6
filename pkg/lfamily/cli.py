#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
lfamily 命令行工具

每个子命令执行一个实验，把报告以 json / csv / human 格式写到标准输出或 --out 文件。
退出码：0 成功，1 定义域错误，2 精度错误，3 用法或配置错误
"""

import sys
import time
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence

import click
from loguru import logger as loguru_logger
from pydantic import BaseModel, Field

from . import __version__
from .characters import (
    character_from_key,
    enumerate_family,
    family_oracle,
    is_principal,
)
from .core.cache import ResultCache
from .core.config import get_config_int, get_config_str, get_settings, override_config, reload_config
from .core.executor import settings_snapshot
from .core.logger import setup_logging
from .exceptions import DomainError, LFamilyException
from .lfunc import (
    functional_equation_residual,
    l_derivative,
    l_derivative_fd,
    l_value_afe,
    l_value_oracle,
)
from .moments import (
    SpacingStrategy,
    critical_length_reduction,
    discrete_family_moment,
    family_moment_fixed_t,
    family_wellspaced,
    generate_wellspaced,
    hardy_littlewood_second_moment,
    integrated_derivative_moment,
    integrated_family_moment,
    run_scaling_grid,
    square_part_comparison,
)
from .reports import (
    OUTPUT_FORMATS,
    DetectorBatchReport,
    EvaluationReport,
    FamilyTable,
    GallagherMatrixReport,
    ReportEnvelope,
    ReportWriter,
)
from .sieve import (
    gallagher_check,
    meanvalue_check,
    random_point_sets,
    random_unit_coefficients,
    sieve_lhs_discrete,
    sieve_lhs_discrete_reference,
    sieve_lhs_integrated,
    sieve_scaling_probe,
)
from .zeros import (
    ZeroListReport,
    count_zeros_rectangle,
    critical_line_zeros,
    detector_check,
    detector_parameters,
    family_zero_count,
    spaced_zero_subset,
    zero_density_bounds,
)

logger = loguru_logger.bind(name="cli")

LOG_LEVELS = ["TRACE", "DEBUG", "INFO", "SUCCESS", "WARNING", "ERROR", "CRITICAL"]


class RunConfig(BaseModel):
    """一次运行的全部输入"""

    command: str = Field(description="子命令")
    params: Dict[str, Any] = Field(default_factory=dict, description="实验参数")
    seed: int = Field(description="随机种子")
    format: str = Field(default="json", description="输出格式")
    cache_dir: Optional[str] = Field(default=None, description="缓存目录")
    workers: int = Field(default=1, ge=1, description="worker 数")
    out: Optional[str] = Field(default=None, description="输出文件")
    reproducible: bool = Field(default=False, description="wall_time 写为 null")
    config_file: Optional[str] = Field(default=None, description="配置文件")

    def echo(self) -> Dict[str, Any]:
        """报告中的配置回显，不含 workers、cache_dir、out 等执行参数"""
        return {"command": self.command, "params": self.params, "seed": self.seed, "settings": settings_snapshot()}

    def cache(self) -> Optional[ResultCache]:
        return ResultCache(self.cache_dir) if self.cache_dir else None


def common_options(func: Callable) -> Callable:
    """所有子命令共享的选项"""
    options = [
        click.option("--config", "config_file", type=click.Path(), default=None, help="配置文件（YAML），覆盖默认配置"),
        click.option("--seed", type=int, default=None, help="随机种子（默认 runtime.seed）"),
        click.option("--workers", type=click.IntRange(min=1), default=None, help="并行 worker 数（默认 runtime.workers）"),
        click.option("--cache-dir", "cache_dir", default=None, help="结果缓存目录（默认 runtime.cache_dir）"),
        click.option("--out", type=click.Path(), default=None, help="输出文件（默认标准输出）"),
        click.option("--format", "fmt", type=click.Choice(OUTPUT_FORMATS), default=None, help="输出格式"),
        click.option("--reproducible", is_flag=True, help="报告中的 wall_time 写为 null"),
        click.option("--log-level", "log_level", type=click.Choice(LOG_LEVELS, case_sensitive=False), default=None, help="日志级别"),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def _prepare(command: str, params: Dict[str, Any], common: Dict[str, Any]) -> RunConfig:
    """加载配置、应用命令行覆盖并初始化日志"""
    config_file = common.get("config_file")
    reload_config()
    get_settings(config_file)
    overrides = {
        "runtime.workers": common.get("workers"),
        "logging.level": common.get("log_level"),
    }
    override_config(overrides)
    setup_logging(level=common.get("log_level"))

    seed = common.get("seed")
    return RunConfig(
        command=command,
        params=params,
        seed=seed if seed is not None else get_config_int("runtime.seed", 0),
        format=common.get("fmt") or get_config_str("runtime.format", "json"),
        cache_dir=common.get("cache_dir") or get_config_str("runtime.cache_dir", "") or None,
        workers=get_config_int("runtime.workers", 1),
        out=common.get("out"),
        reproducible=bool(common.get("reproducible")),
        config_file=config_file,
    )


def _run(command: str, params: Dict[str, Any], common: Dict[str, Any], build: Callable[[RunConfig], Any]) -> None:
    run = _prepare(command, params, common)
    logger.info(f"执行 {command}: {params}")
    start = time.perf_counter()
    result = build(run)
    elapsed = None if run.reproducible else round(time.perf_counter() - start, 6)
    envelope = ReportEnvelope(
        command=command,
        version=__version__,
        config=run.echo(),
        wall_time=elapsed,
        result=result,
    )
    text = ReportWriter.write(envelope, run.format, run.out)
    if run.out is None:
        click.echo(text, nl=False)
    else:
        logger.info(f"报告已写入 {Path(run.out)}")


def _ints(text: str) -> List[int]:
    return [int(x) for x in text.split(",") if x.strip()] if text else []


def _floats(text: str) -> List[float]:
    return [float(x) for x in text.split(",") if x.strip()] if text else []


def _character(q: int, chi: str):
    return character_from_key(q, _ints(chi))


@click.group()
@click.version_option(__version__, prog_name="lfamily")
def cli():
    """lfamily 命令行工具 - 固定阶 Dirichlet 特征族的 L 函数数值实验"""
    pass


@cli.command()
@click.option("--order", "j", type=int, required=True, help="特征的阶 j")
@click.option("--Q", "Q", type=float, required=True, help="导子范围 (Q, 2Q]")
@click.option("--check-oracle", is_flag=True, help="与逐个过滤的朴素枚举比较")
@common_options
def characters(j: int, Q: float, check_oracle: bool, **common):
    """列出 O_j(Q)：导子在 (Q, 2Q] 内、阶恰为 j 的本原特征"""

    def build(run: RunConfig) -> FamilyTable:
        family = enumerate_family(j, Q)
        if check_oracle and family_oracle(j, Q).members != family.members:
            raise DomainError(f"O_{j}({Q}) 的枚举与朴素枚举不一致", parameter="Q", value=Q)
        return FamilyTable(j=j, Q=Q, size=len(family), characters=family.records())

    _run("characters", {"j": j, "Q": Q, "check_oracle": check_oracle}, common, build)


@cli.command(name="eval")
@click.option("--q", "q", type=int, required=True, help="模 q")
@click.option("--chi", default="", help="指数向量，逗号分隔（对应单位群的规范生成元）")
@click.option("--sigma", type=float, default=0.5, show_default=True)
@click.option("--t", "t", type=float, default=0.0, show_default=True)
@click.option("--method", type=click.Choice(["oracle", "afe", "both"]), default="both", show_default=True)
@click.option("--derivative", is_flag=True, help="同时计算 L'（解析与有限差分）")
@common_options
def evaluate(q: int, chi: str, sigma: float, t: float, method: str, derivative: bool, **common):
    """计算 L(σ+it, χ)"""

    def build(run: RunConfig) -> EvaluationReport:
        character = _character(q, chi)
        s = complex(sigma, t)
        results = []
        if method in ("oracle", "both"):
            results.append(l_value_oracle(s, character).record())
        afe_ok = character.primitive and not is_principal(character)
        if method == "afe" or (method == "both" and afe_ok and 0 <= sigma <= 1):
            results.append(l_value_afe(s, character).record())
        if derivative:
            results.append(l_derivative(s, character).record())
            results.append(l_derivative_fd(s, character).record())
        residual = functional_equation_residual(s, character) if character.primitive else None
        return EvaluationReport(
            character=character.record(),
            sigma=sigma,
            t=t,
            results=results,
            functional_equation_residual=residual,
        )

    _run("eval", {"q": q, "chi": _ints(chi), "sigma": sigma, "t": t, "method": method, "derivative": derivative}, common, build)


@cli.command()
@click.option("--j", "j", type=int, required=True, help="族的阶")
@click.option("--Q", "Q", type=float, required=True)
@click.option("--T", "T", type=float, default=10.0, show_default=True)
@click.option("--k", "k", type=int, default=1, show_default=True, help="幂次 2k")
@click.option("--mode", type=click.Choice(["integrated", "fixed-t", "discrete"]), default="integrated", show_default=True)
@click.option("--t", "t", type=float, default=0.0, show_default=True, help="fixed-t 模式的 t")
@click.option("--delta", type=float, default=1.0, show_default=True, help="discrete 模式的间距")
@click.option("--strategy", type=click.Choice([s.value for s in SpacingStrategy]), default="grid", show_default=True)
@click.option("--sigma", type=float, default=0.5, show_default=True)
@click.option("--tol", type=float, default=None, help="积分相对容差（默认 moments.tolerance）")
@click.option("--compare", is_flag=True, help="discrete 模式同时给出 (δ^{-1}+1)·积分矩")
@common_options
def moment(j, Q, T, k, mode, t, delta, strategy, sigma, tol, compare, **common):
    """族的矩：积分、固定 t 或离散"""

    def build(run: RunConfig):
        if mode == "fixed-t":
            return family_moment_fixed_t(j, Q, t, k)
        if mode == "discrete":
            family = enumerate_family(j, Q)
            sets = family_wellspaced(family, T, delta, SpacingStrategy(strategy))
            return discrete_family_moment(j, Q, sets, k, family=family, compare=compare)
        return integrated_family_moment(j, Q, T, k, tol=tol, sigma=sigma)

    params = {
        "j": j, "Q": Q, "T": T, "k": k, "mode": mode, "t": t, "delta": delta,
        "strategy": strategy, "sigma": sigma, "tol": tol, "compare": compare,
    }
    _run("moment", params, common, build)


@cli.command(name="derivative-moment")
@click.option("--j", "j", type=int, required=True)
@click.option("--Q", "Q", type=float, required=True)
@click.option("--T", "T", type=float, required=True)
@click.option("--tol", type=float, default=None)
@common_options
def derivative_moment(j, Q, T, tol, **common):
    """Σ_χ ∫_{-T}^{T} |L'(½+it,χ)|² dt"""
    _run(
        "derivative-moment", {"j": j, "Q": Q, "T": T, "tol": tol}, common,
        lambda run: integrated_derivative_moment(j, Q, T, tol=tol),
    )


@cli.command()
@click.option("--T", "T", type=float, required=True, help="上限，1 ≤ T ≤ 500")
@click.option("--T0", "T0", type=float, default=0.0, show_default=True, help="下限")
@click.option("--tol", type=float, default=None)
@common_options
def hl(T, T0, tol, **common):
    """∫_{T0}^{T} |ζ(½+it)|² dt 与主项之比"""
    _run("hl", {"T": T, "T0": T0, "tol": tol}, common, lambda run: hardy_littlewood_second_moment(T, tol=tol, T0=T0))


@cli.command()
@click.option("--mode", type=click.Choice(["discrete", "integrated", "probe"]), default="discrete", show_default=True)
@click.option("--j", "j", type=int, default=2, show_default=True)
@click.option("--Q", "Q", type=float, default=10.0, show_default=True)
@click.option("--T", "T", type=float, default=1.0, show_default=True)
@click.option("--N", "N", type=float, default=10.0, show_default=True)
@click.option("--trials", type=int, default=50, show_default=True, help="probe 模式的随机向量数")
@click.option("--reference", is_flag=True, help="discrete 模式同时计算二重循环对照值")
@common_options
def sieve(mode, j, Q, T, N, trials, reference, **common):
    """大筛左端：离散、积分或 j = 2 的标度探测"""

    def build(run: RunConfig):
        if mode == "probe":
            return sieve_scaling_probe(trials=trials, seed=run.seed)
        coeffs = random_unit_coefficients(N, run.seed)
        if mode == "integrated":
            return sieve_lhs_integrated(j, Q, T, coeffs)
        report = sieve_lhs_discrete(j, Q, coeffs)
        if reference:
            ref = sieve_lhs_discrete_reference(j, Q, coeffs)
            if abs(ref - report.lhs) > 1e-9 * max(ref, 1.0):
                logger.warning(f"二重循环对照值 {ref:.12g} 与 {report.lhs:.12g} 不一致")
        return report

    _run("sieve", {"mode": mode, "j": j, "Q": Q, "T": T, "N": N, "trials": trials, "reference": reference}, common, build)


@cli.command()
@click.option("--j", "j", type=int, default=2, show_default=True)
@click.option("--Q", "Q", type=float, default=10.0, show_default=True)
@click.option("--T", "T", type=float, default=10.0, show_default=True)
@click.option("--delta", type=float, default=1.0, show_default=True)
@click.option("--strategy", type=click.Choice([s.value for s in SpacingStrategy]), default="greedy_local_maxima", show_default=True)
@click.option("--target", type=click.Choice(["l", "poly"]), default="l", show_default=True, help="f = L(½+it,χ) 或随机 Dirichlet 多项式")
@click.option("--N", "N", type=float, default=20.0, show_default=True, help="poly 目标的长度")
@click.option("--limit", type=int, default=10, show_default=True, help="最多检验的特征数")
@common_options
def gallagher(j, Q, T, delta, strategy, target, N, limit, **common):
    """对族中前 limit 个特征检验 Gallagher 型不等式"""

    def build(run: RunConfig) -> GallagherMatrixReport:
        family = enumerate_family(j, Q)
        reports = []
        for i, chi in enumerate(family.members[:limit]):
            points = generate_wellspaced(chi, T, delta, SpacingStrategy(strategy))
            if target == "poly":
                coeffs = random_unit_coefficients(N, run.seed + i, dyadic=False)
                reports.append(gallagher_check(T, delta, points, chi=chi, coeffs=coeffs))
            else:
                reports.append(gallagher_check(T, delta, points, chi=chi))
        failures = sum(not r.holds for r in reports)
        return GallagherMatrixReport(reports=reports, failures=failures)

    params = {"j": j, "Q": Q, "T": T, "delta": delta, "strategy": strategy, "target": target, "N": N, "limit": limit}
    _run("gallagher", params, common, build)


@cli.command()
@click.option("--j", "j", type=int, default=2, show_default=True)
@click.option("--Q", "Q", type=float, default=10.0, show_default=True)
@click.option("--T", "T", type=float, default=10.0, show_default=True)
@click.option("--delta", type=float, default=1.0, show_default=True)
@click.option("--N", "N", type=float, default=20.0, show_default=True)
@click.option("--sigma0", type=float, default=0.5, show_default=True)
@common_options
def meanvalue(j, Q, T, delta, N, sigma0, **common):
    """离散均值的两个右端比率（随机系数与随机点集）"""

    def build(run: RunConfig):
        family = enumerate_family(j, Q)
        coeffs = random_unit_coefficients(N, run.seed, dyadic=False)
        sets = random_point_sets(family, T, delta, sigma0, run.seed)
        return meanvalue_check(j, Q, T, delta, sets, coeffs, sigma0, family=family)

    _run("meanvalue", {"j": j, "Q": Q, "T": T, "delta": delta, "N": N, "sigma0": sigma0}, common, build)


@cli.command()
@click.option("--action", type=click.Choice(["count", "list"]), default="count", show_default=True)
@click.option("--q", "q", type=int, default=None, help="单个特征的模（与 --chi 一起使用）")
@click.option("--chi", default="", help="指数向量，逗号分隔")
@click.option("--j", "j", type=int, default=None, help="族的阶（count 且未给出 --q 时）")
@click.option("--Q", "Q", type=float, default=None)
@click.option("--sigma", type=float, default=0.55, show_default=True)
@click.option("--T", "T", type=float, default=10.0, show_default=True)
@common_options
def zeros(action, q, chi, j, Q, sigma, T, **common):
    """零点计数（单个特征或整个族）或临界线零点列表"""

    def build(run: RunConfig):
        if q is not None:
            character = _character(q, chi)
            if action == "list":
                found = critical_line_zeros(character, T, cache=run.cache())
                return ZeroListReport(character=character.label, T=T, zeros=found)
            return count_zeros_rectangle(character, sigma, T)
        if action == "list":
            raise click.UsageError("list 需要 --q 与 --chi")
        if j is None or Q is None:
            raise click.UsageError("族计数需要 --j 与 --Q")
        return family_zero_count(j, Q, sigma, T)

    params = {"action": action, "q": q, "chi": _ints(chi), "j": j, "Q": Q, "sigma": sigma, "T": T}
    _run("zeros", params, common, build)


@cli.command()
@click.option("--q", "q", type=int, required=True)
@click.option("--chi", default="")
@click.option("--X", "X", type=float, default=10.0, show_default=True)
@click.option("--Y", "Y", type=float, default=30.0, show_default=True)
@click.option("--C", "C", type=float, default=None, help="默认 zeros.detector_C")
@click.option("--T", "T", type=float, default=20.0, show_default=True, help="零点扫描范围")
@click.option("--count", type=int, default=3, show_default=True, help="检验的正零点个数")
@click.option("--spaced", is_flag=True, help="只取间距 ≥ 3C log QT 的零点子集")
@common_options
def detector(q, chi, X, Y, C, T, count, spaced, **common):
    """在前若干个正的临界线零点处运行零点检测器"""

    def build(run: RunConfig) -> DetectorBatchReport:
        character = _character(q, chi)
        found = [z for z in critical_line_zeros(character, T, cache=run.cache()) if z.gamma > 0]
        if spaced:
            found = spaced_zero_subset(found, float(character.conductor), T, C)
        reports = [detector_check(character, z, X, Y, C) for z in found[:count]]
        return DetectorBatchReport(character=character.label, reports=reports)

    params = {"q": q, "chi": _ints(chi), "X": X, "Y": Y, "C": C, "T": T, "count": count, "spaced": spaced}
    _run("detector", params, common, build)


@cli.command()
@click.option("--sigma", type=float, required=True)
@click.option("--Q", "Q", type=float, required=True)
@click.option("--T", "T", type=float, required=True)
@common_options
def zdbounds(sigma, Q, T, **common):
    """零点密度上界表"""
    _run("zdbounds", {"sigma": sigma, "Q": Q, "T": T}, common, lambda run: zero_density_bounds(sigma, Q, T))


@cli.command()
@click.option("--j", "j", type=int, required=True)
@click.option("--sigma", type=float, required=True)
@click.option("--Q", "Q", type=float, required=True)
@click.option("--T", "T", type=float, required=True)
@common_options
def params(j, sigma, Q, T, **common):
    """检测器的 (X, Y) 取法与计数上界"""
    _run("params", {"j": j, "sigma": sigma, "Q": Q, "T": T}, common, lambda run: detector_parameters(j, sigma, Q, T))


@cli.command()
@click.option("--js", default="2,3", show_default=True, help="族的阶，逗号分隔")
@click.option("--Qs", "Qs", default="10,20,40", show_default=True)
@click.option("--Ts", "Ts", default="10,20,40", show_default=True)
@click.option("--k", "k", type=int, default=1, show_default=True)
@click.option("--delta", type=float, default=1.0, show_default=True)
@click.option("--tol", type=float, default=None)
@click.option("--no-probe", is_flag=True, help="跳过贪心离散矩探测")
@common_options
def scaling(js, Qs, Ts, k, delta, tol, no_probe, **common):
    """标度网格与指数拟合"""

    def build(run: RunConfig):
        return run_scaling_grid(_ints(js), _floats(Qs), _floats(Ts), k=k, delta=delta, tol=tol, probe=not no_probe)

    params = {"js": _ints(js), "Qs": _floats(Qs), "Ts": _floats(Ts), "k": k, "delta": delta, "tol": tol, "probe": not no_probe}
    _run("scaling", params, common, build)


@cli.command(name="square-split")
@click.option("--j", "j", type=int, required=True)
@click.option("--Q", "Q", type=float, required=True)
@click.option("--T", "T", type=float, required=True)
@click.option("--t", "t", type=float, default=0.0, show_default=True)
@click.option("--epsilon", type=float, default=None, help="默认 moments.epsilon")
@common_options
def square_split(j, Q, T, t, epsilon, **common):
    """固定 t 的二阶矩与去平方分块多项式之和"""
    _run(
        "square-split", {"j": j, "Q": Q, "T": T, "t": t, "epsilon": epsilon}, common,
        lambda run: square_part_comparison(j, Q, T, t, epsilon),
    )


@cli.command()
@click.option("--j", "j", type=int, required=True)
@click.option("--Q", "Q", type=float, required=True)
@click.option("--T", "T", type=float, required=True)
@common_options
def reduction(j, Q, T, **common):
    """Δ_j(Q,T,(QT)^{1/2}) 与 QT 的比较"""
    _run("reduction", {"j": j, "Q": Q, "T": T}, common, lambda run: critical_length_reduction(j, Q, T))


def dispatch(argv: Optional[Sequence[str]] = None) -> int:
    """
    执行一条命令并返回退出码

    Args:
        argv: 参数列表（不含程序名），None 时取 sys.argv[1:]

    Returns:
        0 成功；1 定义域或环境错误；2 精度错误；3 用法或配置错误
    """
    args = list(sys.argv[1:] if argv is None else argv)
    try:
        rv = cli.main(args=args, prog_name="lfamily", standalone_mode=False)
    except click.UsageError as e:
        e.show()
        return 3
    except click.Abort:
        click.echo("已中止", err=True)
        return 1
    except click.ClickException as e:
        e.show()
        return 3
    except LFamilyException as e:
        logger.error(f"{type(e).__name__}: {e.message}")
        if e.details:
            logger.error(f"详情: {e.details}")
        return e.exit_code
    return rv if isinstance(rv, int) else 0


def main() -> None:
    sys.exit(dispatch())


if __name__ == "__main__":
    main()
