"""
命令行入口: verify / compute / show

退出码: 0 通过, 1 存在失败实例, 2 用法或输入错误, 3 内部错误
"""
import logging
from typing import Any, Callable, Dict, Optional

import click
from rich.console import Console

from src.opcalc.cli.printer import ring_tables
from src.opcalc.configs import get_opcalc_config
from src.opcalc.constants.CommonConstants import ALL_SUITE, RING_KEYS, SUITES, TOOL_VERSION
from src.opcalc.common import ReportUtils
from src.opcalc.dependencies import get_compute_service, get_report_mapper, get_verification_service
from src.opcalc.exceptions import ErrorCode, ExceptionHandlingGroup
from src.opcalc.model.dto.CommandRequest import CommandRequest

logger = logging.getLogger(__name__)


def ring_options(func: Callable) -> Callable:
    """所有子命令共用的环选项"""
    options = [
        click.option("--ring", type=click.Choice(RING_KEYS), default=None,
                     help="built-in ring (default depends on the suite)"),
        click.option("--genus", type=click.IntRange(min=0), default=None, help="curve genus"),
        click.option("--ring-file", default=None, help="ring-spec file, or a name under data/rings/"),
        click.option("--rational", is_flag=True, help="rational scalar mode"),
        click.option("--over-point", is_flag=True, help="base is a point (psi = 0)"),
        click.option("--canonical-split", is_flag=True, help="impose K = (2g-2) p0"),
        click.option("--psi-truncation", type=click.IntRange(min=0), default=0, help="impose psi^d = 0"),
        click.option("--trivial-family", is_flag=True, help="curve times base: psi = 0 and a0^2 = 0"),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def build_request(verb: str, target: str, **flags: Any) -> CommandRequest:
    values: Dict[str, Any] = {key: value for key, value in flags.items() if value is not None}
    values.setdefault("genus", get_opcalc_config().default_genus)
    return CommandRequest(verb=verb, target=target, **values)


def _write(payload: Dict[str, Any], out: Optional[str]) -> None:
    get_report_mapper().write(payload, out)


@click.group(cls=ExceptionHandlingGroup)
@click.version_option(TOOL_VERSION, prog_name="opcalc")
def cli():
    """Exact symbolic calculus for the deformed Hamiltonian superalgebra."""


@cli.command()
@click.argument("suite", type=click.Choice([*SUITES, ALL_SUITE]))
@ring_options
@click.option("--max-index", type=click.IntRange(min=0), default=None, help="index bound of the sweep")
@click.option("--weight", type=click.IntRange(min=0), default=None, help="weight bound on module sweeps and the x-sl2 ladder total")
@click.option("--k", "k", type=click.IntRange(min=0), default=None, help="k bound for pullback suites")
@click.option("--max-genus", type=click.IntRange(min=0), default=None, help="sweep genera 1..N")
@click.option("--quick", is_flag=True, help="smaller bounds")
@click.option("--threads", type=click.IntRange(min=1), default=None, help="worker processes (OPCALC_THREADS)")
@click.option("--seed", type=int, default=None, help="seed for randomized trials")
@click.option("--out", default=None, help="write the report here instead of stdout")
@click.option("--timing", is_flag=True, help="include elapsed_ms in the report")
@click.pass_context
def verify(ctx: click.Context, suite: str, out: Optional[str], **flags: Any):
    """Run a verification suite and print its JSON report."""
    request = build_request("verify", suite, out=out, **flags)
    report = get_verification_service().run_suite(request)
    _write(ReportUtils.to_payload(report), out)
    if not report.passed:
        ctx.exit(ErrorCode.VERIFICATION_FAILED.exit_code)


@cli.command()
@click.argument("target")
@ring_options
@click.option("--apply-to", default=None, help="tautological polynomial the operator acts on")
@click.option("--table", default=None, help="action table for 'decompose' (file or name under data/tables/)")
@click.option("--k", "k", type=click.IntRange(min=0), default=None, help="k for tau-pullback / gamma")
@click.option("--weight", type=click.IntRange(min=0), default=None, help="truncation weight for 'decompose'")
@click.option("--out", default=None, help="write the result here instead of stdout")
def compute(target: str, out: Optional[str], **flags: Any):
    """Evaluate an expression, or run tau-pullback / gamma / decompose."""
    request = build_request("compute", target, out=out, **flags)
    _write(get_compute_service().compute(request), out)


@cli.group()
def show():
    """Display a ring or an operator."""


@show.command("ring")
@ring_options
def show_ring(**flags: Any):
    """Generators, rewrite rules and pi_* of the selected ring."""
    request = build_request("show", "ring", **flags)
    ring = get_compute_service().show_ring(request)
    Console().print(ring_tables(ring))


@show.command("op")
@click.argument("expression")
@ring_options
@click.option("--as-diffop", is_flag=True, help="print the differential-operator form")
@click.option("--max-index", type=click.IntRange(min=0), default=None, help="largest n_i in the expansion")
@click.option("--out", default=None, help="write the result here instead of stdout")
def show_op(expression: str, out: Optional[str], **flags: Any):
    """Canonical form of an operator expression."""
    request = build_request("show", expression, out=out, **flags)
    _write(get_compute_service().show_op(request), out)
