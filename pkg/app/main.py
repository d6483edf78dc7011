import functools
from typing import Any, Dict

import click
import pandas as pd

from app.exceptions import GCTLabError
from app.models import OutputRecord
from app.services.branching_service import contains_trivial_levi, gl_branch, gl_restrict, levi_restrict, lr_coefficient
from app.services.character_service import CharacterService, check_orthogonality
from app.services.kronecker_service import KroneckerService
from app.services.obstruction_service import STABILIZER_COMPONENT, ObstructionService
from app.services.partitions import Partition, format_partition, parse_partition
from app.services.plethysm_service import PlethysmService
from app.services.separability_service import SeparabilityService
from app.services.verification_service import VerificationService
from app.utils.helpers import Stopwatch, render_payload, set_verbose
from config.settings import CACHE_DIR, MAX_N, MAX_ORACLE_N, PLETHYSM_CEILING, THREADS


class PartitionType(click.ParamType):
    """Comma-separated weakly decreasing parts; "" is the empty partition."""

    name = "partition"

    def convert(self, value, param, ctx):
        if isinstance(value, Partition):
            return value
        try:
            return parse_partition(value)
        except GCTLabError as e:
            self.fail(str(e), param, ctx)


PARTITION = PartitionType()


class Services:
    def __init__(self, cache_dir: str, max_n: int, threads: int):
        self.characters = CharacterService(cache_dir, max_n, MAX_ORACLE_N)
        self.kronecker = KroneckerService(self.characters)
        self.plethysm = PlethysmService(cache_dir, PLETHYSM_CEILING)
        self.obstruction = ObstructionService(self.kronecker, self.plethysm, PLETHYSM_CEILING, threads)
        self.separability = SeparabilityService(self.kronecker)
        self.verification = VerificationService(
            self.kronecker, self.plethysm, self.obstruction, self.separability, threads
        )

    @property
    def cache_hits(self) -> int:
        return self.characters.cache_hits + self.kronecker.cache_hits + self.plethysm.cache_hits


def handle_errors(func):
    """Map GCTLabError to its exit code: 2 for bad input and limits, 1 for failed verification."""

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except GCTLabError as e:
            click.echo(f"❌ {type(e).__name__}: {e}", err=True)
            raise click.exceptions.Exit(e.exit_code)

    return wrapper


def emit(services: Services, command: str, inputs: Dict[str, Any], result: Any, method: str,
         watch: Stopwatch, as_json: bool) -> None:
    record = OutputRecord(
        command=command,
        inputs=inputs,
        result=result,
        method=method,
        cache_hits=services.cache_hits,
        elapsed_ms=watch.elapsed_ms,
    )
    click.echo(render_payload(record.model_dump(mode="json", by_alias=True), as_json))


def json_option(func):
    return click.option("--json", "as_json", is_flag=True, help="Print the record as JSON.")(func)


@click.group()
@click.option("--cache-dir", default=CACHE_DIR, show_default=True, help="On-disk cache root (GCTLAB_CACHE_DIR).")
@click.option("--max-n", default=MAX_N, show_default=True, type=int, help="Character table ceiling.")
@click.option("--threads", default=THREADS, show_default=True, type=click.IntRange(min=1), help="Workers for sweeps.")
@click.option("--quiet", is_flag=True, help="No status lines on stderr.")
@click.pass_context
def cli(ctx, cache_dir, max_n, threads, quiet):
    """gctlab: exact Kronecker, Littlewood-Richardson and plethysm computations."""
    if quiet:
        set_verbose(False)
    ctx.obj = Services(cache_dir, max_n, threads)


@cli.command()
@click.option("--alpha", type=PARTITION, required=True)
@click.option("--beta", type=PARTITION, required=True)
@click.option("--gamma", type=PARTITION, required=True)
@click.option("--method", type=click.Choice(["auto", "oracle", "two-row", "four-row"]), default="auto",
              show_default=True)
@click.option("--verify", is_flag=True, help="Cross-check closed forms against the character oracle.")
@json_option
@click.pass_obj
@handle_errors
def kron(services: Services, alpha, beta, gamma, method, verify, as_json):
    """
    Kronecker coefficient c_{alpha,beta,gamma}

    - **--method**: closed form to force, or auto
    - Returns: value, method used and whether it was cross-checked
    """
    services.kronecker.verify = verify
    with Stopwatch() as watch:
        result = services.kronecker.kronecker(alpha, beta, gamma, method)
    inputs = {"alpha": list(alpha), "beta": list(beta), "gamma": list(gamma), "method": method, "verify": verify}
    emit(services, "kron", inputs, result.model_dump(mode="json"), result.method, watch, as_json)


@cli.command()
@click.option("--n", "n", type=int, required=True)
@click.option("--lambda", "lam", type=PARTITION, default="", show_default=True)
@click.option("--mu", type=PARTITION, default="", show_default=True)
@click.option("--allow-nonzero-mod", is_flag=True, help="Allow |lambda| != 0 (mod n).")
@json_option
@click.pass_obj
@handle_errors
def separate(services: Services, n, lam, mu, allow_nonzero_mod, as_json):
    """
    Separability certificate for (lambda, mu)

    - Returns: m, rho and both oracle-verified coefficients
    """
    with Stopwatch() as watch:
        certificate = services.separability.separate(lam, mu, n, allow_nonzero_mod)
    inputs = {"n": n, "lambda": list(lam), "mu": list(mu), "allow_nonzero_mod": allow_nonzero_mod}
    emit(services, "separate", inputs, certificate.model_dump(mode="json", by_alias=True), "character_oracle",
         watch, as_json)


@cli.command()
@click.option("--n", "n", type=int, required=True, help="Permanent side.")
@click.option("--m", "m", type=int, required=True, help="Determinant side.")
@click.option("--d", "d", type=int, required=True, help="Degree.")
@click.option("--emit-all", is_flag=True, help="Include rows that are not candidates.")
@click.option("--csv", "as_csv", is_flag=True, help="Print the table as CSV.")
@json_option
@click.pass_obj
@handle_errors
def obstruct(services: Services, n, m, d, emit_all, as_csv, as_json):
    """Classify every lambda |- m*d against the obstruction filters."""
    with Stopwatch() as watch:
        rows = services.obstruction.strong_obstruction_candidates(n, m, d, emit_all=emit_all)
    payload = [row.model_dump(mode="json", by_alias=True) for row in rows]

    if as_csv:
        columns = ["lambda", "d", "m", "n", "passes_ambient", "passes_height", "det_coefficient", "is_candidate"]
        frame = pd.DataFrame(payload, columns=columns)
        frame["lambda"] = frame["lambda"].map(format_partition)
        click.echo(frame.to_csv(index=False), nl=False)
        return

    inputs = {"n": n, "m": m, "d": d, "emit_all": emit_all}
    result = {"stabilizer_component": STABILIZER_COMPONENT, "candidates": payload}
    emit(services, "obstruct", inputs, result, "kronecker+plethysm", watch, as_json)


@cli.command()
@click.option("--suite", type=click.Choice(list(VerificationService.SUITES) + ["all"]), default="all",
              show_default=True)
@json_option
@click.pass_obj
@handle_errors
def verify(services: Services, suite, as_json):
    """Run a self-verification suite; exits 1 if any check fails."""
    with Stopwatch() as watch:
        reports = services.verification.run(suite)
    passed = all(report.passed for report in reports)
    result = {"passed": passed, "suites": [report.model_dump(mode="json") for report in reports]}
    emit(services, "verify", {"suite": suite}, result, "character_oracle", watch, as_json)
    if not passed:
        raise click.exceptions.Exit(1)


@cli.command()
@click.option("--lambda", "lam", type=PARTITION, required=True)
@click.option("--mu", type=PARTITION, required=True)
@click.option("--nu", type=PARTITION, required=True)
@json_option
@click.pass_obj
@handle_errors
def lr(services: Services, lam, mu, nu, as_json):
    """Littlewood-Richardson coefficient N^lambda_{mu,nu}."""
    with Stopwatch() as watch:
        value = lr_coefficient(lam, mu, nu)
    inputs = {"lambda": list(lam), "mu": list(mu), "nu": list(nu)}
    emit(services, "lr", inputs, {"value": value}, "lr_tableaux", watch, as_json)


@cli.command()
@click.option("--lambda", "lam", type=PARTITION, required=True)
@click.option("--from-rank", type=int, required=True)
@click.option("--to-rank", type=int, required=True)
@json_option
@click.pass_obj
@handle_errors
def branch(services: Services, lam, from_rank, to_rank, as_json):
    """Restriction of V_lambda(GL_from) to GL_to."""
    with Stopwatch() as watch:
        if to_rank == from_rank - 1:
            result = gl_branch(lam, from_rank, to_rank)
        else:
            result = gl_restrict(lam, from_rank, to_rank)
    inputs = {"lambda": list(lam), "from_rank": from_rank, "to_rank": to_rank}
    emit(services, "branch", inputs, result.model_dump(mode="json"), result.kind, watch, as_json)


@cli.command()
@click.option("--lambda", "lam", type=PARTITION, required=True)
@click.option("--k", "k", type=int, required=True)
@click.option("--l", "l", type=int, required=True)
@json_option
@click.pass_obj
@handle_errors
def levi(services: Services, lam, k, l, as_json):
    """Restriction of V_lambda(GL_{k+l}) to GL_k x GL_l."""
    with Stopwatch() as watch:
        result = levi_restrict(lam, k, l)
        trivial = contains_trivial_levi(lam, k, l)
    payload = result.model_dump(mode="json")
    payload["contains_trivial"] = trivial
    emit(services, "levi", {"lambda": list(lam), "k": k, "l": l}, payload, "lr_tableaux", watch, as_json)


@cli.command()
@click.option("--d", "d", type=int, required=True)
@click.option("--m", "m", type=int, required=True)
@json_option
@click.pass_obj
@handle_errors
def plethysm(services: Services, d, m, as_json):
    """Schur expansion of Sym^d(Sym^m)."""
    with Stopwatch() as watch:
        expansion = services.plethysm.plethysm_sym_sym(d, m)
    emit(services, "plethysm", {"d": d, "m": m}, expansion.model_dump(mode="json"), "power_sums", watch, as_json)


@cli.command()
@click.option("--n", "n", type=int, required=True)
@json_option
@click.pass_obj
@handle_errors
def chartable(services: Services, n, as_json):
    """Character table of S_n."""
    with Stopwatch() as watch:
        table = services.characters.character_table(n)
        orthogonal = check_orthogonality(table)
    payload = table.model_dump(mode="json")
    payload["orthogonal"] = orthogonal
    emit(services, "chartable", {"n": n}, payload, "murnaghan_nakayama", watch, as_json)


if __name__ == "__main__":
    cli()
