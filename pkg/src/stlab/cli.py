"""Command-line verification harness.

Subcommands: solomon-tits, decompose, identities, bound, oracle-homology,
relations, cache {warm, clear}.  Exit codes: 0 all checks pass, 1 a check
failed, 2 configuration or budget error.  Reports render as text, JSON or
CSV; writing a report to a file also renders a companion PNG figure next
to it unless --no-figures is given.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass, asdict
from pathlib import Path

from . import __version__, building, cache as cache_mod, counting, decomposition, steinberg
from .errors import (
    BudgetExceededError,
    ConfigError,
    RankEngineError,
    RelationCheckError,
    SplittingError,
    StlabError,
)
from .report import VerificationReport

DEFAULT_SEED = 0


@dataclass
class RunConfig:
    command: str
    n: int | None = None
    g: int | None = None
    p: int = 2
    extended: bool = False
    exact: bool = False
    primes: tuple | None = None
    workers: int = 1
    format: str = "text"
    out: str | None = None
    cache_dir: str | None = None
    figures: bool = True
    samples: int = 1000

    def validate(self):
        from .ffspace import is_prime

        if not is_prime(self.p):
            raise ConfigError(f"--p must be prime, got {self.p}")
        if self.primes is not None:
            for q in self.primes:
                if not is_prime(q):
                    raise ConfigError(f"--primes entries must be prime, got {q}")
            if len(set(self.primes)) != len(self.primes):
                raise ConfigError("--primes entries must be distinct")
        if self.workers < 1:
            raise ConfigError("--workers must be >= 1")
        if self.format not in ("text", "json", "csv"):
            raise ConfigError(f"unknown format {self.format}")
        if self.samples < 1:
            raise ConfigError("--samples must be >= 1")

    def exact_mode(self, n: int) -> bool:
        # exact elimination is mandatory at small ambient dimension
        return self.exact or n <= 3

    def echo(self) -> dict:
        d = asdict(self)
        d["primes"] = list(self.primes) if self.primes else None
        return d


def _context(cfg: RunConfig, n: int):
    return cache_mod.cached_context(n, cfg.p, cache_dir=cfg.cache_dir)


def cmd_solomon_tits(cfg: RunConfig) -> VerificationReport:
    n = cfg.n
    rep = VerificationReport("solomon-tits", __version__, cfg.echo())
    ctx = _context(cfg, n)
    rep.check(
        "flag_count",
        f"number of complete flags = prod_k (p^k-1)/(p-1) at (n={n}, p={cfg.p})",
        counting.complete_flag_count(n, cfg.p),
        lambda: ctx.flag_count,
    )
    ceiling = counting.steinberg_dim(n, cfg.p)
    rep.check(
        "steinberg_dim",
        f"apartment span has dimension p^(n choose 2) = {ceiling}",
        ceiling,
        lambda: steinberg.st_dim(n, cfg.p, ctx=ctx, exact=cfg.exact_mode(n), primes=cfg.primes),
    )
    if _homology_budgeted(n, cfg.p, cfg.extended):
        expected = building.expected_betti_profile(n, cfg.p)
        rep.check(
            "homology_profile",
            "reduced Betti numbers vanish except p^(n choose 2) in top degree",
            expected,
            lambda: building.homology_ranks(ctx, exact=cfg.exact_mode(n), primes=cfg.primes),
        )
    return rep


def _homology_budgeted(n: int, p: int, extended: bool) -> bool:
    if n <= 3:
        return True
    if n == 4 and (p == 2 or extended):
        return True
    return False


def cmd_oracle_homology(cfg: RunConfig) -> VerificationReport:
    n = cfg.n
    rep = VerificationReport("oracle-homology", __version__, cfg.echo())
    if not _homology_budgeted(n, cfg.p, cfg.extended):
        raise BudgetExceededError(
            f"homology oracle at (n={n}, p={cfg.p}) needs extended mode or is out of budget"
        )
    ctx = _context(cfg, n)
    rep.check(
        "homology_profile",
        "reduced Betti numbers vanish except p^(n choose 2) in top degree",
        building.expected_betti_profile(n, cfg.p),
        lambda: building.homology_ranks(ctx, exact=cfg.exact_mode(n), primes=cfg.primes),
    )
    return rep


def cmd_relations(cfg: RunConfig) -> VerificationReport:
    n = cfg.n
    rep = VerificationReport("relations", __version__, cfg.echo())
    ctx = _context(cfg, n)
    try:
        result = steinberg.relation_checks(ctx, samples=cfg.samples, seed=DEFAULT_SEED)
        for name, passed in result.passed.items():
            rep.add_check(
                name,
                "apartment-class relations: nonzero iff basis, permutation sign, "
                "scalar invariance, alternating (n+1)-term sums vanish",
                f"{cfg.samples}/{cfg.samples}",
                f"{passed}/{cfg.samples}",
                passed == cfg.samples,
                0.0,
            )
    except RelationCheckError as exc:
        rep.add_check("relation_suite", "randomized relation suite", "no counterexample", str(exc), False, 0.0)
    return rep


def cmd_decompose(cfg: RunConfig) -> VerificationReport:
    g = cfg.g
    n = 2 * g
    rep = VerificationReport("decompose", __version__, cfg.echo())
    ctx = _context(cfg, n)
    audit = decomposition.poset_rep_audit(
        g,
        cfg.p,
        actx=ctx,
        pi_samples=200,
        hypothesis_pair_limit=_pair_limit(g, cfg.p),
        seed=DEFAULT_SEED,
        exact=cfg.exact_mode(n),
        primes=cfg.primes,
        extended=cfg.extended,
    )
    rep.check(
        "steinberg_dim",
        "apartment span dimension equals p^(2g choose 2)",
        counting.steinberg_dim(n, cfg.p),
        audit.st_dim,
    )
    rep.check(
        "quotient_dim",
        "dim of span quotient by separated span equals |Sp_2g|/(g(p^2g-1))",
        audit.expected_stns,
        audit.stns_dim,
    )
    for row in audit.rows:
        rep.check(
            f"splitting_count_type_{'_'.join(map(str, row.type_parts))}",
            "enumerated splittings per type match |Sp_2g|/(prod r_i! |Sp_2a_i|^r_i)",
            row.formula_count,
            row.count,
        )
    rep.check(
        "product_map_injectivity",
        "product generators of each splitting span prod p^(2a_i choose 2) dimensions",
        0,
        audit.inc_rank_failures,
    )
    rep.check(
        "projection_product_identity",
        "averaged projection undoes the product map on random generators",
        f"0/{audit.pi_inc_samples}",
        f"{audit.pi_inc_failures}/{audit.pi_inc_samples}",
        ok=audit.pi_inc_failures == 0,
    )
    rep.check(
        "decomposable_equals_separated",
        "refinement span equals the separated part of each product (both routes)",
        0,
        audit.dec_equals_sep_failures,
    )
    rep.check(
        "projection_system_hypothesis",
        "projections of non-refining splitting spans land in the decomposable part",
        f"0/{audit.hypothesis_pairs}",
        f"{audit.hypothesis_failures}/{audit.hypothesis_pairs}",
        ok=audit.hypothesis_failures == 0,
    )
    rep.check(
        "decomposition_sum",
        "sum of per-splitting quotient dims equals the Steinberg dimension",
        True,
        audit.sum_identity_holds,
    )
    rep.check(
        "chain_basis_spanning",
        "chain-basis apartment images span the quotient",
        audit.stns_dim,
        audit.chain.chain_increment,
    )
    rep.check(
        "rank_certification",
        "combined spans saturate the Steinberg ceiling (certifies modular ranks)",
        True,
        audit.chain.certified,
    )
    rep.table = [
        {
            "type": "+".join(map(str, row.type_parts)),
            "count": row.count,
            "dim_st": row.dim_st,
            "dim_sep": row.dim_stsep,
            "dim_quotient": row.dim_stns,
            "contribution": row.count * row.dim_stns,
        }
        for row in audit.rows
    ]
    rep.table_name = "splitting_types"
    return rep


def _pair_limit(g: int, p: int) -> int | None:
    # all ordered pairs when the poset is small, a fixed sample otherwise
    return None if g == 1 or (g, p) == (2, 2) else 60


def cmd_identities(cfg: RunConfig) -> VerificationReport:
    max_g = cfg.g or 8
    if max_g > 50:
        raise ConfigError("--g must be <= 50 for identities")
    p = cfg.p
    rep = VerificationReport("identities", __version__, cfg.echo())
    lam = [counting.lambda_coeff(g, p) for g in range(1, max_g + 1)]
    rep.check(
        "theta_equals_lambda",
        "recurrence solution theta_g equals 1/(g(p^2g-1)) for all g",
        lam,
        lambda: [counting.theta_coeff(g, p) for g in range(1, max_g + 1)],
    )
    rep.check(
        "partition_sum",
        "exponential-formula partition sum of lambda equals p^(2g choose 2)/|Sp_2g|",
        [counting.euler_coeff(g, p) for g in range(1, max_g + 1)],
        lambda: [
            counting.partition_sum(g, p, lambda a: counting.lambda_coeff(a, p))
            for g in range(1, max_g + 1)
        ],
    )
    euler_max = max(max_g, 10)
    rep.check(
        "euler_truncation",
        "truncated product coefficients stabilize p-adically to the closed form",
        [True] * euler_max,
        lambda: [
            counting.euler_truncation_matches(g, p, g)
            and counting.euler_truncation_matches(g, p, g + 2)
            for g in range(1, euler_max + 1)
        ],
    )
    series_max = min(max_g, 10)
    rep.check(
        "exp_series_cross_check",
        "formal exponentiation of the lambda series matches the partition sums",
        [
            counting.partition_sum(g, p, lambda a: counting.lambda_coeff(a, p))
            for g in range(1, series_max + 1)
        ],
        lambda: counting.exp_series_coefficients(series_max, p)[1:],
    )
    return rep


def cmd_bound(cfg: RunConfig) -> VerificationReport:
    max_g = cfg.g or 4
    p = cfg.p
    rep = VerificationReport("bound", __version__, cfg.echo())
    rows = []
    for g in range(1, max_g + 1):
        br = counting.main_bound(g, p)
        rows.append(
            {
                "g": g,
                "p": p,
                "group_order": br.group_order,
                "lambda": br.lam,
                "theta": br.theta,
                "bound": br.bound,
                "printed_value": br.printed_value,
                "discrepant": br.discrepant,
            }
        )
        rep.add_check(
            f"bound_integral_g{g}",
            "|Sp_2g(F_p)|/(g(p^2g-1)) is a positive integer equal to its product form",
            "integer",
            str(br.bound),
            br.bound > 0,
            0.0,
        )
        if br.printed_value is not None and br.discrepant:
            rep.add_check(
                f"printed_table_discrepancy_g{g}",
                "printed table value differs from the closed form (flagged, not fatal)",
                f"formula {br.bound}",
                f"printed {br.printed_value}",
                True,
                0.0,
            )
    rep.table = rows
    rep.table_name = "bounds"
    return rep


def cmd_cache(cfg: RunConfig, action: str) -> VerificationReport:
    rep = VerificationReport(f"cache-{action}", __version__, cfg.echo())
    cache_dir = cfg.cache_dir or str(cache_mod.default_cache_dir())
    if action == "warm":
        if cfg.n is None and cfg.g is None:
            raise ConfigError("cache warm needs --n (and optionally --g)")
        n = cfg.n if cfg.n is not None else 2 * cfg.g
        written = cache_mod.warm(cache_dir, n, cfg.p, g=cfg.g, extended=cfg.extended)
        rep.add_check(
            "cache_warm", "cache files written", ">=1 files", f"{len(written)} files", len(written) >= 1, 0.0
        )
    else:
        removed = cache_mod.clear(cache_dir)
        rep.add_check("cache_clear", "cache files removed", "any", f"{removed} files", True, 0.0)
    return rep


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stlab",
        description="Exact verification workbench for apartment-class spans, "
        "symplectic splitting decompositions and partition identities.",
    )
    parser.add_argument("--version", action="version", version=f"stlab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(q, need_n=False, need_g=False):
        if need_n:
            q.add_argument("--n", type=int, required=True, help="ambient dimension")
        if need_g:
            q.add_argument("--g", type=int, required=need_g == "required", help="genus")
        q.add_argument("--p", type=int, default=2, help="field characteristic (prime)")
        q.add_argument("--extended", action="store_true", help="allow long extended-mode runs")
        q.add_argument("--exact", action="store_true", help="force exact big-integer elimination")
        q.add_argument("--primes", type=str, default=None, help="comma-separated rank-engine primes")
        q.add_argument("--workers", type=int, default=None, help="worker count (overrides STLAB_WORKERS)")
        q.add_argument("--format", choices=("text", "json", "csv"), default=None)
        q.add_argument("--out", type=str, default=None, help="write the report to this path")
        q.add_argument("--cache-dir", type=str, default=None)
        q.add_argument("--no-figures", action="store_true", help="skip the companion PNG figure")

    q = sub.add_parser("solomon-tits", help="apartment span dimension vs p^(n choose 2)")
    common(q, need_n=True)
    q = sub.add_parser("decompose", help="full splitting-poset decomposition audit")
    common(q, need_g="required")
    q = sub.add_parser("identities", help="theta/lambda recurrences and q-series checks")
    common(q, need_g=True)
    q = sub.add_parser("bound", help="dimension bound table with printed-table flags")
    common(q, need_g=True)
    q = sub.add_parser("oracle-homology", help="independent chain-complex homology oracle")
    common(q, need_n=True)
    q = sub.add_parser("relations", help="randomized apartment-relation suite")
    common(q, need_n=True)
    q.add_argument("--samples", type=int, default=1000)
    q = sub.add_parser("cache", help="cache management")
    q.add_argument("action", choices=("warm", "clear"))
    common(q)
    q.add_argument("--n", type=int, default=None)
    q.add_argument("--g", type=int, default=None)
    return parser


def _config_from_args(args) -> RunConfig:
    primes = None
    if args.primes:
        try:
            primes = tuple(int(x) for x in args.primes.split(","))
        except ValueError as exc:
            raise ConfigError(f"bad --primes value: {args.primes}") from exc
    workers = args.workers
    if workers is None:
        workers = int(os.environ.get("STLAB_WORKERS", "1"))
    fmt = args.format
    if fmt is None and args.out:
        suffix = Path(args.out).suffix.lower()
        fmt = {"json": "json", ".json": "json", ".csv": "csv"}.get(suffix, "text")
    cfg = RunConfig(
        command=args.command,
        n=getattr(args, "n", None),
        g=getattr(args, "g", None),
        p=args.p,
        extended=args.extended,
        exact=args.exact,
        primes=primes,
        workers=workers,
        format=fmt or "text",
        out=args.out,
        cache_dir=args.cache_dir,
        figures=not args.no_figures,
        samples=getattr(args, "samples", 1000),
    )
    cfg.validate()
    return cfg


def _emit(rep: VerificationReport, cfg: RunConfig) -> None:
    rendered = rep.render(cfg.format)
    if cfg.out:
        out = Path(cfg.out)
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(rendered)
        if cfg.figures:
            from . import figures

            figures.render_figure(rep, out.with_suffix(".png"))
        print(f"wrote {out}" + ("" if not cfg.figures else f" and {out.with_suffix('.png')}"))
        if rep.status != "pass":
            print("overall: FAIL", file=sys.stderr)
    else:
        sys.stdout.write(rendered)


COMMANDS = {
    "solomon-tits": cmd_solomon_tits,
    "decompose": cmd_decompose,
    "identities": cmd_identities,
    "bound": cmd_bound,
    "oracle-homology": cmd_oracle_homology,
    "relations": cmd_relations,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config_from_args(args)
        if args.command == "cache":
            rep = cmd_cache(cfg, args.action)
        else:
            rep = COMMANDS[args.command](cfg)
        _emit(rep, cfg)
        return 0 if rep.status == "pass" else 1
    except (ConfigError, BudgetExceededError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (RankEngineError, RelationCheckError, SplittingError, StlabError, ArithmeticError) as exc:
        print(f"check failure: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
