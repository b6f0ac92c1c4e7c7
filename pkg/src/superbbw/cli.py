"""Command-line surface: catalog inspection, censuses, tables and the check suite."""

from __future__ import annotations

import json
import os
import sys
from dataclasses import dataclass, replace
from typing import Optional, Sequence

import click

from .bbw import CensusResult, census
from .oddweyl import PropositionViolated, make_context, render_report, verify_phiw_proposition
from .rootsys import fmt_vec
from .series import DEFAULT_ORDER, render_poly
from .superalg import (
    IdentityViolation, InvariantViolation, SuperAlgebraSpec, UnknownAlgebra, UnsupportedParams,
    builtin_catalog, dumps_spec, lookup, render_roots, spec_from_json, z_poly,
)
from .verify import VerifyConfig, exit_code, reports_to_json, reports_to_markdown, run_all

FORMATS = ("json", "md", "tex", "text")
TABLES = ("detecting", "hyperplanes", "roots", "series")
ENV_PREFIX = "SUPERBBW"


class ParseError(ValueError):
    """A user catalog file is not valid JSON of the expected shape."""


@dataclass(frozen=True)
class Config:
    truncation_order: int = DEFAULT_ORDER
    worker_count: int = max(1, os.cpu_count() or 1)
    output_format: str = "text"
    ledger: bool = False

    def __post_init__(self):
        if self.truncation_order < 8:
            raise ValueError("truncation order must be at least 8")
        if self.worker_count < 1:
            raise ValueError("worker count must be positive")
        if self.output_format not in FORMATS:
            raise ValueError(f"unknown output format {self.output_format!r}")


# -- user catalogs ------------------------------------------------------------------

_USER: dict[str, SuperAlgebraSpec] = {}


def load_user_catalog(path: str) -> list[SuperAlgebraSpec]:
    """Read a JSON list (or single object) of entries, validate, and register them."""
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"{path}: {exc}") from exc
    if isinstance(data, dict):
        data = data.get("algebras", [data])
    if not isinstance(data, list) or not all(isinstance(x, dict) for x in data):
        raise ParseError(f"{path}: expected a JSON object or a list of objects")
    specs = [spec_from_json(obj, namespace="user") for obj in data]
    for spec in specs:
        _USER[spec.name] = spec
    return specs


def resolve(name: str) -> SuperAlgebraSpec:
    spec = _USER.get(name.replace(" ", ""))
    return spec if spec is not None else lookup(name)


def merged_catalog() -> list[SuperAlgebraSpec]:
    out = [_USER.get(s.name, s) for s in builtin_catalog()]
    known = {s.name for s in out}
    out += [s for name, s in sorted(_USER.items()) if name not in known]
    return out


# -- renderers ----------------------------------------------------------------------

def _md_table(header: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    lines = ["| " + " | ".join(header) + " |", "|" + "---|" * len(header)]
    lines += ["| " + " | ".join(r) + " |" for r in rows]
    return "\n".join(lines)


def _tex_table(header: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    lines = [r"\begin{tabular}{" + "l" * len(header) + "}", r"\hline",
             " & ".join(header) + r" \\", r"\hline"]
    lines += [" & ".join(r) + r" \\" for r in rows]
    lines += [r"\hline", r"\end{tabular}"]
    return "\n".join(lines)


def _math(text: str, tex: bool) -> str:
    return f"${text}$" if tex else text


def render_poly_fmt(p, fmt: str) -> str:
    return _math(render_poly(p, tex=True), True) if fmt == "tex" else render_poly(p)


P4_NOTE = ("note: -ε1-ε2 and ε3+ε4 are the same weight class modulo the trace, so a listing "
           "that reduces both representatives shows -ε1-ε2 twice.")


def roots_payload(spec: SuperAlgebraSpec) -> dict:
    return {
        "algebra": spec.name,
        "hyperplane": spec.hyperplane,
        "functional": fmt_vec(spec.functional),
        "f_roots": render_roots(spec, spec.f_roots),
        "neg_roots": render_roots(spec, spec.neg_roots),
        "pos_roots": render_roots(spec, spec.pos_roots),
        "w1": spec.w1.name,
        "s": spec.s_param,
    }


def render_roots_view(spec: SuperAlgebraSpec, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(roots_payload(spec), indent=2, ensure_ascii=False)
    tex = fmt == "tex"
    rows = [
        ("Phi_f", render_roots(spec, spec.f_roots, tex)),
        ("Phi1-", render_roots(spec, spec.neg_roots, tex)),
        ("Phi1+", render_roots(spec, spec.pos_roots, tex)),
        ("hyperplane", spec.hyperplane),
        ("sample functional", fmt_vec(spec.functional)),
    ]
    if fmt == "text":
        body = "\n".join(f"{k:18} {v}" for k, v in rows)
        body = f"{spec.name}\n{body}"
    elif tex:
        body = _tex_table(("part", spec.name), [(k, _math(v, True) if k.startswith("Phi") else v) for k, v in rows])
    else:
        body = _md_table(("part", spec.name), rows)
    if spec.family == "p" and spec.params[0] == 4:
        body += "\n\n" + P4_NOTE
    return body


def render_census(result: CensusResult, fmt: str, ledger: bool) -> str:
    if fmt == "json":
        return json.dumps(result.to_json(ledger), indent=2, sort_keys=True)
    lines = [render_poly_fmt(result.poincare, fmt)]
    if fmt != "tex":
        lines.append(f"euler: {list(result.euler_per_lambda_degree)}")
        if result.nontrivial_found:
            lines.append("nontrivial dominant weights found")
        if not result.family_valid:
            lines.append("census not proven exact for this family")
        if ledger:
            for c in result.contributions:
                lines.append(f"J={list(c.subset_indices)} n={c.lambda_degree} j={c.coh_degree} "
                             f"dim={c.dim} trivial={c.trivial}")
    return "\n".join(lines)


def table_rows(which: str, specs: Sequence[SuperAlgebraSpec], tex: bool, config: Config):
    if which == "detecting":
        return ("algebra", "Phi_f"), [(s.name, _math(render_roots(s, s.f_roots, tex), tex)) for s in specs]
    if which == "hyperplanes":
        return (("algebra", "hyperplane", "sample functional"),
                [(s.name, s.hyperplane, fmt_vec(s.functional)) for s in specs])
    if which == "roots":
        return ("algebra", "Phi1-"), [(s.name, _math(render_roots(s, s.neg_roots, tex), tex)) for s in specs]
    rows = []
    fmt = "tex" if tex else "md"
    for s in specs:
        try:
            z = render_poly_fmt(z_poly(s, config.truncation_order).as_poly(), fmt)
        except IdentityViolation:
            z = "mismatch"
        p = render_poly_fmt(census(s, config.worker_count).poincare, fmt)
        rows.append((s.name, s.w1.name, str(s.w1.order), str(s.s_param or "-"), z, p))
    return ("algebra", "W1", "|W1|", "s", "z(t)", "census"), rows


def render_tables(which: Sequence[str], specs: Sequence[SuperAlgebraSpec], config: Config) -> str:
    fmt = config.output_format
    tex = fmt == "tex"
    blocks = []
    for w in which:
        header, rows = table_rows(w, specs, tex, config)
        if fmt == "json":
            blocks.append({"table": w, "rows": [dict(zip(header, r)) for r in rows]})
            continue
        title = f"% {w}" if tex else f"## {w}"
        blocks.append(title + "\n\n" + (_tex_table(header, rows) if tex else _md_table(header, rows)))
    if fmt == "json":
        return json.dumps(blocks, indent=2, ensure_ascii=False)
    return "\n\n".join(blocks)


# -- click plumbing -------------------------------------------------------------------

def _common(f):
    opts = [
        click.option("--truncate", "truncate", type=int, default=DEFAULT_ORDER, show_default=True,
                     envvar=f"{ENV_PREFIX}_TRUNCATE", help="Truncation order N for series."),
        click.option("--workers", type=int, default=None, envvar=f"{ENV_PREFIX}_WORKERS",
                     help="Worker threads for the census (default: CPU count)."),
        click.option("--format", "fmt", type=click.Choice(FORMATS), default=None,
                     envvar=f"{ENV_PREFIX}_FORMAT", help="Output format."),
        click.option("--ledger/--no-ledger", default=False, envvar=f"{ENV_PREFIX}_LEDGER",
                     help="Emit the per-subset contribution ledger."),
        click.option("--catalog", type=click.Path(dir_okay=False), default=None,
                     envvar=f"{ENV_PREFIX}_CATALOG", help="JSON file of extra catalog entries."),
    ]
    for o in reversed(opts):
        f = o(f)
    return f


def _config(truncate: int, workers: Optional[int], fmt: Optional[str], ledger: bool,
            catalog: Optional[str], default_format: str = "text") -> Config:
    try:
        cfg = Config(truncation_order=truncate, output_format=fmt or default_format, ledger=ledger)
        if workers is not None:
            cfg = replace(cfg, worker_count=workers)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    if catalog:
        try:
            load_user_catalog(catalog)
        except (ParseError, InvariantViolation) as exc:
            raise click.UsageError(f"{type(exc).__name__}: {exc}")
    return cfg


def _resolve(name: str) -> SuperAlgebraSpec:
    try:
        return resolve(name)
    except (UnknownAlgebra, UnsupportedParams) as exc:
        raise click.UsageError(str(exc))


@click.group()
def main():
    """Poincare series of flag supervarieties via the BBW weight census."""


@main.command()
@click.argument("algebra")
@_common
def roots(algebra, truncate, workers, fmt, ledger, catalog):
    """Odd-root partition and hyperplane data."""
    cfg = _config(truncate, workers, fmt, ledger, catalog)
    click.echo(render_roots_view(_resolve(algebra), cfg.output_format))


@main.command()
@click.argument("algebra")
@_common
def poincare(algebra, truncate, workers, fmt, ledger, catalog):
    """Census Poincare polynomial of G/B."""
    cfg = _config(truncate, workers, fmt, ledger, catalog)
    result = census(_resolve(algebra), cfg.worker_count)
    click.echo(render_census(result, cfg.output_format, cfg.ledger))


@main.command()
@click.argument("which", nargs=-1, type=click.Choice(TABLES + ("all",)))
@_common
def tables(which, truncate, workers, fmt, ledger, catalog):
    """Regenerate the catalog tables (default: all)."""
    cfg = _config(truncate, workers, fmt, ledger, catalog, default_format="md")
    chosen = TABLES if not which or "all" in which else tuple(which)
    click.echo(render_tables(chosen, merged_catalog(), cfg))


@main.command()
@click.option("--family", "families", multiple=True, help="Restrict to a family (repeatable).")
@click.option("--max-rank", type=int, default=None, help="Skip entries of larger even rank.")
@click.option("--json", "as_json", is_flag=True, help="Shorthand for --format json.")
@click.option("--markdown", "as_md", is_flag=True, help="Shorthand for --format md.")
@_common
def verify(families, max_rank, as_json, as_md, truncate, workers, fmt, ledger, catalog):
    """Run the identity checks; exit 1 if any check fails."""
    fmt = "json" if as_json else "md" if as_md else fmt
    cfg = _config(truncate, workers, fmt, ledger, catalog, default_format="md")
    vcfg = VerifyConfig(order=cfg.truncation_order, workers=cfg.worker_count,
                        families=tuple(families) or None, max_rank=max_rank)
    reports = run_all(merged_catalog(), vcfg)
    click.echo(reports_to_json(reports) if cfg.output_format == "json" else reports_to_markdown(reports))
    sys.exit(exit_code(reports))


@main.command("phi-w")
@click.argument("algebra")
@_common
def phi_w(algebra, truncate, workers, fmt, ledger, catalog):
    """Table of (w, l(w), Phi(w), w.0) over W1 with the proposition check."""
    _config(truncate, workers, fmt, ledger, catalog)
    spec = _resolve(algebra)
    try:
        ctx = make_context(spec)
    except UnsupportedParams as exc:
        raise click.UsageError(str(exc))
    try:
        report = verify_phiw_proposition(ctx)
    except PropositionViolated as exc:
        click.echo(f"part ({exc.part}) fails: {exc.payload}")
        sys.exit(1)
    click.echo(render_report(ctx, report))


@main.command()
@click.argument("algebra")
@_common
def export(algebra, truncate, workers, fmt, ledger, catalog):
    """Serialize a catalog entry as JSON (loadable with --catalog)."""
    _config(truncate, workers, fmt, ledger, catalog)
    click.echo(dumps_spec(_resolve(algebra)), nl=False)


if __name__ == "__main__":
    main()
