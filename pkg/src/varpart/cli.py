"""Command-line interface.

Four subcommands share the input options: ``fit`` (ANOVA table and
coefficients), ``decompose`` (traditional vs corrected side by side),
``orderings`` (per-ordering Type I tables with orthogonal-function fits),
and ``venn`` (region accounting, optionally as a proportional-area SVG).
A hidden ``synth`` subcommand emits seeded synthetic CSVs for testing.

Exit codes: 0 success, 2 input or usage error, 3 degenerate design
(constant column or collinear predictors), 4 ordering-cap exceeded. Every
failure prints a one-line diagnostic to stderr.
"""

from __future__ import annotations

import os
import sys
from pathlib import Path

import click
import numpy as np

from .data_io import (
    CsvSpec,
    SyntheticSpec,
    dataset_to_csv_text,
    dwaine_fixture,
    exchangeable_correlation,
    generate_synthetic,
    load_csv,
)
from .decomposition import (
    compare_report,
    enumerate_orderings,
    orthogonal_regression,
    sequential_ss,
    venn_regions,
)
from .errors import ConstantColumn, SingularDesign, TooManyOrderings, VarpartError
from .ols_core import Dataset, fit_ols, mean_center
from .report import (
    decompose_payload,
    fit_payload,
    orderings_payload,
    render_csv,
    render_json,
    render_text,
    venn_payload,
)
from .venn_svg import render_venn_svg

_EXIT_INPUT = 2
_EXIT_SINGULAR = 3
_EXIT_ORDERINGS = 4


def _split(csv_arg: str) -> tuple[str, ...]:
    return tuple(tok.strip() for tok in csv_arg.split(",") if tok.strip())


def _input_options(fn):
    opts = [
        click.option(
            "--dwaine",
            "use_dwaine",
            is_flag=True,
            help="Use the built-in 21-city portrait-studio dataset.",
        ),
        click.option(
            "--input",
            "input_path",
            type=click.Path(),
            default=None,
            help="CSV file to read (first row is the header).",
        ),
        click.option("--response", default=None, help="Response column name."),
        click.option(
            "--predictors",
            default=None,
            help="Comma-separated predictor column names.",
        ),
        click.option(
            "--delimiter",
            default=",",
            show_default=True,
            help="Field delimiter of the input CSV.",
        ),
        click.option(
            "--model",
            "model_arg",
            default=None,
            help="Comma-separated predictors to fit (default: all predictors).",
        ),
        click.option(
            "--out",
            "out_path",
            type=click.Path(),
            default=None,
            help="Write output to this file instead of stdout.",
        ),
    ]
    for opt in reversed(opts):
        fn = opt(fn)
    return fn


def _format_option(choices):
    return click.option(
        "--format",
        "fmt",
        type=click.Choice(choices),
        default="text",
        show_default=True,
        help="Output format.",
    )


def _load_dataset(use_dwaine, input_path, response, predictors, delimiter) -> Dataset:
    if use_dwaine:
        if input_path or response or predictors:
            raise click.UsageError(
                "--dwaine cannot be combined with --input/--response/--predictors"
            )
        return dwaine_fixture()
    if not input_path:
        raise click.UsageError(
            "provide --dwaine, or --input with --response and --predictors"
        )
    if not response or not predictors:
        raise click.UsageError("--input requires --response and --predictors")
    return load_csv(
        CsvSpec(
            path=input_path,
            response=response,
            predictors=_split(predictors),
            delimiter=delimiter,
        )
    )


def _model_names(ds: Dataset, model_arg) -> tuple[str, ...]:
    if model_arg is None:
        return ds.predictor_names
    names = _split(model_arg)
    if not names:
        raise click.UsageError("--model must name at least one predictor")
    if len(set(names)) != len(names):
        raise click.UsageError("--model names a predictor twice")
    return names


def _render(payload, fmt: str) -> str:
    if fmt == "json":
        return render_json(payload)
    if fmt == "csv":
        return render_csv(payload)
    return render_text(payload)


def _emit(text: str, out_path) -> None:
    if out_path:
        Path(out_path).write_text(text, encoding="utf-8")
    else:
        click.echo(text, nl=False)


def _run(body) -> None:
    try:
        body()
    except (ConstantColumn, SingularDesign) as exc:
        _fail(exc, _EXIT_SINGULAR)
    except TooManyOrderings as exc:
        _fail(exc, _EXIT_ORDERINGS)
    except (VarpartError, OSError, ValueError) as exc:
        _fail(exc, _EXIT_INPUT)


def _fail(exc, code: int) -> None:
    click.echo(f"error: {exc}", err=True)
    sys.exit(code)


@click.group()
def main():
    """Variance decomposition for least-squares models with correlated predictors."""


@main.command()
@_input_options
@_format_option(["text", "json", "csv"])
def fit(use_dwaine, input_path, response, predictors, delimiter, model_arg, out_path, fmt):
    """ANOVA table and coefficients of one least-squares fit."""

    def body():
        ds = _load_dataset(use_dwaine, input_path, response, predictors, delimiter)
        c = mean_center(ds)
        model = _model_names(ds, model_arg)
        payload = fit_payload(fit_ols(c, model), ds.response_name)
        _emit(_render(payload, fmt), out_path)

    _run(body)


@main.command()
@_input_options
@_format_option(["text", "json", "csv"])
def decompose(
    use_dwaine, input_path, response, predictors, delimiter, model_arg, out_path, fmt
):
    """Traditional summary next to the partial-SS decomposition."""

    def body():
        ds = _load_dataset(use_dwaine, input_path, response, predictors, delimiter)
        c = mean_center(ds)
        model = _model_names(ds, model_arg)
        rep = compare_report(c, model, orderings=())
        payload = decompose_payload(rep, ds.response_name)
        _emit(_render(payload, fmt), out_path)

    _run(body)


@main.command()
@_input_options
@_format_option(["text", "json", "csv"])
@click.option(
    "--order",
    "orders",
    multiple=True,
    help="Explicit ordering, comma-separated; repeatable. Default: all orderings.",
)
def orderings(
    use_dwaine,
    input_path,
    response,
    predictors,
    delimiter,
    model_arg,
    out_path,
    fmt,
    orders,
):
    """Sequential (Type I) SS and the orthogonal-function fit per ordering."""

    def body():
        ds = _load_dataset(use_dwaine, input_path, response, predictors, delimiter)
        c = mean_center(ds)
        model = _model_names(ds, model_arg)
        if orders:
            ordering_list = tuple(_split(o) for o in orders)
            for o in ordering_list:
                if sorted(o) != sorted(model):
                    raise click.UsageError(
                        f"--order {','.join(o)} is not a permutation of the model"
                    )
        else:
            ordering_list = enumerate_orderings(model)
        full = fit_ols(c, model)
        entries = [
            (o, sequential_ss(c, o), orthogonal_regression(c, o))
            for o in ordering_list
        ]
        payload = orderings_payload(ds.response_name, model, full, entries)
        _emit(_render(payload, fmt), out_path)

    _run(body)


@main.command()
@_input_options
@_format_option(["text", "json", "csv", "svg"])
def venn(use_dwaine, input_path, response, predictors, delimiter, model_arg, out_path, fmt):
    """Variance regions: unique per predictor, common, residual, missing."""

    def body():
        ds = _load_dataset(use_dwaine, input_path, response, predictors, delimiter)
        c = mean_center(ds)
        model = _model_names(ds, model_arg)
        v = venn_regions(c, model)
        if fmt == "svg":
            out = render_venn_svg(v, model, ds.response_name)
        else:
            out = _render(venn_payload(v, ds.response_name, model, ds.n), fmt)
        _emit(out, out_path)

    _run(body)


@main.command(hidden=True)
@click.option("--n", type=int, default=100, show_default=True)
@click.option("--p", type=int, default=2, show_default=True)
@click.option(
    "--rho",
    type=float,
    default=0.0,
    show_default=True,
    help="Common pairwise predictor correlation.",
)
@click.option("--coef", default=None, help="Comma-separated signal coefficients.")
@click.option("--noise-sd", type=float, default=1.0, show_default=True)
@click.option(
    "--seed",
    type=int,
    default=0,
    show_default=True,
    help="RNG seed; the VARPART_SEED environment variable overrides it.",
)
@click.option("--out", "out_path", type=click.Path(), default=None)
def synth(n, p, rho, coef, noise_sd, seed, out_path):
    """Emit a seeded synthetic dataset as CSV (testing helper)."""

    def body():
        env_seed = os.environ.get("VARPART_SEED")
        if env_seed is not None:
            try:
                actual_seed = int(env_seed)
            except ValueError:
                raise click.UsageError(
                    f"VARPART_SEED must be an integer, got {env_seed!r}"
                ) from None
        else:
            actual_seed = seed
        coefs = (
            np.array([float(tok) for tok in _split(coef)])
            if coef
            else np.ones(p)
        )
        spec = SyntheticSpec(
            n=n,
            p=p,
            correlation=exchangeable_correlation(p, rho),
            signal_coefficients=coefs,
            noise_sd=noise_sd,
            seed=actual_seed,
        )
        _emit(dataset_to_csv_text(generate_synthetic(spec)), out_path)

    _run(body)


if __name__ == "__main__":
    main()
