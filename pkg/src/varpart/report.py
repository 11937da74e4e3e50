"""Report payloads and their text, JSON, and CSV renderings.

Each subcommand first builds one JSON-able payload dict carrying full
float precision; every renderer works from that payload. Text output
therefore shows exactly the JSON numbers rounded half away from zero to
two decimals, and CSV output carries the full-precision values in a flat
(section, name, statistic, value) layout. Non-finite statistics (a
perfect fit has infinite F) become JSON null and the text cell "NA".
"""

from __future__ import annotations

import csv
import io
import json
import math
from typing import Any, Sequence

from .decomposition import DecompositionReport, VennRegions
from .ols_core import OlsFit, anova_table
from .textfmt import fmt2

SCHEMA_VERSION = "1"


def _num(x: float) -> float | None:
    x = float(x)
    return x if math.isfinite(x) else None


def _cell(x: float | None) -> str:
    return "NA" if x is None else fmt2(x)


def _coef_list(fit: OlsFit) -> list[dict[str, Any]]:
    return [
        {"name": nm, "b": _num(b), "se": _num(se), "z": _num(z), "t": _num(t)}
        for nm, b, se, z, t in zip(fit.predictor_subset, fit.b, fit.se, fit.z, fit.t)
    ]


def _venn_dict(v: VennRegions) -> dict[str, Any]:
    return {
        "unique": {nm: _num(ss) for nm, ss in v.unique.items()},
        "common_total": _num(v.common_total),
        "residual": _num(v.residual),
        "ss_total": _num(v.ss_total),
        "accounted_total": _num(v.accounted_total),
        "missing": _num(v.missing),
        "missing_fraction": _num(v.missing_fraction),
        "suppression": v.suppression,
    }


# ---------------------------------------------------------------- payloads


def fit_payload(fit: OlsFit, response: str) -> dict[str, Any]:
    at = anova_table(fit)
    anova: dict[str, Any] = {}
    for row in at.rows:
        entry: dict[str, Any] = {
            "ss": _num(row.ss),
            "df": row.df,
            "ms": _num(row.ms),
        }
        if row.f is not None:
            entry["f"] = _num(row.f)
        anova[row.source.lower()] = entry
    return {
        "schema_version": SCHEMA_VERSION,
        "command": "fit",
        "response": response,
        "predictors": list(fit.predictor_subset),
        "n": fit.n,
        "anova": anova,
        "r2": _num(fit.r2),
        "intercept": _num(fit.intercept),
        "coefficients": _coef_list(fit),
    }


def _report_notes(rep: DecompositionReport) -> list[str]:
    v = rep.venn
    notes = []
    if len(rep.model) == 1:
        notes.append(
            "single predictor: traditional and corrected statistics coincide"
        )
    elif abs(v.common_total) <= 1e-9 * v.ss_total:
        notes.append(
            "predictors are orthogonal: traditional and corrected statistics"
            " coincide, and every ordering gives the same sequential SS"
        )
    elif v.suppression:
        notes.append(
            "suppression: the unique contributions exceed the regression SS,"
            " so the common region is negative"
        )
        notes.append(
            "the traditional R2 and F describe the fitted model as a whole;"
            " the corrected values count only contributions attributable to"
            " individual predictors"
        )
    else:
        notes.append(
            "correlated predictors: part of the regression SS is a shared"
            " overlap attributable to no single predictor"
        )
        notes.append(
            "the traditional R2 and F describe the fitted model as a whole;"
            " the corrected values count only contributions attributable to"
            " individual predictors"
        )
    if len(rep.model) >= 2:
        notes.append(
            "each predictor carries two t statistics, the full-model t and"
            " the residualized simple-regression t; both are reported"
        )
    return notes


def decompose_payload(rep: DecompositionReport, response: str) -> dict[str, Any]:
    trad = rep.traditional
    return {
        "schema_version": SCHEMA_VERSION,
        "command": "decompose",
        "response": response,
        "predictors": list(rep.model),
        "n": trad.n,
        "traditional": {
            "ss_regression": _num(trad.ss_regression),
            "ss_residual": _num(trad.ss_residual),
            "ss_total": _num(trad.ss_total),
            "df_model": trad.df_model,
            "df_residual": trad.df_residual,
            "ms_residual": _num(trad.ms_residual),
            "r2": _num(trad.r2),
            "f": _num(trad.f),
            "intercept": _num(trad.intercept),
            "coefficients": _coef_list(trad),
        },
        "corrected": {
            "actual_model_ss": _num(rep.actual_model_ss),
            "r2": _num(rep.corrected_r2),
            "f": _num(rep.corrected_f),
        },
        "type3": [
            {"name": pd.name, "ss": _num(pd.type3_ss)} for pd in rep.per_predictor
        ],
        "residualized_fits": [
            {
                "name": nm,
                "label": f.predictor_subset[0],
                "ss_regression": _num(f.ss_regression),
                "f": _num(f.f),
                "r2": _num(f.r2),
                "b": _num(f.b[0]),
                "se": _num(f.se[0]),
                "z": _num(f.z[0]),
                "t": _num(f.t[0]),
                "df_residual": f.df_residual,
            }
            for nm, f in rep.residualized_fits.items()
        ],
        "venn": _venn_dict(rep.venn),
        "notes": _report_notes(rep),
    }


def orderings_payload(
    response: str,
    model: Sequence[str],
    full: OlsFit,
    entries: Sequence[tuple[Sequence[str], Sequence[tuple[str, float]], OlsFit]],
) -> dict[str, Any]:
    """Payload for the per-ordering report.

    ``entries`` pairs each ordering with its sequential-SS table and the
    orthogonal-function fit on the same ordering.
    """
    items = []
    for order, seq, fit in entries:
        items.append(
            {
                "order": list(order),
                "type1": [{"name": nm, "ss": _num(ss)} for nm, ss in seq],
                "orthogonal_fit": {
                    "ss_regression": _num(fit.ss_regression),
                    "ss_residual": _num(fit.ss_residual),
                    "r2": _num(fit.r2),
                    "f": _num(fit.f),
                    "intercept": _num(fit.intercept),
                    "terms": [
                        {
                            "label": lbl,
                            "b": _num(b),
                            "se": _num(se),
                            "z": _num(z),
                            "t": _num(t),
                        }
                        for lbl, b, se, z, t in zip(
                            fit.predictor_subset, fit.b, fit.se, fit.z, fit.t
                        )
                    ],
                },
            }
        )
    return {
        "schema_version": SCHEMA_VERSION,
        "command": "orderings",
        "response": response,
        "predictors": list(model),
        "n": full.n,
        "ss_regression": _num(full.ss_regression),
        "ss_total": _num(full.ss_total),
        "orderings": items,
    }


def venn_payload(
    v: VennRegions, response: str, model: Sequence[str], n: int
) -> dict[str, Any]:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": "venn",
        "response": response,
        "predictors": list(model),
        "n": n,
        **_venn_dict(v),
    }


# --------------------------------------------------------------- renderers


def render_json(payload: dict[str, Any]) -> str:
    return json.dumps(payload, indent=2, allow_nan=False) + "\n"


def _layout(rows: list[list[str]], align: str) -> list[str]:
    """Pad columns to a grid; 'l'/'r' per column, two spaces between."""
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    lines = []
    for r in rows:
        cells = [
            c.ljust(w) if a == "l" else c.rjust(w)
            for c, w, a in zip(r, widths, align)
        ]
        lines.append("  ".join(cells).rstrip())
    return lines


def _model_line(payload: dict[str, Any]) -> str:
    return (
        f"Model: {payload['response']} ~ "
        f"{' + '.join(payload['predictors'])}  (n = {payload['n']})"
    )


def _coef_rows(coefs: list[dict[str, Any]], intercept: float | None) -> list[str]:
    rows = [["Term", "b", "se", "z", "t"]]
    rows.append(["Intercept", _cell(intercept), "", "", ""])
    for cf in coefs:
        rows.append(
            [
                cf.get("name", cf.get("label")),
                _cell(cf["b"]),
                _cell(cf["se"]),
                _cell(cf["z"]),
                _cell(cf["t"]),
            ]
        )
    return _layout(rows, "lrrrr")


def _anova_lines(anova: dict[str, Any]) -> list[str]:
    rows = [["Source", "SS", "df", "MS", "F"]]
    for source in ("regression", "residual", "total"):
        e = anova[source]
        rows.append(
            [
                source.capitalize(),
                _cell(e["ss"]),
                str(e["df"]),
                _cell(e["ms"]),
                _cell(e["f"]) if "f" in e else "",
            ]
        )
    return _layout(rows, "lrrrr")


def _venn_lines(v: dict[str, Any]) -> list[str]:
    rows = [["Region", "SS"]]
    for nm, ss in v["unique"].items():
        rows.append([f"unique {nm}", _cell(ss)])
    rows.append(["common (overlap)", _cell(v["common_total"])])
    rows.append(["residual", _cell(v["residual"])])
    rows.append(["accounted total", _cell(v["accounted_total"])])
    rows.append(["missing", _cell(v["missing"])])
    lines = _layout(rows, "lr")
    lines.append("")
    lines.append(f"Total SS = {_cell(v['ss_total'])}")
    lines.append(f"Missing fraction = {_cell(v['missing_fraction'])}")
    if v["suppression"]:
        lines.append("Suppression: the common region is negative.")
    return lines


def _render_text_fit(p: dict[str, Any]) -> str:
    lines = [_model_line(p), ""]
    lines += _anova_lines(p["anova"])
    lines += ["", f"R2 = {_cell(p['r2'])}", ""]
    lines += _coef_rows(p["coefficients"], p["intercept"])
    return "\n".join(lines) + "\n"


def _render_text_decompose(p: dict[str, Any]) -> str:
    trad, corr = p["traditional"], p["corrected"]
    lines = [_model_line(p), ""]
    lines.append("Traditional vs corrected")
    lines += _layout(
        [
            ["Statistic", "Traditional", "Corrected"],
            ["SS(model)", _cell(trad["ss_regression"]), _cell(corr["actual_model_ss"])],
            ["R2", _cell(trad["r2"]), _cell(corr["r2"])],
            ["F", _cell(trad["f"]), _cell(corr["f"])],
        ],
        "lrr",
    )
    lines.append("")
    lines.append("Coefficients (full model)")
    lines += _coef_rows(trad["coefficients"], trad["intercept"])
    lines.append("")
    lines.append("Partial (Type III) SS")
    rows = [["Term", "SS"]]
    rows += [[e["name"], _cell(e["ss"])] for e in p["type3"]]
    lines += _layout(rows, "lr")
    lines.append("")
    lines.append("Simple regressions on residualized predictors")
    rows = [["Term", "SS(reg)", "f", "R2", "b", "z", "t", "df(res)"]]
    for e in p["residualized_fits"]:
        rows.append(
            [
                e["label"],
                _cell(e["ss_regression"]),
                _cell(e["f"]),
                _cell(e["r2"]),
                _cell(e["b"]),
                _cell(e["z"]),
                _cell(e["t"]),
                str(e["df_residual"]),
            ]
        )
    lines += _layout(rows, "lrrrrrrr")
    lines.append("")
    lines.append("Variance accounting")
    lines += _venn_lines(p["venn"])
    lines.append("")
    lines.append("Notes")
    lines += [f"- {note}" for note in p["notes"]]
    return "\n".join(lines) + "\n"


def _render_text_orderings(p: dict[str, Any]) -> str:
    lines = [_model_line(p)]
    lines.append(
        f"SS(regression) = {_cell(p['ss_regression'])};"
        f" SS(total) = {_cell(p['ss_total'])}"
    )
    for item in p["orderings"]:
        lines.append("")
        lines.append(f"Ordering: {', '.join(item['order'])}")
        rows = [["Term", "Type I SS"]]
        rows += [[e["name"], _cell(e["ss"])] for e in item["type1"]]
        lines += _layout(rows, "lr")
        of = item["orthogonal_fit"]
        lines.append(
            f"Orthogonal-function fit: SS(reg) = {_cell(of['ss_regression'])};"
            f" R2 = {_cell(of['r2'])}; F = {_cell(of['f'])}"
        )
        lines += _coef_rows(of["terms"], of["intercept"])
    return "\n".join(lines) + "\n"


def _render_text_venn(p: dict[str, Any]) -> str:
    lines = [_model_line(p), ""]
    lines += _venn_lines(p)
    return "\n".join(lines) + "\n"


_TEXT_RENDERERS = {
    "fit": _render_text_fit,
    "decompose": _render_text_decompose,
    "orderings": _render_text_orderings,
    "venn": _render_text_venn,
}


def render_text(payload: dict[str, Any]) -> str:
    return _TEXT_RENDERERS[payload["command"]](payload)


def _csv_value(x: Any) -> str:
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        return repr(x)
    return str(x)


def _csv_doc(rows: list[list[Any]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["section", "name", "statistic", "value"])
    for row in rows:
        writer.writerow([_csv_value(v) for v in row])
    return buf.getvalue()


def _csv_meta(p: dict[str, Any]) -> list[list[Any]]:
    return [
        ["meta", "", "response", p["response"]],
        ["meta", "", "predictors", " ".join(p["predictors"])],
        ["meta", "", "n", p["n"]],
    ]


def _csv_coeffs(section: str, coefs: list[dict[str, Any]]) -> list[list[Any]]:
    rows = []
    for cf in coefs:
        nm = cf.get("name", cf.get("label"))
        for stat in ("b", "se", "z", "t"):
            rows.append([section, nm, stat, cf[stat]])
    return rows


def _csv_venn_rows(section: str, v: dict[str, Any]) -> list[list[Any]]:
    rows = [[section, nm, "unique", ss] for nm, ss in v["unique"].items()]
    for stat in (
        "common_total",
        "residual",
        "ss_total",
        "accounted_total",
        "missing",
        "missing_fraction",
        "suppression",
    ):
        rows.append([section, "", stat, v[stat]])
    return rows


def _render_csv_fit(p: dict[str, Any]) -> str:
    rows = _csv_meta(p)
    for source, e in p["anova"].items():
        for stat in ("ss", "df", "ms"):
            rows.append(["anova", source, stat, e[stat]])
        if "f" in e:
            rows.append(["anova", source, "f", e["f"]])
    rows.append(["fit", "", "r2", p["r2"]])
    rows.append(["fit", "", "intercept", p["intercept"]])
    rows += _csv_coeffs("coefficient", p["coefficients"])
    return _csv_doc(rows)


def _render_csv_decompose(p: dict[str, Any]) -> str:
    rows = _csv_meta(p)
    trad = p["traditional"]
    for stat in (
        "ss_regression",
        "ss_residual",
        "ss_total",
        "df_model",
        "df_residual",
        "ms_residual",
        "r2",
        "f",
        "intercept",
    ):
        rows.append(["traditional", "", stat, trad[stat]])
    rows += _csv_coeffs("coefficient", trad["coefficients"])
    for stat in ("actual_model_ss", "r2", "f"):
        rows.append(["corrected", "", stat, p["corrected"][stat]])
    for e in p["type3"]:
        rows.append(["type3", e["name"], "ss", e["ss"]])
    for e in p["residualized_fits"]:
        for stat in ("ss_regression", "f", "r2", "b", "se", "z", "t", "df_residual"):
            rows.append(["residualized", e["label"], stat, e[stat]])
    rows += _csv_venn_rows("venn", p["venn"])
    return _csv_doc(rows)


def _render_csv_orderings(p: dict[str, Any]) -> str:
    rows = _csv_meta(p)
    rows.append(["meta", "", "ss_regression", p["ss_regression"]])
    rows.append(["meta", "", "ss_total", p["ss_total"]])
    for item in p["orderings"]:
        section = "order:" + ">".join(item["order"])
        for e in item["type1"]:
            rows.append([section, e["name"], "type1_ss", e["ss"]])
        of = item["orthogonal_fit"]
        for stat in ("ss_regression", "ss_residual", "r2", "f", "intercept"):
            rows.append([section, "", stat, of[stat]])
        for term in of["terms"]:
            for stat in ("b", "se", "z", "t"):
                rows.append([section, term["label"], stat, term[stat]])
    return _csv_doc(rows)


def _render_csv_venn(p: dict[str, Any]) -> str:
    """One row per region: p unique rows, common, residual, missing, total."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["region", "ss"])
    for nm, ss in p["unique"].items():
        writer.writerow([f"unique:{nm}", _csv_value(ss)])
    writer.writerow(["common", _csv_value(p["common_total"])])
    writer.writerow(["residual", _csv_value(p["residual"])])
    writer.writerow(["missing", _csv_value(p["missing"])])
    writer.writerow(["total", _csv_value(p["ss_total"])])
    return buf.getvalue()


_CSV_RENDERERS = {
    "fit": _render_csv_fit,
    "decompose": _render_csv_decompose,
    "orderings": _render_csv_orderings,
    "venn": _render_csv_venn,
}


def render_csv(payload: dict[str, Any]) -> str:
    return _CSV_RENDERERS[payload["command"]](payload)
