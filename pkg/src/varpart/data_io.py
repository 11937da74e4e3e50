"""Dataset ingestion: CSV files, the built-in fixture, synthetic generation.

CSV parsing is strict about the columns it is asked for and indifferent to
the rest. The synthetic generator draws correlated normal predictors from
an explicitly seeded PCG64 stream (``numpy.random.default_rng``), whose
output is stable across platforms, so property tests are reproducible.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import (
    EmptyData,
    InvalidDataset,
    MissingColumn,
    NonNumericCell,
    NotPositiveSemidefinite,
    ParseError,
)
from .ols_core import Dataset, _readonly

# Eigenvalues of a correlation matrix this far below zero (relative to the
# largest) are treated as rank deficiency, not as a PSD violation.
_PSD_SLACK = 1e-10


@dataclass(frozen=True)
class CsvSpec:
    """Which file to read and which columns matter.

    The decimal separator is fixed to '.'; only the field delimiter is
    configurable.
    """

    path: str | Path
    response: str
    predictors: tuple[str, ...]
    delimiter: str = ","
    decimal: str = "."

    def __post_init__(self) -> None:
        object.__setattr__(self, "predictors", tuple(self.predictors))
        if not self.predictors:
            raise InvalidDataset("at least one predictor column is required")
        if len(set(self.predictors)) != len(self.predictors):
            raise InvalidDataset("predictor names must be distinct")
        if self.response in self.predictors:
            raise InvalidDataset(
                f"response {self.response!r} cannot also be a predictor"
            )
        if len(self.delimiter) != 1:
            raise ValueError("delimiter must be a single character")
        if self.decimal != ".":
            raise ValueError("only '.' decimals are supported")


@dataclass(frozen=True)
class SyntheticSpec:
    """Recipe for a seeded dataset with a chosen predictor correlation.

    ``correlation`` must be symmetric with unit diagonal and positive
    semidefinite; singular-but-PSD matrices (e.g. r = 1) are accepted, and
    the resulting collinear dataset fails later, at fit time.
    """

    n: int
    p: int
    correlation: np.ndarray
    signal_coefficients: np.ndarray
    noise_sd: float = 1.0
    seed: int = 0

    def __post_init__(self) -> None:
        corr = _readonly(self.correlation)
        coef = _readonly(self.signal_coefficients)
        object.__setattr__(self, "correlation", corr)
        object.__setattr__(self, "signal_coefficients", coef)
        if self.p < 1:
            raise ValueError("p must be at least 1")
        if self.n < self.p + 2:
            raise ValueError(f"need n >= p + 2, got n={self.n}, p={self.p}")
        if corr.shape != (self.p, self.p):
            raise ValueError(f"correlation must be {self.p}x{self.p}")
        if coef.shape != (self.p,):
            raise ValueError(f"signal_coefficients must have length {self.p}")
        if not np.all(np.abs(corr - corr.T) <= 1e-12):
            raise ValueError("correlation matrix must be symmetric")
        if not np.all(np.abs(np.diag(corr) - 1.0) <= 1e-12):
            raise ValueError("correlation matrix must have unit diagonal")
        if not self.noise_sd > 0.0:
            raise ValueError("noise_sd must be positive")
        if self.seed < 0:
            raise ValueError("seed must be a non-negative integer")


def load_csv(spec: CsvSpec) -> Dataset:
    """Read the selected columns of a delimited text file into a Dataset.

    The first row is the header; line numbers in errors are 1-based file
    lines, so the first data row is line 2. Unselected columns are never
    parsed. Blank lines are skipped.
    """
    with open(spec.path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh, delimiter=spec.delimiter)
        try:
            header = next(reader)
        except StopIteration:
            raise EmptyData(f"{spec.path}: file is empty") from None

        wanted = (spec.response,) + spec.predictors
        positions: dict[str, int] = {}
        for i, name in enumerate(header):
            if name in positions and name in wanted:
                raise ParseError(1, f"duplicate column {name!r} in header")
            positions.setdefault(name, i)
        for name in wanted:
            if name not in positions:
                raise MissingColumn(name)

        idx = [positions[name] for name in wanted]
        values: list[list[float]] = [[] for _ in wanted]
        n_rows = 0
        for row in reader:
            if not row:
                continue
            line = reader.line_num
            if max(idx) >= len(row):
                raise ParseError(
                    line, f"expected at least {max(idx) + 1} fields, got {len(row)}"
                )
            for name, j, acc in zip(wanted, idx, values):
                cell = row[j]
                try:
                    acc.append(float(cell))
                except ValueError:
                    raise NonNumericCell(line, name, cell) from None
            n_rows += 1

    if n_rows == 0:
        raise EmptyData(f"{spec.path}: no data rows after the header")
    return Dataset(
        columns=tuple((name, np.array(col)) for name, col in zip(wanted, values)),
        response_name=spec.response,
        predictor_names=spec.predictors,
    )


def dataset_to_csv_text(d: Dataset, delimiter: str = ",") -> str:
    """Render a Dataset as CSV text at full precision.

    Floats are written with ``repr``, which round-trips exactly, so loading
    the text back reproduces the values bit for bit.
    """
    buf = io.StringIO()
    writer = csv.writer(buf, delimiter=delimiter, lineterminator="\n")
    writer.writerow([name for name, _ in d.columns])
    arrays = [col for _, col in d.columns]
    for i in range(d.n):
        writer.writerow([repr(float(col[i])) for col in arrays])
    return buf.getvalue()


def save_csv(d: Dataset, path: str | Path, delimiter: str = ",") -> None:
    """Write every column of a Dataset back out at full precision."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        fh.write(dataset_to_csv_text(d, delimiter))


# 21 photo-portrait city observations: target population (thousands),
# per-capita disposable income (thousands of dollars), sales (thousands
# of dollars). Transcribed from the applied-regression textbook they were
# published in; the test suite pins their cross-product matrix so a
# transcription slip cannot pass silently.
_DWAINE_ROWS = (
    (68.5, 16.7, 174.4),
    (45.2, 16.8, 164.4),
    (91.3, 18.2, 244.2),
    (47.8, 16.3, 154.6),
    (46.9, 17.3, 181.6),
    (66.1, 18.2, 207.5),
    (49.5, 15.9, 152.8),
    (52.0, 17.2, 163.2),
    (48.9, 16.6, 145.4),
    (38.4, 16.0, 137.2),
    (87.9, 18.3, 241.9),
    (72.8, 17.1, 191.1),
    (88.4, 17.4, 232.0),
    (42.9, 15.8, 145.3),
    (52.5, 17.8, 161.1),
    (85.7, 18.4, 209.7),
    (41.3, 16.5, 146.4),
    (51.7, 16.3, 144.0),
    (89.6, 18.1, 232.6),
    (82.7, 19.1, 224.1),
    (52.3, 16.0, 166.5),
)


def dwaine_fixture() -> Dataset:
    """The 21-city portrait-studio dataset used throughout the docs."""
    a = np.array(_DWAINE_ROWS)
    return Dataset(
        columns=(
            ("TARGTPOP", a[:, 0]),
            ("DISPOINC", a[:, 1]),
            ("SALES", a[:, 2]),
        ),
        response_name="SALES",
        predictor_names=("TARGTPOP", "DISPOINC"),
    )


def _symmetric_sqrt(corr: np.ndarray) -> np.ndarray:
    evals, vecs = np.linalg.eigh(corr)
    if evals[0] < -_PSD_SLACK * max(1.0, float(evals[-1])):
        raise NotPositiveSemidefinite(
            f"correlation matrix has negative eigenvalue {evals[0]:.3e}"
        )
    return (vecs * np.sqrt(np.clip(evals, 0.0, None))) @ vecs.T


def generate_synthetic(spec: SyntheticSpec) -> Dataset:
    """Draw a dataset with the requested predictor correlation structure.

    Predictors are standard normals mixed through the symmetric square
    root of the correlation matrix; the response is the signal combination
    plus N(0, noise_sd^2) noise. A fixed seed gives a bit-identical
    Dataset on every platform.
    """
    root = _symmetric_sqrt(spec.correlation)
    rng = np.random.default_rng(spec.seed)
    x = rng.standard_normal((spec.n, spec.p)) @ root
    y = x @ spec.signal_coefficients + spec.noise_sd * rng.standard_normal(spec.n)
    names = tuple(f"x{j + 1}" for j in range(spec.p))
    return Dataset(
        columns=tuple((nm, x[:, j]) for j, nm in enumerate(names)) + (("y", y),),
        response_name="y",
        predictor_names=names,
    )


def exchangeable_correlation(p: int, rho: float) -> np.ndarray:
    """Unit-diagonal matrix with a single off-diagonal value everywhere."""
    m = np.full((p, p), float(rho))
    np.fill_diagonal(m, 1.0)
    return m
