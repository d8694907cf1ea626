# linescan_loaders/load_samples.py
# Sample files: plain text, one real per line (a single CSV column).
# Blank lines and '#' comments are skipped; a non-numeric first line is a header.
from __future__ import annotations

from pathlib import Path

import numpy as np
import pandas as pd

from linescan.models.samples import SampleSeries
from linescan.utils.errors import InvalidArgumentError


def load_sample_file(path: str | Path) -> np.ndarray:
    path = Path(path)
    if not path.is_file():
        raise InvalidArgumentError(f"sample file not found: {path}")

    try:
        df = pd.read_csv(path, header=None, comment="#", skip_blank_lines=True, dtype=str)
    except pd.errors.EmptyDataError as e:
        raise InvalidArgumentError(f"{path}: no samples") from e
    if df.shape[1] != 1:
        raise InvalidArgumentError(f"{path}: expected a single column, found {df.shape[1]}")

    values = pd.to_numeric(df.iloc[:, 0].str.strip(), errors="coerce")
    if len(values) and pd.isna(values.iloc[0]):
        values = values.iloc[1:]  # header row

    bad = values[values.isna()]
    if not bad.empty:
        raise InvalidArgumentError(f"{path}: non-numeric value on data row {int(bad.index[0]) + 1}")

    arr = values.to_numpy(dtype=float)
    if not np.all(np.isfinite(arr)):
        raise InvalidArgumentError(f"{path}: samples must be finite")
    return arr


def load_series(reference_path: str | Path, observed_path: str | Path) -> SampleSeries:
    """Reference and observed sequences from two one-column files of equal length."""
    return SampleSeries(load_sample_file(reference_path), load_sample_file(observed_path))
