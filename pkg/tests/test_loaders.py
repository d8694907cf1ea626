# tests/test_loaders.py
import numpy as np
import pandas as pd
import pytest

from linescan.utils.errors import InvalidArgumentError
from linescan.utils.settings import get_dense_limit, get_threads
from linescan_loaders.load_samples import load_sample_file, load_series
from linescan_loaders.write_results import to_csv, to_json, write_text_atomic


# --- sample files ---

def test_reads_one_column_with_header_and_comments(tmp_path):
    path = tmp_path / "obs.csv"
    path.write_text("value\n# warm-up removed\n1.5\n\n-2\n3e-1\n", encoding="utf-8")
    assert np.array_equal(load_sample_file(path), np.array([1.5, -2.0, 0.3]))


def test_rejects_bad_files(tmp_path):
    with pytest.raises(InvalidArgumentError):
        load_sample_file(tmp_path / "missing.csv")

    empty = tmp_path / "empty.csv"
    empty.write_text("", encoding="utf-8")
    with pytest.raises(InvalidArgumentError):
        load_sample_file(empty)

    two = tmp_path / "two.csv"
    two.write_text("1,2\n3,4\n", encoding="utf-8")
    with pytest.raises(InvalidArgumentError):
        load_sample_file(two)

    text = tmp_path / "text.csv"
    text.write_text("1.0\nabc\n2.0\n", encoding="utf-8")
    with pytest.raises(InvalidArgumentError):
        load_sample_file(text)

    inf = tmp_path / "inf.csv"
    inf.write_text("1.0\ninf\n", encoding="utf-8")
    with pytest.raises(InvalidArgumentError):
        load_sample_file(inf)


def test_series_lengths_must_match(tmp_path):
    (tmp_path / "a.csv").write_text("1\n2\n3\n", encoding="utf-8")
    (tmp_path / "b.csv").write_text("1\n2\n", encoding="utf-8")
    with pytest.raises(InvalidArgumentError):
        load_series(tmp_path / "a.csv", tmp_path / "b.csv")
    assert load_series(tmp_path / "a.csv", tmp_path / "a.csv").n == 3


# --- writers ---

def test_json_is_sorted_and_stable():
    assert to_json({"b": 1, "a": [1.5]}) == '{\n  "a": [\n    1.5\n  ],\n  "b": 1\n}\n'


def test_csv_has_no_index():
    frame = pd.DataFrame({"n": [10], "p_e": [0.125]})
    assert to_csv(frame) == "n,p_e\n10,0.125\n"


def test_atomic_write_replaces_and_leaves_no_temp(tmp_path):
    target = tmp_path / "out" / "result.json"
    write_text_atomic(target, "first")
    write_text_atomic(target, "second")
    assert target.read_text(encoding="utf-8") == "second"
    assert [p.name for p in target.parent.iterdir()] == ["result.json"]


# --- settings ---

def test_settings_precedence(monkeypatch):
    monkeypatch.delenv("LINESCAN_DENSE_LIMIT", raising=False)
    monkeypatch.delenv("LINESCAN_THREADS", raising=False)
    assert get_dense_limit() == 8192
    assert get_threads() == 1

    monkeypatch.setenv("LINESCAN_DENSE_LIMIT", "100")
    monkeypatch.setenv("LINESCAN_THREADS", "3")
    assert get_dense_limit() == 100
    assert get_dense_limit(50) == 50
    assert get_threads() == 3
    assert get_threads(2) == 2
    assert get_threads(0) >= 1
    with pytest.raises(InvalidArgumentError):
        get_threads(-1)
