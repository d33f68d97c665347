"""Tabular dataset loading: header row, numeric features, last column class."""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass

import numpy as np


@dataclass
class Dataset:
    X: np.ndarray
    y: np.ndarray  # string class labels, aligned to rows of X
    feature_names: list
    class_names: list  # sorted distinct labels


def load_table(text, delimiter=None):
    """Parse CSV or TSV text (sniffed from the header when not given)."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    lines = text.splitlines()
    if len(lines) < 2:
        raise ValueError("dataset needs a header row and at least one data row")
    if delimiter is None:
        delimiter = "\t" if "\t" in lines[0] else ","

    reader = csv.reader(io.StringIO(text), delimiter=delimiter)
    header = next(reader)
    if len(header) < 2:
        raise ValueError("dataset needs at least one feature column and a class column")
    feature_names = [h.strip() for h in header[:-1]]

    rows, labels = [], []
    for lineno, record in enumerate(reader, 2):
        if not record or all(not cell.strip() for cell in record):
            continue
        if len(record) != len(header):
            raise ValueError(f"line {lineno}: expected {len(header)} columns, got {len(record)}")
        try:
            rows.append([float(cell) for cell in record[:-1]])
        except ValueError as exc:
            raise ValueError(f"line {lineno}: non-numeric feature value") from exc
        labels.append(record[-1].strip())
    if not rows:
        raise ValueError("dataset holds no data rows")

    return Dataset(
        X=np.array(rows, dtype=float),
        y=np.array(labels, dtype=object),
        feature_names=feature_names,
        class_names=sorted(set(labels)),
    )


def load_table_file(path):
    with open(path, "rb") as handle:
        return load_table(handle.read())
