"""Distribution tables on disk: CSV (`value,probability` per line, header
optional) and JSON (`{"values": [...], "probs": [...]}`).

Writers emit 17 significant digits, so a write/read round trip reproduces
every float exactly, and they go through a temp file plus rename so a
failure never leaves a partial file behind.
"""

from __future__ import annotations

import csv
import json
import os
import tempfile

from .distribution import DiscreteDistribution, make_distribution
from .errors import KolmoreduceError


class DistributionParseError(KolmoreduceError, ValueError):
    """Input file does not parse as a distribution table."""


def _fmt(v: float) -> str:
    return format(float(v), ".17g")


def _looks_numeric(text: str) -> bool:
    try:
        float(text)
        return True
    except ValueError:
        return False


def _read_csv(path: str, renormalize: bool) -> DiscreteDistribution:
    pairs = []
    with open(path, "r", encoding="utf-8", newline="") as fh:
        for lineno, row in enumerate(csv.reader(fh), start=1):
            if not row or all(not cell.strip() for cell in row):
                continue
            if len(row) != 2:
                raise DistributionParseError(
                    f"{path}:{lineno}: expected 2 fields, got {len(row)}"
                )
            a, b = row[0].strip(), row[1].strip()
            if lineno == 1 and not _looks_numeric(a):
                continue  # header row
            try:
                pairs.append((float(a), float(b)))
            except ValueError:
                raise DistributionParseError(
                    f"{path}:{lineno}: non-numeric field in {row!r}"
                ) from None
    if not pairs:
        raise DistributionParseError(f"{path}: no data rows")
    return _wrap_validation(path, pairs, renormalize)


def _read_json(path: str, renormalize: bool) -> DiscreteDistribution:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise DistributionParseError(f"{path}: invalid JSON ({exc})") from None
    if not isinstance(obj, dict) or "values" not in obj or "probs" not in obj:
        raise DistributionParseError(f"{path}: needs 'values' and 'probs' fields")
    values, probs = obj["values"], obj["probs"]
    if not isinstance(values, list) or not isinstance(probs, list) or len(values) != len(probs):
        raise DistributionParseError(f"{path}: 'values' and 'probs' must be equal-length lists")
    return _wrap_validation(path, list(zip(values, probs)), renormalize)


def _wrap_validation(path: str, pairs, renormalize: bool) -> DiscreteDistribution:
    try:
        return make_distribution(pairs, renormalize=renormalize)
    except (KolmoreduceError, ValueError, TypeError) as exc:
        raise DistributionParseError(f"{path}: {exc}") from None


def read_distribution_file(
    path: str, *, renormalize: bool = False
) -> tuple[DiscreteDistribution, str]:
    """Read a distribution table; returns (distribution, format) with format
    "csv" or "json", detected from the extension or a leading brace."""
    if not os.path.exists(path):
        raise DistributionParseError(f"{path}: no such file")
    fmt = "json" if path.lower().endswith(".json") else "csv"
    if fmt == "csv":
        with open(path, "r", encoding="utf-8") as fh:
            head = fh.read(64).lstrip()
        if head.startswith("{"):
            fmt = "json"
    if fmt == "json":
        return _read_json(path, renormalize), "json"
    return _read_csv(path, renormalize), "csv"


def _atomic_write(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    try:
        fd, tmp = tempfile.mkstemp(dir=directory, prefix=".kolmoreduce-")
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from None
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_distribution_file(dist: DiscreteDistribution, path: str, fmt: str = "csv") -> None:
    """Write a distribution table in the given format ("csv" or "json")."""
    if fmt == "csv":
        lines = ["value,probability"]
        lines.extend(f"{_fmt(v)},{_fmt(p)}" for v, p in zip(dist.values, dist.probs))
        _atomic_write(path, "\n".join(lines) + "\n")
    elif fmt == "json":
        values = ", ".join(_fmt(v) for v in dist.values)
        probs = ", ".join(_fmt(p) for p in dist.probs)
        _atomic_write(path, f'{{"values": [{values}], "probs": [{probs}]}}\n')
    else:
        raise ValueError(f"unknown format {fmt!r}")
