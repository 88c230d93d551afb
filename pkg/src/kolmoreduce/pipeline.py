"""Repetitive reduction over task trees for deadline-probability estimation.

A task tree combines leaf distributions with sequential composition (sum of
durations), parallel-max, or parallel-min.  Exact evaluation folds the
combinators directly; reduced evaluation interleaves a support-size reducer
so intermediate supports never blow up.  The composed result is no longer
globally optimal, only each individual reduction step is.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from importlib import resources
from typing import Callable

from .baselines import opt_trim, sample_reduce, trim_epsilon
from .distribution import (
    CumulativeView,
    DiscreteDistribution,
    convolve,
    kolmogorov_distance,
    make_distribution,
    max_of,
    min_of,
)
from .errors import SupportExplosionError
from .reduction import _check_m, reduce

# Exact evaluation refuses to grow an intermediate support beyond this.
DEFAULT_CAP = 10**6

_COMBINE: dict[str, Callable[[DiscreteDistribution, DiscreteDistribution], DiscreteDistribution]] = {
    "seq": convolve,
    "max": max_of,
    "min": min_of,
}


@dataclass(frozen=True)
class TaskTree:
    """Expression tree node: a leaf distribution or a combinator over
    non-empty children, folded left to right in listed order."""

    kind: str
    children: tuple["TaskTree", ...] = ()
    dist: DiscreteDistribution | None = None

    def __post_init__(self) -> None:
        if self.kind == "leaf":
            if self.dist is None or self.children:
                raise ValueError("a leaf node carries exactly one distribution")
        elif self.kind in _COMBINE:
            if not self.children or self.dist is not None:
                raise ValueError(f"a {self.kind!r} node needs children and no distribution")
        else:
            raise ValueError(f"unknown node kind {self.kind!r}")


def leaf(dist: DiscreteDistribution) -> TaskTree:
    return TaskTree("leaf", dist=dist)


def seq(*children: TaskTree) -> TaskTree:
    return TaskTree("seq", children=tuple(children))


def max_node(*children: TaskTree) -> TaskTree:
    return TaskTree("max", children=tuple(children))


def min_node(*children: TaskTree) -> TaskTree:
    return TaskTree("min", children=tuple(children))


def tree_from_json(obj: dict, base_dir: str | None = None) -> TaskTree:
    """Build a tree from its JSON object form.

    Internal nodes are ``{"kind": "seq"|"max"|"min", "children": [...]}``;
    leaves are ``{"kind": "leaf", "inline": {"values": [...], "probs": [...]}}``
    or ``{"kind": "leaf", "file": "path"}`` with the path resolved against
    ``base_dir`` (the tree file's directory when loaded from disk).
    """
    if not isinstance(obj, dict) or "kind" not in obj:
        raise ValueError("tree node must be an object with a 'kind' field")
    kind = obj["kind"]
    if kind == "leaf":
        if "inline" in obj:
            inline = obj["inline"]
            if not isinstance(inline, dict) or "values" not in inline or "probs" not in inline:
                raise ValueError("inline leaf needs 'values' and 'probs' lists")
            dist = make_distribution(zip(inline["values"], inline["probs"]))
        elif "file" in obj:
            from .io import read_distribution_file

            path = obj["file"]
            if base_dir is not None and not os.path.isabs(path):
                path = os.path.join(base_dir, path)
            dist, _ = read_distribution_file(path)
        else:
            raise ValueError("leaf node needs an 'inline' table or a 'file' path")
        return leaf(dist)
    children = obj.get("children") or []
    return TaskTree(kind, children=tuple(tree_from_json(c, base_dir) for c in children))


def load_tree(path: str) -> TaskTree:
    """Read a task tree from a JSON file; leaf file paths resolve relative
    to the tree file's directory."""
    with open(path, "r", encoding="utf-8") as fh:
        obj = json.load(fh)
    return tree_from_json(obj, base_dir=os.path.dirname(os.path.abspath(path)))


def fixture_path(name: str) -> str:
    """Filesystem path of a benchmark tree shipped with the package."""
    return str(resources.files("kolmoreduce").joinpath("fixtures", f"{name}.json"))


def eval_exact(tree: TaskTree, cap: int = DEFAULT_CAP) -> DiscreteDistribution:
    """Fold the tree without any reduction.

    Raises ``SupportExplosionError`` as soon as an intermediate support
    exceeds ``cap`` points.
    """

    def guard(d: DiscreteDistribution) -> DiscreteDistribution:
        if d.n > cap:
            raise SupportExplosionError(
                f"intermediate support of {d.n} points exceeds the cap of {cap}"
            )
        return d

    if tree.kind == "leaf":
        return guard(tree.dist)
    combine = _COMBINE[tree.kind]
    acc = eval_exact(tree.children[0], cap)
    for child in tree.children[1:]:
        acc = guard(combine(acc, eval_exact(child, cap)))
    return acc


def _make_reducer(
    method: str, m: int, *, eps: float | None, samples: int | None, seed: int
) -> Callable[[DiscreteDistribution], DiscreteDistribution]:
    if method == "klm":
        return lambda d: reduce(d, m).approx
    if method == "opttrim":
        return lambda d: opt_trim(d, m).approx
    if method == "trim":
        if eps is None:
            raise ValueError("method 'trim' needs an eps parameter")
        return lambda d: trim_epsilon(d, eps).approx
    if method == "sample":
        if samples is None:
            raise ValueError("method 'sample' needs a samples parameter")
        return lambda d: sample_reduce(d, samples, m, seed).approx
    raise ValueError(f"unknown reduction method {method!r}")


def eval_reduced(
    tree: TaskTree,
    m: int,
    method: str = "klm",
    *,
    eps: float | None = None,
    samples: int | None = None,
    seed: int = 0,
    on_reduce: Callable[[DiscreteDistribution, DiscreteDistribution], None] | None = None,
) -> DiscreteDistribution:
    """Fold the tree, reducing whenever a support grows beyond ``m``.

    Leaves wider than ``m`` are reduced on entry; every combine whose output
    exceeds ``m`` points is reduced right after.  ``on_reduce(before, after)``
    is invoked at each reduction step, for instrumentation.
    """
    m = _check_m(m)
    reducer = _make_reducer(method, m, eps=eps, samples=samples, seed=seed)

    def shrink(d: DiscreteDistribution) -> DiscreteDistribution:
        if d.n <= m:
            return d
        reduced = reducer(d)
        if on_reduce is not None:
            on_reduce(d, reduced)
        return reduced

    def walk(node: TaskTree) -> DiscreteDistribution:
        if node.kind == "leaf":
            return shrink(node.dist)
        combine = _COMBINE[node.kind]
        acc = walk(node.children[0])
        for child in node.children[1:]:
            acc = shrink(combine(acc, walk(child)))
        return acc

    return walk(tree)


@dataclass(frozen=True)
class PipelineReport:
    """Exact-versus-reduced comparison: support sizes, overall Kolmogorov
    distance, and one row (t, F_exact(t), F_approx(t), |delta|) per
    requested deadline."""

    exact_support_size: int
    approx_support_size: int
    d_k: float
    rows: tuple[tuple[float, float, float, float], ...] = field(default_factory=tuple)


def run_pipeline(
    tree: TaskTree,
    deadlines,
    m: int,
    method: str = "klm",
    *,
    eps: float | None = None,
    samples: int | None = None,
    seed: int = 0,
    cap: int = DEFAULT_CAP,
) -> PipelineReport:
    """Evaluate a tree exactly and with interleaved reduction, and report
    deadline-probability errors."""
    exact = eval_exact(tree, cap)
    approx = eval_reduced(tree, m, method, eps=eps, samples=samples, seed=seed)
    f_exact = CumulativeView(exact)
    f_approx = CumulativeView(approx)
    rows = []
    for t in deadlines:
        fe = float(f_exact.at(t))
        fa = float(f_approx.at(t))
        rows.append((float(t), fe, fa, abs(fe - fa)))
    return PipelineReport(
        exact_support_size=exact.n,
        approx_support_size=approx.n,
        d_k=kolmogorov_distance(exact, approx),
        rows=tuple(rows),
    )
