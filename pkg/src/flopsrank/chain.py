"""Matrix-chain variants, FLOP costs, relative scores and candidate shortlisting.

Costs follow the multiply-accumulate convention: a product of an ``m x n``
and an ``n x k`` matrix costs ``m * n * k`` (half its FLOP count).
"""

from __future__ import annotations

import string
from dataclasses import dataclass
from functools import lru_cache
from typing import Hashable, Iterator, Mapping, Sequence

AlgId = Hashable

MAX_CHAIN_LENGTH = 8
DEFAULT_RT_THRESHOLD = 1.5


class ChainTooLongError(ValueError):
    pass


@dataclass(frozen=True)
class ChainInstance:
    """Dimensions ``d_0..d_L``; matrix ``i`` (1-based) is ``d[i-1] x d[i]``."""

    dims: tuple[int, ...]

    def __post_init__(self) -> None:
        dims = tuple(int(d) for d in self.dims)
        if len(dims) < 2:
            raise ValueError("a chain needs at least two dimensions")
        if any(d < 1 for d in dims):
            raise ValueError(f"dimensions must be >= 1, got {dims}")
        object.__setattr__(self, "dims", dims)

    @property
    def length(self) -> int:
        return len(self.dims) - 1

    def names(self) -> list[str]:
        if self.length <= 26:
            return list(string.ascii_uppercase[: self.length])
        return [f"M{i}" for i in range(1, self.length + 1)]


# a tree is either a leaf index (int) or a pair (left, right)
Tree = "int | tuple[Tree, Tree]"
Span = tuple[int, int]  # half-open leaf interval covered by an internal node


@dataclass(frozen=True)
class AlgorithmVariant:
    id: str
    tree: object
    kernel_order: tuple[Span, ...]
    cost: int

    @property
    def flops(self) -> int:
        return 2 * self.cost

    def parenthesization(self, names: Sequence[str] | None = None) -> str:
        return render_tree(self.tree, names)

    def kernels(self, names: Sequence[str] | None = None) -> list[str]:
        """Products in execution order, e.g. ``['AB', 'CD', '(AB)(CD)']``."""
        return [render_tree(_subtree(self.tree, span), names, top=True) for span in self.kernel_order]


def _span(tree) -> Span:
    if isinstance(tree, int):
        return (tree, tree + 1)
    return (_span(tree[0])[0], _span(tree[1])[1])


def _subtree(tree, span: Span):
    if _span(tree) == span:
        return tree
    left, right = tree
    return _subtree(left if span[1] <= _span(left)[1] else right, span)


def render_tree(tree, names: Sequence[str] | None = None, top: bool = True) -> str:
    if isinstance(tree, int):
        return names[tree] if names is not None else string.ascii_uppercase[tree]
    inner = render_tree(tree[0], names, False) + render_tree(tree[1], names, False)
    return inner if top else f"({inner})"


def _trees(lo: int, hi: int) -> Iterator:
    if hi - lo == 1:
        yield lo
        return
    for split in range(lo + 1, hi):
        for left in _trees(lo, split):
            for right in _trees(split, hi):
                yield (left, right)


def _interleavings(a: tuple, b: tuple) -> Iterator[tuple]:
    if not a:
        yield b
        return
    if not b:
        yield a
        return
    for rest in _interleavings(a[1:], b):
        yield (a[0],) + rest
    for rest in _interleavings(a, b[1:]):
        yield (b[0],) + rest


def _topological_orders(tree) -> list[tuple[Span, ...]]:
    """Every order of the internal nodes that computes children before parents."""
    if isinstance(tree, int):
        return [()]
    out = []
    for lo in _topological_orders(tree[0]):
        for ro in _topological_orders(tree[1]):
            for merged in _interleavings(lo, ro):
                out.append(merged + (_span(tree),))
    return out


def tree_cost(tree, dims: Sequence[int]) -> int:
    if isinstance(tree, int):
        return 0
    lo, hi = _span(tree)
    mid = _span(tree[0])[1]
    return tree_cost(tree[0], dims) + tree_cost(tree[1], dims) + dims[lo] * dims[mid] * dims[hi]


def chain_cost(variant: AlgorithmVariant, inst: ChainInstance) -> int:
    """Sum of ``rows * inner * cols`` over every product in the variant."""
    if _span(variant.tree) != (0, inst.length):
        raise ValueError(f"variant {variant.id} does not cover a chain of length {inst.length}")
    return tree_cost(variant.tree, inst.dims)


def enumerate_variants(inst: ChainInstance, max_length: int = MAX_CHAIN_LENGTH) -> list[AlgorithmVariant]:
    """One variant per (parenthesization, kernel order), ids ``alg0..`` by increasing cost.

    Variants of equal cost keep their enumeration order, so the two orders of
    a balanced product stay adjacent.
    """
    if inst.length > max_length:
        raise ChainTooLongError(f"chain of length {inst.length} exceeds the enumeration cap {max_length}")
    raw = []
    for tree in _trees(0, inst.length):
        cost = tree_cost(tree, inst.dims)
        for order in _topological_orders(tree):
            raw.append((cost, tree, order))
    raw.sort(key=lambda item: item[0])
    return [AlgorithmVariant(f"alg{i}", tree, order, cost) for i, (cost, tree, order) in enumerate(raw)]


def count_parenthesizations(variants: Sequence[AlgorithmVariant]) -> int:
    return len({repr(v.tree) for v in variants})


def optimal_cost(dims: Sequence[int]) -> int:
    """Minimum multiply-accumulate cost by the classic interval dynamic program."""
    dims = tuple(dims)
    n = len(dims) - 1

    @lru_cache(maxsize=None)
    def best(i: int, j: int) -> int:
        if j - i == 1:
            return 0
        return min(best(i, s) + best(s, j) + dims[i] * dims[s] * dims[j] for s in range(i + 1, j))

    return best(0, n)


def _relative(values: Sequence[float], what: str) -> list[float]:
    if not values:
        raise ValueError(f"no {what} given")
    if any(not v > 0 for v in values):
        raise ValueError(f"{what} must be positive")
    lowest = min(values)
    return [(v - lowest) / lowest for v in values]


def relative_flops(costs: Sequence[float]) -> list[float]:
    """``(F_i - F_min) / F_min`` for every FLOP count."""
    return _relative(costs, "FLOP counts")


def relative_time(times: Sequence[float]) -> list[float]:
    """``(T_i - T_min) / T_min`` for every execution time."""
    return _relative(times, "execution times")


def shortlist(
    flops: Mapping[AlgId, int],
    single_run_times: Mapping[AlgId, float],
    rt_threshold: float = DEFAULT_RT_THRESHOLD,
) -> list[AlgId]:
    """Candidates worth measuring: all minimum-FLOP algorithms, plus any whose
    single-run relative time is below ``rt_threshold``. Input order is kept."""
    ids = list(flops)
    missing = [a for a in ids if a not in single_run_times]
    if missing:
        raise ValueError(f"no single-run time for {missing}")
    fmin = min(flops[a] for a in ids)
    rt = dict(zip(ids, relative_time([single_run_times[a] for a in ids])))
    return [a for a in ids if flops[a] == fmin or rt[a] < rt_threshold]
