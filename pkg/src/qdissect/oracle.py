"""Brute-force partition counters, independent of the series engine.

These never touch :mod:`qdissect.series`; they count colored partitions with
a plain knapsack DP over Python integers and exist to cross-check it.
"""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class ColoredPartitionSpec:
    """Partitions with ``colors_all_parts`` unrestricted colors, plus, for each
    ``(t, count)`` in ``colors_multiples``, ``count`` colors allowed only on
    parts divisible by ``t``."""

    colors_all_parts: int = 1
    colors_multiples: tuple[tuple[int, int], ...] = field(default=())

    def __post_init__(self):
        if self.colors_all_parts < 0:
            raise ValueError("color count must be >= 0")
        for t, c in self.colors_multiples:
            if t < 1 or c < 0:
                raise ValueError(f"bad restricted color group ({t}, {c})")


P33_SPEC = ColoredPartitionSpec(3, ((3, 3),))
ORDINARY = ColoredPartitionSpec(1)
CUBIC = ColoredPartitionSpec(1, ((2, 1),))


def count_dp(spec: ColoredPartitionSpec, n_max: int) -> list[int]:
    """Counts ``c(0..n_max)`` of colored partitions described by ``spec``."""
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    groups = [(1, spec.colors_all_parts)] + list(spec.colors_multiples)
    counts = [1] + [0] * n_max
    for part in range(1, n_max + 1):
        for t, colors in groups:
            if part % t:
                continue
            # one unbounded-knapsack pass per (part size, color) generator
            for _ in range(colors):
                for n in range(part, n_max + 1):
                    counts[n] += counts[n - part]
    return counts


def convolution_oracle(n_max: int) -> list[int]:
    """p_{3,3}(n) = sum_k p_3(n - 3k) p_3(k), with p_3 the 3-colored counts."""
    p3 = count_dp(ColoredPartitionSpec(3), n_max)
    return [sum(p3[n - 3 * k] * p3[k] for k in range(n // 3 + 1)) for n in range(n_max + 1)]


ORDINARY_PARTITIONS = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77, 101, 135, 176, 231, 297, 385, 490]
