"""Small numeric and RNG helpers shared across modules."""

import numpy as np


class ConfigError(ValueError):
    """Invalid configuration; the message names the offending table/field."""


class RunError(RuntimeError):
    """A simulation failed at runtime (e.g. epidemic seeding never took off)."""


def rng_for(seed, *key):
    """Independent generator derived from an integer seed and a stream key.

    The key tuple keeps subsystem draws decoupled: consuming more random
    numbers in one stream never shifts another.
    """
    return np.random.default_rng(np.random.SeedSequence([int(seed), *map(int, key)]))


def stochastic_round(values, rng):
    """Round to integers so that the expected value is preserved exactly."""
    values = np.asarray(values, dtype=float)
    lo = np.floor(values)
    frac = values - lo
    out = lo + (rng.random(values.shape) < frac)
    return out.astype(np.int64)


def exact_complement_split(total, fraction):
    """Split ``total`` into ``fraction*total`` and the remainder so the two
    parts sum back to ``total`` with no floating-point residue.

    A single subtraction can leave one-ulp mismatches; re-deriving the first
    part from the stored remainder removes them.
    """
    total = np.asarray(total, dtype=float)
    part = fraction * total
    rest = total - part
    part = total - rest
    for _ in range(3):
        bad = part + rest != total
        if not bad.any():
            return part, rest
        rest = np.where(bad, total - part, rest)
        part = np.where(bad, total - rest, part)
    raise FloatingPointError("could not build an exact complement split")


def group_pairs(codes):
    """All ordered index pairs (a, b), a != b, within equal-valued groups.

    ``codes`` is a 1-d integer array; rows sharing a value form a group and
    every directed pair inside each group is returned as two index arrays.
    Runs fully vectorized: total output size is sum of n_g * (n_g - 1).
    """
    codes = np.asarray(codes)
    order = np.argsort(codes, kind="stable")
    sorted_codes = codes[order]
    boundaries = np.flatnonzero(np.diff(sorted_codes)) + 1
    starts = np.concatenate(([0], boundaries))
    ends = np.concatenate((boundaries, [len(codes)]))
    sizes = ends - starts

    per_group = sizes * (sizes - 1)
    total = int(per_group.sum())
    if total == 0:
        empty = np.empty(0, dtype=np.int64)
        return empty, empty

    group_of = np.repeat(np.arange(len(sizes)), per_group)
    offsets = np.concatenate(([0], np.cumsum(per_group)))[group_of]
    local = np.arange(total) - offsets           # 0 .. n_g*(n_g-1)-1 within group
    n = sizes[group_of]
    a = local // (n - 1)
    b = local % (n - 1)
    b = b + (b >= a)                              # skip the diagonal
    left = order[starts[group_of] + a]
    right = order[starts[group_of] + b]
    return left, right
