"""Independent cross-checks for counting and enumeration.

Everything here is reimplemented from first principles and imports
nothing from the package, so tests compare two code paths that share no
helpers. Letters are plain integers 0..k-1; the value permutation swaps
the outer letters and fixes the middle one when k is odd, matching the
stable/unstable/middle root roles of the dynamics.

Two strategies:

* orbit_count: fixed-point average over the group (no enumeration),
  summing k**(number of position cycles) per element, with the twisted
  elements contributing per-cycle factors k (even cycle) or the number
  of swap-fixed letters (odd cycle).
* class_count: exhaustive canonicalization of all k**n words, optionally
  restricted to aperiodic words.
"""

from __future__ import annotations

import itertools


def swap_map(k: int) -> tuple[int, ...]:
    if k == 2:
        return (1, 0)
    if k == 3:
        return (2, 1, 0)
    raise ValueError(f"unsupported letter count {k}")


def position_maps(n: int, reflects: bool) -> list[tuple[int, ...]]:
    """Index maps i -> g(i) for the rotations, plus reflections if asked."""
    maps = [tuple((i + shift) % n for i in range(n)) for shift in range(n)]
    if reflects:
        maps += [tuple((shift - i) % n for i in range(n)) for shift in range(n)]
    return maps


def cycle_lengths(perm: tuple[int, ...]) -> list[int]:
    seen = [False] * len(perm)
    out = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        out.append(length)
    return out


def orbit_count(n: int, k: int, reflects: bool, twisted: bool) -> int:
    """Class count via the fixed-point average (Cauchy-Frobenius)."""
    swap_fixed = k % 2  # letters with swap(x) == x
    total = 0
    elements = 0
    for perm in position_maps(n, reflects):
        cycles = cycle_lengths(perm)
        total += k ** len(cycles)
        elements += 1
        if twisted:
            fixed = 1
            for length in cycles:
                fixed *= k if length % 2 == 0 else swap_fixed
            total += fixed
            elements += 1
    classes, remainder = divmod(total, elements)
    assert remainder == 0, "fixed-point sum must divide by the group order"
    return classes


def primitive_period(word: tuple[int, ...]) -> int:
    n = len(word)
    for d in range(1, n + 1):
        if n % d == 0 and word == word[d:] + word[:d]:
            return d
    return n


def class_count(
    n: int, k: int, reflects: bool, twisted: bool, aperiodic_only: bool = False
) -> int:
    """Class count by exhaustive enumeration and orbit marking."""
    swap = swap_map(k)
    maps = position_maps(n, reflects)
    seen: set[tuple[int, ...]] = set()
    count = 0
    for word in itertools.product(range(k), repeat=n):
        if word in seen:
            continue
        if aperiodic_only and primitive_period(word) != n:
            continue
        count += 1
        for perm in maps:
            image = tuple(word[perm[i]] for i in range(n))
            seen.add(image)
            if twisted:
                seen.add(tuple(swap[x] for x in image))
    return count
