"""Words over {0,1} and {0,a,1}, the symmetry groups acting on them, and
brute-force orbit enumeration.

A word of length n labels a candidate stationary pattern on an n-cycle:
letter 0 or 1 pins a vertex to a stable root of the cubic nonlinearity,
letter a to the unstable middle root. Four groups act on words:

* rotations alone (cyclic),
* rotations and the reversal of vertex order (dihedral),
* either of those combined with the value swap 0 <-> 1 that fixes a
  (the "pi" variants).

Letters are stored as small ints chosen so that tuple comparison is the
global word order with 0 < a < 1. Canonical representatives are minima
under that order, so enumeration output is deterministic.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from enum import Enum

from .numtheory import divisors

ZERO = 0
MID = 1
ONE = 2

A2 = "a2"
A3 = "a3"

_ALPHABET_LETTERS = {A2: (ZERO, ONE), A3: (ZERO, MID, ONE)}
_CHAR_OF = {ZERO: "0", MID: "a", ONE: "1"}
_LETTER_OF = {"0": ZERO, "a": MID, "1": ONE}
_SWAP = {ZERO: ONE, MID: MID, ONE: ZERO}

# Refuse brute-force enumeration beyond ~2^30 words unless overridden.
_ENUMERATION_BITS = 30


def _check_alphabet(alphabet: str) -> None:
    if alphabet not in _ALPHABET_LETTERS:
        raise ValueError(f"unknown alphabet {alphabet!r}; expected {A2!r} or {A3!r}")


class GroupKind(Enum):
    """Symmetry group selector; value strings double as CLI tokens."""

    CYCLIC = "c"
    DIHEDRAL = "d"
    CYCLIC_PI = "cpi"
    DIHEDRAL_PI = "dpi"

    @property
    def reflects(self) -> bool:
        return self in (GroupKind.DIHEDRAL, GroupKind.DIHEDRAL_PI)

    @property
    def swaps_values(self) -> bool:
        return self in (GroupKind.CYCLIC_PI, GroupKind.DIHEDRAL_PI)

    def order(self, n: int) -> int:
        """Size of the group acting on length-n words."""
        if n < 1:
            raise ValueError(f"word length must be positive, got {n}")
        return n * (2 if self.reflects else 1) * (2 if self.swaps_values else 1)


@dataclass(frozen=True, order=True)
class Word:
    """Immutable word; compares by letters, so sorting is the global order."""

    letters: tuple[int, ...]
    alphabet: str = A3

    def __post_init__(self):
        _check_alphabet(self.alphabet)
        if len(self.letters) < 1:
            raise ValueError("words must have at least one letter")
        allowed = _ALPHABET_LETTERS[self.alphabet]
        for x in self.letters:
            if x not in allowed:
                raise ValueError(
                    f"letter {x!r} not in alphabet {self.alphabet!r}"
                )

    @classmethod
    def parse(cls, text: str, alphabet: str = A3) -> "Word":
        try:
            letters = tuple(_LETTER_OF[ch] for ch in text)
        except KeyError as exc:
            raise ValueError(f"bad letter {exc.args[0]!r} in word {text!r}") from None
        return cls(letters, alphabet)

    @property
    def n(self) -> int:
        return len(self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return "".join(_CHAR_OF[x] for x in self.letters)


def rotate(w: Word, steps: int = 1) -> Word:
    """Cyclic left shift: letter i of the result is letter i+steps of w."""
    n = len(w.letters)
    k = steps % n
    return Word(w.letters[k:] + w.letters[:k], w.alphabet)


def reflect(w: Word) -> Word:
    """Reverse the vertex order."""
    return Word(w.letters[::-1], w.alphabet)


def permute_values(w: Word) -> Word:
    """Swap letters 0 and 1, fix a."""
    return Word(tuple(_SWAP[x] for x in w.letters), w.alphabet)


def primitive_period(w: Word) -> int:
    """Smallest m dividing len(w) with w equal to its length-m prefix repeated."""
    return _primitive_period(w.letters)


def _primitive_period(t: tuple[int, ...]) -> int:
    n = len(t)
    for m in divisors(n):
        if t[:m] * (n // m) == t:
            return m
    return n


def _images(t: tuple[int, ...], group: GroupKind):
    """Yield every image of t under the group (|G| items, repeats possible)."""
    n = len(t)
    variants = [t]
    if group.reflects:
        variants.append(t[::-1])
    if group.swaps_values:
        variants += [tuple(_SWAP[x] for x in v) for v in variants]
    for v in variants:
        for k in range(n):
            yield v[k:] + v[:k]


def canonical(w: Word, group: GroupKind) -> Word:
    """Smallest image of w under the group, in the global word order."""
    return Word(min(_images(w.letters, group)), w.alphabet)


def orbit(w: Word, group: GroupKind) -> frozenset[Word]:
    """All distinct images of w under the group."""
    return frozenset(Word(t, w.alphabet) for t in _images(w.letters, group))


@dataclass(frozen=True)
class OrbitClass:
    representative: Word
    members: frozenset[Word]

    @property
    def size(self) -> int:
        return len(self.members)


def enumerate_orbits(
    n: int,
    alphabet: str = A3,
    group: GroupKind = GroupKind.DIHEDRAL_PI,
    lyndon_only: bool = False,
    allow_large: bool = False,
) -> list[OrbitClass]:
    """Partition words of length n into group orbits by exhaustive enumeration.

    With lyndon_only, only aperiodic words (primitive period n) are listed;
    the group actions preserve primitive period, so those classes are a
    sub-partition. Classes come back sorted by representative.

    Exhaustive enumeration walks k^n words, so lengths with
    n*log2(k) > 30 are refused unless allow_large is set.
    """
    if n < 1:
        raise ValueError(f"word length must be positive, got {n}")
    _check_alphabet(alphabet)
    letters = _ALPHABET_LETTERS[alphabet]
    if n * math.log2(len(letters)) > _ENUMERATION_BITS and not allow_large:
        raise ValueError(
            f"enumerating {len(letters)}^{n} words exceeds the size guard; "
            "pass allow_large=True to force"
        )
    buckets: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
    for t in itertools.product(letters, repeat=n):
        if lyndon_only and _primitive_period(t) != n:
            continue
        rep = min(_images(t, group))
        buckets.setdefault(rep, []).append(t)
    classes = [
        OrbitClass(
            representative=Word(rep, alphabet),
            members=frozenset(Word(t, alphabet) for t in members),
        )
        for rep, members in buckets.items()
    ]
    classes.sort(key=lambda c: c.representative.letters)
    return classes


def representatives(
    n: int,
    alphabet: str = A3,
    group: GroupKind = GroupKind.DIHEDRAL_PI,
    lyndon_only: bool = True,
    allow_large: bool = False,
) -> list[Word]:
    """Sorted canonical representatives, one per orbit class."""
    return [
        c.representative
        for c in enumerate_orbits(
            n, alphabet, group, lyndon_only=lyndon_only, allow_large=allow_large
        )
    ]
