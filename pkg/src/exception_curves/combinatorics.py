"""Sign sequences, curve-defining pairs and their symmetry classes.

A pair ``(s, t)`` of equal-length words over {-1, +1} with the same number
of +1 entries defines the exception curve ``c_{s,t}``. Two symmetries act on
pairs without changing the question "does the curve meet R":

* SWAP ``(s, t) -> (t, s)`` negates the curve polynomial,
* FLIP ``(s, t) -> (-s, -t)`` reflects the curve across the diagonal.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Sequence, Union

from .errors import (
    DegenerateCurve,
    EqualSequences,
    LengthMismatch,
    LimitExceeded,
    TooShort,
    UnequalOneCounts,
    ValidationError,
)

DEFAULT_MAX_N = 12

SeqLike = Union["SignSeq", str, Sequence[int]]


@dataclass(frozen=True, order=True)
class SignSeq:
    """A finite word over {-1, +1} with its prefix counts.

    ``prefix_ones[k-1]`` is the number of +1 among the first k entries,
    ``prefix_minus[k-1]`` the number of -1.
    """

    entries: tuple[int, ...]
    prefix_ones: tuple[int, ...] = field(init=False, compare=False, repr=False)
    prefix_minus: tuple[int, ...] = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        entries = tuple(int(e) for e in self.entries)
        if not entries:
            raise ValidationError("sign sequence must have length >= 1")
        if any(e not in (-1, 1) for e in entries):
            raise ValidationError(f"entries must be -1 or +1, got {self.entries!r}")
        ones = tuple(itertools.accumulate(1 if e == 1 else 0 for e in entries))
        minus = tuple(k - o for k, o in enumerate(ones, start=1))
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "prefix_ones", ones)
        object.__setattr__(self, "prefix_minus", minus)

    @classmethod
    def parse(cls, text: str) -> "SignSeq":
        """Parse the compact form, one ``+``/``-`` character per entry."""
        text = text.strip()
        if not text or any(c not in "+-" for c in text):
            raise ValidationError(f"expected a string over '+-', got {text!r}")
        return cls(tuple(1 if c == "+" else -1 for c in text))

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, k):
        return self.entries[k]

    def __neg__(self):
        return SignSeq(tuple(-e for e in self.entries))

    def __str__(self):
        return "".join("+" if e == 1 else "-" for e in self.entries)

    @property
    def n(self) -> int:
        return len(self.entries)

    @property
    def ones(self) -> int:
        return self.prefix_ones[-1]


def as_signseq(seq: SeqLike) -> SignSeq:
    if isinstance(seq, SignSeq):
        return seq
    if isinstance(seq, str):
        return SignSeq.parse(seq)
    return SignSeq(tuple(seq))


def prefix_counts(seq: SeqLike) -> tuple[tuple[int, ...], tuple[int, ...]]:
    seq = as_signseq(seq)
    return seq.prefix_ones, seq.prefix_minus


@dataclass(frozen=True, order=True)
class SeqPair:
    """A validated pair defining a (non-degenerate) exception curve.

    Construct through :func:`validate_pair`; the constructor checks the same
    conditions so that every instance is valid.
    """

    s: SignSeq
    t: SignSeq

    def __post_init__(self):
        s, t = as_signseq(self.s), as_signseq(self.t)
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "t", t)
        if len(s) != len(t):
            raise LengthMismatch(f"lengths differ: {len(s)} vs {len(t)}")
        if len(s) < 3:
            raise TooShort(f"need n >= 3, got n={len(s)}")
        if s == t:
            raise EqualSequences(f"s and t are equal ({s})")
        if s.ones != t.ones:
            raise UnequalOneCounts(f"+1 counts differ: {s.ones} vs {t.ones}")
        from .polynomial import build_curve_poly

        if build_curve_poly(self).is_zero():
            raise DegenerateCurve(f"curve polynomial of ({s}, {t}) vanishes identically")

    @property
    def n(self) -> int:
        return len(self.s)

    def key(self) -> tuple[int, ...]:
        """Lexicographic key: s followed by t, with -1 < +1."""
        return self.s.entries + self.t.entries

    def __str__(self):
        return f"({self.s}, {self.t})"


def validate_pair(s: SeqLike, t: SeqLike) -> SeqPair:
    return SeqPair(as_signseq(s), as_signseq(t))


def swap(pair: SeqPair) -> SeqPair:
    return SeqPair(pair.t, pair.s)


def flip(pair: SeqPair) -> SeqPair:
    return SeqPair(-pair.s, -pair.t)


def orbit(pair: SeqPair) -> list[SeqPair]:
    """The four images of ``pair`` under {id, SWAP, FLIP, SWAP o FLIP}."""
    flipped = flip(pair)
    return [pair, swap(pair), flipped, swap(flipped)]


def canonical_form(pair: SeqPair) -> SeqPair:
    return min(orbit(pair), key=SeqPair.key)


def _raw_key_canonical(s: tuple[int, ...], t: tuple[int, ...]) -> bool:
    ns = tuple(-e for e in s)
    nt = tuple(-e for e in t)
    key = s + t
    return key <= t + s and key <= ns + nt and key <= nt + ns


@dataclass(frozen=True)
class EnumerationStats:
    n: int
    ordered_pairs: int
    canonical_pairs: int
    degenerate: int


def _check_n(n: int, max_n: int) -> None:
    if n < 3:
        raise TooShort(f"need n >= 3, got n={n}")
    if n > max_n:
        raise LimitExceeded(f"n={n} exceeds the configured maximum {max_n}")


def _words_by_ones(n: int) -> dict[int, list[tuple[int, ...]]]:
    groups: dict[int, list[tuple[int, ...]]] = {}
    for w in itertools.product((-1, 1), repeat=n):
        groups.setdefault(w.count(1), []).append(w)
    return groups


def enumerate_pairs_with_stats(
    n: int, max_n: int = DEFAULT_MAX_N
) -> tuple[list[SeqPair], EnumerationStats]:
    """All canonical pairs of length ``n``, sorted, plus orbit bookkeeping.

    ``ordered_pairs`` counts every valid ordered (s, t) before the symmetry
    quotient; ``degenerate`` counts canonical classes whose polynomial is zero.
    """
    _check_n(n, max_n)
    pairs: list[SeqPair] = []
    degenerate = 0
    ordered = 0
    for words in _words_by_ones(n).values():
        for s in words:
            for t in words:
                if s == t:
                    continue
                ordered += 1
                if not _raw_key_canonical(s, t):
                    continue
                try:
                    pairs.append(SeqPair(SignSeq(s), SignSeq(t)))
                except DegenerateCurve:
                    degenerate += 1
    pairs.sort(key=SeqPair.key)
    return pairs, EnumerationStats(n, ordered, len(pairs), degenerate)


def enumerate_pairs(n: int, max_n: int = DEFAULT_MAX_N) -> list[SeqPair]:
    return enumerate_pairs_with_stats(n, max_n)[0]


def count_ordered_pairs(n: int) -> int:
    """Number of ordered (s, t) with s != t and equal +1 counts."""
    return sum(comb(n, k) ** 2 - comb(n, k) for k in range(n + 1))


def iter_valid_pairs(n: int) -> Iterable[SeqPair]:
    """Every valid ordered pair of length n (no symmetry quotient)."""
    for words in _words_by_ones(n).values():
        for s in words:
            for t in words:
                if s != t:
                    yield SeqPair(SignSeq(s), SignSeq(t))
