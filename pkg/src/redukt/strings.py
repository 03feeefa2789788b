"""Legal strings over the barred pointer alphabet.

A pointer is an integer symbol >= 2, optionally barred.  The bar is an
involution, so barring twice gives back the original pointer.  A legal
string is a sequence of pointers in which every occurring symbol appears
exactly twice, counting barred and unbarred occurrences together.  The
empty string is legal.

Text format: tokens separated by whitespace, a bar rendered as a leading
'-'.  For example "2 -7 4 7 3 5 3 -4 2 6 5 6" is a legal string over the
symbols 2..7.

A symbol is positive in a string when its two occurrences are barred
differently, negative when they carry the same bar state.  Two legal
strings are equivalent when one can be turned into the other by
re-signing symbols (barring or unbarring both occurrences of a symbol at
once, which preserves positivity); equivalently, when their unbarred
projections coincide and they have the same set of positive symbols.

Everything in this module is immutable and all operations are pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator


class ParseError(ValueError):
    """A token is not an optionally '-'-prefixed integer >= 2."""


class LegalityError(ValueError):
    """Some symbol does not occur exactly twice."""


@dataclass(frozen=True, order=True)
class Pointer:
    """One letter of a legal string: an unbarred symbol plus a bar flag."""

    symbol: int
    barred: bool = False

    def __post_init__(self) -> None:
        if not isinstance(self.symbol, int) or isinstance(self.symbol, bool) or self.symbol < 2:
            raise ParseError(f"pointer symbol must be an integer >= 2, got {self.symbol!r}")

    def bar(self) -> "Pointer":
        return Pointer(self.symbol, not self.barred)

    def __str__(self) -> str:
        return f"-{self.symbol}" if self.barred else str(self.symbol)


@dataclass(frozen=True)
class LegalString:
    """An immutable sequence of pointers with every symbol occurring twice."""

    letters: tuple[Pointer, ...]

    def __post_init__(self) -> None:
        counts: dict[int, int] = {}
        for x in self.letters:
            counts[x.symbol] = counts.get(x.symbol, 0) + 1
        bad = sorted(p for p, c in counts.items() if c != 2)
        if bad:
            raise LegalityError(f"symbols not occurring exactly twice: {bad}")

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Pointer]:
        return iter(self.letters)

    def __str__(self) -> str:
        return format_legal_string(self)


def legal_string(letters: Iterable[Pointer]) -> LegalString:
    return LegalString(tuple(letters))


EMPTY = LegalString(())


def parse_legal_string(text: str) -> LegalString:
    """Parse whitespace-separated tokens into a legal string.

    Raises ParseError on a malformed token and LegalityError when some
    symbol does not occur exactly twice.
    """
    letters = []
    for token in text.split():
        body = token[1:] if token.startswith("-") else token
        # reject '+5', '07' is fine, '2.0'/'1'/'-1' are not
        if not body.isdigit():
            raise ParseError(f"bad token {token!r}")
        value = int(body)
        if value < 2:
            raise ParseError(f"bad token {token!r}: symbol must be >= 2")
        letters.append(Pointer(value, token.startswith("-")))
    return LegalString(tuple(letters))


def format_legal_string(u: LegalString) -> str:
    return " ".join(str(x) for x in u.letters)


def domain(u: LegalString) -> frozenset[int]:
    """The set of unbarred symbols occurring in u."""
    return frozenset(x.symbol for x in u.letters)


def _occurrences(u: LegalString, p: int) -> tuple[int, int]:
    # 0-based indices of the two occurrences of symbol p
    hits = [i for i, x in enumerate(u.letters) if x.symbol == p]
    if len(hits) != 2:
        raise ValueError(f"symbol {p} not in domain")
    return hits[0], hits[1]


def is_positive(u: LegalString, p: int) -> bool:
    """True iff exactly one of the two occurrences of p is barred."""
    i, j = _occurrences(u, p)
    return u.letters[i].barred != u.letters[j].barred


def p_interval(u: LegalString, p: int) -> tuple[int, int]:
    """The 1-based positions (i, j), i < j, of the two occurrences of p."""
    i, j = _occurrences(u, p)
    return i + 1, j + 1


def overlap(u: LegalString, p: int, q: int) -> bool:
    """True iff the occurrence pairs of the distinct symbols p, q interleave."""
    if p == q:
        raise ValueError("overlap requires two distinct symbols")
    i1, i2 = _occurrences(u, p)
    j1, j2 = _occurrences(u, q)
    return (i1 < j1 < i2 < j2) or (j1 < i1 < j2 < i2)


def inverse(u):
    """The reversed string with every letter barred.

    Defined on any pointer sequence, not just legal strings, since rule
    applications invert mid-string segments; a LegalString comes back as
    a LegalString, a plain sequence as a tuple.
    """
    if isinstance(u, LegalString):
        return LegalString(tuple(x.bar() for x in reversed(u.letters)))
    return tuple(x.bar() for x in reversed(tuple(u)))


def positive_symbols(u: LegalString) -> frozenset[int]:
    return frozenset(p for p in domain(u) if is_positive(u, p))


def equivalent(u: LegalString, v: LegalString) -> bool:
    """True iff u and v agree in unbarred projection and positive symbols."""
    if tuple(x.symbol for x in u.letters) != tuple(x.symbol for x in v.letters):
        return False
    return positive_symbols(u) == positive_symbols(v)


def canonical_equiv_rep(u: LegalString) -> LegalString:
    """The equivalent string whose first occurrences are all unbarred.

    The second occurrence of a symbol is barred exactly when the symbol
    is positive, so equivalent strings map to the same representative.
    """
    seen: set[int] = set()
    out = []
    for x in u.letters:
        if x.symbol not in seen:
            seen.add(x.symbol)
            out.append(Pointer(x.symbol, False))
        else:
            out.append(Pointer(x.symbol, is_positive(u, x.symbol)))
    return LegalString(tuple(out))
