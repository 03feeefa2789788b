"""String pointer rules, their dual counterparts, reductions, and the
fiber of strings sharing a reduction graph.

The three reducing rules delete pointers:

    snr_p(u1 p p u2)             = u1 u2            adjacent equal pair
    spr_p(u1 p u2 p' u3)         = u1 inv(u2) u3    p positive (p' = bar)
    sdr_p,q(u1 p u2 q u3 p u4 q u5) = u1 u4 u3 u2 u5   p,q negative,
                                                       overlapping

Every nonempty legal string admits one of them, so greedy search always
reaches the empty string.

The dual rules keep pointers in place and preserve the reduction graph
up to isomorphism:

    dspr_p(u1 p u2 p u3)            = u1 p inv(u2) p u3      p negative
    dsdr_p,q(u1 p u2 q u3 p' u4 q' u5) = u1 p u4 q u3 p' u2 q' u5
                                          p,q positive, overlapping

Both are self-inverse.  Two legal strings have isomorphic reduction
graphs exactly when a sequence of dual rules maps one into the
equivalence class of the other, which makes breadth-first search over
canonical representatives an exhaustive fiber enumerator, and graph
canonical forms a polynomial decision procedure for the same relation.

Rules are named by unbarred symbols; the barred variant actually
matched is determined by the string.  For the two-symbol rules the
first-named symbol is the one whose first occurrence comes first.
Serialized form: "snr(2) spr(3) dsdr(2,3)".
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from functools import reduce as _fold
from itertools import combinations
from typing import Iterable

from .redgraph import build_reduction_graph, canonical_form
from .strings import (
    LegalString,
    canonical_equiv_rep,
    domain,
    inverse,
    is_positive,
    overlap,
    p_interval,
)


class NotApplicableError(ValueError):
    """The rule does not match the string."""


class OrbitLimitError(RuntimeError):
    """Orbit enumeration hit its size budget before closing."""


_STRING_KINDS = {"snr": 1, "spr": 1, "sdr": 2}
_DUAL_KINDS = {"dspr": 1, "dsdr": 2}


def _check_rule(kind: str, pointers: tuple[int, ...], kinds: dict[str, int]) -> None:
    if kind not in kinds:
        raise ValueError(f"unknown rule kind {kind!r}")
    if len(pointers) != kinds[kind]:
        raise ValueError(f"{kind} takes {kinds[kind]} pointer(s), got {pointers!r}")
    if len(set(pointers)) != len(pointers):
        raise ValueError(f"{kind} needs distinct pointers")
    if any(not isinstance(p, int) or isinstance(p, bool) or p < 2 for p in pointers):
        raise ValueError(f"bad pointers {pointers!r}")


@dataclass(frozen=True)
class StringRule:
    """A reducing rule instance: snr(p), spr(p) or sdr(p,q)."""

    kind: str
    pointers: tuple[int, ...]

    def __post_init__(self) -> None:
        _check_rule(self.kind, self.pointers, _STRING_KINDS)

    @property
    def dom(self) -> frozenset[int]:
        return frozenset(self.pointers)

    def __str__(self) -> str:
        return f"{self.kind}({','.join(str(p) for p in self.pointers)})"


@dataclass(frozen=True)
class DualRule:
    """A non-deleting rule instance: dspr(p) or dsdr(p,q)."""

    kind: str
    pointers: tuple[int, ...]

    def __post_init__(self) -> None:
        _check_rule(self.kind, self.pointers, _DUAL_KINDS)

    @property
    def dom(self) -> frozenset[int]:
        return frozenset(self.pointers)

    def __str__(self) -> str:
        return f"{self.kind}({','.join(str(p) for p in self.pointers)})"


@dataclass(frozen=True)
class RuleSequence:
    """An ordered sequence of rule instances, applied left to right."""

    rules: tuple[StringRule | DualRule, ...]

    @property
    def dom(self) -> frozenset[int]:
        return frozenset().union(*(r.dom for r in self.rules)) if self.rules else frozenset()

    @property
    def odom(self) -> frozenset[int]:
        # symbols used an odd number of times; equals dom for reduced sequences
        return _fold(lambda a, b: a ^ b, (r.dom for r in self.rules), frozenset())

    @property
    def is_reduced(self) -> bool:
        return sum(len(r.dom) for r in self.rules) == len(self.dom)

    def __iter__(self):
        return iter(self.rules)

    def __str__(self) -> str:
        return " ".join(str(r) for r in self.rules)


_RULE_RE = re.compile(r"(snr|spr|sdr|dspr|dsdr)\((\d+)(?:,(\d+))?\)\Z")


def parse_rule(text: str) -> StringRule | DualRule:
    m = _RULE_RE.match(text.strip())
    if not m:
        raise ValueError(f"bad rule text {text!r}")
    kind = m.group(1)
    pointers = tuple(int(g) for g in m.groups()[1:] if g is not None)
    cls = StringRule if kind in _STRING_KINDS else DualRule
    return cls(kind=kind, pointers=pointers)


def format_rule_sequence(rules: Iterable[StringRule | DualRule]) -> str:
    return " ".join(str(r) for r in rules)


def parse_rule_sequence(text: str) -> RuleSequence:
    return RuleSequence(tuple(parse_rule(tok) for tok in text.split()))


def _positions(u: LegalString, p: int) -> tuple[int, int]:
    try:
        i, j = p_interval(u, p)
    except ValueError as exc:
        raise NotApplicableError(str(exc)) from exc
    return i - 1, j - 1


def _negative(u: LegalString, p: int) -> bool:
    return not is_positive(u, p)


def apply_snr(u: LegalString, p: int) -> LegalString:
    """Delete an adjacent equal-signed pair p p (or both barred)."""
    i, j = _positions(u, p)
    if j != i + 1 or u.letters[i] != u.letters[j]:
        raise NotApplicableError(f"snr({p}): occurrences not adjacent and equal-signed")
    return LegalString(u.letters[:i] + u.letters[j + 1 :])


def apply_spr(u: LegalString, p: int) -> LegalString:
    """Delete a positive pair, inverting the letters in between."""
    i, j = _positions(u, p)
    if u.letters[i].barred == u.letters[j].barred:
        raise NotApplicableError(f"spr({p}): {p} is not positive")
    return LegalString(u.letters[:i] + inverse(u.letters[i + 1 : j]) + u.letters[j + 1 :])


def _double_positions(u: LegalString, p: int, q: int) -> tuple[int, int, int, int]:
    # i1 < j1 < i2 < j2 with p at i1,i2 and q at j1,j2
    if p == q:
        raise NotApplicableError("the two pointers must be distinct")
    i1, i2 = _positions(u, p)
    j1, j2 = _positions(u, q)
    if not overlap(u, p, q):
        raise NotApplicableError(f"{p} and {q} do not overlap")
    if i1 > j1:
        raise NotApplicableError(f"first occurrence of {p} must precede that of {q}")
    return i1, j1, i2, j2


def apply_sdr(u: LegalString, p: int, q: int) -> LegalString:
    """Delete two overlapping negative pairs, exchanging two segments."""
    i1, j1, i2, j2 = _double_positions(u, p, q)
    if not (_negative(u, p) and _negative(u, q)):
        raise NotApplicableError(f"sdr({p},{q}): both pointers must be negative")
    x = u.letters
    return LegalString(x[:i1] + x[i2 + 1 : j2] + x[j1 + 1 : i2] + x[i1 + 1 : j1] + x[j2 + 1 :])


def apply_dspr(u: LegalString, p: int) -> LegalString:
    """Invert the letters between a negative pair, keeping the pair."""
    i, j = _positions(u, p)
    if u.letters[i].barred != u.letters[j].barred:
        raise NotApplicableError(f"dspr({p}): {p} is not negative")
    x = u.letters
    return LegalString(x[: i + 1] + inverse(x[i + 1 : j]) + x[j:])


def apply_dsdr(u: LegalString, p: int, q: int) -> LegalString:
    """Exchange the segments between two overlapping positive pairs."""
    i1, j1, i2, j2 = _double_positions(u, p, q)
    if not (is_positive(u, p) and is_positive(u, q)):
        raise NotApplicableError(f"dsdr({p},{q}): both pointers must be positive")
    x = u.letters
    return LegalString(
        x[: i1 + 1]
        + x[i2 + 1 : j2]
        + (x[j1],)
        + x[j1 + 1 : i2]
        + (x[i2],)
        + x[i1 + 1 : j1]
        + (x[j2],)
        + x[j2 + 1 :]
    )


def apply_rule(u: LegalString, rule: StringRule | DualRule) -> LegalString:
    ops = {
        "snr": apply_snr,
        "spr": apply_spr,
        "sdr": apply_sdr,
        "dspr": apply_dspr,
        "dsdr": apply_dsdr,
    }
    return ops[rule.kind](u, *rule.pointers)


def apply_sequence(u: LegalString, rules: Iterable[StringRule | DualRule]) -> LegalString:
    for rule in rules:
        u = apply_rule(u, rule)
    return u


def _first_occurrence_order(u: LegalString, p: int, q: int) -> tuple[int, int]:
    return (p, q) if p_interval(u, p)[0] < p_interval(u, q)[0] else (q, p)


def _next_reduction_rule(u: LegalString) -> StringRule:
    adjacent = sorted(
        u.letters[i].symbol
        for i in range(len(u) - 1)
        if u.letters[i] == u.letters[i + 1]
    )
    if adjacent:
        return StringRule("snr", (adjacent[0],))
    positive = sorted(p for p in domain(u) if is_positive(u, p))
    if positive:
        return StringRule("spr", (positive[0],))
    for p, q in combinations(sorted(domain(u)), 2):
        if overlap(u, p, q):
            return StringRule("sdr", _first_occurrence_order(u, p, q))
    raise AssertionError(f"no rule applicable to nonempty legal string {u}")


def successful_reduction_search(u: LegalString) -> RuleSequence:
    """A rule sequence reducing u to the empty string.

    Deterministic greedy: snr before spr before sdr, smallest symbols
    first.  Every nonempty legal string admits some rule (an adjacent
    equal pair, a positive symbol, or, failing both, an innermost
    interval forces an overlapping negative pair), and every rule
    shortens the string, so the search never backtracks.
    """
    out = []
    while len(u):
        rule = _next_reduction_rule(u)
        out.append(rule)
        u = apply_rule(u, rule)
    return RuleSequence(tuple(out))


def applicable_dual_rules(u: LegalString) -> list[DualRule]:
    """Every dual rule instance matching u, deterministically ordered."""
    out = [DualRule("dspr", (p,)) for p in sorted(domain(u)) if _negative(u, p)]
    for p, q in combinations(sorted(domain(u)), 2):
        if is_positive(u, p) and is_positive(u, q) and overlap(u, p, q):
            out.append(DualRule("dsdr", _first_occurrence_order(u, p, q)))
    return out


def orbit(u: LegalString, max_size: int = 10000) -> frozenset[LegalString]:
    """All canonical representatives reachable from u by dual rules.

    Breadth-first closure; every frontier string is canonicalized under
    equivalence before deduplication, since re-signing alone never ends
    the search otherwise.  Raises OrbitLimitError when the orbit would
    exceed max_size members.
    """
    start = canonical_equiv_rep(u)
    seen = {start}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for rule in applicable_dual_rules(v):
            w = canonical_equiv_rep(apply_rule(v, rule))
            if w not in seen:
                if len(seen) >= max_size:
                    raise OrbitLimitError(f"orbit exceeds {max_size} members")
                seen.add(w)
                queue.append(w)
    return frozenset(seen)


def dual_equivalent(u: LegalString, v: LegalString) -> bool:
    """Whether u and v share a reduction graph up to isomorphism.

    Decided through graph canonical forms; the orbit enumeration above
    reaches the same verdict but takes exponential time.
    """
    return canonical_form(build_reduction_graph(u)) == canonical_form(build_reduction_graph(v))


__all__ = [
    "DualRule",
    "NotApplicableError",
    "OrbitLimitError",
    "RuleSequence",
    "StringRule",
    "applicable_dual_rules",
    "apply_dsdr",
    "apply_dspr",
    "apply_rule",
    "apply_sdr",
    "apply_sequence",
    "apply_snr",
    "apply_spr",
    "dual_equivalent",
    "format_rule_sequence",
    "orbit",
    "parse_rule",
    "parse_rule_sequence",
    "successful_reduction_search",
]
