"""Reduction graphs and their abstractions.

The reduction graph of a legal string u = p_1 ... p_n has vertices
I1, I1', ..., In, In' (two per position) plus two unlabelled endpoint
vertices s and t.  Reality edges follow the linear order of the string:
{s,I1}, {Ii',Ii+1} for 1 <= i <= n-1, and {In',t}.  Desire edges pair up
the two occurrences of every symbol: positions i < j carrying the same
symbol contribute {Ii',Ij} and {Ii,Ij'} when the occurrences are barred
alike, and {Ii,Ij} and {Ii',Ij'} when they are barred oppositely.  Every
vertex of position i is labelled with the unbarred symbol at i.

An abstract reduction graph is any graph of this shape: every label has
exactly four vertices, the reality edges form a perfect matching of all
vertices including s and t, and the desire edges cover every labelled
vertex exactly once with same-label endpoints.  Since each vertex lies
on at most one reality and at most one desire edge, such a graph is a
disjoint union of one alternating s-t path and zero or more alternating
cycles.  The canonical form below encodes exactly that decomposition, so
two graphs are isomorphic (by a label-preserving bijection fixing s and
t) if and only if their canonical forms are equal.

A graph extended with merge edges restores the linear order: reality and
merge edges together form a single alternating path from s to t through
every vertex.  Reading labels along that path, and signs off the way
desire edges cross it, recovers a legal string.

JSON schema shared with the command line front end:

    {"vertices": [{"id": "I1", "label": 2}, ..., {"id": "s"}, {"id": "t"}],
     "reality": [["s", "I1"], ...],
     "desire":  [["I1", "I9'"], ...],
     "merge":   [["I1", "I1'"], ...]}        (merge is optional)

The two unlabelled vertices must have ids "s" and "t".
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping

from .strings import LegalString, Pointer

Edge = frozenset  # frozenset[str] with exactly two vertex ids

REALITY = 0
DESIRE = 1


class InvalidGraphError(ValueError):
    """Raised when raw graph data violates the required shape.

    The .diagnostics attribute lists every violated condition.
    """

    def __init__(self, diagnostics: list[str]):
        super().__init__("; ".join(diagnostics))
        self.diagnostics = list(diagnostics)


@dataclass(frozen=True, eq=True)
class ColouredBase:
    """Vertices with two distinguished endpoints and a labelling map.

    label is defined exactly on vertices minus {s, t}; values are
    integer symbols >= 2.
    """

    vertices: frozenset[str]
    s: str
    t: str
    label: Mapping[str, int]

    def __post_init__(self) -> None:
        if self.s == self.t or not {self.s, self.t} <= set(self.vertices):
            raise ValueError("s and t must be distinct vertices of the graph")
        if set(self.label) != set(self.vertices) - {self.s, self.t}:
            raise ValueError("label must be defined exactly on the non-endpoint vertices")


@dataclass(frozen=True, eq=True)
class ARG:
    """An abstract reduction graph: a coloured base plus reality and
    desire edge sets.  See the module docstring for the invariants."""

    base: ColouredBase
    reality: frozenset[Edge]
    desire: frozenset[Edge]

    @property
    def vertices(self) -> frozenset[str]:
        return self.base.vertices

    @property
    def s(self) -> str:
        return self.base.s

    @property
    def t(self) -> str:
        return self.base.t

    @property
    def label(self) -> Mapping[str, int]:
        return self.base.label


def dom(g: ARG) -> frozenset[int]:
    """The set of symbols used as vertex labels."""
    return frozenset(g.label.values())


@dataclass(frozen=True, eq=True)
class ExtendedARG:
    """An abstract reduction graph together with merge edges.

    The merge edges must be desirable, disjoint from the desire edges,
    and reality plus merge edges must connect the graph, which forces a
    unique alternating s-t path through every vertex.
    """

    arg: ARG
    merge: frozenset[Edge]

    def __post_init__(self) -> None:
        g = self.arg
        covered: set[str] = set()
        for e in self.merge:
            a, b = sorted(e)
            if g.label.get(a) is None or g.label.get(a) != g.label.get(b):
                raise ValueError(f"merge edge {sorted(e)} does not join equal labels")
            if e in g.desire:
                raise ValueError(f"merge edge {sorted(e)} is also a desire edge")
            covered.update(e)
        if covered != set(g.vertices) - {g.s, g.t}:
            raise ValueError("merge edges must cover every labelled vertex exactly once")
        if 2 * len(self.merge) != len(covered):
            raise ValueError("merge edges overlap")
        if len(_components(g.vertices, g.reality | self.merge)) != 1:
            raise ValueError("reality and merge edges do not connect the graph")


@dataclass(frozen=True, eq=True)
class CanonicalForm:
    """Complete isomorphism invariant of an abstract reduction graph.

    path_word: the labels along the unique s-t path, in order from s.
    cycle_words: one canonical word per alternating cycle, sorted; each
    word lists (edge colour, label of the vertex stepped onto) pairs and
    is minimal over every starting vertex and both directions.
    """

    path_word: tuple[int, ...]
    cycle_words: tuple[tuple[tuple[int, int], ...], ...]


def _id_key(v: str):
    # natural sort: "I10'" sorts after "I2" and before "s"/"t"
    parts = re.split(r"(\d+)", v)
    return tuple((1, int(p)) if p.isdigit() else (0, p) for p in parts)


def _edge_key(e: Edge):
    return tuple(sorted(_id_key(v) for v in e))


def _pair(a: str, b: str) -> Edge:
    return frozenset((a, b))


def build_reduction_graph(u: LegalString) -> ARG:
    """Construct the reduction graph of a legal string."""
    n = len(u)
    left = [f"I{i}" for i in range(1, n + 1)]
    right = [f"I{i}'" for i in range(1, n + 1)]
    vertices = frozenset(left) | frozenset(right) | {"s", "t"}

    if n == 0:
        reality = frozenset({_pair("s", "t")})
    else:
        edges = [_pair("s", left[0]), _pair(right[-1], "t")]
        edges += [_pair(right[i], left[i + 1]) for i in range(n - 1)]
        reality = frozenset(edges)

    occ: dict[int, list[int]] = {}
    for i, x in enumerate(u.letters):
        occ.setdefault(x.symbol, []).append(i)
    desire = set()
    for p, (i, j) in occ.items():
        if u.letters[i].barred == u.letters[j].barred:
            desire.add(_pair(right[i], left[j]))
            desire.add(_pair(left[i], right[j]))
        else:
            desire.add(_pair(left[i], left[j]))
            desire.add(_pair(right[i], right[j]))

    label = {left[i]: u.letters[i].symbol for i in range(n)}
    label.update({right[i]: u.letters[i].symbol for i in range(n)})
    base = ColouredBase(vertices=vertices, s="s", t="t", label=label)
    return ARG(base=base, reality=reality, desire=frozenset(desire))


def build_extended_reduction_graph(u: LegalString) -> ExtendedARG:
    """The reduction graph of u plus the generic merge edges {Ii, Ii'}."""
    g = build_reduction_graph(u)
    merge = frozenset(_pair(f"I{i}", f"I{i}'") for i in range(1, len(u) + 1))
    return ExtendedARG(arg=g, merge=merge)


def arg_diagnostics(data) -> list[str]:
    """Check raw graph data against the required shape.

    Returns a list of violated conditions, empty when the data describes
    a valid abstract reduction graph.
    """
    problems: list[str] = []
    if not isinstance(data, Mapping):
        return ["graph data must be a JSON object"]
    for key in ("vertices", "reality", "desire"):
        if key not in data:
            problems.append(f"missing key {key!r}")
    if problems:
        return problems

    label: dict[str, int] = {}
    ids: set[str] = set()
    unlabelled: list[str] = []
    if not isinstance(data["vertices"], list):
        return ["'vertices' must be a list"]
    for entry in data["vertices"]:
        if not isinstance(entry, Mapping) or "id" not in entry or not isinstance(entry["id"], str):
            problems.append(f"bad vertex entry {entry!r}")
            continue
        vid = entry["id"]
        if vid in ids:
            problems.append(f"duplicate vertex id {vid!r}")
            continue
        ids.add(vid)
        if "label" in entry:
            value = entry["label"]
            if not isinstance(value, int) or isinstance(value, bool) or value < 2:
                problems.append(f"vertex {vid!r} has bad label {value!r}")
            else:
                label[vid] = value
        else:
            unlabelled.append(vid)
    if sorted(unlabelled) != ["s", "t"]:
        problems.append(f"unlabelled vertices must be exactly 's' and 't', got {sorted(unlabelled)}")
    if problems:
        return problems

    def read_edges(key: str) -> list[Edge] | None:
        if not isinstance(data[key], list):
            problems.append(f"{key!r} must be a list of vertex pairs")
            return None
        out = []
        for raw in data[key]:
            if not isinstance(raw, list) or len(raw) != 2 or not all(isinstance(v, str) for v in raw):
                problems.append(f"bad {key} edge {raw!r}")
                continue
            a, b = raw
            if a not in ids or b not in ids:
                problems.append(f"{key} edge {raw!r} mentions an unknown vertex")
                continue
            if a == b:
                problems.append(f"{key} edge {raw!r} is a loop")
                continue
            out.append(_pair(a, b))
        return out

    reality = read_edges("reality")
    desire = read_edges("desire")
    if problems or reality is None or desire is None:
        return problems

    # condition (1): every used label occurs on exactly four vertices
    counts: dict[int, int] = {}
    for v in label.values():
        counts[v] = counts.get(v, 0) + 1
    for p in sorted(counts):
        if counts[p] != 4:
            problems.append(f"label {p} occurs on {counts[p]} vertices, expected 4")

    # condition (2): reality edges form a perfect matching of all vertices
    seen: dict[str, int] = {v: 0 for v in ids}
    for e in reality:
        for v in e:
            seen[v] += 1
    for v in sorted(seen, key=_id_key):
        if seen[v] != 1:
            problems.append(f"vertex {v!r} lies in {seen[v]} reality edges, expected exactly 1")

    # condition (3): desire edges are desirable
    dcount: dict[str, int] = {v: 0 for v in ids}
    for e in desire:
        a, b = sorted(e)
        if a not in label or b not in label:
            problems.append(f"desire edge {[a, b]} touches an unlabelled vertex")
            continue
        if label[a] != label[b]:
            problems.append(f"desire edge {[a, b]} joins labels {label[a]} and {label[b]}")
        dcount[a] += 1
        dcount[b] += 1
    for v in sorted(ids - {"s", "t"}, key=_id_key):
        if dcount[v] != 1:
            problems.append(f"vertex {v!r} lies in {dcount[v]} desire edges, expected exactly 1")

    return problems


def validate_arg(data) -> ARG:
    """Build a typed graph from raw data, raising InvalidGraphError with
    the full list of violated conditions when the shape is wrong."""
    problems = arg_diagnostics(data)
    if problems:
        raise InvalidGraphError(problems)
    label = {e["id"]: e["label"] for e in data["vertices"] if "label" in e}
    vertices = frozenset(e["id"] for e in data["vertices"])
    base = ColouredBase(vertices=vertices, s="s", t="t", label=label)
    return ARG(
        base=base,
        reality=frozenset(_pair(*e) for e in data["reality"]),
        desire=frozenset(_pair(*e) for e in data["desire"]),
    )


def extended_from_json(data) -> ExtendedARG:
    """Build an extended graph from raw data carrying a merge edge set."""
    g = validate_arg(data)
    if "merge" not in data or not isinstance(data["merge"], list):
        raise InvalidGraphError(["missing or bad 'merge' edge list"])
    merge = []
    for raw in data["merge"]:
        if (
            not isinstance(raw, list)
            or len(raw) != 2
            or not all(isinstance(v, str) for v in raw)
            or raw[0] == raw[1]
            or not set(raw) <= set(g.vertices)
        ):
            raise InvalidGraphError([f"bad merge edge {raw!r}"])
        merge.append(_pair(*raw))
    try:
        return ExtendedARG(arg=g, merge=frozenset(merge))
    except ValueError as exc:
        raise InvalidGraphError([str(exc)]) from exc


def _edges_to_json(edges: Iterable[Edge]) -> list[list[str]]:
    return sorted((sorted(e, key=_id_key) for e in edges), key=lambda e: _edge_key(frozenset(e)))


def arg_to_json(g: ARG) -> dict:
    vertices = []
    for v in sorted(g.vertices, key=_id_key):
        if v in g.label:
            vertices.append({"id": v, "label": g.label[v]})
        else:
            vertices.append({"id": v})
    return {
        "vertices": vertices,
        "reality": _edges_to_json(g.reality),
        "desire": _edges_to_json(g.desire),
    }


def extended_to_json(e: ExtendedARG) -> dict:
    out = arg_to_json(e.arg)
    out["merge"] = _edges_to_json(e.merge)
    return out


def desire_partition(g: ARG, p: int) -> frozenset[Edge]:
    """The two desire edges whose endpoints carry label p."""
    edges = frozenset(e for e in g.desire if all(g.label.get(v) == p for v in e))
    if len(edges) != 2:
        raise ValueError(f"symbol {p} not in the domain of the graph")
    return edges


def _components(vertices: frozenset[str], edges: Iterable[Edge]) -> list[frozenset[str]]:
    adj: dict[str, set[str]] = {v: set() for v in vertices}
    for e in edges:
        a, b = tuple(e)
        adj[a].add(b)
        adj[b].add(a)
    seen: set[str] = set()
    comps = []
    for v in vertices:
        if v in seen:
            continue
        comp = {v}
        stack = [v]
        seen.add(v)
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    comp.add(y)
                    stack.append(y)
        comps.append(frozenset(comp))
    return comps


def components(g: ARG) -> list[frozenset[str]]:
    """Connected components over reality and desire edges together."""
    return _components(g.vertices, g.reality | g.desire)


def _neighbour_maps(g: ARG) -> tuple[dict[str, str], dict[str, str]]:
    reality: dict[str, str] = {}
    desire: dict[str, str] = {}
    for e in g.reality:
        a, b = tuple(e)
        reality[a], reality[b] = b, a
    for e in g.desire:
        a, b = tuple(e)
        desire[a], desire[b] = b, a
    return reality, desire


def canonical_form(g: ARG) -> CanonicalForm:
    """Canonical form of the path plus cycle decomposition."""
    reality, desire = _neighbour_maps(g)

    # the s-t path: colours are forced to alternate starting with reality
    path_word = []
    on_path = {g.s}
    v = reality[g.s]
    colour = DESIRE
    while v != g.t:
        on_path.add(v)
        path_word.append(g.label[v])
        v = desire[v] if colour == DESIRE else reality[v]
        colour = 1 - colour
    on_path.add(g.t)

    rest = set(g.vertices) - on_path
    cycle_words = []
    while rest:
        start = next(iter(rest))
        cycle = [start]
        v, colour = reality[start], DESIRE
        while v != start:
            cycle.append(v)
            v = desire[v] if colour == DESIRE else reality[v]
            colour = 1 - colour
        rest.difference_update(cycle)
        cycle_words.append(_canonical_cycle_word(g, cycle))
    return CanonicalForm(path_word=tuple(path_word), cycle_words=tuple(sorted(cycle_words)))


def _canonical_cycle_word(g: ARG, cycle: list[str]) -> tuple[tuple[int, int], ...]:
    # cycle lists vertices in traversal order; consecutive edges alternate
    # reality, desire, reality, ... starting from cycle[0].
    m = len(cycle)
    labels = [g.label[v] for v in cycle]
    words = []
    for start in range(m):
        # forward: step colours keep the alternation of the traversal
        word = tuple(((start + k) % 2, labels[(start + k + 1) % m]) for k in range(m))
        words.append(word)
        # backward: the step from cycle[i] back to cycle[i-1] has the
        # colour of the forward edge (i-1, i)
        word = tuple(((start - k - 1) % 2, labels[(start - k - 1) % m]) for k in range(m))
        words.append(word)
    return min(words)


def are_isomorphic(g: ARG, h: ARG) -> bool:
    """Label-preserving isomorphism with s and t fixed, via canonical forms."""
    return canonical_form(g) == canonical_form(h)


def st_path(e: ExtendedARG) -> tuple[str, ...]:
    """The unique alternating reality/merge path from s to t, as vertices."""
    g = e.arg
    reality: dict[str, str] = {}
    merge: dict[str, str] = {}
    for edge in g.reality:
        a, b = tuple(edge)
        reality[a], reality[b] = b, a
    for edge in e.merge:
        a, b = tuple(edge)
        merge[a], merge[b] = b, a
    path = [g.s]
    v = reality[g.s]
    use_merge = True
    while v != g.t:
        path.append(v)
        v = merge[v] if use_merge else reality[v]
        use_merge = not use_merge
    path.append(g.t)
    return tuple(path)


def _path_positions(e: ExtendedARG) -> dict[str, tuple[int, int]]:
    # vertex -> (pair index 1..n, side 0 for the first vertex of the pair)
    path = st_path(e)
    out = {}
    for k, v in enumerate(path[1:-1]):
        out[v] = (k // 2 + 1, k % 2)
    return out


NEGATIVE = "negative"
POSITIVE = "positive"


def pointer_sign(e: ExtendedARG, p: int) -> str:
    """Whether p is negative or positive in the extended graph.

    p is negative when its two desire edges connect opposite sides of
    their two merge pairs (the parallel configuration along the path),
    positive when they connect equal sides (the crossing one).
    """
    pos = _path_positions(e)
    signs = set()
    for edge in desire_partition(e.arg, p):
        a, b = tuple(edge)
        signs.add(pos[a][1] != pos[b][1])
    if len(signs) != 1:
        raise ValueError(f"desire edges of {p} are inconsistent with the path")
    return NEGATIVE if signs.pop() else POSITIVE


def legalization_representative(e: ExtendedARG) -> LegalString:
    """The canonical member of the set of legal strings read off e.

    Letters are the labels along the s-t path, one per merge pair; the
    second occurrence of a symbol is barred exactly when the symbol is
    positive in the graph, so first occurrences are unbarred.
    """
    g = e.arg
    path = st_path(e)
    word = [g.label[path[k]] for k in range(1, len(path) - 1, 2)]
    seen: set[int] = set()
    letters = []
    for p in word:
        if p in seen:
            letters.append(Pointer(p, pointer_sign(e, p) == POSITIVE))
        else:
            seen.add(p)
            letters.append(Pointer(p, False))
    return LegalString(tuple(letters))


def extended_canonical_form(e: ExtendedARG):
    """Complete invariant for extended graphs.

    The s-t path through all vertices forces any isomorphism to match
    path positions, so the pair labels along the path plus the desire
    edges written as position pairs determine the graph up to
    isomorphism.
    """
    g = e.arg
    path = st_path(e)
    index = {v: k for k, v in enumerate(path)}
    word = tuple(g.label[path[k]] for k in range(1, len(path) - 1, 2))
    desire = tuple(sorted(tuple(sorted(index[v] for v in edge)) for edge in g.desire))
    return word, desire


def are_isomorphic_extended(e1: ExtendedARG, e2: ExtendedARG) -> bool:
    return extended_canonical_form(e1) == extended_canonical_form(e2)


__all__ = [
    "ARG",
    "CanonicalForm",
    "ColouredBase",
    "ExtendedARG",
    "InvalidGraphError",
    "NEGATIVE",
    "POSITIVE",
    "arg_diagnostics",
    "arg_to_json",
    "are_isomorphic",
    "are_isomorphic_extended",
    "build_extended_reduction_graph",
    "build_reduction_graph",
    "canonical_form",
    "components",
    "desire_partition",
    "dom",
    "extended_canonical_form",
    "extended_from_json",
    "extended_to_json",
    "legalization_representative",
    "pointer_sign",
    "st_path",
    "validate_arg",
]
