"""Merge-legal edge sets, the flip action on them, and the algorithms
they support: deciding whether a graph is isomorphic to a reduction
graph, recovering a legal string from one, and realizing a prescribed
pointer-component graph.

A merge-legal set for a graph g is a desirable edge set (same-label
endpoints covering every labelled vertex exactly once) that avoids g's
desire edges.  For each symbol there are exactly two such matchings of
its four vertices, so the merge-legal sets number 2^|dom(g)| and the
per-symbol flip operations act on them as commuting involutions.  The
sets whose union with the reality edges connects the graph are exactly
the valid merge edge sets; finding one, when it exists, takes a
spanning tree of the pointer-component graph of reality plus an
arbitrary merge-legal set.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Mapping

from .pcgraph import (
    PointerComponentGraph,
    is_connected,
    pc_from_json,
    pointer_component_graph,
    spanning_tree_pointers,
)
from .redgraph import (
    ARG,
    ColouredBase,
    Edge,
    ExtendedARG,
    InvalidGraphError,
    _components,
    _id_key,
    desire_partition,
    dom,
    legalization_representative,
    validate_arg,
)
from .strings import LegalString

MergeLegalSet = frozenset  # frozenset[Edge]
FlipSet = frozenset  # frozenset[int]


class OutOfRangeError(ValueError):
    """The graph is not isomorphic to any reduction graph."""


def _symbol_vertices(g: ARG, p: int) -> list[str]:
    vs = sorted((v for v, q in g.label.items() if q == p), key=_id_key)
    if len(vs) != 4:
        raise ValueError(f"symbol {p} not in the domain of the graph")
    return vs


def _matchings(vs: list[str]) -> list[frozenset]:
    a, b, c, d = vs
    return [
        frozenset({frozenset({a, b}), frozenset({c, d})}),
        frozenset({frozenset({a, c}), frozenset({b, d})}),
        frozenset({frozenset({a, d}), frozenset({b, c})}),
    ]


def is_merge_legal(g: ARG, e: Iterable[Edge]) -> bool:
    """Desirable for g's base and disjoint from g's desire edges."""
    edges = frozenset(frozenset(x) for x in e)
    covered: set[str] = set()
    for edge in edges:
        if len(edge) != 2:
            return False
        a, b = tuple(edge)
        if g.label.get(a) is None or g.label.get(a) != g.label.get(b):
            return False
        if edge in g.desire:
            return False
        if a in covered or b in covered:
            return False
        covered.update(edge)
    return covered == set(g.vertices) - {g.s, g.t}


def some_merge_legal(g: ARG) -> frozenset:
    """A deterministic merge-legal set.

    Per symbol, of the two matchings of its four vertices that avoid the
    desire edges, take the one containing the smallest non-desire pair
    (pairs ordered by sorted vertex ids).
    """
    out: set[Edge] = set()
    for p in sorted(dom(g)):
        vs = _symbol_vertices(g, p)
        desire = desire_partition(g, p)
        for a, b in combinations(vs, 2):
            pair = frozenset({a, b})
            if pair not in desire:
                rest = frozenset(set(vs) - pair)
                out.add(pair)
                out.add(rest)
                break
    return frozenset(out)


def is_theta(g: ARG, e: Iterable[Edge]) -> bool:
    """Whether reality plus e connects the graph; e must be merge-legal."""
    edges = frozenset(frozenset(x) for x in e)
    if not is_merge_legal(g, edges):
        raise ValueError("edge set is not merge-legal for the graph")
    return len(_components(g.vertices, g.reality | edges)) == 1


def flip(g: ARG, e: Iterable[Edge], p: int) -> frozenset:
    """Swap the two p-edges of e for the other non-desire matching.

    e is assumed merge-legal; its edges on symbols other than p are kept
    unchanged.  Self-inverse, and flips for distinct symbols commute.
    """
    edges = frozenset(frozenset(x) for x in e)
    vs = _symbol_vertices(g, p)
    desire = desire_partition(g, p)
    current = frozenset(edge for edge in edges if all(g.label.get(v) == p for v in edge))
    remaining = [m for m in _matchings(vs) if m != desire and m != current]
    if len(remaining) != 1:
        raise ValueError(f"edges of symbol {p} do not form a merge-legal matching")
    return (edges - current) | remaining[0]


def flip_set(g: ARG, e: Iterable[Edge], d: Iterable[int]) -> frozenset:
    """Fold flip over the symbols of d; the order cannot matter."""
    symbols = frozenset(d)
    if not symbols <= dom(g):
        raise ValueError("flip set is not a subset of the domain")
    edges = frozenset(frozenset(x) for x in e)
    for p in sorted(symbols):
        edges = flip(g, edges, p)
    return edges


def find_theta(g: ARG) -> frozenset | None:
    """Some merge edge set connecting the graph, or None when none exists.

    Start from any merge-legal set e; the components of reality plus e
    shrink to one exactly when the flipped symbols form a spanning tree
    of the pointer-component graph of that intermediate graph.  That
    graph is connected iff the original one is, so connectivity of the
    pointer-component graph decides existence.
    """
    e = some_merge_legal(g)
    pc = pointer_component_graph(ARG(base=g.base, reality=g.reality, desire=e))
    if not is_connected(pc):
        return None
    return flip_set(g, e, spanning_tree_pointers(pc))


def _as_arg(data) -> ARG:
    return data if isinstance(data, ARG) else validate_arg(data)


def is_reduction_graph(data) -> bool:
    """Whether the data describes a graph isomorphic to a reduction
    graph: a valid abstract reduction graph whose pointer-component
    graph is connected.  False (not an error) on malformed data."""
    if not isinstance(data, ARG):
        try:
            data = validate_arg(data)
        except InvalidGraphError:
            return False
    return is_connected(pointer_component_graph(data))


def recover_legal_string(data) -> LegalString:
    """A legal string whose reduction graph is isomorphic to the input.

    Raises OutOfRangeError when the graph is not one.  The result is the
    canonical member of its equivalence class.
    """
    g = _as_arg(data)
    e = find_theta(g)
    if e is None:
        raise OutOfRangeError("graph is not isomorphic to any reduction graph")
    return legalization_representative(ExtendedARG(arg=g, merge=e))


def realize_pc(m, linear_node: str | None = None) -> LegalString:
    """A legal string whose reduction graph has the given
    pointer-component graph, up to multigraph isomorphism.

    Every connected multigraph with distinct symbol edges is realizable.
    Each node becomes one component: its incident symbols (loops twice)
    are laid out as desire edges on an alternating cycle, except the
    linear node, which hosts the s-t path.  linear_node defaults to the
    smallest node id.
    """
    if not isinstance(m, PointerComponentGraph):
        m = pc_from_json(m)
    if linear_node is None:
        linear_node = min(m.nodes)
    if linear_node not in m.nodes:
        raise InvalidGraphError([f"unknown node {linear_node!r}"])
    if not is_connected(m):
        raise OutOfRangeError("a disconnected multigraph is no pointer-component graph")

    slots: dict[str, list[int]] = {n: [] for n in m.nodes}
    for p in sorted(m.endpoints):
        ends = sorted(m.endpoints[p])
        if len(ends) == 1:
            slots[ends[0]] += [p, p]
        else:
            slots[ends[0]].append(p)
            slots[ends[1]].append(p)

    label: dict[str, int] = {}
    desire: set[Edge] = set()
    reality: set[Edge] = set()
    for node, symbols in slots.items():
        heads = []
        tails = []
        for i, p in enumerate(symbols):
            a, b = f"{node}:{i}a", f"{node}:{i}b"
            label[a] = label[b] = p
            desire.add(frozenset({a, b}))
            heads.append(a)
            tails.append(b)
        k = len(symbols)
        if node == linear_node:
            if k == 0:
                reality.add(frozenset({"s", "t"}))
            else:
                reality.add(frozenset({"s", heads[0]}))
                reality.add(frozenset({tails[-1], "t"}))
                reality.update(frozenset({tails[i], heads[i + 1]}) for i in range(k - 1))
        else:
            # connectivity guarantees k >= 1 here, so the cycle is real
            reality.update(frozenset({tails[i], heads[(i + 1) % k]}) for i in range(k))

    vertices = frozenset(label) | {"s", "t"}
    base = ColouredBase(vertices=vertices, s="s", t="t", label=label)
    g = ARG(base=base, reality=frozenset(reality), desire=frozenset(desire))
    return recover_legal_string(g)


__all__ = [
    "FlipSet",
    "MergeLegalSet",
    "OutOfRangeError",
    "find_theta",
    "flip",
    "flip_set",
    "is_merge_legal",
    "is_reduction_graph",
    "is_theta",
    "realize_pc",
    "recover_legal_string",
    "some_merge_legal",
]
