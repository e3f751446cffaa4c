"""Metric graphs and Moore paths with exact rational durations.

A space is a finite graph whose edges all have length one.  A Moore path is a
start vertex plus a sequence of steps, each either traversing a whole edge in
a given positive time or dwelling at a vertex.  All times are
:class:`fractions.Fraction`, so concatenation is associative and unital as
literal equality of normal forms.
"""
from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Hashable, Iterator, Optional, Union

from .unionfind import UnionFind

Vertex = Hashable
EdgeId = Hashable

_RATIONAL = re.compile(r"^\s*(-?\d+)\s*(?:/\s*(\d+))?\s*$")


class PathError(ValueError):
    """A Moore path is malformed, or two paths do not chain."""


def parse_rational(text) -> Fraction:
    """Parse ``"p/q"`` (or an integer) into a Fraction.  Floats are refused."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int) and not isinstance(text, bool):
        return Fraction(text)
    if not isinstance(text, str):
        raise ValueError(f"expected a rational string 'p/q', got {text!r}")
    m = _RATIONAL.match(text)
    if m is None:
        raise ValueError(f"not a rational of the form 'p/q': {text!r}")
    num, den = int(m.group(1)), int(m.group(2) or 1)
    if den == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def _as_duration(d) -> Fraction:
    if type(d) is Fraction:
        return d
    if isinstance(d, float):
        raise TypeError("durations must be exact rationals, not float")
    return parse_rational(d) if isinstance(d, str) else Fraction(d)


def sort_key(item):
    return (type(item).__name__, str(item))


@dataclass(frozen=True)
class Edge:
    id: EdgeId
    src: Vertex
    tgt: Vertex


@dataclass(frozen=True)
class GraphSpace:
    """Finite graph, every edge of length one."""

    vertices: tuple
    edges: tuple = ()
    _index: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(
            e if isinstance(e, Edge) else Edge(*e) for e in self.edges))
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex identifiers")
        vs = set(self.vertices)
        index = {}
        for e in self.edges:
            if e.id in index:
                raise ValueError(f"duplicate edge identifier {e.id!r}")
            if e.src not in vs or e.tgt not in vs:
                raise ValueError(f"edge {e.id!r} references an unknown vertex")
            index[e.id] = e
        object.__setattr__(self, "_index", index)

    def has_vertex(self, v) -> bool:
        return v in self.vertex_set

    @property
    def vertex_set(self) -> frozenset:
        return frozenset(self.vertices)

    def edge(self, edge_id) -> Edge:
        try:
            return self._index[edge_id]
        except KeyError:
            raise KeyError(f"unknown edge {edge_id!r}") from None

    def has_edge(self, edge_id) -> bool:
        return edge_id in self._index

    def incident(self, v) -> list:
        """Edges leaving ``v`` in either orientation, as ``(edge, forward)``."""
        out = []
        for e in self.edges:
            if e.src == v:
                out.append((e, True))
            if e.tgt == v:
                out.append((e, False))
        return out

    def components(self) -> list:
        uf = UnionFind(self.vertices)
        for e in self.edges:
            uf.union(e.src, e.tgt)
        return sorted(uf.groups(), key=lambda c: sorted(map(sort_key, c)))

    def is_forest(self) -> bool:
        # a graph is a forest iff |E| = |V| - #components
        return len(self.edges) == len(self.vertices) - len(self.components())

    def to_dot(self, name: str = "G") -> str:
        lines = [f"digraph {_dot_id(name)} {{"]
        for v in sorted(self.vertices, key=sort_key):
            lines.append(f"  {_dot_id(v)};")
        for e in sorted(self.edges, key=lambda e: sort_key(e.id)):
            lines.append(f"  {_dot_id(e.src)} -> {_dot_id(e.tgt)} [label={_dot_id(e.id)}];")
        lines.append("}")
        return "\n".join(lines) + "\n"


def _dot_id(x) -> str:
    s = str(x).replace("\\", "\\\\").replace('"', '\\"')
    return f'"{s}"'


# -- steps and paths ---------------------------------------------------------

@dataclass(frozen=True)
class Dwell:
    vertex: Vertex
    duration: Fraction

    def __post_init__(self):
        d = _as_duration(self.duration)
        if d.numerator < 0:
            raise PathError(f"negative dwell duration {d}")
        object.__setattr__(self, "duration", d)

    @property
    def source(self):
        return self.vertex

    @property
    def target(self):
        return self.vertex


@dataclass(frozen=True)
class Traverse:
    """Run along the whole of ``edge`` in time ``duration``.

    ``source``/``target`` are where this step begins and ends, i.e. already
    oriented; for a backward traversal ``source`` is the edge's tgt.
    """

    edge: EdgeId
    forward: bool
    duration: Fraction
    source: Vertex
    target: Vertex

    def __post_init__(self):
        d = _as_duration(self.duration)
        if d.numerator <= 0:
            raise PathError(f"traversal of {self.edge!r} needs positive duration, got {d}")
        object.__setattr__(self, "duration", d)


Step = Union[Dwell, Traverse]


def traverse(space: GraphSpace, edge_id, forward: bool = True, duration=1) -> Traverse:
    e = space.edge(edge_id)
    src, tgt = (e.src, e.tgt) if forward else (e.tgt, e.src)
    return Traverse(edge_id, forward, duration, src, tgt)


@dataclass(frozen=True)
class MoorePath:
    """A Moore path ``(alpha, r)``: constant after time ``r`` = ``length``."""

    start: Vertex
    steps: tuple = ()

    def __post_init__(self):
        steps = tuple(self.steps)
        object.__setattr__(self, "steps", steps)
        here = self.start
        for i, s in enumerate(steps):
            if not isinstance(s, (Dwell, Traverse)):
                raise PathError(f"step {i} is not a Dwell or Traverse: {s!r}")
            if s.source != here:
                raise PathError(f"step {i} starts at {s.source!r} but the path is at {here!r}")
            here = s.target

    @classmethod
    def _chained(cls, start, steps: tuple) -> "MoorePath":
        """Construct from steps already known to chain from ``start``."""
        p = object.__new__(cls)
        object.__setattr__(p, "start", start)
        object.__setattr__(p, "steps", steps)
        return p

    @property
    def end(self):
        return self.steps[-1].target if self.steps else self.start

    @cached_property
    def length(self) -> Fraction:
        return sum((s.duration for s in self.steps), Fraction(0))

    def __hash__(self):
        # paths key memo tables; hashing Fractions is slow enough to cache
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash((self.start, self.steps))
            self.__dict__["_hash"] = h
        return h

    def is_normal(self) -> bool:
        return _is_normal(self.steps)

    def traversals(self) -> list:
        return [s for s in self.steps if isinstance(s, Traverse)]

    def lives_in(self, space: GraphSpace) -> bool:
        if not space.has_vertex(self.start):
            return False
        for s in self.steps:
            if isinstance(s, Dwell):
                if not space.has_vertex(s.vertex):
                    return False
            else:
                if not space.has_edge(s.edge):
                    return False
                e = space.edge(s.edge)
                if ((e.src, e.tgt) if s.forward else (e.tgt, e.src)) != (s.source, s.target):
                    return False
        return True

    def __str__(self):
        parts = []
        for s in self.steps:
            if isinstance(s, Dwell):
                parts.append(f"D({s.vertex},{format_rational(s.duration)})")
            else:
                parts.append(f"T({s.edge}{'+' if s.forward else '-'},{format_rational(s.duration)})")
        return f"{self.start}:[{' '.join(parts)}]"


def normalize(p: MoorePath) -> MoorePath:
    """Drop zero-time steps and merge adjacent dwells."""
    if _is_normal(p.steps):
        return p
    out = []
    for s in p.steps:
        if not s.duration:
            continue
        if isinstance(s, Dwell) and out and isinstance(out[-1], Dwell):
            out[-1] = Dwell(s.vertex, out[-1].duration + s.duration)
        else:
            out.append(s)
    return MoorePath._chained(p.start, tuple(out))


def _is_normal(steps) -> bool:
    prev_dwell = False
    for s in steps:
        dwell = isinstance(s, Dwell)
        if not s.duration or (dwell and prev_dwell):
            return False
        prev_dwell = dwell
    return True


def unit_path(v, space: Optional[GraphSpace] = None) -> MoorePath:
    if space is not None and not space.has_vertex(v):
        raise PathError(f"unknown vertex {v!r}")
    return MoorePath(v)


def endpoints(p: MoorePath) -> tuple:
    return p.start, p.end


def concat(alpha: MoorePath, beta: MoorePath) -> MoorePath:
    """``alpha`` then ``beta``; lengths add."""
    if alpha.end != beta.start:
        raise PathError(f"cannot concatenate: first path ends at {alpha.end!r}, "
                        f"second starts at {beta.start!r}")
    return normalize(MoorePath._chained(alpha.start, alpha.steps + beta.steps))


def reverse(p: MoorePath) -> MoorePath:
    """The same path run backwards, in normal form."""
    steps = []
    for s in reversed(p.steps):
        if isinstance(s, Dwell):
            steps.append(s)
        else:
            steps.append(Traverse(s.edge, not s.forward, s.duration, s.target, s.source))
    return normalize(MoorePath(p.end, tuple(steps)))


def rescale(p: MoorePath, r) -> MoorePath:
    r = _as_duration(r)
    if r <= 0:
        raise PathError("rescale target length must be positive")
    total = p.length
    if total == 0:
        raise PathError("cannot rescale a path of length zero")
    factor = r / total
    steps = []
    for s in p.steps:
        if isinstance(s, Dwell):
            steps.append(Dwell(s.vertex, s.duration * factor))
        else:
            steps.append(Traverse(s.edge, s.forward, s.duration * factor, s.source, s.target))
    return MoorePath(p.start, tuple(steps))


def path_from_walk(space: GraphSpace, start, walk, durations=None) -> MoorePath:
    """Build a path from ``walk`` = sequence of ``(edge_id, forward)``."""
    steps = []
    for i, (e, fwd) in enumerate(walk):
        d = 1 if durations is None else durations[i]
        steps.append(traverse(space, e, fwd, d))
    return MoorePath(start, tuple(steps))


# -- edge words --------------------------------------------------------------

@dataclass(frozen=True)
class EdgeWord:
    """Freely reduced word of signed edges; ``+1`` forward, ``-1`` backward."""

    start: Vertex
    end: Vertex
    letters: tuple = ()

    def inverse(self) -> "EdgeWord":
        return EdgeWord(self.end, self.start, tuple((e, -s) for e, s in reversed(self.letters)))

    def __mul__(self, other: "EdgeWord") -> "EdgeWord":
        """``self`` followed by ``other``."""
        if self.end != other.start:
            raise PathError("edge words do not chain")
        return EdgeWord(self.start, other.end, _free_reduce(self.letters + other.letters))

    def __len__(self):
        return len(self.letters)


def _free_reduce(letters) -> tuple:
    stack = []
    for e, s in letters:
        if stack and stack[-1] == (e, -s):
            stack.pop()
        else:
            stack.append((e, s))
    return tuple(stack)


def reduced_word(p: MoorePath) -> EdgeWord:
    letters = [(s.edge, 1 if s.forward else -1) for s in p.steps if isinstance(s, Traverse)]
    return EdgeWord(p.start, p.end, _free_reduce(letters))


# -- synchronised pairs ------------------------------------------------------

@dataclass(frozen=True)
class PairingFailure:
    """Why two paths could not be run side by side."""

    reason: str  # "length mismatch" | "simultaneous traversal"
    detail: tuple = ()

    def __bool__(self):
        return False


@dataclass(frozen=True)
class Segment:
    """Open time interval on which each side is dwelling or traversing whole."""

    start: Fraction
    duration: Fraction
    left: Step
    right: Step


def _timeline(p: MoorePath):
    t = Fraction(0)
    for s in normalize(p).steps:
        yield t, t + s.duration, s
        t += s.duration


def synchronize(alpha: MoorePath, beta: MoorePath, pad: bool = False):
    """Refine two paths to a common list of :class:`Segment`.

    With ``pad`` the shorter path is held at its end (pointwise Moore
    semantics); otherwise unequal lengths fail.  Returns a list of segments or
    a :class:`PairingFailure`.
    """
    la, lb = alpha.length, beta.length
    if la != lb and not pad:
        return PairingFailure("length mismatch", (la, lb))
    total = max(la, lb)
    ta, tb = list(_timeline(alpha)), list(_timeline(beta))
    ta, tb = _pad(ta, alpha.end, total), _pad(tb, beta.end, total)
    cuts = sorted({0, total} | {t for seg in ta + tb for t in seg[:2]})
    segs = []
    i = j = 0
    for t0, t1 in zip(cuts, cuts[1:]):
        while ta[i][1] <= t0:
            i += 1
        while tb[j][1] <= t0:
            j += 1
        sa, sb = ta[i], tb[j]
        if isinstance(sa[2], Traverse) and isinstance(sb[2], Traverse):
            return PairingFailure("simultaneous traversal", (t0, t1, sa[2].edge, sb[2].edge))
        segs.append((t0, t1, sa, sb))
    out = []
    for t0, t1, sa, sb in segs:
        left, right = _restrict(sa, t0, t1), _restrict(sb, t0, t1)
        out.append(Segment(t0, t1 - t0, left, right))
    return out


def _pad(timeline, end, total):
    """Hold at ``end`` until ``total``, merging with a final dwell."""
    if not timeline:
        return [(Fraction(0), total, Dwell(end, total))] if total > 0 else []
    a, b, s = timeline[-1]
    if b == total:
        return timeline
    if isinstance(s, Dwell):
        return timeline[:-1] + [(a, total, Dwell(end, total - a))]
    return timeline + [(b, total, Dwell(end, total - b))]


def _restrict(timed, t0, t1) -> Step:
    a, b, s = timed
    if isinstance(s, Dwell):
        return Dwell(s.vertex, t1 - t0)
    # normal forms never merge dwells across a traversal, so a traversal cut
    # in two would force the other side to traverse during it
    assert (a, b) == (t0, t1), "partial traversal survived the simultaneity scan"
    return s


def product_space(X: GraphSpace, Y: GraphSpace) -> GraphSpace:
    """Graph product: vertices are pairs, edges move one coordinate at a time."""
    vertices = [(u, v) for u in X.vertices for v in Y.vertices]
    edges = [Edge(("L", e.id, v), (e.src, v), (e.tgt, v)) for e in X.edges for v in Y.vertices]
    edges += [Edge(("R", u, e.id), (u, e.src), (u, e.tgt)) for u in X.vertices for e in Y.edges]
    return GraphSpace(tuple(vertices), tuple(edges))


def moore_pairing(alpha: MoorePath, beta: MoorePath):
    """The pair path ``t -> (alpha(t), beta(t))`` in the product graph.

    Succeeds only for equal lengths with traversals at disjoint times;
    otherwise returns a :class:`PairingFailure`.
    """
    segs = synchronize(alpha, beta)
    if isinstance(segs, PairingFailure):
        return segs
    steps = []
    for seg in segs:
        l, r = seg.left, seg.right
        if isinstance(l, Traverse):
            steps.append(Traverse(("L", l.edge, r.vertex), l.forward, seg.duration,
                                  (l.source, r.vertex), (l.target, r.vertex)))
        elif isinstance(r, Traverse):
            steps.append(Traverse(("R", l.vertex, r.edge), r.forward, seg.duration,
                                  (l.vertex, r.source), (l.vertex, r.target)))
        else:
            steps.append(Dwell((l.vertex, r.vertex), seg.duration))
    return normalize(MoorePath((alpha.start, beta.start), tuple(steps)))


# -- random paths ------------------------------------------------------------

DEFAULT_DURATIONS = (Fraction(0), Fraction(1, 3), Fraction(1, 2), Fraction(1), Fraction(3, 2), Fraction(2))


def random_path(space: GraphSpace, rng: random.Random, start=None, max_steps: int = 6,
                durations=DEFAULT_DURATIONS) -> MoorePath:
    """A random (not necessarily normal) path; dwells may have zero duration."""
    if start is None:
        start = rng.choice(sorted(space.vertices, key=sort_key))
    here = start
    steps = []
    for _ in range(rng.randint(0, max_steps)):
        moves = space.incident(here)
        if moves and rng.random() < 0.6:
            e, fwd = rng.choice(moves)
            d = rng.choice([d for d in durations if d > 0])
            steps.append(traverse(space, e.id, fwd, d))
            here = steps[-1].target
        else:
            steps.append(Dwell(here, rng.choice(durations)))
    return MoorePath(start, tuple(steps))


def walks(space: GraphSpace, start, max_len: int) -> Iterator[tuple]:
    """All walks from ``start`` with at most ``max_len`` edges, as ``(walk, end)``."""
    frontier = [((), start)]
    for depth in range(max_len + 1):
        nxt = []
        for walk, here in frontier:
            yield walk, here
            if depth < max_len:
                for e, fwd in space.incident(here):
                    nxt.append((walk + ((e.id, fwd),), e.tgt if fwd else e.src))
        frontier = nxt


def shortest_walk(space: GraphSpace, a, b):
    """Breadth-first walk from ``a`` to ``b`` as ``(edge_id, forward)`` pairs, or None."""
    if a == b:
        return ()
    seen = {a: None}
    queue = [a]
    for here in queue:
        for e, fwd in space.incident(here):
            nxt = e.tgt if fwd else e.src
            if nxt not in seen:
                seen[nxt] = (here, (e.id, fwd))
                if nxt == b:
                    walk = []
                    v = b
                    while seen[v] is not None:
                        v, step = seen[v]
                        walk.append(step)
                    return tuple(reversed(walk))
                queue.append(nxt)
    return None
