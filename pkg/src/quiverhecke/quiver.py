"""Quivers, dimension vectors, vertex sequences, weights, and the
vertex-doubling construction with its companion maps.

Supported quiver shapes:

* the cyclic quiver with e vertices ``0, ..., e-1`` and arrows
  ``i -> i+1`` (both directions when e = 2);
* disjoint unions of l linear quivers restricted to a finite integer
  window, with vertices ``(a, b)`` for ``a`` in the window and
  ``b in 1..l`` and arrows ``(a, b) -> (a+1, b)``.

Doubling splits each vertex of a chosen subset into an arrow
``i^1 -> i^2``; doubled vertices keep their provenance tag (0, 1 or 2)
alongside the relabeled name.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Hashable

__all__ = [
    "Quiver",
    "DimVec",
    "WeightX",
    "DVert",
    "DoubledQuiver",
    "double",
    "IllegalSplit",
    "WindowOverflow",
    "upsilon",
    "pi_e",
    "SeqClass",
    "classify_seq",
    "almost_ordered",
    "seq_dimvec",
]


class IllegalSplit(ValueError):
    """The chosen vertex subset has an internal arrow and cannot be doubled."""


class WindowOverflow(ValueError):
    """An index left the finite window modeling an infinite quiver."""


class Quiver:
    """A finite quiver given by its vertex set and arrow multiplicities."""

    def __init__(self, vertices, arrows: dict, kind: str = "generic", meta: dict | None = None):
        self.vertices = tuple(vertices)
        self._vset = frozenset(self.vertices)
        self.arrows = {k: v for k, v in arrows.items() if v}
        self.kind = kind
        self.meta = meta or {}
        for (i, j), m in self.arrows.items():
            if i == j:
                raise ValueError("1-loops are not allowed")
            if i not in self._vset or j not in self._vset:
                raise ValueError("arrow endpoint outside vertex set")

    def h(self, i, j) -> int:
        """Number of arrows i -> j."""
        return self.arrows.get((i, j), 0)

    def cartan(self, i, j) -> int:
        return 2 * (i == j) - self.h(i, j) - self.h(j, i)

    def has_vertex(self, i) -> bool:
        return i in self._vset

    # -- standard shapes

    @staticmethod
    def cyclic(e: int) -> "Quiver":
        """Cyclic quiver on Z/eZ with arrows i -> i+1 (e >= 2)."""
        if e < 2:
            raise ValueError("need at least two vertices to avoid a 1-loop")
        arrows = {(i, (i + 1) % e): 1 for i in range(e)}
        return Quiver(range(e), arrows, kind="cyclic", meta={"e": e})

    @staticmethod
    def windowed(l: int, a_min: int, a_max: int) -> "Quiver":
        """l disjoint linear quivers on the window [a_min, a_max]."""
        verts = [(a, b) for b in range(1, l + 1) for a in range(a_min, a_max + 1)]
        arrows = {((a, b), (a + 1, b)): 1
                  for b in range(1, l + 1) for a in range(a_min, a_max)}
        return Quiver(verts, arrows, kind="windowed",
                      meta={"l": l, "a_min": a_min, "a_max": a_max})

    def __repr__(self):
        return f"Quiver({self.kind}, {len(self.vertices)} vertices)"


class DimVec:
    """A Z-combination of quiver vertices with finite support."""

    __slots__ = ("counts",)

    def __init__(self, counts: dict | None = None):
        object.__setattr__(self, "counts",
                           {v: c for v, c in (counts or {}).items() if c})

    def __setattr__(self, *a):
        raise AttributeError("immutable")

    @staticmethod
    def unit(vertex) -> "DimVec":
        return DimVec({vertex: 1})

    def height(self) -> int:
        return sum(self.counts.values())

    def is_nonnegative(self) -> bool:
        return all(c >= 0 for c in self.counts.values())

    def __getitem__(self, vertex) -> int:
        return self.counts.get(vertex, 0)

    def __add__(self, other: "DimVec") -> "DimVec":
        counts = dict(self.counts)
        for v, c in other.counts.items():
            counts[v] = counts.get(v, 0) + c
        return DimVec(counts)

    def __sub__(self, other: "DimVec") -> "DimVec":
        counts = dict(self.counts)
        for v, c in other.counts.items():
            counts[v] = counts.get(v, 0) - c
        return DimVec(counts)

    def __eq__(self, other):
        return isinstance(other, DimVec) and self.counts == other.counts

    def __hash__(self):
        return hash(frozenset(self.counts.items()))

    def __bool__(self):
        return bool(self.counts)

    def support(self):
        return sorted(self.counts, key=repr)

    def __repr__(self):
        return f"DimVec({self.counts})"


def seq_dimvec(seq) -> DimVec:
    counts: dict = {}
    for v in seq:
        counts[v] = counts.get(v, 0) + 1
    return DimVec(counts)


def sequences_of(alpha: DimVec):
    """All vertex sequences with dimension vector alpha."""
    import itertools

    letters = []
    for v, c in alpha.counts.items():
        letters += [v] * c
    seen = set()
    for p in itertools.permutations(letters):
        if p not in seen:
            seen.add(p)
            yield p


class WeightX:
    """Element of the weight lattice: finite map vertex -> Z plus an
    optional delta coefficient."""

    __slots__ = ("eps", "delta")

    def __init__(self, eps: dict | None = None, delta: int = 0):
        object.__setattr__(self, "eps", {v: c for v, c in (eps or {}).items() if c})
        object.__setattr__(self, "delta", delta)

    def __setattr__(self, *a):
        raise AttributeError("immutable")

    def __add__(self, other: "WeightX") -> "WeightX":
        eps = dict(self.eps)
        for v, c in other.eps.items():
            eps[v] = eps.get(v, 0) + c
        return WeightX(eps, self.delta + other.delta)

    def __sub__(self, other: "WeightX") -> "WeightX":
        eps = dict(self.eps)
        for v, c in other.eps.items():
            eps[v] = eps.get(v, 0) - c
        return WeightX(eps, self.delta - other.delta)

    def __eq__(self, other):
        return (isinstance(other, WeightX) and self.eps == other.eps
                and self.delta == other.delta)

    def __hash__(self):
        return hash((frozenset(self.eps.items()), self.delta))

    def __bool__(self):
        return bool(self.eps) or bool(self.delta)

    def __repr__(self):
        return f"WeightX({self.eps}, delta={self.delta})"


# ---------------------------------------------------------------------------
# doubling


@dataclass(frozen=True)
class DVert:
    """A vertex of a doubled quiver: provenance tag 0/1/2 plus the base
    vertex it came from."""

    tag: int
    base: Hashable

    def __repr__(self):
        return f"{self.base}^{self.tag}"


class DoubledQuiver(Quiver):
    """The quiver obtained by splitting each vertex of ``split`` into an
    arrow ``i^1 -> i^2``; remembers the base quiver and the split."""

    def __init__(self, base: Quiver, split):
        self.base = base
        self.split = frozenset(split)
        for i in self.split:
            if not base.has_vertex(i):
                raise ValueError("split vertex not in the quiver")
        for i in self.split:
            for j in self.split:
                if base.h(i, j):
                    raise IllegalSplit("arrow inside the split vertex set")
        verts = []
        for i in base.vertices:
            if i in self.split:
                verts += [DVert(1, i), DVert(2, i)]
            else:
                verts.append(DVert(0, i))
        arrows: dict = {}
        for (i, j), m in base.arrows.items():
            src = DVert(2, i) if i in self.split else DVert(0, i)
            dst = DVert(1, j) if j in self.split else DVert(0, j)
            arrows[(src, dst)] = m
        for i in self.split:
            arrows[(DVert(1, i), DVert(2, i))] = 1
        Quiver.__init__(self, verts, arrows, kind="doubled", meta=dict(base.meta))

    # -- relabeling into the standard shape

    def label(self, v: DVert):
        """Name of a doubled vertex in the standard relabeling.

        For a doubled cyclic quiver with split {k} this is the vertex of
        the cyclic quiver with e+1 vertices; for a doubled windowed
        quiver the pair (Upsilon(a) + [tag == 2], b).
        """
        if self.base.kind == "cyclic":
            e = self.base.meta["e"]
            (k,) = self.split
            i = v.base
            if v.tag == 0:
                return i if i < k else i + 1 if i > k else None
            return k if v.tag == 1 else k + 1
        if self.base.kind == "windowed":
            e = self.meta["label_e"]
            k = self.meta["label_k"]
            a, b = v.base
            return (upsilon(a, e, k) + (1 if v.tag == 2 else 0), b)
        raise ValueError("no standard relabeling for this shape")

    # -- the maps phi

    def phi_vertex(self, i) -> tuple:
        """phi on a single base vertex, as a sequence fragment."""
        if i in self.split:
            return (DVert(1, i), DVert(2, i))
        return (DVert(0, i),)

    def phi_seq(self, seq) -> tuple:
        out: list = []
        for i in seq:
            out += self.phi_vertex(i)
        return tuple(out)

    def phi_dimvec(self, alpha: DimVec) -> DimVec:
        counts: dict = {}
        for i, c in alpha.counts.items():
            for v in self.phi_vertex(i):
                counts[v] = counts.get(v, 0) + c
        return DimVec(counts)

    def phi_weight(self, w: WeightX) -> WeightX:
        eps: dict = {}
        for i, c in w.eps.items():
            v = DVert(1, i) if i in self.split else DVert(0, i)
            eps[v] = eps.get(v, 0) + c
        return WeightX(eps, w.delta)

    def phi_seq_inverse(self, seq):
        """The unique base sequence with phi image seq, or None."""
        out = []
        pos = 0
        while pos < len(seq):
            v = seq[pos]
            if v.tag == 0:
                out.append(v.base)
                pos += 1
            elif v.tag == 1:
                if pos + 1 >= len(seq) or seq[pos + 1] != DVert(2, v.base):
                    return None
                out.append(v.base)
                pos += 2
            else:
                return None
        return tuple(out)


def double(base: Quiver, split) -> DoubledQuiver:
    return DoubledQuiver(base, split)


def double_cyclic(e: int, k: int) -> DoubledQuiver:
    """Doubled cyclic quiver with split {k}; isomorphic to the cyclic
    quiver with e+1 vertices via ``label``."""
    if not 0 <= k < e:
        raise ValueError("split vertex out of range")
    return double(Quiver.cyclic(e), {k})


def double_windowed(l: int, a_min: int, a_max: int, e: int, k: int) -> DoubledQuiver:
    """Doubled windowed quiver with split {(a, b): a = k mod e}."""
    base = Quiver.windowed(l, a_min, a_max)
    split = {(a, b) for (a, b) in base.vertices if a % e == k % e}
    dq = double(base, split)
    dq.meta["label_e"] = e
    dq.meta["label_k"] = k
    return dq


# ---------------------------------------------------------------------------
# the index map Upsilon and the residue projection


def upsilon(n: int, e: int, k: int) -> int:
    """The strictly increasing map sending a*e + b (b in [0, e-1]) to
    a*(e+1) + b for b <= k and a*(e+1) + b + 1 for b > k."""
    if e < 2 or not 0 <= k < e:
        raise ValueError("bad parameters")
    a, b = divmod(n, e)
    return a * (e + 1) + b + (0 if b <= k else 1)


def upsilon_tuple(t, e: int, k: int):
    return tuple(upsilon(n, e, k) for n in t)


def pi_e(x, e: int):
    """Projection of a windowed quiver datum onto the cyclic quiver:
    (a, b) -> a mod e, extended to sequences and dimension vectors."""
    if isinstance(x, DimVec):
        counts: dict = {}
        for (a, b), c in x.counts.items():
            counts[a % e] = counts.get(a % e, 0) + c
        return DimVec(counts)
    if isinstance(x, tuple) and len(x) == 2 and all(isinstance(v, int) for v in x):
        return x[0] % e
    return tuple(pi_e(v, e) for v in x)


# ---------------------------------------------------------------------------
# sequence classification on a doubled quiver


class SeqClass(enum.Enum):
    WELL_ORDERED = "WellOrdered"
    UNORDERED = "Unordered"
    NEITHER = "Neither"


def _is_well_ordered(seq) -> bool:
    d = len(seq)
    for a, v in enumerate(seq):
        if v.tag == 1:
            if a + 1 >= d or seq[a + 1] != DVert(2, v.base):
                return False
    return True


def _is_unordered(seq) -> bool:
    ones = twos = 0
    for v in seq:
        if v.tag == 1:
            ones += 1
        elif v.tag == 2:
            twos += 1
        if twos > ones:
            return True
    return False


def classify_seq(seq) -> SeqClass:
    """Exactly one of the three prefix-counting classes."""
    if _is_unordered(seq):
        return SeqClass.UNORDERED
    if _is_well_ordered(seq):
        return SeqClass.WELL_ORDERED
    return SeqClass.NEITHER


def almost_ordered(seq) -> bool:
    """True when the sequence is a single adjacent swap i = s_r(j) of a
    well-ordered sequence j at a position r with j_r split-tagged."""
    for r in range(len(seq) - 1):
        a, b = seq[r], seq[r + 1]
        if a.tag == 2 and b.tag == 1 and a.base == b.base:
            swapped = seq[:r] + (b, a) + seq[r + 2:]
            if _is_well_ordered(swapped):
                return True
    return False
