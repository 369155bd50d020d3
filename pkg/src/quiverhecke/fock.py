"""Multi-partitions, box residues, finite-window wedge spaces with
raising and lowering operators, the index-stretching embedding between
neighboring levels, and the weight bookkeeping that converts integer
weight vectors to root-lattice data.

The infinite wedge space is modeled on a finite index window; any
operation that would push an index outside the window raises
``WindowOverflow`` instead of truncating.
"""

from __future__ import annotations

from fractions import Fraction

from .quiver import (
    DimVec,
    WeightX,
    WindowOverflow,
    upsilon,
    upsilon_tuple,
)

__all__ = [
    "ShapeViolation",
    "NotInRootLattice",
    "MultiPartition",
    "WedgeVec",
    "residues",
    "residues_deformed",
    "f_apply",
    "e_apply",
    "wedge_weight",
    "embed_upsilon",
    "bracket_check",
    "wt_delta",
    "delta_diff_to_dimvec",
    "rho_weight",
    "rho_nu",
    "beta",
    "omega",
    "is_nu_dominant",
    "one_weight",
]


class ShapeViolation(ValueError):
    """A multi-partition does not fit the given composition."""


class NotInRootLattice(ValueError):
    """A weight is not an integer combination of simple roots."""


class MultiPartition:
    """A tuple of partitions; each component has weakly decreasing
    positive parts."""

    __slots__ = ("parts",)

    def __init__(self, parts):
        parts = tuple(tuple(p) for p in parts)
        for p in parts:
            for t, v in enumerate(p):
                if v <= 0 or not isinstance(v, int):
                    raise ValueError("parts must be positive integers")
                if t and p[t - 1] < v:
                    raise ValueError("parts must weakly decrease")
        object.__setattr__(self, "parts", parts)

    def __setattr__(self, *a):
        raise AttributeError("immutable")

    @property
    def levels(self) -> int:
        return len(self.parts)

    def size(self) -> int:
        return sum(sum(p) for p in self.parts)

    def lengths(self) -> tuple:
        return tuple(len(p) for p in self.parts)

    def boxes(self):
        """Yield (component, row, column), all 0-based."""
        for r, p in enumerate(self.parts):
            for i, row_len in enumerate(p):
                for j in range(row_len):
                    yield r, i, j

    def __eq__(self, other):
        return isinstance(other, MultiPartition) and self.parts == other.parts

    def __hash__(self):
        return hash(self.parts)

    def __repr__(self):
        return f"MultiPartition({self.parts})"


def residues(lam: MultiPartition, nu, e: int) -> DimVec:
    """Sum of alpha_i over the boxes, i the box residue mod e."""
    counts: dict = {}
    for r, i, j in lam.boxes():
        res = (nu[r] + j - i) % e
        counts[res] = counts.get(res, 0) + 1
    return DimVec(counts)


def residues_deformed(lam: MultiPartition, nu, quiver) -> DimVec:
    """Deformed variant over a windowed quiver; the vertex for a box in
    component r is (nu_r + column - row, r + 1)."""
    a_min = quiver.meta["a_min"]
    a_max = quiver.meta["a_max"]
    counts: dict = {}
    for r, i, j in lam.boxes():
        a = nu[r] + j - i
        if not a_min <= a <= a_max:
            raise WindowOverflow(f"deformed residue {a} outside window")
        v = (a, r + 1)
        counts[v] = counts.get(v, 0) + 1
    return DimVec(counts)


# ---------------------------------------------------------------------------
# wedge spaces


def _sort_block(block):
    """Sort a block strictly decreasing; return (key, sign) or None when
    an index repeats."""
    if len(set(block)) != len(block):
        return None
    inversions = 0
    items = list(block)
    for a in range(len(items)):
        for b in range(a + 1, len(items)):
            if items[a] < items[b]:
                inversions += 1
    return tuple(sorted(items, reverse=True)), (-1) ** inversions


class WedgeVec:
    """Finite linear combination of tensor products of wedge monomials.

    Basis keys are tuples of l blocks; block r holds nu_r strictly
    decreasing integers inside the window [m_lo, m_hi].
    """

    __slots__ = ("window", "nu", "terms")

    def __init__(self, window, nu, terms: dict | None = None):
        m_lo, m_hi = window
        nu = tuple(nu)
        clean: dict = {}
        for key, c in (terms or {}).items():
            if not c:
                continue
            key = tuple(tuple(b) for b in key)
            if len(key) != len(nu):
                raise ValueError("wrong number of blocks")
            for r, block in enumerate(key):
                if len(block) != nu[r]:
                    raise ValueError("wrong block size")
                for t, m in enumerate(block):
                    if not m_lo <= m <= m_hi:
                        raise WindowOverflow(f"index {m} outside window")
                    if t and block[t - 1] <= m:
                        raise ValueError("block must strictly decrease")
            clean[key] = clean.get(key, 0) + c
        object.__setattr__(self, "window", (m_lo, m_hi))
        object.__setattr__(self, "nu", nu)
        object.__setattr__(self, "terms",
                           {k: c for k, c in clean.items() if c})

    def __setattr__(self, *a):
        raise AttributeError("immutable")

    @staticmethod
    def basis(window, nu, key) -> "WedgeVec":
        return WedgeVec(window, nu, {tuple(tuple(b) for b in key): Fraction(1)})

    def _compatible(self, other):
        if self.window != other.window or self.nu != other.nu:
            raise ValueError("mismatched wedge spaces")

    def __add__(self, other: "WedgeVec") -> "WedgeVec":
        self._compatible(other)
        terms = dict(self.terms)
        for k, c in other.terms.items():
            terms[k] = terms.get(k, 0) + c
        return WedgeVec(self.window, self.nu, terms)

    def __neg__(self) -> "WedgeVec":
        return WedgeVec(self.window, self.nu,
                        {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "WedgeVec") -> "WedgeVec":
        return self + (-other)

    def __mul__(self, scalar) -> "WedgeVec":
        return WedgeVec(self.window, self.nu,
                        {k: c * scalar for k, c in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        return (isinstance(other, WedgeVec) and self.window == other.window
                and self.nu == other.nu and self.terms == other.terms)

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"WedgeVec({self.window}, nu={self.nu}, {self.terms})"


def _shift_apply(v: WedgeVec, e: int, residue: int, step: int) -> WedgeVec:
    """Leibniz extension of the index shift m -> m + step applied at
    every index of residue ``residue`` (mod e)."""
    m_lo, m_hi = v.window
    out: dict = {}
    for key, c in v.terms.items():
        for r, block in enumerate(key):
            for t, m in enumerate(block):
                if m % e != residue % e:
                    continue
                m2 = m + step
                if not m_lo <= m2 <= m_hi:
                    raise WindowOverflow(f"shifted index {m2} outside window")
                sorted_block = _sort_block(block[:t] + (m2,) + block[t + 1:])
                if sorted_block is None:
                    continue
                nb, sign = sorted_block
                nk = key[:r] + (nb,) + key[r + 1:]
                out[nk] = out.get(nk, 0) + sign * c
    return WedgeVec(v.window, v.nu, out)


def f_apply(i: int, v: WedgeVec, e: int) -> WedgeVec:
    """Lowering operator: sends u_m to u_{m+1} at every index m = i mod e."""
    return _shift_apply(v, e, i, +1)


def e_apply(i: int, v: WedgeVec, e: int) -> WedgeVec:
    """Raising operator: sends u_m to u_{m-1} at every index m = i+1 mod e."""
    return _shift_apply(v, e, i + 1, -1)


def wedge_weight(key, e: int) -> WeightX:
    """Weight of a basis key: sum of eps over the residues of its indices."""
    eps: dict = {}
    for block in key:
        for m in block:
            eps[m % e] = eps.get(m % e, 0) + 1
    return WeightX(eps)


def embed_upsilon(v: WedgeVec, e: int, k: int,
                  window: tuple | None = None) -> WedgeVec:
    """Map each basis index through the stretching map; strictly
    increasing, so keys map without resigning."""
    m_lo, m_hi = v.window
    if window is None:
        window = (upsilon(m_lo, e, k), upsilon(m_hi, e, k))
    terms = {}
    for key, c in v.terms.items():
        nk = tuple(upsilon_tuple(b, e, k) for b in key)
        terms[nk] = c
    return WedgeVec(window, v.nu, terms)


def bracket_check(k: int, key, e: int, nu, window) -> bool:
    """The embedding intertwines each lowering operator at level e with
    the matching operator (or commutator of operators) at level e + 1,
    and dually for the raising operators."""
    v = WedgeVec.basis(window, nu, key)
    m_lo, m_hi = window
    big = (upsilon(m_lo, e, k) - 2, upsilon(m_hi, e, k) + 2)

    def emb(u):
        return embed_upsilon(u, e, k, big)

    eb = e + 1
    w = emb(v)
    for i in range(e):
        if i < k:
            f_bar = f_apply(i, w, eb)
            e_bar = e_apply(i, w, eb)
        elif i == k:
            f_bar = (f_apply(k + 1, f_apply(k, w, eb), eb)
                     - f_apply(k, f_apply(k + 1, w, eb), eb))
            e_bar = (e_apply(k, e_apply(k + 1, w, eb), eb)
                     - e_apply(k + 1, e_apply(k, w, eb), eb))
        else:
            f_bar = f_apply(i + 1, w, eb)
            e_bar = e_apply(i + 1, w, eb)
        if emb(f_apply(i, v, e)) != f_bar:
            return False
        if emb(e_apply(i, v, e)) != e_bar:
            return False
    return True


# ---------------------------------------------------------------------------
# weights and the root lattice


def wt_delta(lam, e: int) -> WeightX:
    """Residue weight of an integer vector plus its total size on the
    delta coordinate."""
    eps: dict = {}
    for m in lam:
        eps[m % e] = eps.get(m % e, 0) + 1
    return WeightX(eps, delta=sum(lam))


def delta_diff_to_dimvec(xi: WeightX, e: int) -> DimVec:
    """Invert the delta-extended root embedding alpha_i = eps_i -
    eps_{i+1} - delta; the extension is injective, so the preimage is
    unique when it exists."""
    c = [xi.eps.get(j, 0) for j in range(e)]
    for j in xi.eps:
        if not 0 <= j < e:
            raise NotInRootLattice(f"unknown vertex {j}")
    if sum(c) != 0:
        raise NotInRootLattice("eps coefficients do not sum to zero")
    # d_j - d_{j-1} = c_j with sum(d) = -delta
    partial = [0] * e
    for j in range(1, e):
        partial[j] = partial[j - 1] + c[j]
    num = -xi.delta - sum(partial)
    if num % e:
        raise NotInRootLattice("delta coefficient inconsistent")
    d0 = num // e
    return DimVec({j: d0 + partial[j] for j in range(e)})


def rho_weight(N: int) -> tuple:
    return tuple(-r for r in range(N))


def rho_nu(nu) -> tuple:
    out = []
    for n in nu:
        out += list(range(n, 0, -1))
    return tuple(out)


def beta(nu, e: int, k: int) -> DimVec:
    """Root-lattice defect of the stretching map on the staircase
    weight of the composition."""
    rho = rho_nu(nu)
    diff = wt_delta(rho, e + 1) - wt_delta(upsilon_tuple(rho, e, k), e + 1)
    out = delta_diff_to_dimvec(diff, e + 1)
    if not out.is_nonnegative():
        raise NotInRootLattice("defect has a negative coefficient")
    return out


def omega(lam: MultiPartition, nu) -> tuple:
    """Pad the multi-partition to an integer vector of length N and
    shift by the staircases."""
    if lam.levels != len(nu):
        raise ShapeViolation("wrong number of components")
    padded = []
    for r, p in enumerate(lam.parts):
        if len(p) > nu[r]:
            raise ShapeViolation("component longer than its block")
        padded += list(p) + [0] * (nu[r] - len(p))
    N = len(padded)
    rho = rho_weight(N)
    rnu = rho_nu(nu)
    return tuple(padded[r] - rho[r] + rnu[r] for r in range(N))


def is_nu_dominant(w, nu) -> bool:
    """Strictly decreasing inside each block of the composition."""
    bounds = set()
    acc = 0
    for n in nu[:-1]:
        acc += n
        bounds.add(acc)
    return all(w[r] > w[r + 1] for r in range(len(w) - 1)
               if r + 1 not in bounds)


def one_weight(a: dict, e: int, convention: str = "standard") -> tuple:
    """Anti-dominant orbit representative with residue multiplicities a
    (a map residue -> count). Two conventions are exposed: values run
    over [1, e] or over [0, e-1]."""
    if convention == "standard":
        values = list(range(1, e + 1))
    elif convention == "shifted":
        values = list(range(e))
    else:
        raise ValueError("unknown convention")
    out = []
    for val in values:
        out += [val] * a.get(val % e, 0)
    return tuple(out)
