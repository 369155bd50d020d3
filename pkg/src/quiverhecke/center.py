"""Tuples of polynomials over a truncated coset poset subject to edge
congruences, their Young-subgroup invariants, and the graded-rank
identities for the merge of a singleton block into its neighbor."""

import itertools
from fractions import Fraction

from .weyl import (
    AffPerm,
    coset_reps,
    is_max_rep,
    j_between,
    length,
    longest_element,
    lower_interval,
    one_mu,
    young_gens,
    young_subgroup,
)


class NotMaximal(ValueError):
    """Truncation point is not the longest element of its coset."""


class NotFree(Exception):
    """Graded module basis extraction hit a linear relation."""


def _monomials(nvars, deg):
    """Exponent tuples of total degree deg."""
    if nvars == 1:
        return [(deg,)]
    out = []
    for first in range(deg + 1):
        out += [(first,) + rest for rest in _monomials(nvars - 1, deg - first)]
    return out


class _DSU:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, a):
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


class CongruenceAlgebra:
    """Tuples (z_w) of polynomials in h_0..h_{N-1} (each of degree 2)
    indexed by a finite set of window permutations, with z_w congruent
    to z_{s_r w} modulo h_r whenever both indices are present.

    Divisibility by the variable h_r pins the coefficients of all
    monomials with zero h_r exponent, so every homogeneous constraint
    is an equality of two coefficients and each graded piece has a
    basis of component indicators.
    """

    def __init__(self, elements, extra_orbits=()):
        elements = list(elements)
        if not elements:
            raise ValueError("empty index set")
        self.elements = elements
        self.N = elements[0].N
        index = {w: i for i, w in enumerate(elements)}
        if len(index) != len(elements):
            raise ValueError("repeated index element")
        self.index = index
        edges = []
        for r in range(self.N):
            s = AffPerm.simple(self.N, r)
            for w, i in index.items():
                x = s * w
                j = index.get(x)
                if j is not None and i < j:
                    edges.append((i, j, r))
        self.edges = edges
        # equality constraints independent of the congruence direction,
        # used for invariant subalgebras: orbits of the index set
        self.extra_orbits = [tuple(index[w] for w in orbit)
                             for orbit in extra_orbits]
        self._basis_cache = {}

    def basis(self, d):
        """Indicator basis of the degree-d piece; empty in odd degrees.
        Each element is a frozenset of (element index, monomial) pairs
        carrying coefficient one."""
        if d in self._basis_cache:
            return self._basis_cache[d]
        if d % 2:
            self._basis_cache[d] = []
            return []
        k = d // 2
        monos = _monomials(self.N, k)
        mpos = {m: t for t, m in enumerate(monos)}
        n = len(self.elements) * len(monos)

        def slot(i, m):
            return i * len(monos) + mpos[m]

        dsu = _DSU(n)
        for i, j, r in self.edges:
            for m in monos:
                if m[r] == 0:
                    dsu.union(slot(i, m), slot(j, m))
        for orbit in self.extra_orbits:
            for m in monos:
                for a, b in zip(orbit, orbit[1:]):
                    dsu.union(slot(a, m), slot(b, m))
        comps = {}
        for i in range(len(self.elements)):
            for m in monos:
                comps.setdefault(dsu.find(slot(i, m)), []).append((i, m))
        out = [frozenset(members) for members in comps.values()]
        out.sort(key=lambda c: sorted(c))
        self._basis_cache[d] = out
        return out

    def graded_dims(self, D):
        return [len(self.basis(d)) for d in range(D + 1)]

    def evaluate(self, vec, point):
        """Evaluate a coefficient vector {(i, mono): c} at h = point,
        returning the tuple of rationals over the index set."""
        out = [Fraction(0)] * len(self.elements)
        for (i, m), c in vec.items():
            val = Fraction(1)
            for exp, p in zip(m, point):
                val *= Fraction(p) ** exp
            out[i] += c * val
        return tuple(out)


def structure_basis(elements, D, extra_orbits=()):
    """Per-degree bases of the congruence algebra up to degree D."""
    Z = CongruenceAlgebra(elements, extra_orbits)
    return {d: Z.basis(d) for d in range(D + 1)}


def invariants(v, lam_mu, check_maximal=True):
    """The congruence algebra on the full truncation below v together
    with the orbit identifications for the Young stabilizer of lam_mu;
    its basis elements are exactly the invariant tuples."""
    gens = young_gens(lam_mu)
    if check_maximal and not is_max_rep(v, gens):
        raise NotMaximal("truncation point not longest in its coset")
    low = sorted(lower_interval(v), key=lambda w: (length(w), w.win))
    W = young_subgroup(len(lam_mu), gens)
    seen = set()
    orbits = []
    for w in low:
        if w in seen:
            continue
        orbit = sorted({w * u for u in W}, key=lambda x: (length(x), x.win))
        if any(x not in set(low) for x in orbit):
            raise NotMaximal("truncation not stable under the stabilizer")
        seen.update(orbit)
        orbits.append(tuple(orbit))
    return CongruenceAlgebra(low, extra_orbits=orbits)


# -- linear algebra over the coefficient vectors


def _vec_from_indicator(comp):
    return {key: Fraction(1) for key in comp}


def _vec_mul(a, b):
    """Pointwise product of two tuples of polynomials given as
    coefficient vectors."""
    out = {}
    for (i, m1), c1 in a.items():
        for (j, m2), c2 in b.items():
            if i != j:
                continue
            m = tuple(x + y for x, y in zip(m1, m2))
            key = (i, m)
            out[key] = out.get(key, Fraction(0)) + c1 * c2
    return {k: c for k, c in out.items() if c}


class _RowSpace:
    """Incremental reduced row space over sparse rational vectors."""

    def __init__(self):
        self.rows = []  # (pivot key, vector with pivot coeff 1)

    def reduce(self, vec):
        vec = dict(vec)
        for pivot, row in self.rows:
            c = vec.get(pivot)
            if c:
                for k, rc in row.items():
                    nv = vec.get(k, Fraction(0)) - c * rc
                    if nv:
                        vec[k] = nv
                    else:
                        vec.pop(k, None)
        return vec

    def insert(self, vec):
        """Reduce and insert; returns True if the vector was new."""
        vec = self.reduce(vec)
        if not vec:
            return False
        pivot = min(vec)
        inv = Fraction(1) / vec[pivot]
        self.rows.append((pivot, {k: c * inv for k, c in vec.items()}))
        return True

    def insert_rref(self, vec):
        """Insert keeping the rows fully reduced against each other,
        so that back substitution off the pivots is immediate."""
        vec = self.reduce(vec)
        if not vec:
            return False
        pivot = min(vec)
        inv = Fraction(1) / vec[pivot]
        vec = {k: c * inv for k, c in vec.items()}
        for t, (p, row) in enumerate(self.rows):
            c = row.get(pivot)
            if c:
                nr = dict(row)
                for k, rc in vec.items():
                    nv = nr.get(k, Fraction(0)) - c * rc
                    if nv:
                        nr[k] = nv
                    else:
                        nr.pop(k, None)
                self.rows[t] = (p, nr)
        self.rows.append((pivot, vec))
        return True


def free_module_rank(Z_big, Z_small, D):
    """Certify that the degreewise span of the smaller algebra's basis
    times extracted generators exhausts the bigger one freely; returns
    the sorted generator degrees.  Raises NotFree on a relation."""
    gens = []  # (degree, coefficient vector)
    for d in range(0, D + 1, 2):
        target = [_vec_from_indicator(c) for c in Z_big.basis(d)]
        span = _RowSpace()
        for gdeg, gvec in gens:
            for b in Z_small.basis(d - gdeg):
                prod = _vec_mul(_vec_from_indicator(b), gvec)
                if not span.insert(prod):
                    raise NotFree("relation in degree %d" % d)
        for t in target:
            if span.reduce(t):
                gens.append((d, t))
                if not span.insert(t):
                    raise NotFree("generator insertion failed")
        # the span never leaves the invariant subspace, so exhausting
        # the target dimension is full surjectivity
        if len(span.rows) != len(target):
            raise NotFree("span exceeds target in degree %d" % d)
    return sorted(deg for deg, _ in gens)


# -- merge reports


def merged_composition(mu, k):
    """mu with the singleton part at position k (0-based) absorbed into
    the following part."""
    if mu[k] != 1:
        raise ValueError("part at the merge position must be 1")
    mup = list(mu)
    mup[k] = 0
    mup[k + 1] += 1
    return tuple(mup)


def poincare_factorization(mu, k, v):
    """Combinatorial shadow of the cell decomposition: the truncated
    minimal representatives for mu are products of those for the merged
    composition with the finite relative representatives, with lengths
    adding; the codimension generating series factor accordingly."""
    mup = merged_composition(mu, k)
    lam, lamp = one_mu(mu), one_mu(mup)
    N = len(lam)
    J_mu = coset_reps(lam, v)
    J_mup = coset_reps(lamp, v)
    J_rel = j_between(lamp, lam)
    wmu = longest_element(young_subgroup(N, young_gens(lam)))
    wmup = longest_element(young_subgroup(N, young_gens(lamp)))
    gap_ok = length(wmup) - length(wmu) == mu[k + 1]

    cell = {}
    additive = True
    for w in J_mup:
        for x in J_rel:
            y = w * x
            cell[y] = (w, x)
            if length(y) != length(w) + length(x):
                additive = False
    bijection_ok = additive and set(cell) == set(J_mu) \
        and len(cell) == len(J_mup) * len(J_rel)

    def series(reps, wpar):
        top = length(v * wpar)
        poly = {}
        for w in reps:
            key = 2 * (top - length(w))
            poly[key] = poly.get(key, 0) + 1
        return poly

    lhs = series(J_mu, wmu)
    rhs_factor = series(J_mup, wmup)
    rel = {2 * length(x): 1 for x in J_rel}
    prod = {}
    for a, ca in rhs_factor.items():
        for b, cb in rel.items():
            prod[a + b] = prod.get(a + b, 0) + ca * cb
    return {
        "gap_ok": gap_ok,
        "bijection_ok": bijection_ok,
        "factorization_ok": lhs == prod,
        "sizes": (len(J_mu), len(J_mup), len(J_rel)),
    }


def res_ind_report(mu, k, v, D=8):
    """Full report for the merge at position k: the combinatorial
    factorization plus certified freeness of the invariant algebra for
    mu over the one for the merged composition, with graded rank
    1 + q^2 + ... + q^{2 mu_{k+1}}; shifts of the composed round trip
    follow the convention that restriction carries <-mu_{k+1}>."""
    mup = merged_composition(mu, k)
    lam, lamp = one_mu(mu), one_mu(mup)
    if not is_max_rep(v, young_gens(lamp)):
        raise NotMaximal("truncation point not longest in its coset")
    comb = poincare_factorization(mu, k, v)

    N = len(lam)
    reps_mu = coset_reps(lam, v)
    reps_mup = coset_reps(lamp, v)
    W_mu = young_subgroup(N, young_gens(lam))
    W_mup = young_subgroup(N, young_gens(lamp))
    G = MomentGraph(reps_mu, W_mu)
    Gp = MomentGraph(reps_mup, W_mup)
    pidx = {w: t for t, w in enumerate(reps_mup)}
    fibers = {}
    for i, x in enumerate(reps_mu):
        vi = pidx[_coset_min(x, young_gens(lamp))]
        fibers.setdefault(vi, []).append(i)

    # independent route: the quotient dimensions must agree with the
    # cell counts graded by length (the closure order of the graph has
    # larger cells at larger length, the mirror of the codimension
    # series used in the factorization above)
    def cell_dims(reps):
        dims = [0] * (D + 1)
        for w in reps:
            d = 2 * length(w)
            if d <= D:
                dims[d] += 1
        return dims

    dims_ok = (G.quotient_dims(D) == cell_dims(reps_mu)
               and Gp.quotient_dims(D) == cell_dims(reps_mup))

    gen_degs = quotient_module_rank(G, Gp, fibers, D)
    expected = [2 * r for r in range(mu[k + 1] + 1) if 2 * r <= D]
    return {
        "mu": tuple(mu), "merged": mup, "k": k, "window": v.win, "D": D,
        "poincare": comb,
        "cohomology_dims_ok": dims_ok,
        "generator_degrees": gen_degs,
        "rank_ok": gen_degs == expected,
        "res_shift": -mu[k + 1],
        "round_trip_shifts": [2 * r - mu[k + 1]
                              for r in range(mu[k + 1] + 1)],
    }


# -- fixed-point graphs with root labels
#
# The graded rank identity for the merge lives on the finite
# dimensional quotients, where every reflection between two cosets in
# the truncation contributes a congruence modulo its own root, not
# just the simple ones.  Vertices are minimal coset representatives;
# coordinates are y_1..y_{N-1} (with y_N = 0) and the period class.


def _is_reflection(t):
    if t.shift() != 0:
        return False
    if t * t != AffPerm.identity(t.N):
        return False
    moved = [i for i in range(1, t.N + 1) if t.apply(i) != i]
    return len(moved) == 2


def _root_form(t):
    """Linear form of the reflection swapping classes i and j + nN, in
    the coordinates (y_1, .., y_{N-1}, period)."""
    N = t.N
    i, j = [p for p in range(1, N + 1) if t.apply(p) != p]
    n = (t.apply(i) - j) // N
    form = [Fraction(0)] * N
    if i < N:
        form[i - 1] += 1
    if j < N:
        form[j - 1] -= 1
    form[N - 1] = Fraction(-n)
    # sign-normalize so parallel labels coincide
    for c in form:
        if c:
            if c < 0:
                form = [-x for x in form]
            break
    return tuple(form)


def _subst_expand(mono, pivot, repl, nvars):
    """Expand a monomial after substituting the pivot variable by the
    linear form repl (a var -> coefficient map)."""
    out = {tuple(0 for _ in range(nvars)): Fraction(1)}
    for var, exp in enumerate(mono):
        for _ in range(exp):
            nxt = {}
            if var == pivot:
                terms = repl.items()
            else:
                terms = [(var, Fraction(1))]
            for m, c in out.items():
                for tv, tc in terms:
                    mm = list(m)
                    mm[tv] += 1
                    key = tuple(mm)
                    nxt[key] = nxt.get(key, Fraction(0)) + c * tc
            out = {k: c for k, c in nxt.items() if c}
    return out


class MomentGraph:
    """Finite fixed-point graph of a truncated parabolic quotient:
    vertices are the minimal coset representatives, an edge joins two
    vertices whenever some reflection exchanges their cosets, and the
    edge carries the root form of that reflection."""

    def __init__(self, reps, stabilizer):
        self.reps = list(reps)
        self.N = self.reps[0].N
        self.nvars = self.N  # y_1..y_{N-1} and the period class
        index = {w: i for i, w in enumerate(self.reps)}
        edges = {}
        stab = list(stabilizer)
        for i, x in enumerate(self.reps):
            xinv = x.inverse()
            for j in range(i + 1, len(self.reps)):
                y = self.reps[j]
                forms = set()
                for u in stab:
                    t = y * u * xinv
                    if _is_reflection(t):
                        forms.add(_root_form(t))
                for f in forms:
                    edges.setdefault((i, j), set()).add(f)
        self.edges = [(i, j, f) for (i, j), fs in sorted(edges.items())
                      for f in sorted(fs)]
        self._ht_cache = {}
        self._mod_cache = {}

    # structure ring, degreewise

    def ht_basis(self, k):
        """Basis of the degree-2k piece of the compatible-tuple ring:
        tuples of degree-k polynomials whose differences along each
        edge vanish on the edge's root hyperplane."""
        if k in self._ht_cache:
            return self._ht_cache[k]
        monos = _monomials(self.nvars, k)
        slots = [(vi, m) for vi in range(len(self.reps)) for m in monos]
        pos = {s: t for t, s in enumerate(slots)}
        space = _RowSpace()
        for i, j, form in self.edges:
            pivot = max(t for t, c in enumerate(form) if c)
            repl = {t: -c / form[pivot]
                    for t, c in enumerate(form) if c and t != pivot}
            grouped = {}
            for m in monos:
                for rm, c in _subst_expand(m, pivot, repl,
                                           self.nvars).items():
                    row = grouped.setdefault(rm, {})
                    row[pos[(i, m)]] = row.get(pos[(i, m)],
                                               Fraction(0)) + c
                    row[pos[(j, m)]] = row.get(pos[(j, m)],
                                               Fraction(0)) - c
            for row in grouped.values():
                row = {k2: v for k2, v in row.items() if v}
                if row:
                    space.insert_rref(row)
        pivots = {p for p, _ in space.rows}
        basis = []
        for t, slot in enumerate(slots):
            if t in pivots:
                continue
            vec = {slot: Fraction(1)}
            for p, row in space.rows:
                c = row.get(t)
                if c:
                    vec[slots[p]] = -c
            basis.append(vec)
        self._ht_cache[k] = basis
        return basis

    def _mod_rows(self, k):
        """Row space of the span of positive-degree scalar multiples
        inside degree 2k."""
        if k in self._mod_cache:
            return self._mod_cache[k]
        space = _RowSpace()
        for j in range(1, k + 1):
            for f in _monomials(self.nvars, j):
                for z in self.ht_basis(k - j):
                    space.insert(_scale_mono(z, f))
        self._mod_cache[k] = space
        return space

    def quotient_dims(self, D):
        """Graded dimensions of the structure ring modulo the ideal of
        positive-degree scalars (even degrees up to D)."""
        out = []
        for d in range(D + 1):
            if d % 2:
                out.append(0)
                continue
            k = d // 2
            out.append(len(self.ht_basis(k)) - len(self._mod_rows(k).rows))
        return out


def _scale_mono(vec, f):
    return {(vi, tuple(a + b for a, b in zip(m, f))): c
            for (vi, m), c in vec.items()}


def _pullback(vec, fibers):
    out = {}
    for (vi, m), c in vec.items():
        for i in fibers.get(vi, ()):
            out[(i, m)] = c
    return out


def _quotient_basis(G, k):
    """Representatives of the degree-2k quotient classes."""
    span = _RowSpace()
    span.rows = list(G._mod_rows(k).rows)
    out = []
    for z in G.ht_basis(k):
        if span.insert(z):
            out.append(z)
    return out


def _coset_min(w, gens):
    while True:
        lw = length(w)
        for r in gens:
            x = w * AffPerm.simple(w.N, r)
            if length(x) < lw:
                w = x
                break
        else:
            return w


def quotient_module_rank(G, Gp, fibers, D):
    """Generator degrees of the big quotient ring over the small one,
    via greedy graded extraction with freeness checked at each insert;
    raises NotFree on any relation."""
    gens = []
    for d in range(0, D + 1, 2):
        k = d // 2
        span = _RowSpace()
        span.rows = list(G._mod_rows(k).rows)
        for gdeg, gvec in gens:
            for b in _quotient_basis(Gp, (d - gdeg) // 2):
                prod = _vec_mul(_pullback(b, fibers), gvec)
                if not span.insert(prod):
                    raise NotFree("relation in degree %d" % d)
        for z in G.ht_basis(k):
            if span.insert(z):
                gens.append((d, z))
        if len(span.rows) != len(G.ht_basis(k)):
            raise NotFree("span mismatch in degree %d" % d)
    return sorted(deg for deg, _ in gens)
