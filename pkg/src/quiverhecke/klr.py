"""Quiver Hecke algebras over a fixed dimension vector.

Elements are stored in the normal form tau_w x^a e(i) (crossing word,
then dots, then idempotent).  Multiplication rewrites products back to
normal form by replaying elementary word moves (commutations and braid
moves) along an explicit path between reduced words; every braid move
contributes a correction term of strictly smaller crossing length, so
the rewriting terminates.  The polynomial representation is implemented
separately and serves as an independent check on the product.
"""

import math
from fractions import Fraction

from .quiver import DimVec, Quiver, seq_dimvec, sequences_of
from .scalars import (
    MultiPoly,
    Perm,
    all_perms,
    demazure,
    perm_act,
    poly_var,
)


def _compositions(n: int, k: int):
    """All tuples of k nonnegative integers with sum n."""
    if k == 0:
        if n == 0:
            yield ()
        return
    for first in range(n + 1):
        for rest in _compositions(n - first, k - 1):
            yield (first,) + rest


def _row_insert(pivots: dict, vec: dict) -> bool:
    """Reduce vec against the pivot rows and insert the remainder;
    returns True when the rank grew.  Rows are kept pivot-normalized."""
    vec = {k: c for k, c in vec.items() if c}
    while vec:
        p = min(vec)
        row = pivots.get(p)
        if row is None:
            c = vec[p]
            pivots[p] = {q: cf / c for q, cf in vec.items()}
            return True
        c = vec[p]
        for q, cf in row.items():
            v = vec.get(q, 0) - c * cf
            if v:
                vec[q] = v
            else:
                vec.pop(q, None)
    return False


def _row_member(pivots: dict, vec: dict) -> bool:
    vec = {k: c for k, c in vec.items() if c}
    while vec:
        p = min(vec)
        row = pivots.get(p)
        if row is None:
            return False
        c = vec[p]
        for q, cf in row.items():
            v = vec.get(q, 0) - c * cf
            if v:
                vec[q] = v
            else:
                vec.pop(q, None)
    return True


class IndexOutOfRange(IndexError):
    pass


class ContextMismatch(ValueError):
    pass


class Unstable(Exception):
    """Raised when the truncated cyclotomic computation cannot certify
    nilpotency of the dots within the given exponent bound."""

    def __init__(self, bound):
        super().__init__(f"no nilpotency certificate below exponent bound {bound}")
        self.bound = bound


class KLRContext:
    """All data attached to one algebra: the quiver, the dimension
    vector, the idempotent sequences, and the rewriting caches."""

    def __init__(self, quiver: Quiver, alpha: DimVec):
        self.quiver = quiver
        self.alpha = alpha
        self.d = alpha.height()
        self.seqs = tuple(sequences_of(alpha))
        self._word_nf_cache: dict = {}
        self._path_cache: dict = {}
        self._concat_cache: dict = {}
        self._zero_exp = (0,) * self.d
        self._id = Perm.identity(self.d)

    # -- polynomial helpers ------------------------------------------------

    def xvar(self, r: int) -> MultiPoly:
        return poly_var(self.d, r)

    def p_poly(self, a, b, r: int) -> MultiPoly:
        """P_{a,b}(x_{r+1}, x_r) = (x_{r+1} - x_r)^{h(b,a)}."""
        return (self.xvar(r + 1) - self.xvar(r)) ** self.quiver.h(b, a)

    def q_poly(self, a, b, r: int) -> MultiPoly:
        """Q_{a,b}(x_r, x_{r+1}): zero when a == b, otherwise
        (x_{r+1} - x_r)^{h(a,b)} (x_r - x_{r+1})^{h(b,a)}."""
        if a == b:
            return MultiPoly(self.d)
        u, v = self.xvar(r), self.xvar(r + 1)
        return (v - u) ** self.quiver.h(a, b) * (u - v) ** self.quiver.h(b, a)

    def braid_correction(self, j, r: int):
        """The polynomial C with tau_r tau_{r+1} tau_r e(j) =
        tau_{r+1} tau_r tau_{r+1} e(j) + C e(j); None when it vanishes."""
        if j[r] != j[r + 2]:
            return None
        u, v, w = self.xvar(r), self.xvar(r + 1), self.xvar(r + 2)
        # sign fixed by the polynomial representation, which is the
        # authority for all rewriting conventions here
        diff = self.q_poly(j[r], j[r + 1], r) \
            - self.q_poly(j[r], j[r + 1], r).substitute({r: w, r + 1: v})
        quot = diff.exact_div(w - u)
        if quot is None:
            raise ArithmeticError("braid correction is not polynomial")
        return quot

    # -- reduced-word moves ------------------------------------------------

    def _path(self, u: tuple, c: tuple) -> tuple:
        """A sequence of elementary moves transforming the reduced word u
        into the reduced word c (same permutation).  Moves are ('c', p)
        swapping distant letters at p, p+1 and ('b', p) replacing the
        pattern (a, b, a) at positions p..p+2 by (b, a, b)."""
        if u == c:
            return ()
        key = (u, c)
        hit = self._path_cache.get(key)
        if hit is not None:
            return hit
        if u[0] == c[0]:
            moves = tuple((kind, p + 1) for kind, p in self._path(u[1:], c[1:]))
        else:
            r, t = u[0], c[0]
            if abs(r - t) >= 2:
                head, mid, swapped = (r, t), ("c", 0), (t, r)
            else:
                head, mid, swapped = (r, t, r), ("b", 0), (t, r, t)
            w = Perm.from_word(self.d, u)
            block = Perm.from_word(self.d, head)
            z = block.inverse() * w
            if z.length() != w.length() - len(head):
                raise AssertionError("both first letters must be descents")
            tail = z.reduced_word()
            moves = (self._path(u, head + tail) + (mid,)
                     + self._path(swapped + tail, c))
        self._path_cache[key] = moves
        return moves

    # -- normal-form kernel ------------------------------------------------
    # Terms are dicts {(Perm, exponent tuple): coefficient}; the right
    # idempotent sequence i is fixed per call.

    @staticmethod
    def _acc(dst: dict, key, c):
        v = dst.get(key, 0) + c
        if v:
            dst[key] = v
        else:
            dst.pop(key, None)

    def _replay(self, u: tuple, c: tuple, i: tuple) -> dict:
        """Corrections with tau_u e(i) = tau_c e(i) + corrections, for
        reduced words u, c of the same permutation."""
        corr: dict = {}
        cur = list(u)
        for kind, p in self._path(u, c):
            if kind == "b":
                a, b = cur[p], cur[p + 1]
                suffix = tuple(cur[p + 3:])
                j = Perm.from_word(self.d, suffix).act_seq(i)
                r = min(a, b)
                cpoly = self.braid_correction(j, r)
                if cpoly is not None:
                    sign = 1 if a < b else -1
                    terms = self._word_nf(suffix, i)
                    terms = self._poly_mul_left(cpoly, terms, i)
                    for t in reversed(cur[:p]):
                        terms = self._tau_prepend(t, terms, i)
                    for key, cf in terms.items():
                        self._acc(corr, key, sign * cf)
                cur[p:p + 3] = [b, a, b]
            else:
                cur[p], cur[p + 1] = cur[p + 1], cur[p]
        if tuple(cur) != c:
            raise AssertionError("move replay did not reach the target word")
        return corr

    def _word_nf(self, u: tuple, i: tuple) -> dict:
        """Normal form of tau_u e(i).  Supports reduced words and words
        of the shape (letter,) + reduced."""
        key = (u, i)
        hit = self._word_nf_cache.get(key)
        if hit is not None:
            return hit
        w = Perm.from_word(self.d, u)
        if w.length() == len(u):
            res = {(w, self._zero_exp): Fraction(1)}
            for k2, cf in self._replay(u, w.reduced_word(), i).items():
                self._acc(res, k2, cf)
        else:
            t, rest = u[0], u[1:]
            z = Perm.from_word(self.d, rest)
            if z.length() != len(rest):
                raise AssertionError("unsupported word shape")
            z1 = Perm.transposition(self.d, t) * z
            # tau_rest = tau_{(t,) + can(z1)} + corrections
            corr = self._replay(rest, (t,) + z1.reduced_word(), i)
            m = z1.act_seq(i)
            res = self._poly_mul_left(
                self.q_poly(m[t], m[t + 1], t),
                {(z1, self._zero_exp): Fraction(1)}, i)
            for k2, cf in self._tau_prepend_terms(t, corr, i).items():
                self._acc(res, k2, cf)
        self._word_nf_cache[key] = res
        return res

    def _tau_prepend(self, t: int, terms: dict, i: tuple) -> dict:
        return self._tau_prepend_terms(t, terms, i)

    def _tau_prepend_terms(self, t: int, terms: dict, i: tuple) -> dict:
        out: dict = {}
        for (w, exp), cf in terms.items():
            for (w2, exp2), cf2 in self._word_nf((t,) + w.reduced_word(), i).items():
                key = (w2, tuple(a + b for a, b in zip(exp2, exp)))
                self._acc(out, key, cf * cf2)
        return out

    def _push_poly(self, f: MultiPoly, v: Perm, i: tuple) -> dict:
        """Normal form of f · tau_v e(i) (dots moved to the right)."""
        if not f:
            return {}
        if v.length() == 0:
            return {(self._id, mono): cf for mono, cf in f.terms.items()}
        t = v.reduced_word()[0]
        v1 = Perm.transposition(self.d, t) * v
        m = v1.act_seq(i)
        out = self._tau_prepend_terms(
            t, self._push_poly(perm_act(Perm.transposition(self.d, t), f), v1, i), i)
        if m[t] == m[t + 1]:
            for key, cf in self._push_poly(demazure(t, f), v1, i).items():
                self._acc(out, key, cf)
        return out

    def _poly_mul_left(self, f: MultiPoly, terms: dict, i: tuple) -> dict:
        out: dict = {}
        for (w, exp), cf in terms.items():
            for (w2, exp2), cf2 in self._push_poly(f, w, i).items():
                key = (w2, tuple(a + b for a, b in zip(exp2, exp)))
                self._acc(out, key, cf * cf2)
        return out

    def _tau_concat(self, w: Perm, v: Perm, i: tuple) -> dict:
        """Normal form of tau_w tau_v e(i)."""
        key = (w, v, i)
        hit = self._concat_cache.get(key)
        if hit is not None:
            return hit
        terms = {(v, self._zero_exp): Fraction(1)}
        for t in reversed(w.reduced_word()):
            terms = self._tau_prepend_terms(t, terms, i)
        self._concat_cache[key] = terms
        return terms

    # -- public element constructors ---------------------------------------

    def zero(self) -> "KLRElement":
        return KLRElement(self, {})

    def monomial(self, w: Perm, exp: tuple, i: tuple, coeff=Fraction(1)) -> "KLRElement":
        return KLRElement(self, {(w, tuple(exp), tuple(i)): coeff})

    def from_poly(self, f: MultiPoly, i) -> "KLRElement":
        """The element f(x) e(i)."""
        i = tuple(i)
        return KLRElement(self, {(self._id, mono, i): c for mono, c in f.terms.items()})

    def one(self) -> "KLRElement":
        terms = {(self._id, self._zero_exp, i): Fraction(1) for i in self.seqs}
        return KLRElement(self, terms)

    def generator(self, kind: str, index, i) -> "KLRElement":
        i = tuple(i)
        if seq_dimvec(i) != self.alpha:
            raise IndexOutOfRange(f"sequence {i} has the wrong dimension vector")
        if kind == "e":
            return self.monomial(self._id, self._zero_exp, i)
        if kind == "x":
            if not 0 <= index < self.d:
                raise IndexOutOfRange(f"dot index {index}")
            exp = [0] * self.d
            exp[index] = 1
            return self.monomial(self._id, tuple(exp), i)
        if kind == "tau":
            if not 0 <= index < self.d - 1:
                raise IndexOutOfRange(f"crossing index {index}")
            return self.monomial(Perm.transposition(self.d, index), self._zero_exp, i)
        raise ValueError(f"unknown generator kind {kind!r}")

    # -- multiplication -----------------------------------------------------

    def multiply(self, a: "KLRElement", b: "KLRElement") -> "KLRElement":
        if a.ctx is not self or b.ctx is not self:
            raise ContextMismatch
        out: dict = {}
        for (w, ea, i), ca in a.terms.items():
            for (v, eb, j), cb in b.terms.items():
                if i != v.act_seq(j):
                    continue
                mid = self._push_poly(MultiPoly(self.d, {ea: Fraction(1)}), v, j)
                for (v2, e2), c2 in mid.items():
                    for (w3, e3), c3 in self._tau_concat(w, v2, j).items():
                        exp = tuple(p + q + s for p, q, s in zip(e3, e2, eb))
                        self._acc(out, (w3, exp, j), ca * cb * c2 * c3)
        return KLRElement(self, out)

    # -- the polynomial representation (independent of multiply) ------------

    def tau_act(self, r: int, f: MultiPoly, i: tuple):
        if i[r] == i[r + 1]:
            return demazure(r, f), i
        s = Perm.transposition(self.d, r)
        return self.p_poly(i[r], i[r + 1], r) * perm_act(s, f), s.act_seq(i)

    def act(self, a: "KLRElement", vec: dict) -> dict:
        """Apply a to a PolyVec (map sequence -> MultiPoly)."""
        out: dict = {}
        for (w, exp, i), cf in a.terms.items():
            f = vec.get(i)
            if f is None or not f:
                continue
            g = f * MultiPoly(self.d, {exp: cf})
            comp = i
            for t in reversed(w.reduced_word()):
                g, comp = self.tau_act(t, g, comp)
                if not g:
                    break
            if g:
                prev = out.get(comp)
                out[comp] = g if prev is None else prev + g
        return {k: v for k, v in out.items() if v}

    # -- grading -------------------------------------------------------------

    def word_degree(self, w: Perm, i: tuple) -> int:
        deg = 0
        j = i
        for t in reversed(w.reduced_word()):
            deg -= self.quiver.cartan(j[t], j[t + 1])
            j = Perm.transposition(self.d, t).act_seq(j)
        return deg

    def monomial_degree(self, w: Perm, exp: tuple, i: tuple) -> int:
        return self.word_degree(w, i) + 2 * sum(exp)

    def graded_dim(self, j: tuple, i: tuple, bound: int) -> dict:
        """Graded dimensions of e(j) R e(i) in degrees <= bound,
        counted from the normal-form basis."""
        j, i = tuple(j), tuple(i)
        counts: dict = {}
        for w in all_perms(self.d):
            if w.act_seq(i) != j:
                continue
            base = self.word_degree(w, i)
            n = 0
            while base + 2 * n <= bound:
                deg = base + 2 * n
                counts[deg] = counts.get(deg, 0) + math.comb(n + self.d - 1, self.d - 1)
                n += 1
        return counts

    # -- intertwiners --------------------------------------------------------

    def intertwiner_tilde(self, r: int, i) -> "KLRElement":
        """The rescaled intertwiner: (x_r - x_{r+1}) times the operator
        acting as the simple reflection on the polynomial module."""
        i = tuple(i)
        if not 0 <= r < self.d - 1:
            raise IndexOutOfRange(f"crossing index {r}")
        diff = self.xvar(r) - self.xvar(r + 1)
        tau = self.generator("tau", r, i)
        if i[r] == i[r + 1]:
            # (x_r - x_{r+1})^2 tau_r + (x_r - x_{r+1}); the square is
            # symmetric in x_r, x_{r+1}, so it slides through tau_r.
            sq = diff * diff
            return KLRElement(self, {
                (Perm.transposition(self.d, r), mono, i): cf
                for mono, cf in sq.terms.items()
            }) + KLRElement(self, {(self._id, mono, i): cf for mono, cf in diff.terms.items()})
        if self.quiver.h(i[r + 1], i[r]) >= 1:
            return -tau
        # push (x_r - x_{r+1}) through tau_r: picks up a sign, no Demazure term
        return KLRElement(self, {
            (Perm.transposition(self.d, r), mono, i): -cf
            for mono, cf in diff.terms.items()
        })

    # -- cyclotomic quotient probe -------------------------------------------

    def basis_in_degree(self, m: int):
        """All normal-form monomials of the given degree."""
        out = []
        for i in self.seqs:
            for w in all_perms(self.d):
                rest = m - self.word_degree(w, i)
                if rest < 0 or rest % 2:
                    continue
                n = rest // 2
                for exp in _compositions(n, self.d):
                    out.append((w, exp, i))
        return out

    def _ideal_rank_in_degree(self, weight: dict, m: int, basis_m=None):
        """Rank of the degree-m slice of the two-sided ideal generated by
        the dot powers x_1^{n_{i_1}} e(i), together with the slice's
        reduced row set (pivot index -> monomial key)."""
        basis_m = basis_m if basis_m is not None else self.basis_in_degree(m)
        index = {key: p for p, key in enumerate(basis_m)}
        pivots: dict = {}
        min_word = min((self.word_degree(w, i)
                        for i in self.seqs for w in all_perms(self.d)),
                       default=0)
        for i in self.seqs:
            n = weight.get(i[0], 0)
            gexp = [0] * self.d
            gexp[0] = n
            g = self.monomial(self._id, tuple(gexp), i)
            gdeg = 2 * n
            p = min_word
            while p <= m - gdeg - min_word:
                q = m - gdeg - p
                for left in self.basis_in_degree(p):
                    lg = self.multiply(self.monomial(*left), g)
                    if not lg:
                        continue
                    for right in self.basis_in_degree(q):
                        prod = self.multiply(lg, self.monomial(*right))
                        vec = {index[key]: cf for key, cf in prod.terms.items()}
                        _row_insert(pivots, vec)
                p += 1
        return len(pivots), pivots, index

    def cyclotomic_probe(self, weight: dict, bound: int) -> dict:
        """Graded dimensions of the cyclotomic quotient.

        The ideal is computed exactly degree by degree.  The probe
        certifies that in the quotient each dot power x_r^{B'} e(i)
        vanishes for some B' < bound; the quotient is then concentrated
        in the degree window this forces, and complete graded dimensions
        are returned.  Raises Unstable when no certificate exists below
        the bound."""
        if bound < 1:
            raise ValueError("bound must be >= 1")
        word_degs = [self.word_degree(w, i)
                     for i in self.seqs for w in all_perms(self.d)]
        min_word, max_word = min(word_degs), max(word_degs)

        # certificate: pure powers of each dot die by exponent B' < bound
        cert = 0
        for i in self.seqs:
            for r in range(self.d):
                found = None
                for power in range(bound):
                    m = 2 * power
                    basis_m = self.basis_in_degree(m)
                    _, pivots, index = self._ideal_rank_in_degree(weight, m, basis_m)
                    exp = [0] * self.d
                    exp[r] = power
                    key = (self._id, tuple(exp), i)
                    if _row_member(pivots, {index[key]: Fraction(1)}):
                        found = power
                        break
                if found is None:
                    raise Unstable(bound)
                cert = max(cert, found)

        # every dot exponent is < cert in the quotient, so degrees are
        # bounded by max_word + 2 d (cert - 1)
        top = max_word + 2 * self.d * max(cert - 1, 0)
        dims: dict = {}
        for m in range(min_word, top + 1):
            basis_m = self.basis_in_degree(m)
            if not basis_m:
                continue
            rank, _, _ = self._ideal_rank_in_degree(weight, m, basis_m)
            c = len(basis_m) - rank
            if c:
                dims[m] = c
        return dims


class KLRElement:
    """A finite linear combination of normal-form monomials."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: KLRContext, terms: dict):
        self.ctx = ctx
        self.terms = {k: c for k, c in terms.items() if c}

    def __add__(self, other: "KLRElement") -> "KLRElement":
        if other.ctx is not self.ctx:
            raise ContextMismatch
        terms = dict(self.terms)
        for k, c in other.terms.items():
            v = terms.get(k, 0) + c
            if v:
                terms[k] = v
            else:
                terms.pop(k, None)
        return KLRElement(self.ctx, terms)

    def __neg__(self) -> "KLRElement":
        return KLRElement(self.ctx, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "KLRElement") -> "KLRElement":
        return self + (-other)

    def scale(self, c) -> "KLRElement":
        return KLRElement(self.ctx, {k: cf * c for k, cf in self.terms.items()})

    def __mul__(self, other: "KLRElement") -> "KLRElement":
        return self.ctx.multiply(self, other)

    def __eq__(self, other):
        return isinstance(other, KLRElement) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def is_homogeneous(self):
        degs = {self.ctx.monomial_degree(w, e, i) for (w, e, i) in self.terms}
        return len(degs) <= 1

    def degree(self):
        degs = {self.ctx.monomial_degree(w, e, i) for (w, e, i) in self.terms}
        if len(degs) > 1:
            raise ValueError("inhomogeneous element")
        return degs.pop() if degs else None

    def __repr__(self):
        if not self.terms:
            return "KLRElement(0)"
        bits = []
        for (w, exp, i), c in sorted(self.terms.items(),
                                     key=lambda kv: (kv[0][0].images, kv[0][1], kv[0][2])):
            bits.append(f"{c}*tau{w.reduced_word()}x{exp}e{i}")
        return " + ".join(bits)
