"""The balanced quotient of the algebra attached to a doubled quiver.

The quotient is e R e / (two-sided span of unordered idempotents), where
e is the sum of well-ordered idempotents.  Elements are represented by
normal-form elements of e R e; equality in the quotient is tested by
exact membership of the difference in the degreewise ideal slice.  The
quotient also carries a faithful polynomial representation obtained by
identifying the two variables across each split vertex pair.
"""

from fractions import Fraction

from .klr import KLRContext, KLRElement, _compositions, _row_insert, _row_member
from .quiver import (
    DimVec,
    DoubledQuiver,
    SeqClass,
    almost_ordered,
    classify_seq,
)
from .scalars import MultiPoly, Perm, all_perms, perm_act, poly_var


def _mod_row_insert(pivots: dict, vec: dict, prime: int) -> bool:
    vec = {k: c % prime for k, c in vec.items() if c % prime}
    while vec:
        p = min(vec)
        row = pivots.get(p)
        if row is None:
            inv = pow(vec[p], prime - 2, prime)
            pivots[p] = {q: (cf * inv) % prime for q, cf in vec.items()}
            return True
        c = vec[p]
        for q, cf in row.items():
            v = (vec.get(q, 0) - c * cf) % prime
            if v:
                vec[q] = v
            else:
                vec.pop(q, None)
    return False


class NotWellOrdered(ValueError):
    """A sequence outside the well-ordered set was used where only
    well-ordered components are allowed."""


class BalancedContext:
    """The doubled quiver, the base dimension vector, both algebra
    contexts, and the partition of sequences by ordering class."""

    def __init__(self, dq: DoubledQuiver, alpha: DimVec):
        self.dq = dq
        self.alpha = alpha
        self.bar_alpha = dq.phi_dimvec(alpha)
        self.base = KLRContext(dq.base, alpha)
        self.bar = KLRContext(dq, self.bar_alpha)
        self.well_ordered = tuple(
            i for i in self.bar.seqs
            if classify_seq(i) == SeqClass.WELL_ORDERED)
        self.unordered = tuple(
            i for i in self.bar.seqs
            if classify_seq(i) == SeqClass.UNORDERED)
        self.almost = tuple(i for i in self.bar.seqs if almost_ordered(i))
        self._well_set = frozenset(self.well_ordered)
        self._slice_cache: dict = {}
        self._mono_cache: dict = {}
        self._min_word = None

    # -- index bookkeeping ---------------------------------------------------

    def r_prime(self, i: tuple, r: int) -> int:
        """Position in phi(i) of the first letter of phi(i_r)."""
        return sum(len(self.dq.phi_vertex(v)) for v in i[:r])

    # -- star elements -------------------------------------------------------

    def _star_word(self, i: tuple, r: int):
        rp = self.r_prime(i, r)
        a = i[r] in self.dq.split
        b = i[r + 1] in self.dq.split
        if not a and not b:
            return (rp,), 1
        if a and not b:
            return (rp, rp + 1), 1
        if not a and b:
            return (rp + 1, rp), 1
        return (rp + 1, rp + 2, rp, rp + 1), (-1 if i[r] == i[r + 1] else 1)

    def word_element(self, word, bar_seq) -> KLRElement:
        """tau_{q_1} ... tau_{q_m} e(bar_seq), multiplied out."""
        elt = self.bar.generator("e", None, bar_seq)
        seq = tuple(bar_seq)
        for t in reversed(word):
            elt = self.bar.multiply(self.bar.generator("tau", t, seq), elt)
            seq = Perm.transposition(self.bar.d, t).act_seq(seq)
        return elt

    def star_element(self, kind: str, r: int, i) -> KLRElement:
        i = tuple(i)
        ip = self.dq.phi_seq(i)
        if kind == "x":
            return self.bar.from_poly(poly_var(self.bar.d, self.r_prime(i, r)), ip)
        if kind != "tau":
            raise ValueError(f"unknown star generator kind {kind!r}")
        word, sign = self._star_word(i, r)
        elt = self.word_element(word, ip)
        return elt if sign == 1 else -elt

    # -- the generator-wise algebra map --------------------------------------

    def phi_apply(self, a: KLRElement) -> KLRElement:
        """Image of a base-algebra element, as a representative in e R e."""
        if a.ctx is not self.base:
            raise ValueError("element does not live in the base context")
        out = self.bar.zero()
        for (w, exp, i), cf in a.terms.items():
            ip = self.dq.phi_seq(i)
            poly = MultiPoly.const(self.bar.d, Fraction(1))
            for r, n in enumerate(exp):
                if n:
                    poly = poly * poly_var(self.bar.d, self.r_prime(i, r)) ** n
            elt = self.bar.from_poly(poly, ip)
            seq = i
            for t in reversed(w.reduced_word()):
                elt = self.bar.multiply(self.star_element("tau", t, seq), elt)
                seq = Perm.transposition(self.base.d, t).act_seq(seq)
            out = out + elt.scale(cf)
        return out

    # -- the quotient polynomial representation ------------------------------

    def _canonical_subs(self, bar_seq):
        subs = {}
        for a, v in enumerate(bar_seq):
            if v.tag == 1:
                subs[a + 1] = poly_var(self.bar.d, a)
        return subs

    def canonicalize(self, vec: dict) -> dict:
        """Reduce each component to the canonical representative with the
        split-pair variables identified."""
        out = {}
        for i, f in vec.items():
            if i not in self._well_set:
                raise NotWellOrdered(repr(i))
            g = f.substitute(self._canonical_subs(i))
            if g:
                out[i] = g
        return out

    def quotient_act(self, a: KLRElement, vec: dict) -> dict:
        """Action on the quotient representation: act upstairs, discard
        components outside the well-ordered set, canonicalize."""
        full = self.bar.act(a, dict(vec))
        return self.canonicalize(
            {i: f for i, f in full.items() if i in self._well_set})

    def transport(self, base_vec: dict) -> dict:
        """A base polynomial vector, rewritten in the quotient variables:
        the r-th base variable goes to position r' of the image sequence."""
        out = {}
        for i, f in base_vec.items():
            i = tuple(i)
            pos = [self.r_prime(i, r) for r in range(self.base.d)]
            terms = {}
            for mono, cf in f.terms.items():
                new = [0] * self.bar.d
                for r, n in enumerate(mono):
                    new[pos[r]] += n
                key = tuple(new)
                terms[key] = terms.get(key, 0) + cf
            g = MultiPoly(self.bar.d, terms)
            if g:
                out[self.dq.phi_seq(i)] = g
        return self.canonicalize(out)

    # -- degreewise ideal slices ---------------------------------------------

    def _min_word_degree(self) -> int:
        if self._min_word is None:
            self._min_word = min(
                (self.bar.word_degree(w, i)
                 for i in self.bar.seqs for w in all_perms(self.bar.d)),
                default=0)
        return self._min_word

    def monomials_slice(self, m: int, lefts, rights):
        key = (m, frozenset(lefts), frozenset(rights))
        hit = self._mono_cache.get(key)
        if hit is not None:
            return hit
        out = []
        for i in rights:
            for w in all_perms(self.bar.d):
                if w.act_seq(i) not in lefts:
                    continue
                rest = m - self.bar.word_degree(w, i)
                if rest < 0 or rest % 2:
                    continue
                for exp in _compositions(rest // 2, self.bar.d):
                    out.append((w, exp, i))
        self._mono_cache[key] = out
        return out

    def _ideal_rows(self, m: int, gens: str, lefts, rights, index):
        """Yield sparse rows spanning the degree-m piece of the two-sided
        span of the generating idempotents inside the (lefts, rights)
        block of e R e.

        Each spanning product tau_w e(i0) tau_v x^c e(i1) is the
        crossing-only product shifted by the dot exponents c, so one
        normal form per (w, v, i1) covers every dot pattern."""
        gen_seqs = self.unordered if gens == "unordered" else self.almost
        d = self.bar.d
        for i0 in gen_seqs:
            ws = [w for w in all_perms(d) if w.act_seq(i0) in lefts]
            for i1 in rights:
                for v in all_perms(d):
                    if v.act_seq(i1) != i0:
                        continue
                    vd = self.bar.word_degree(v, i1)
                    for w in ws:
                        rest = m - vd - self.bar.word_degree(w, i0)
                        if rest < 0 or rest % 2:
                            continue
                        terms = self.bar._tau_concat(w, v, i1)
                        if not terms:
                            continue
                        for c in _compositions(rest // 2, d):
                            yield {
                                index[(w2, tuple(a + b for a, b in zip(exp, c)), i1)]: cf
                                for (w2, exp), cf in terms.items()}

    def ideal_slice(self, m: int, gens: str = "unordered",
                    lefts=None, rights=None):
        """Fully reduced row set and monomial index of the degree-m
        ideal slice (exact; use only when the block is small)."""
        lefts = self._well_set if lefts is None else frozenset(lefts)
        rights = self._well_set if rights is None else frozenset(rights)
        key = (m, gens, lefts, rights)
        hit = self._slice_cache.get(key)
        if hit is not None:
            return hit
        basis = self.monomials_slice(m, lefts, rights)
        index = {mk: p for p, mk in enumerate(basis)}
        pivots: dict = {}
        for row in self._ideal_rows(m, gens, lefts, rights, index):
            _row_insert(pivots, row)
            if len(pivots) == len(basis):
                break
        self._slice_cache[key] = (pivots, index, basis)
        return pivots, index, basis

    def in_ideal(self, elt: KLRElement, gens: str = "unordered") -> bool:
        """Exact membership in the two-sided span, degree by degree.

        The residue of the tested vector is reduced as spanning rows
        stream in, so membership is certified without building the full
        slice; non-membership consumes every row and is also exact."""
        by_degree: dict = {}
        for (w, exp, i), cf in elt.terms.items():
            m = self.bar.monomial_degree(w, exp, i)
            by_degree.setdefault(m, {})[(w, exp, i)] = cf
        for m, terms in by_degree.items():
            cached = self._slice_cache.get(
                (m, gens, self._well_set, self._well_set))
            if cached is not None:
                pivots, index, _ = cached
                if any(k not in index for k in terms):
                    return False
                if not _row_member(pivots, {index[k]: c for k, c in terms.items()}):
                    return False
                continue
            basis = self.monomials_slice(m, self._well_set, self._well_set)
            index = {mk: p for p, mk in enumerate(basis)}
            if any(k not in index for k in terms):
                return False
            res = {index[k]: c for k, c in terms.items()}
            pivots: dict = {}
            found = not res
            grown = 0
            for row in self._ideal_rows(m, gens, self._well_set,
                                        self._well_set, index):
                if found:
                    break
                if _row_insert(pivots, row):
                    grown += 1
                    if grown % 64 == 0 and _row_member(pivots, res):
                        found = True
            if not found and not _row_member(pivots, res):
                return False
        return True

    def ideal_rank(self, m: int, gens: str = "unordered",
                   lefts=None, rights=None) -> int:
        pivots, _, _ = self.ideal_slice(m, gens, lefts, rights)
        return len(pivots)

    def ideal_component(self, m: int, gens: str = "unordered"):
        """A basis of the degree-m piece of the span, as elements."""
        pivots, _, basis = self.ideal_slice(m, gens)
        out = []
        for row in pivots.values():
            out.append(KLRElement(self.bar, {basis[p]: c for p, c in row.items()}))
        return out

    def block_dim_upper(self, m: int, j_base, i_base, target: int,
                        prime: int = (1 << 31) - 1) -> int:
        """A certified upper bound for the dimension of the degree-m
        block of the quotient: block size minus a modular rank of the
        ideal slice.  A modular rank never exceeds the rational rank, so
        the bound is exact-safe; row streaming stops once the bound
        reaches the target."""
        jp = frozenset({self.dq.phi_seq(tuple(j_base))})
        ip = frozenset({self.dq.phi_seq(tuple(i_base))})
        basis = self.monomials_slice(m, jp, ip)
        index = {mk: p for p, mk in enumerate(basis)}
        pivots: dict = {}
        for row in self._ideal_rows(m, "unordered", jp, ip, index):
            mrow = {}
            for p, cf in row.items():
                f = Fraction(cf)
                if f.denominator % prime == 0:
                    raise ArithmeticError("prime divides a denominator")
                mrow[p] = f.numerator * pow(f.denominator, prime - 2, prime) % prime
            _mod_row_insert(pivots, mrow, prime)
            if len(basis) - len(pivots) <= target:
                break
        return len(basis) - len(pivots)

    def canonical_positions(self, bar_seq):
        """Variable positions surviving the split-pair identification."""
        return [a for a in range(self.bar.d)
                if not (a > 0 and bar_seq[a - 1].tag == 1)]

    def image_rank(self, m: int, target: int | None = None,
                   max_probe: int = 10) -> int:
        """Rank of the operators on the quotient representation given by
        the images of the degree-m basis of the base algebra.  This is a
        certified lower bound for the dimension of the degree-m piece of
        the quotient (exact arithmetic throughout).  Probe monomials are
        added level by level until the rank reaches the target or the
        probe degree cap."""
        images = [self.phi_apply(self.base.monomial(*mk))
                  for mk in self.base.basis_in_degree(m)]
        images = [a for a in images if a]
        if not images:
            return 0
        col_index: dict = {}
        rows = [{} for _ in images]
        rank = 0
        for n in range(max_probe + 1):
            for i in self.well_ordered:
                free = self.canonical_positions(i)
                for small in _compositions(n, len(free)):
                    exp = [0] * self.bar.d
                    for pos, q in zip(free, small):
                        exp[pos] = q
                    probe = {i: MultiPoly(self.bar.d, {tuple(exp): Fraction(1)})}
                    for rix, a in enumerate(images):
                        out = self.quotient_act(a, probe)
                        for j, f in out.items():
                            for mono, cf in f.terms.items():
                                key = (i, tuple(exp), j, mono)
                                col = col_index.setdefault(key, len(col_index))
                                rows[rix][col] = cf
            pivots: dict = {}
            rank = 0
            for row in rows:
                if _row_insert(pivots, dict(row)):
                    rank += 1
            if target is not None and rank >= target:
                return rank
        return rank

    # -- graded dimensions of the quotient -----------------------------------

    def balanced_graded_dim(self, j_base, i_base, bound: int) -> dict:
        """Graded dimensions of the (phi(j), phi(i)) block of the
        quotient in degrees <= bound, computed as the block dimension of
        e R e minus the rank of the ideal slice."""
        jp = frozenset({self.dq.phi_seq(tuple(j_base))})
        ip = frozenset({self.dq.phi_seq(tuple(i_base))})
        lo = self._min_word_degree()
        dims: dict = {}
        for m in range(lo, bound + 1):
            total = len(self.monomials_slice(m, jp, ip))
            if not total:
                continue
            c = total - self.ideal_rank(m, "unordered", jp, ip)
            if c:
                dims[m] = c
        return dims

    # -- intertwiner images ---------------------------------------------------

    def _twisted_diffs(self, word, tildes):
        """Product over the untilded letters of the letter's difference
        polynomial pulled to the left of the word."""
        d = self.bar.d
        comp = MultiPoly.const(d, Fraction(1))
        prefix = Perm.identity(d)
        for t, letter in enumerate(word):
            diff = poly_var(d, letter) - poly_var(d, letter + 1)
            if not tildes[t]:
                comp = comp * perm_act(prefix, diff)
            prefix = prefix * Perm.transposition(d, letter)
        return comp

    def _tilde_product(self, word, bar_seq) -> KLRElement:
        """Product of rescaled intertwiners along the word, rightmost
        factor at bar_seq."""
        elt = self.bar.generator("e", None, bar_seq)
        seq = tuple(bar_seq)
        for t in reversed(word):
            elt = self.bar.multiply(self.bar.intertwiner_tilde(t, seq), elt)
            seq = Perm.transposition(self.bar.d, t).act_seq(seq)
        return elt

    def intertwiner_image_sides(self, r: int, i):
        """The two sides of the intertwiner-image identity at (r, i),
        rescaled so both live in e R e.

        The claimed identity has the form  image(Psi-or-tilde at r) =
        word of (possibly rescaled) intertwiners at phi(i).  Upgrading
        every factor to its rescaled version multiplies the right side
        by the product of the skipped difference polynomials, and
        replacing the left side by its rescaled version multiplies it by
        one difference polynomial; both compensations are applied here.
        """
        i = tuple(i)
        a = i[r] in self.dq.split
        b = i[r + 1] in self.dq.split
        rp = self.r_prime(i, r)
        inverse_case = self.dq.base.h(i[r + 1], i[r]) >= 1 and i[r] != i[r + 1]
        if not inverse_case:
            word = ((rp,) if not a and not b
                    else (rp, rp + 1) if a and not b
                    else (rp + 1, rp) if not a and b
                    else (rp + 1, rp + 2, rp, rp + 1))
            tildes = [False] * len(word)
            lhs_tilde = False
        else:
            if a and b:
                raise ValueError("no stated identity for this case")
            word = ((rp,) if not a and not b
                    else (rp, rp + 1) if a
                    else (rp + 1, rp))
            # the factor matching the base crossing carries the rescaling
            tildes = [letter == rp for letter in word]
            lhs_tilde = True
        comp = self._twisted_diffs(word, tildes)
        target = self.dq.phi_seq(
            Perm.transposition(self.base.d, r).act_seq(i))
        lhs = self.phi_apply(self.base.intertwiner_tilde(r, i))
        lhs = self.bar.multiply(self.bar.from_poly(comp, target), lhs)
        rhs = self._tilde_product(word, self.dq.phi_seq(i))
        if not lhs_tilde:
            # compensate for rescaling the left side
            sri = Perm.transposition(self.base.d, r).act_seq(i)
            diff = (poly_var(self.bar.d, self.r_prime(sri, r))
                    - poly_var(self.bar.d, self.r_prime(sri, r + 1)))
            rhs = self.bar.multiply(self.bar.from_poly(diff, target), rhs)
        return lhs, rhs

    def probe_vectors(self):
        """A constant and a generic polynomial vector per well-ordered
        sequence, in canonical quotient variables."""
        vecs = []
        for i in self.well_ordered:
            free = self.canonical_positions(i)
            generic = MultiPoly.const(self.bar.d, Fraction(1))
            for t, pos in enumerate(free):
                v = poly_var(self.bar.d, pos)
                generic = generic + v * Fraction(t + 2) \
                    + v * v * Fraction(2 * t + 3)
            vecs.append({i: MultiPoly.const(self.bar.d, Fraction(1))})
            vecs.append({i: generic})
        return vecs

    def phi_intertwiner_check(self, r: int, i, exact: bool = False) -> dict:
        """Report whether the rescaled intertwiner-image identity holds
        at (r, i): as operators on the quotient representation, or (with
        exact=True) as elements modulo the unordered span."""
        i = tuple(i)
        try:
            lhs, rhs = self.intertwiner_image_sides(r, i)
        except ValueError:
            return {"position": r, "sequence": i, "status": "skip"}
        if exact:
            ok = self.in_ideal(lhs - rhs)
        else:
            ok = all(self.quotient_act(lhs, v) == self.quotient_act(rhs, v)
                     for v in self.probe_vectors())
        return {"position": r, "sequence": i,
                "status": "pass" if ok else "fail"}
