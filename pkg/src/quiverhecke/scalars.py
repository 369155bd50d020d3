"""Exact scalar arithmetic: rationals, cyclotomic fields, multivariate
polynomials and rational functions, and permutations with canonical
reduced words.

Every value in this module is immutable after construction and uses
exact arithmetic only (``fractions.Fraction`` underneath); there is no
floating point anywhere.

Conventions used throughout the package:

* variables are 0-indexed: ``x_0, ..., x_{d-1}``;
* the simple transposition ``s_r`` (``r`` in ``0..d-2``) swaps positions
  ``r`` and ``r+1``;
* the monomial order is graded lexicographic with ``x_0 > x_1 > ...``.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache

__all__ = [
    "Cyc",
    "cyclotomic_poly",
    "MultiPoly",
    "poly_const",
    "poly_var",
    "RatFunc",
    "PoleAtRootOfUnity",
    "specialize_root_of_unity",
    "Perm",
    "perm_act",
    "demazure",
]


# ---------------------------------------------------------------------------
# cyclotomic fields


@lru_cache(maxsize=None)
def cyclotomic_poly(e: int) -> tuple[Fraction, ...]:
    """Coefficients (low degree first) of the e-th cyclotomic polynomial."""
    if e < 1:
        raise ValueError("order must be positive")
    # x^e - 1 divided by the product of the proper cyclotomic divisors
    num = [Fraction(0)] * (e + 1)
    num[0], num[e] = Fraction(-1), Fraction(1)
    for d in range(1, e):
        if e % d == 0:
            num = _upoly_exact_div(num, list(cyclotomic_poly(d)))
    return tuple(num)


def _upoly_trim(p: list[Fraction]) -> list[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _upoly_exact_div(num: list[Fraction], den: list[Fraction]) -> list[Fraction]:
    num = _upoly_trim(list(num))
    den = _upoly_trim(list(den))
    if not den:
        raise ZeroDivisionError
    quot = [Fraction(0)] * (len(num) - len(den) + 1)
    while len(num) >= len(den):
        c = num[-1] / den[-1]
        k = len(num) - len(den)
        quot[k] = c
        for j, dj in enumerate(den):
            num[k + j] -= c * dj
        _upoly_trim(num)
    if num:
        raise ArithmeticError("division not exact")
    return quot


def _upoly_divmod(num: list[Fraction], den: list[Fraction]):
    num = _upoly_trim(list(num))
    den = _upoly_trim(list(den))
    quot: list[Fraction] = [Fraction(0)] * max(len(num) - len(den) + 1, 0)
    while len(num) >= len(den) and num:
        c = num[-1] / den[-1]
        k = len(num) - len(den)
        quot[k] = c
        for j, dj in enumerate(den):
            num[k + j] -= c * dj
        _upoly_trim(num)
    return quot, num


class Cyc:
    """An element of Q(zeta_e), reduced modulo the e-th cyclotomic polynomial.

    Stored as a coefficient tuple in the power basis 1, z, z^2, ...,
    z^{phi(e)-1} where z is a primitive e-th root of unity.
    """

    __slots__ = ("e", "coeffs")

    def __init__(self, e: int, coeffs=()):
        modulus = cyclotomic_poly(e)
        deg = len(modulus) - 1
        cs = [Fraction(c) for c in coeffs]
        if len(cs) >= len(modulus):
            _, cs = _upoly_divmod(cs, list(modulus))
        cs += [Fraction(0)] * (deg - len(cs))
        object.__setattr__(self, "e", e)
        object.__setattr__(self, "coeffs", tuple(cs[:deg]))

    def __setattr__(self, *a):
        raise AttributeError("immutable")

    @staticmethod
    def zeta(e: int) -> "Cyc":
        return Cyc(e, (0, 1))

    @staticmethod
    def from_rational(e: int, a) -> "Cyc":
        return Cyc(e, (Fraction(a),))

    def _coerce(self, other):
        if isinstance(other, Cyc):
            if other.e != self.e:
                raise ValueError("mixed cyclotomic orders")
            return other
        if isinstance(other, (int, Fraction)):
            return Cyc.from_rational(self.e, other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Cyc(self.e, [a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return Cyc(self.e, [-a for a in self.coeffs])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        n = len(self.coeffs)
        prod = [Fraction(0)] * (2 * n)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    if b:
                        prod[i + j] += a * b
        return Cyc(self.e, prod)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Cyc":
        if n < 0:
            return self.inverse() ** (-n)
        result = Cyc.from_rational(self.e, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> "Cyc":
        if not self:
            raise ZeroDivisionError
        # extended Euclid in Q[x] against the cyclotomic modulus
        a = _upoly_trim(list(self.coeffs))
        b = list(cyclotomic_poly(self.e))
        s0, s1 = [Fraction(1)], []
        r0, r1 = a, b
        while r1:
            q, r = _upoly_divmod(r0, r1)
            s = _upoly_trim(
                [
                    (s0[i] if i < len(s0) else Fraction(0))
                    - sum(
                        q[j] * s1[i - j]
                        for j in range(len(q))
                        if 0 <= i - j < len(s1)
                    )
                    for i in range(max(len(s0), len(q) + len(s1)))
                ]
            )
            r0, r1, s0, s1 = r1, r, s1, s
        lead = r0[-1]
        return Cyc(self.e, [c / lead for c in s0])

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.inverse()

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash((self.e, self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    def rational_value(self) -> Fraction:
        """The value as a rational number; raises if not rational."""
        if any(self.coeffs[1:]):
            raise ValueError("not a rational element")
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def __repr__(self):
        return f"Cyc({self.e}, {list(self.coeffs)})"


# ---------------------------------------------------------------------------
# sparse multivariate polynomials

Monomial = tuple  # exponent vectors, tuple[int, ...]


def _grlex_key(mono: Monomial):
    return (sum(mono), mono)


class MultiPoly:
    """Sparse multivariate polynomial: map exponent vector -> coefficient.

    Coefficients may be Fraction or Cyc (any exact field element with
    +, -, *, /, ==); zero coefficients are never stored.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms=None):
        cleaned = {}
        for mono, c in (terms or {}).items():
            if c:
                cleaned[tuple(mono)] = c
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "terms", cleaned)

    def __setattr__(self, *a):
        raise AttributeError("immutable")

    # -- construction helpers

    @staticmethod
    def const(nvars: int, c) -> "MultiPoly":
        return MultiPoly(nvars, {(0,) * nvars: c})

    @staticmethod
    def var(nvars: int, r: int, one=Fraction(1)) -> "MultiPoly":
        mono = [0] * nvars
        mono[r] = 1
        return MultiPoly(nvars, {tuple(mono): one})

    # -- ring structure

    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            if other.nvars != self.nvars:
                raise ValueError("mixed variable counts")
            return other
        if isinstance(other, (int, Fraction, Cyc)):
            return MultiPoly.const(self.nvars, Fraction(other) if isinstance(other, int) else other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        terms = dict(self.terms)
        for mono, c in o.terms.items():
            terms[mono] = terms.get(mono, 0) + c
        return MultiPoly(self.nvars, terms)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        terms: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in o.terms.items():
                mono = tuple(a + b for a, b in zip(m1, m2))
                terms[mono] = terms.get(mono, 0) + c1 * c2
        return MultiPoly(self.nvars, terms)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = MultiPoly.const(self.nvars, Fraction(1))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    # -- structure queries

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def leading(self):
        """(monomial, coefficient) maximal in graded lexicographic order."""
        mono = max(self.terms, key=_grlex_key)
        return mono, self.terms[mono]

    def constant_coeff(self):
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def substitute(self, values: dict) -> "MultiPoly":
        """Substitute polynomials for variables (by index)."""
        out = MultiPoly(self.nvars, {})
        for mono, c in self.terms.items():
            term = MultiPoly.const(self.nvars, c)
            for r, exp in enumerate(mono):
                if exp:
                    base = values.get(r, MultiPoly.var(self.nvars, r))
                    term = term * base**exp
            out = out + term
        return out

    def map_coeffs(self, fn, nvars=None) -> "MultiPoly":
        return MultiPoly(nvars if nvars is not None else self.nvars,
                         {m: fn(c) for m, c in self.terms.items()})

    def exact_div(self, other: "MultiPoly"):
        """Exact quotient self/other, or None when other does not divide self."""
        o = self._coerce(other)
        if not o:
            raise ZeroDivisionError
        rem_terms = dict(self.terms)
        quot: dict = {}
        lm, lc = o.leading()
        while rem_terms:
            mono = max(rem_terms, key=_grlex_key)
            diff = tuple(a - b for a, b in zip(mono, lm))
            if any(d < 0 for d in diff):
                return None
            c = rem_terms[mono] / lc
            quot[diff] = c
            for m2, c2 in o.terms.items():
                m = tuple(a + b for a, b in zip(diff, m2))
                v = rem_terms.get(m, 0) - c * c2
                if v:
                    rem_terms[m] = v
                else:
                    rem_terms.pop(m, None)
        return MultiPoly(self.nvars, quot)

    def __repr__(self):
        if not self.terms:
            return "MultiPoly(0)"
        bits = []
        for mono in sorted(self.terms, key=_grlex_key, reverse=True):
            c = self.terms[mono]
            factors = [f"x{r}^{e}" if e > 1 else f"x{r}"
                       for r, e in enumerate(mono) if e]
            bits.append(f"{c}*{'*'.join(factors)}" if factors else f"{c}")
        return " + ".join(bits)


def poly_const(nvars: int, c) -> MultiPoly:
    return MultiPoly.const(nvars, c)


def poly_var(nvars: int, r: int, one=Fraction(1)) -> MultiPoly:
    return MultiPoly.var(nvars, r, one)


# ---------------------------------------------------------------------------
# symmetric group action and divided differences


def perm_act(w: "Perm | tuple[int, ...]", f: MultiPoly) -> MultiPoly:
    """Permute the variables of f: x_r is sent to x_{w(r)}."""
    images = tuple(w) if not isinstance(w, Perm) else w.images
    terms: dict = {}
    for mono, c in f.terms.items():
        new = [0] * f.nvars
        for r, exp in enumerate(mono):
            new[images[r]] += exp
        key = tuple(new)
        terms[key] = terms.get(key, 0) + c
    return MultiPoly(f.nvars, terms)


def _swap_vars(f: MultiPoly, r: int) -> MultiPoly:
    terms: dict = {}
    for mono, c in f.terms.items():
        lst = list(mono)
        lst[r], lst[r + 1] = lst[r + 1], lst[r]
        key = tuple(lst)
        terms[key] = terms.get(key, 0) + c
    return MultiPoly(f.nvars, terms)


def demazure(r: int, f: MultiPoly) -> MultiPoly:
    """The divided difference (s_r(f) - f)/(x_r - x_{r+1}).

    The division is always exact because the numerator is antisymmetric
    in x_r, x_{r+1}; an inexact division indicates an arithmetic bug.
    """
    if not (0 <= r < f.nvars - 1):
        raise IndexError("divided difference position out of range")
    num = _swap_vars(f, r) - f
    if not num:
        return num
    den = MultiPoly.var(f.nvars, r) - MultiPoly.var(f.nvars, r + 1)
    quot = num.exact_div(den)
    if quot is None:
        raise ArithmeticError("divided difference division not exact")
    return quot


# ---------------------------------------------------------------------------
# multivariate rational functions

try:
    import sympy
    from sympy import QQ as _SYMPY_QQ
except Exception:  # pragma: no cover
    sympy = None


def _poly_gcd(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    """GCD of two polynomials with Fraction coefficients (via sympy)."""
    if not a:
        return b
    if not b:
        return a
    nvars = a.nvars
    syms = sympy.symbols(f"g0:{nvars}")

    def to_sympy(p):
        return sympy.Poly.from_dict({m: c for m, c in p.terms.items()}, *syms, domain=_SYMPY_QQ)

    g = sympy.gcd(to_sympy(a), to_sympy(b))
    terms = {tuple(m): Fraction(c.numerator, c.denominator)
             for m, c in g.as_poly(*syms, domain=_SYMPY_QQ).terms()}
    return MultiPoly(nvars, terms)


class RatFunc:
    """A ratio of multivariate polynomials over an exact field.

    With rational coefficients the fraction is fully reduced and the
    denominator is normalized to have leading coefficient 1, so equal
    values have equal representations.  With cyclotomic coefficients
    only cheap cancellations are performed and equality falls back to
    cross multiplication (still exact and decidable).
    """

    __slots__ = ("num", "den")

    def __init__(self, num: MultiPoly, den: MultiPoly | None = None, reduce: bool = True):
        if den is None:
            den = MultiPoly.const(num.nvars, Fraction(1))
        if not den:
            raise ZeroDivisionError
        if not num:
            den = MultiPoly.const(num.nvars, Fraction(1))
        elif reduce:
            num, den = self._reduce(num, den)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, *a):
        raise AttributeError("immutable")

    @staticmethod
    def _coeffs_rational(p: MultiPoly) -> bool:
        return all(isinstance(c, (int, Fraction)) for c in p.terms.values())

    @classmethod
    def _reduce(cls, num: MultiPoly, den: MultiPoly):
        # cancel common monomial content
        nvars = num.nvars
        mins = [min(m[r] for m in list(num.terms) + list(den.terms))
                for r in range(nvars)]
        if any(mins):
            shift = tuple(-m for m in mins)

            def unshift(p):
                return MultiPoly(nvars, {tuple(a + b for a, b in zip(m, shift)): c
                                         for m, c in p.terms.items()})

            num, den = unshift(num), unshift(den)
        q = num.exact_div(den)
        if q is not None:
            num, den = q, MultiPoly.const(nvars, Fraction(1))
        elif cls._coeffs_rational(num) and cls._coeffs_rational(den):
            g = _poly_gcd(num, den)
            if g.total_degree() > 0 or g.leading()[1] != 1:
                num = num.exact_div(g)
                den = den.exact_div(g)
        # normalize the leading coefficient of the denominator to 1
        _, lc = den.leading()
        if lc != 1:
            inv = (Fraction(1) / lc) if isinstance(lc, (int, Fraction)) else lc.inverse()
            num = num.map_coeffs(lambda c: c * inv)
            den = den.map_coeffs(lambda c: c * inv)
        return num, den

    @staticmethod
    def const(nvars: int, c) -> "RatFunc":
        return RatFunc(MultiPoly.const(nvars, c))

    @staticmethod
    def var(nvars: int, r: int) -> "RatFunc":
        return RatFunc(MultiPoly.var(nvars, r))

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, MultiPoly):
            return RatFunc(other)
        if isinstance(other, (int, Fraction, Cyc)):
            return RatFunc.const(self.num.nvars, other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, reduce=False)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if not o.num:
            raise ZeroDivisionError
        return RatFunc(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o / self

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.num * o.den == o.num * self.den

    def __bool__(self):
        return bool(self.num)

    __hash__ = None  # mutable-free but not canonical across coefficient kinds

    def is_polynomial(self) -> bool:
        return self.den.total_degree() == 0

    def as_polynomial(self) -> MultiPoly:
        if not self.is_polynomial():
            raise ValueError("not a polynomial")
        _, lc = self.den.leading()
        inv = (Fraction(1) / lc) if isinstance(lc, (int, Fraction)) else lc.inverse()
        return self.num.map_coeffs(lambda c: c * inv)

    def __repr__(self):
        return f"({self.num!r})/({self.den!r})"


class PoleAtRootOfUnity(ArithmeticError):
    """Raised when a denominator vanishes at the requested root of unity."""


def specialize_root_of_unity(x: RatFunc, e: int, q_index: int = 0) -> RatFunc:
    """Substitute q -> zeta_e (variable ``q_index``) exactly.

    Returns a rational function with cyclotomic coefficients in the
    remaining variables.  Raises PoleAtRootOfUnity when the denominator
    vanishes under the substitution.
    """
    zeta = Cyc.zeta(e)

    def subst(p: MultiPoly) -> MultiPoly:
        terms: dict = {}
        for mono, c in p.terms.items():
            exp = mono[q_index]
            key = mono[:q_index] + (0,) + mono[q_index + 1:]
            val = Cyc.from_rational(e, c) if isinstance(c, (int, Fraction)) else c
            terms[key] = terms.get(key, Cyc.from_rational(e, 0)) + val * zeta**exp
        return MultiPoly(p.nvars, terms)

    num, den = subst(x.num), subst(x.den)
    if not den:
        raise PoleAtRootOfUnity("denominator vanishes at the root of unity")
    return RatFunc(num, den)


# ---------------------------------------------------------------------------
# permutations with canonical reduced words


class Perm:
    """A permutation of range(d) in one-line notation.

    ``images[r]`` is the image of position r.  The cached reduced word is
    the lexicographically least reduced expression in the generators
    s_0, ..., s_{d-2}, computed by greedy smallest left descent.
    """

    __slots__ = ("images", "_word")

    def __init__(self, images):
        images = tuple(images)
        if sorted(images) != list(range(len(images))):
            raise ValueError("not a permutation of range(d)")
        object.__setattr__(self, "images", images)
        object.__setattr__(self, "_word", None)

    def __setattr__(self, *a):
        raise AttributeError("immutable")

    @staticmethod
    def identity(d: int) -> "Perm":
        return Perm(range(d))

    @staticmethod
    def transposition(d: int, r: int) -> "Perm":
        images = list(range(d))
        images[r], images[r + 1] = images[r + 1], images[r]
        return Perm(images)

    @staticmethod
    def from_word(d: int, word) -> "Perm":
        w = Perm.identity(d)
        for r in word:
            w = w * Perm.transposition(d, r)
        return w

    @property
    def d(self) -> int:
        return len(self.images)

    def __call__(self, r: int) -> int:
        return self.images[r]

    def __mul__(self, other: "Perm") -> "Perm":
        # (self * other)(r) = self(other(r))
        return Perm(tuple(self.images[other.images[r]] for r in range(self.d)))

    def inverse(self) -> "Perm":
        inv = [0] * self.d
        for r, v in enumerate(self.images):
            inv[v] = r
        return Perm(inv)

    def __eq__(self, other):
        return isinstance(other, Perm) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def length(self) -> int:
        return sum(1 for i, j in itertools.combinations(range(self.d), 2)
                   if self.images[i] > self.images[j])

    def left_descents(self):
        """Positions r with s_r * self shorter than self."""
        inv = self.inverse().images
        return [r for r in range(self.d - 1) if inv[r] > inv[r + 1]]

    def reduced_word(self) -> tuple[int, ...]:
        """Lexicographically least reduced word (left-to-right product)."""
        if self._word is not None:
            return self._word
        word = []
        w = self
        while True:
            descents = w.left_descents()
            if not descents:
                break
            r = descents[0]
            word.append(r)
            w = Perm.transposition(w.d, r) * w
        object.__setattr__(self, "_word", tuple(word))
        return self._word

    def act_seq(self, seq: tuple) -> tuple:
        """Permute the entries of a sequence: entry at position r moves to w(r)."""
        out = [None] * len(seq)
        for r, v in enumerate(seq):
            out[self.images[r]] = v
        return tuple(out)

    def __repr__(self):
        return f"Perm({list(self.images)})"


def all_perms(d: int):
    for images in itertools.permutations(range(d)):
        yield Perm(images)
