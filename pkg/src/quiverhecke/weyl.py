"""Extended affine permutations of period N in window notation, their
integer-weight actions at a period parameter e, lengths and Bruhat
order, and parabolic coset representatives for Young stabilizers."""

import functools
import itertools
from collections import deque

from .quiver import upsilon_tuple


class Incomparable(ValueError):
    """Bruhat comparison across different rotation shifts."""


class AffPerm:
    """Bijection w of the integers with w(i + N) = w(i) + N, stored by
    its window (w(1), ..., w(N)).  The rotation shift n is determined
    by sum(w(i) - i) = n * N."""

    __slots__ = ("N", "win")

    def __init__(self, win):
        win = tuple(int(v) for v in win)
        N = len(win)
        if N == 0:
            raise ValueError("empty window")
        if len({v % N for v in win}) != N:
            raise ValueError("window entries collide mod N")
        if sum(win) % N != (N * (N + 1) // 2) % N:
            raise ValueError("window sum incompatible with a shift")
        object.__setattr__(self, "N", N)
        object.__setattr__(self, "win", win)

    def __setattr__(self, *a):
        raise AttributeError("immutable")

    @staticmethod
    def identity(N):
        return AffPerm(range(1, N + 1))

    @staticmethod
    def simple(N, r):
        """The reflection s_r for r in Z/N; r = 0 is the affine one."""
        if N < 2:
            raise ValueError("need N >= 2")
        r %= N
        if r == 0:
            win = [0] + list(range(2, N)) + [N + 1]
        else:
            win = list(range(1, N + 1))
            win[r - 1], win[r] = win[r], win[r - 1]
        return AffPerm(win)

    @staticmethod
    def rotation(N):
        """The element pi; its window is (0, 1, ..., N-1)."""
        return AffPerm(range(N))

    @staticmethod
    def from_word(N, word, rot=0):
        w = AffPerm.identity(N)
        for r in word:
            w = w * AffPerm.simple(N, r)
        return w * rot_pow(N, rot)

    def apply(self, i):
        q, r = divmod(i - 1, self.N)
        return self.win[r] + q * self.N

    def __mul__(self, other):
        if not isinstance(other, AffPerm) or other.N != self.N:
            return NotImplemented
        return AffPerm(tuple(self.apply(other.win[i])
                             for i in range(self.N)))

    def inverse(self):
        N = self.N
        win = [0] * N
        for i in range(1, N + 1):
            v = self.win[i - 1]
            q, r = divmod(v - 1, N)
            win[r] = i - q * N
        return AffPerm(win)

    def shift(self):
        return (sum(self.win) - self.N * (self.N + 1) // 2) // self.N

    def length(self):
        return length(self)

    def act(self, lam, e, sign="neg"):
        """Action on weight tuples: position j of the result pulls the
        coordinate at w^{-1}(j), each period wrap costing e."""
        if sign == "pos":
            neg = self.act(tuple(-x for x in lam), e, "neg")
            return tuple(-x for x in neg)
        if sign != "neg":
            raise ValueError("sign must be 'neg' or 'pos'")
        N = self.N
        if len(lam) != N:
            raise ValueError("weight length mismatch")
        inv = self.inverse()
        out = []
        for j in range(1, N + 1):
            q, r = divmod(inv.apply(j) - 1, N)
            out.append(lam[r] + q * e)
        return tuple(out)

    def __eq__(self, other):
        return isinstance(other, AffPerm) and self.win == other.win

    def __hash__(self):
        return hash(self.win)

    def __repr__(self):
        return "AffPerm%r" % (self.win,)


def rot_pow(N, m):
    pi = AffPerm.rotation(N)
    if m < 0:
        pi, m = pi.inverse(), -m
    w = AffPerm.identity(N)
    for _ in range(m):
        w = w * pi
    return w


def length(w):
    """Affine inversion count: for each window pair, the number of
    period translates put out of order."""
    N, win = w.N, w.win
    total = 0
    for i in range(N):
        for j in range(i + 1, N):
            d = win[j] - win[i]
            # translates j + mN with w(i) > w(j) + mN, m >= 0 (or the
            # symmetric count when the window pair is already inverted)
            if d > 0:
                total += d // N
            else:
                total += (-d - 1) // N + 1
    return total


def finite_part(w):
    """Right-divide off the rotation: the shift-zero factor."""
    return w * rot_pow(w.N, w.shift())


def right_descents(w):
    lw = length(w)
    return [r for r in range(w.N) if length(w * AffPerm.simple(w.N, r)) < lw]


def reduced_word(w):
    """A reduced word for the shift-zero part, plus the rotation power
    so that w == from_word(N, word, rot)."""
    rot = -w.shift()
    x = finite_part(w)
    word = []
    while True:
        ds = right_descents(x)
        if not ds:
            break
        word.append(ds[0])
        x = x * AffPerm.simple(w.N, ds[0])
    word.reverse()
    return word, rot


@functools.lru_cache(maxsize=None)
def _interval_cache(base):
    word, _ = reduced_word(base)
    cur = {AffPerm.identity(base.N)}
    for r in word:
        s = AffPerm.simple(base.N, r)
        cur = cur | {x * s for x in cur}
    return frozenset(cur)


def lower_interval(v):
    """All w <= v in Bruhat order (same shift as v), via the subword
    closure of one reduced word."""
    n = v.shift()
    tail = rot_pow(v.N, -n)
    return frozenset(y * tail for y in _interval_cache(finite_part(v)))


def bruhat_leq(w1, w2):
    if w1.N != w2.N:
        raise ValueError("different periods")
    if w1.shift() != w2.shift():
        raise Incomparable("different rotation shifts")
    a, b = finite_part(w1), finite_part(w2)
    if length(a) > length(b):
        return False
    return a in _interval_cache(b)


# -- weight-side predicates


def anti_dominant(lam, e):
    N = len(lam)
    return all(lam[i] <= lam[i + 1] for i in range(N - 1)) \
        and (N < 2 or lam[N - 1] <= lam[0] + e)


def dominant(lam, e):
    N = len(lam)
    return all(lam[i] >= lam[i + 1] for i in range(N - 1)) \
        and (N < 2 or lam[N - 1] >= lam[0] - e)


def nu_dominant(lam, nu):
    """Strictly decreasing except across the block boundaries cut out
    by the composition nu."""
    cuts = set(itertools.accumulate(nu))
    return all(lam[r - 1] > lam[r] for r in range(1, len(lam))
               if r not in cuts)


def one_mu(mu, convention="standard"):
    """Anti-dominant orbit base point for a composition mu with e
    parts: value b repeated mu_b times, or the shifted variant with
    values 0..e-1."""
    e = len(mu)
    if convention == "standard":
        pairs = [(b, mu[b - 1]) for b in range(1, e + 1)]
    elif convention == "shifted":
        pairs = [(b, mu[(b - 1) % e]) for b in range(e)]
    else:
        raise ValueError("unknown convention")
    out = []
    for val, count in pairs:
        out += [val] * count
    return tuple(out)


def one_mu_plus(mu):
    """Dominant base point for the positive action: value e - b + 1
    repeated mu_b times."""
    e = len(mu)
    out = []
    for b in range(1, e + 1):
        out += [e - b + 1] * mu[b - 1]
    return tuple(out)


# -- Young subgroups and coset representatives


def young_gens(lam):
    """Indices r with s_r fixing lam pointwise (never the affine one)."""
    return tuple(r for r in range(1, len(lam)) if lam[r - 1] == lam[r])


def young_subgroup(N, gens):
    gens = [AffPerm.simple(N, r) for r in gens]
    seen = {AffPerm.identity(N)}
    frontier = deque(seen)
    while frontier:
        w = frontier.popleft()
        for s in gens:
            x = w * s
            if x not in seen:
                seen.add(x)
                frontier.append(x)
    return frozenset(seen)


def longest_element(group):
    return max(group, key=length)


def is_min_rep(w, gens):
    lw = length(w)
    return all(length(w * AffPerm.simple(w.N, r)) > lw for r in gens)


def is_max_rep(w, gens):
    lw = length(w)
    return all(length(w * AffPerm.simple(w.N, r)) < lw for r in gens)


def coset_reps(lam_mu, v, flavor="min"):
    """Representatives of cosets wW inside the Bruhat truncation at v,
    where W is the Young stabilizer of lam_mu; flavor picks the
    shortest or longest element of each coset."""
    gens = young_gens(lam_mu)
    if flavor == "min":
        keep = is_min_rep
    elif flavor == "max":
        keep = is_max_rep
    else:
        raise ValueError("flavor must be 'min' or 'max'")
    reps = [w for w in lower_interval(v) if keep(w, gens)]
    reps.sort(key=lambda w: (length(w), w.win))
    return reps


def j_between(lam_big, lam_small):
    """Shortest representatives of the cosets of the Young stabilizer
    of lam_small inside the one of lam_big."""
    N = len(lam_big)
    big = young_subgroup(N, young_gens(lam_big))
    small = young_gens(lam_small)
    if not set(small) <= set(young_gens(lam_big)):
        raise ValueError("no containment between the Young subgroups")
    reps = [w for w in big if is_min_rep(w, small)]
    reps.sort(key=lambda w: (length(w), w.win))
    return reps


def nu_filter(reps, lam, e, nu, sign="neg"):
    """Keep representatives sending the base point into the set of
    nu-dominant weights."""
    return [w for w in reps if nu_dominant(w.act(lam, e, sign), nu)]


def stabilizer_bfs(lam, e, L, sign="neg"):
    """All w of length <= L fixing lam; brute-force oracle over words
    in the generators and the rotation."""
    N = len(lam)
    gens = [AffPerm.simple(N, r) for r in range(N)]
    seen = {AffPerm.identity(N): 0}
    frontier = deque([AffPerm.identity(N)])
    while frontier:
        w = frontier.popleft()
        if seen[w] == L:
            continue
        for s in gens:
            x = w * s
            if x not in seen:
                seen[x] = seen[w] + 1
                frontier.append(x)
    return frozenset(w for w in seen if w.act(lam, e, sign) == lam)


# -- the stretching map


def upsilon_equivariance_check(w, lam, e, k):
    """The coordinate stretching at (e, k) commutes with the action of
    w, the period growing by one; anti-dominance is carried along."""
    lhs = upsilon_tuple(w.act(lam, e), e, k)
    rhs = w.act(upsilon_tuple(lam, e, k), e + 1)
    if lhs != rhs:
        return False
    if anti_dominant(lam, e) and not anti_dominant(upsilon_tuple(lam, e, k), e + 1):
        return False
    return True
