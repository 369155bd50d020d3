"""Verification suites shared by the test-suite and the command line.

Each suite function returns a report dict: {"suite", "params", "checks",
"duration_ms"} with checks sorted by name.  A check is {"name",
"status"} plus an optional "witness" describing the first failure.
"""

import itertools
import time
from fractions import Fraction

from .klr import KLRContext, _compositions
from .quiver import DimVec, Quiver, seq_dimvec, sequences_of
from .scalars import MultiPoly, Perm, all_perms


def _check(name, ok, witness=None):
    c = {"name": name, "status": "pass" if ok else "fail"}
    if witness is not None and not ok:
        c["witness"] = witness
    return c


def _report(suite, params, checks, t0):
    return {
        "suite": suite,
        "params": params,
        "checks": sorted(checks, key=lambda c: c["name"]),
        "duration_ms": int((time.time() - t0) * 1000),
    }


def report_ok(report) -> bool:
    return all(c["status"] == "pass" for c in report["checks"])


def alphas_of_height(quiver: Quiver, height: int):
    """All dimension vectors of the given height."""
    verts = sorted(quiver.vertices, key=repr)
    for combo in itertools.combinations_with_replacement(verts, height):
        counts = {}
        for v in combo:
            counts[v] = counts.get(v, 0) + 1
        yield DimVec(counts)


# -- KLR relation machinery ---------------------------------------------------
# A relation side is a list of "words"; a word is a list of generator
# tokens ('e', i), ('x', r), ('tau', r), ('poly', f, i).  Each side can be
# evaluated either through normal-form multiplication or as a composition
# of operators on the polynomial representation; both routes must agree
# with each other relation by relation.


def klr_relations(ctx: KLRContext):
    """Yield (name, lhs_words, rhs_words) for every instance of the
    defining relations."""
    d = ctx.d
    for i in ctx.seqs:
        for j in ctx.seqs:
            rhs = [[("e", i)]] if i == j else []
            yield f"idempotent[{i},{j}]", [[("e", i), ("e", j)]], rhs
    yield "unit", [[("e", i)] for i in ctx.seqs], [[]]
    for r in range(d):
        for i in ctx.seqs:
            yield (f"x-e[{r},{i}]",
                   [[("x", r), ("e", i)]], [[("e", i), ("x", r)]])
        for s in range(r):
            yield (f"x-x[{r},{s}]",
                   [[("x", r), ("x", s)]], [[("x", s), ("x", r)]])
    for r in range(d - 1):
        sr = Perm.transposition(d, r)
        for i in ctx.seqs:
            si = sr.act_seq(i)
            yield (f"tau-e[{r},{i}]",
                   [[("tau", r), ("e", i)]], [[("e", si), ("tau", r)]])
            delta = [[("e", i)]] if i[r] == i[r + 1] else []
            yield (f"tau-x-up[{r},{i}]",
                   [[("tau", r), ("x", r + 1), ("e", i)]],
                   [[("x", r), ("tau", r), ("e", i)]] + delta)
            yield (f"x-tau-up[{r},{i}]",
                   [[("x", r + 1), ("tau", r), ("e", i)]],
                   [[("tau", r), ("x", r), ("e", i)]] + delta)
            qp = ctx.q_poly(i[r], i[r + 1], r)
            yield (f"tau-square[{r},{i}]",
                   [[("tau", r), ("tau", r), ("e", i)]],
                   [[("poly", qp, i)]] if qp else [])
        for s in range(d):
            if s not in (r, r + 1):
                yield (f"tau-x-far[{r},{s}]",
                       [[("tau", r), ("x", s)]], [[("x", s), ("tau", r)]])
        for s in range(r - 1):
            yield (f"tau-tau-far[{r},{s}]",
                   [[("tau", r), ("tau", s)]], [[("tau", s), ("tau", r)]])
    for r in range(d - 2):
        for i in ctx.seqs:
            corr = ctx.braid_correction(i, r)
            rhs = [[("tau", r + 1), ("tau", r), ("tau", r + 1), ("e", i)]]
            if corr is not None:
                rhs.append([("poly", corr, i)])
            yield (f"braid[{r},{i}]",
                   [[("tau", r), ("tau", r + 1), ("tau", r), ("e", i)]], rhs)


def _word_to_element(ctx: KLRContext, word):
    out = ctx.one()
    for tok in word:
        if tok[0] == "poly":
            g = ctx.from_poly(tok[1], tok[2])
        elif tok[0] == "e":
            g = ctx.generator("e", None, tok[1])
        else:
            g = ctx.zero()
            for i in ctx.seqs:
                g = g + ctx.generator(tok[0], tok[1], i)
        out = ctx.multiply(out, g)
    return out


def _side_to_element(ctx, words):
    out = ctx.zero()
    for word in words:
        out = out + _word_to_element(ctx, word)
    return out


def _apply_token(ctx: KLRContext, tok, vec):
    out = {}
    for i, f in vec.items():
        if tok[0] == "e":
            if i == tok[1]:
                out[i] = out.get(i, MultiPoly(ctx.d)) + f
        elif tok[0] == "x":
            out[i] = out.get(i, MultiPoly(ctx.d)) + f * ctx.xvar(tok[1])
        elif tok[0] == "tau":
            g, comp = ctx.tau_act(tok[1], f, i)
            if g:
                out[comp] = out.get(comp, MultiPoly(ctx.d)) + g
        else:
            if i == tok[2]:
                out[i] = out.get(i, MultiPoly(ctx.d)) + f * tok[1]
    return {k: v for k, v in out.items() if v}


def _apply_side(ctx, words, vec):
    total = {}
    for word in words:
        cur = vec
        for tok in reversed(word):
            cur = _apply_token(ctx, tok, cur)
        for k, v in cur.items():
            total[k] = total.get(k, MultiPoly(ctx.d)) + v
    return {k: v for k, v in total.items() if v}


def _test_vectors(ctx: KLRContext):
    """A constant and a generic polynomial vector per sequence."""
    generic = MultiPoly(ctx.d, {(0,) * ctx.d: Fraction(1)})
    for r in range(ctx.d):
        generic = generic + ctx.xvar(r) * Fraction(r + 2) \
            + ctx.xvar(r) * ctx.xvar(r) * Fraction(2 * r + 3)
    one = MultiPoly.const(ctx.d, Fraction(1))
    vecs = []
    for i in ctx.seqs:
        vecs.append({i: one})
        vecs.append({i: generic})
    return vecs


def klr_relation_failures(ctx: KLRContext, also_operators: bool = True):
    """Check every defining relation under normal-form multiplication
    and (optionally) as operators on the polynomial representation."""
    fails = []
    vecs = _test_vectors(ctx) if also_operators else []
    for name, lhs, rhs in klr_relations(ctx):
        if _side_to_element(ctx, lhs) != _side_to_element(ctx, rhs):
            fails.append(f"{name}: product mismatch")
            continue
        for v in vecs:
            if _apply_side(ctx, lhs, v) != _apply_side(ctx, rhs, v):
                fails.append(f"{name}: operator mismatch")
                break
    return fails


def multiply_act_failures(ctx: KLRContext, degree_bound: int = 4,
                          max_pairs: int | None = None, seed: int = 0):
    """Oracle equivalence: applying a normal-form product agrees with
    composing the two operator actions, on monomial test vectors."""
    import random

    monos = []
    for i in ctx.seqs:
        for w in all_perms(ctx.d):
            base = ctx.word_degree(w, i)
            top = (degree_bound - base) // 2
            for n in range(top + 1):
                for exp in _compositions(n, ctx.d):
                    monos.append(ctx.monomial(w, exp, i))
    npairs = len(monos) * len(monos)
    if max_pairs is None or npairs <= max_pairs:
        pairs = [(a, b) for a in monos for b in monos]
    else:
        rng = random.Random(seed)
        picks = rng.sample(range(npairs), max_pairs)
        pairs = [(monos[p // len(monos)], monos[p % len(monos)]) for p in picks]
    # constant vectors suffice: dot-bearing right factors already probe
    # the polynomial directions
    vecs = [{i: MultiPoly.const(ctx.d, Fraction(1))} for i in ctx.seqs]
    fails = []
    for a, b in pairs:
        ab = ctx.multiply(a, b)
        for v in vecs:
            if ctx.act(ab, v) != ctx.act(a, ctx.act(b, v)):
                fails.append(f"{a!r} * {b!r} on {v!r}")
                break
    return fails


def graded_dim_series_failures(ctx: KLRContext, bound: int = 6):
    """Compare the counted graded dimensions of e(j) R e(i) against the
    expansion of the spanning-set generating function
    sum_w q^{deg tau_w e(i)} / (1 - q^2)^d."""
    fails = []
    for i in ctx.seqs:
        for j in ctx.seqs:
            counted = ctx.graded_dim(j, i, bound)
            # series route: expand each 1/(1-q^2) factor independently
            series: dict = {}
            for w in all_perms(ctx.d):
                if w.act_seq(i) != j:
                    continue
                base = ctx.word_degree(w, i)
                expo = [base]
                for _ in range(ctx.d):
                    expo = [e0 + 2 * n for e0 in expo
                            for n in range((bound - e0) // 2 + 1) if e0 + 2 * n <= bound]
                for deg in expo:
                    series[deg] = series.get(deg, 0) + 1
            if {k: v for k, v in counted.items() if k <= bound} != series:
                fails.append(f"graded dims e({j})Re({i}): {counted} != {series}")
    return fails


# -- suites -------------------------------------------------------------------


def suite_klr_relations(es=(2, 3, 4), max_height=4, degree_bound=4,
                        oracle_pair_cap=120, seed=0):
    t0 = time.time()
    checks = []
    for e in es:
        quiver = Quiver.cyclic(e)
        for h in range(1, max_height + 1):
            for alpha in alphas_of_height(quiver, h):
                ctx = KLRContext(quiver, alpha)
                fails = klr_relation_failures(ctx)
                checks.append(_check(
                    f"relations[e={e},alpha={_dimvec_name(alpha)}]",
                    not fails, fails[:1] or None))
                fails = multiply_act_failures(
                    ctx, degree_bound, max_pairs=oracle_pair_cap, seed=seed)
                checks.append(_check(
                    f"oracle[e={e},alpha={_dimvec_name(alpha)}]",
                    not fails, fails[:1] or None))
    return _report("klr-relations", {
        "es": list(es), "max_height": max_height,
        "degree_bound": degree_bound, "seed": seed,
    }, checks, t0)


def suite_klr_basis(es=(2, 3, 4), max_height=4, degree_bound=6):
    t0 = time.time()
    checks = []
    for e in es:
        quiver = Quiver.cyclic(e)
        for h in range(1, max_height + 1):
            for alpha in alphas_of_height(quiver, h):
                ctx = KLRContext(quiver, alpha)
                fails = graded_dim_series_failures(ctx, degree_bound)
                checks.append(_check(
                    f"basis[e={e},alpha={_dimvec_name(alpha)}]",
                    not fails, fails[:1] or None))
    return _report("klr-basis", {
        "es": list(es), "max_height": max_height, "degree_bound": degree_bound,
    }, checks, t0)


def suite_phi_iso(pairs=((2, 0), (2, 1), (3, 0), (3, 1), (3, 2)),
                  max_height=3, degree_bound=4):
    """The base algebra embeds isomorphically into the balanced
    quotient: relation transport, graded-dimension agreement through two
    pipelines, and spanning of the image."""
    from .balanced import BalancedContext
    from .quiver import double_cyclic

    t0 = time.time()
    checks = []
    for e, k in pairs:
        quiver = Quiver.cyclic(e)
        for h in range(1, max_height + 1):
            for alpha in alphas_of_height(quiver, h):
                bc = BalancedContext(double_cyclic(e, k), alpha)
                tag = f"e={e},k={k},alpha={_dimvec_name(alpha)}"
                fails = []
                for name, lhs, rhs in klr_relations(bc.base):
                    diff = (bc.phi_apply(_side_to_element(bc.base, lhs))
                            - bc.phi_apply(_side_to_element(bc.base, rhs)))
                    if not diff:
                        continue
                    degs = {bc.bar.monomial_degree(*key) for key in diff.terms}
                    if min(degs) > degree_bound:
                        continue
                    if not bc.in_ideal(diff):
                        fails.append(name)
                checks.append(_check(f"transport[{tag}]", not fails,
                                     fails[:1] or None))
                dim_ok, span_ok, witness = _phi_dim_pinch(bc, degree_bound)
                checks.append(_check(f"dims[{tag}]", dim_ok, witness))
                checks.append(_check(f"span[{tag}]", span_ok, witness))
    return _report("phi-iso", {
        "pairs": [list(p) for p in pairs], "max_height": max_height,
        "degree_bound": degree_bound,
    }, checks, t0)


def _phi_dim_pinch(bc, bound):
    """Certify blockwise dimension agreement between the base algebra
    and the quotient in degrees <= bound.

    Upper bounds come from block size minus a modular ideal rank; the
    lower bound is the exact operator rank of the image of the degree-m
    basis.  When every upper bound meets its block target and the global
    lower bound meets the total, each block is pinned exactly, and the
    independent images of the right cardinality also span."""
    lo = bc._min_word_degree()
    pairs = [(j, i) for j in bc.base.seqs for i in bc.base.seqs]
    targets = {(j, i): bc.base.graded_dim(j, i, bound) for j, i in pairs}
    for m in range(lo, bound + 1):
        total = 0
        for j, i in pairs:
            t = targets[(j, i)].get(m, 0)
            total += t
            jp = frozenset({bc.dq.phi_seq(j)})
            ip = frozenset({bc.dq.phi_seq(i)})
            if not bc.monomials_slice(m, jp, ip):
                if t:
                    return False, False, f"m={m}: empty block, target {t}"
                continue
            up = bc.block_dim_upper(m, j, i, t)
            if up != t:
                return False, False, f"m={m} block {j},{i}: upper {up} != {t}"
        if total:
            low = bc.image_rank(m, total)
            if low != total:
                return True, False, f"m={m}: image rank {low} != {total}"
    return True, True, None


def suite_phi_intertwiners(pairs=((2, 0), (2, 1), (3, 0), (3, 1), (3, 2)),
                           max_height=3):
    """Rescaled intertwiner-image identities, checked as operators on
    the quotient polynomial representation."""
    from .balanced import BalancedContext
    from .quiver import double_cyclic

    t0 = time.time()
    checks = []
    for e, k in pairs:
        quiver = Quiver.cyclic(e)
        for h in range(2, max_height + 1):
            for alpha in alphas_of_height(quiver, h):
                bc = BalancedContext(double_cyclic(e, k), alpha)
                tag = f"e={e},k={k},alpha={_dimvec_name(alpha)}"
                fails = []
                for i in bc.base.seqs:
                    for r in range(bc.base.d - 1):
                        rep = bc.phi_intertwiner_check(r, i)
                        if rep["status"] == "fail":
                            fails.append(f"r={r},i={i}")
                checks.append(_check(f"intertwiners[{tag}]", not fails,
                                     fails[:1] or None))
    return _report("phi-intertwiners", {
        "pairs": [list(p) for p in pairs], "max_height": max_height,
    }, checks, t0)


def suite_ideal_almost_ordered(pairs=((2, 0), (2, 1), (3, 0), (3, 1), (3, 2)),
                               max_bar_height=4, degree_bound=4):
    """The spans generated by unordered and by almost-ordered
    idempotents have the same graded components."""
    from .balanced import BalancedContext
    from .quiver import double_cyclic

    t0 = time.time()
    checks = []
    for e, k in pairs:
        quiver = Quiver.cyclic(e)
        for h in range(1, max_bar_height + 1):
            for alpha in alphas_of_height(quiver, h):
                dq = double_cyclic(e, k)
                if dq.phi_dimvec(alpha).height() > max_bar_height:
                    continue
                bc = BalancedContext(dq, alpha)
                tag = f"e={e},k={k},alpha={_dimvec_name(alpha)}"
                lo = bc._min_word_degree()
                bad = None
                for m in range(lo, degree_bound + 1):
                    a = bc.ideal_rank(m, "unordered")
                    b = bc.ideal_rank(m, "almost")
                    if a != b:
                        bad = f"m={m}: unordered rank {a} != almost rank {b}"
                        break
                checks.append(_check(f"ideals[{tag}]", bad is None, bad))
    return _report("ideal-almost-ordered", {
        "pairs": [list(p) for p in pairs],
        "max_bar_height": max_bar_height, "degree_bound": degree_bound,
    }, checks, t0)


def _dimvec_name(alpha: DimVec) -> str:
    items = sorted(alpha.counts.items(), key=lambda kv: repr(kv[0]))
    return "+".join(f"{c}a{v}" for v, c in items)


# -- Hecke suites -------------------------------------------------------------


def hecke_relations(hx):
    """Yield (name, lhs, rhs) normal-form elements for every instance of
    the defining relations of the rank-d algebra."""
    d = hx.d
    q = hx.q
    qm1 = q - hx.s_const(1)
    T = [hx.gen_T(r) for r in range(d - 1)]
    X = [hx.gen_X(r) for r in range(d)]
    for r in range(d - 1):
        yield f"quadratic[{r}]", hx.multiply(T[r], T[r]), \
            T[r] * qm1 + hx.one() * q
        for s in range(r + 2, d - 1):
            yield (f"far-commute[{r},{s}]",
                   hx.multiply(T[r], T[s]), hx.multiply(T[s], T[r]))
        for s in range(d):
            if s not in (r, r + 1):
                yield (f"T-X-far[{r},{s}]",
                       hx.multiply(T[r], X[s]), hx.multiply(X[s], T[r]))
        yield (f"T-X-up[{r}]", hx.multiply(T[r], X[r + 1]),
               hx.multiply(X[r], T[r]) + X[r + 1] * qm1)
        yield (f"T-X-down[{r}]", hx.multiply(T[r], X[r]),
               hx.multiply(X[r + 1], T[r]) - X[r + 1] * qm1)
    for r in range(d - 2):
        yield (f"braid[{r}]",
               hx.multiply(hx.multiply(T[r], T[r + 1]), T[r]),
               hx.multiply(hx.multiply(T[r + 1], T[r]), T[r + 1]))
    for r in range(d):
        yield (f"X-unit[{r}]",
               hx.multiply(X[r], hx.gen_X(r, -1)), hx.one())
        for s in range(r):
            yield (f"X-commute[{r},{s}]",
                   hx.multiply(X[r], X[s]), hx.multiply(X[s], X[r]))


def _hecke_test_laurent(hx):
    """A constant and a generic Laurent polynomial."""
    generic = dict(hx.laurent_const(1))
    for r in range(hx.d):
        for power, c in ((1, r + 2), (-1, 2 * r + 3)):
            exp = [0] * hx.d
            exp[r] = power
            key = tuple(exp)
            generic[key] = generic.get(key, hx.s_const(0)) + hx.s_const(c)
    return [hx.laurent_const(1), generic]


def hecke_relation_failures(hx):
    """Defining relations under normal-form multiplication and as
    operators on Laurent polynomials."""
    fails = []
    vecs = _hecke_test_laurent(hx)
    for name, lhs, rhs in hecke_relations(hx):
        if lhs != rhs:
            fails.append(f"{name}: product mismatch")
            continue
        for P in vecs:
            if hx.act(lhs, P) != hx.act(rhs, P):
                fails.append(f"{name}: operator mismatch")
                break
    return fails


def hecke_multiply_act_failures(hx, degree_bound=4, max_pairs=80, seed=0):
    """Oracle equivalence of the product with composed operators on
    Laurent monomials up to the given total absolute degree."""
    import random

    half = degree_bound // 2
    monos = []
    for w in all_perms(hx.d):
        exps = [()]
        for _ in range(hx.d):
            exps = [e0 + (n,) for e0 in exps for n in range(-half, half + 1)]
        for a in exps:
            if sum(abs(n) for n in a) <= half:
                monos.append(hx.element({(w, a): hx.s_const(1)}))
    npairs = len(monos) * len(monos)
    if npairs <= max_pairs:
        pairs = [(a, b) for a in monos for b in monos]
    else:
        rng = random.Random(seed)
        picks = rng.sample(range(npairs), max_pairs)
        pairs = [(monos[p // len(monos)], monos[p % len(monos)])
                 for p in picks]
    one = hx.laurent_const(1)
    fails = []
    for a, b in pairs:
        ab = hx.multiply(a, b)
        if hx.act(ab, one) != hx.act(a, hx.act(b, one)):
            fails.append(f"{a!r} * {b!r}")
    return fails


def suite_hecke_relations(dmax=4, degree_bound=4, oracle_pair_cap=80,
                          cyclo_sizes=((1, 1), (1, 2), (2, 1), (2, 2),
                                       (3, 1), (3, 2)), seed=0):
    """Defining relations (products and operators), the multiply/act
    oracle, and cyclotomic quotient dimensions with closure
    certificates."""
    import math

    from .hecke import HeckeContext, Unstable, cyclotomic_dim

    t0 = time.time()
    checks = []
    for d in range(2, dmax + 1):
        hx = HeckeContext(d)
        fails = hecke_relation_failures(hx)
        checks.append(_check(f"relations[d={d}]", not fails,
                             fails[:1] or None))
        fails = hecke_multiply_act_failures(hx, degree_bound,
                                            oracle_pair_cap, seed)
        checks.append(_check(f"oracle[d={d}]", not fails, fails[:1] or None))
        # the intertwiner acts as the plain reflection
        P = _hecke_test_laurent(hx)[1]
        ok = all(hx.psi_act(r, P) == hx._laurent_swap(P, r)
                 for r in range(d - 1))
        checks.append(_check(f"psi-reflection[d={d}]", ok))
    for d, l in cyclo_sizes:
        try:
            res = cyclotomic_dim(d, l)
            ok = res["dim"] == l ** d * math.factorial(d)
            witness = None if ok else str(res)
        except Unstable as ex:
            ok, witness = False, str(ex)
        checks.append(_check(f"cyclotomic-dim[d={d},l={l}]", ok, witness))
    return _report("hecke-relations", {
        "dmax": dmax, "degree_bound": degree_bound,
        "oracle_pair_cap": oracle_pair_cap, "seed": seed,
    }, checks, t0)


def _dict_apply_side(hx, words, v):
    from .hecke import LocalizedVec

    total = LocalizedVec(hx, {})
    for word in words:
        cur = v
        for tok in reversed(word):
            cur = hx.dict_apply_token(tok, cur)
        total = total + cur
    return total


def _loc_test_vectors(hx, seqs):
    from .hecke import LocalizedVec

    one = hx.s_const(1)
    generic = one
    for r in range(hx.d):
        generic = generic + hx.x_rf(r) * Fraction(r + 2)
    vecs = []
    for i in seqs:
        vecs.append(LocalizedVec(hx, {i: one}))
        vecs.append(LocalizedVec(hx, {i: generic}))
    return vecs


def suite_hecke_dictionary(ds=(2, 3), l=2, window=(0, 1)):
    """Images of KLR generators on the localized representation satisfy
    the KLR defining relations; block idempotents are central; the
    intertwiner squares to the identity."""
    from .hecke import HeckeContext, LocalizedVec

    t0 = time.time()
    checks = []
    for d in ds:
        hx = HeckeContext(d, l=l, window=window)
        fq = hx.label_quiver()
        for alpha in alphas_of_height(fq, d):
            kc = KLRContext(fq, alpha)
            tag = f"d={d},alpha={_dimvec_name(alpha)}"
            vecs = _loc_test_vectors(hx, kc.seqs)
            fails = []
            for name, lhs, rhs in klr_relations(kc):
                for v in vecs:
                    if _dict_apply_side(hx, lhs, v) \
                            != _dict_apply_side(hx, rhs, v):
                        fails.append(name)
                        break
            checks.append(_check(f"klr-relations[{tag}]", not fails,
                                 fails[:1] or None))
        # block idempotents are central for the dictionary operators
        mixed = LocalizedVec(hx, {
            i: hx.s_const(1) + hx.x_rf(0) * Fraction(2)
            for i in itertools.product(hx.labels, repeat=d)})
        ops = [lambda v, r=r: hx.loc_T(r, v) for r in range(d - 1)]
        ops += [lambda v, r=r: hx.loc_X(r, v) for r in range(d)]
        ops += [lambda v, r=r: hx.dict_apply_token(("x", r), v)
                for r in range(d)]
        ops += [lambda v, r=r: hx.dict_apply_token(("tau", r), v)
                for r in range(d - 1)]

        def block(alpha, v):
            comps = {i: f for i, f in v.comps.items()
                     if seq_dimvec(i) == alpha}
            return LocalizedVec(hx, comps)

        central = True
        for alpha in alphas_of_height(fq, d):
            for op in ops:
                if block(alpha, op(mixed)) != op(block(alpha, mixed)):
                    central = False
        checks.append(_check(f"block-central[d={d}]", central))
        psi_ok = all(
            hx.loc_psi(r, hx.loc_psi(r, mixed)) == mixed
            for r in range(d - 1))
        checks.append(_check(f"psi-squared[d={d}]", psi_ok))
    return _report("hecke-dictionary", {
        "ds": list(ds), "l": l, "window": list(window),
    }, checks, t0)


def suite_hecke_specialize(es=(2, 3), d=2):
    """Generic-to-root-of-unity consistency of the dictionary."""
    from .hecke import specialize_check

    t0 = time.time()
    checks = []
    for e in es:
        for k in range(e):
            rep = specialize_check(d, e, k)
            bad = [c for c in rep["checks"] if c["status"] != "pass"]
            checks.append(_check(f"specialize[e={e},k={k},l=1]", not bad,
                                 bad[:1] or None))
        rep = specialize_check(d, e, 0, nu=(0, 1))
        bad = [c for c in rep["checks"] if c["status"] != "pass"]
        checks.append(_check(f"specialize[e={e},k=0,l=2]", not bad,
                             bad[:1] or None))
    return _report("hecke-specialize", {"es": list(es), "d": d}, checks, t0)


# -- Fock suite ---------------------------------------------------------------


def _wedge_keys(inner_lo, inner_hi, nu):
    """All basis keys with indices in the inner range."""
    pool = range(inner_lo, inner_hi + 1)
    blocks_per_size = {}
    for n in set(nu):
        blocks_per_size[n] = [tuple(sorted(c, reverse=True))
                              for c in itertools.combinations(pool, n)]
    keys = [()]
    for n in nu:
        keys = [k + (b,) for k in keys for b in blocks_per_size[n]]
    return keys


def _compositions_upto(N, max_parts):
    for nparts in range(1, max_parts + 1):
        for c in _compositions(N, nparts):
            if all(c):
                yield c


def suite_fock_bracket(es=(2, 3), Nmax=4, max_parts=2, window=(-2, 5),
                       ks=None):
    """The stretching embedding intertwines the lowering and raising
    operators with their images one level up, on every basis vector of
    an inner window; plus residue and weight-space invariants."""
    import random

    from .fock import (
        MultiPartition, WedgeVec, bracket_check, e_apply, f_apply,
        residues, residues_deformed, wedge_weight,
    )
    from .quiver import WeightX, pi_e

    t0 = time.time()
    checks = []
    lo, hi = window
    for e in es:
        for k in range(e) if ks is None else ks:
            if not 0 <= k < e:
                raise ValueError("k out of range for e")
            for N in range(1, Nmax + 1):
                for nu in _compositions_upto(N, max_parts):
                    bad = [key for key in _wedge_keys(lo + 1, hi - 1, nu)
                           if not bracket_check(k, key, e, nu, window)]
                    checks.append(_check(
                        f"bracket[e={e},k={k},nu={nu}]", not bad,
                        bad[:1] or None))
    # Serre-level checks on a spread-out vector
    for e in es:
        nu = (2, 1)
        keys = _wedge_keys(lo + 2, hi - 2, nu)
        rng = random.Random(0)
        v = WedgeVec(window, nu, {
            key: Fraction(rng.randint(1, 9))
            for key in rng.sample(keys, 12)})
        ok = True
        for i in range(e):
            for j in range(e):
                if i == j:
                    continue
                lhs = e_apply(i, f_apply(j, v, e), e)
                rhs = f_apply(j, e_apply(i, v, e), e)
                if lhs != rhs:
                    ok = False
        checks.append(_check(f"ef-commute[e={e}]", ok))
        diag = True
        for key in keys[:40]:
            u = WedgeVec.basis(window, nu, key)
            h = e_apply(0, f_apply(0, u, e), e) - f_apply(0, e_apply(0, u, e), e)
            if h and (set(h.terms) != {key}):
                diag = False
        checks.append(_check(f"ef-diagonal[e={e}]", diag))
        wt_ok = True
        for key in keys[:40]:
            u = WedgeVec.basis(window, nu, key)
            mu = wedge_weight(key, e)
            for i in range(e):
                fu = f_apply(i, u, e)
                target = mu - WeightX({i: 1}) + WeightX({(i + 1) % e: 1})
                if any(wedge_weight(k2, e) != target for k2 in fu.terms):
                    wt_ok = False
        checks.append(_check(f"weight-shift[e={e}]", wt_ok))
    # residues: addable boxes and the windowed refinement
    from .quiver import DimVec, Quiver
    wq = Quiver.windowed(2, -6, 9)
    rng = random.Random(1)
    res_ok = proj_ok = True
    for _ in range(30):
        nu = (rng.randint(1, 4), rng.randint(1, 4))
        parts = []
        for _ in range(2):
            p = sorted((rng.randint(1, 4)
                        for _ in range(rng.randint(0, 3))), reverse=True)
            parts.append(tuple(p))
        lam = MultiPartition(parts)
        e = rng.choice(es)
        base = residues(lam, nu, e)
        if pi_e(residues_deformed(lam, nu, wq), e) != base:
            proj_ok = False
        # grow by one addable box per component when possible
        for r in range(2):
            p = list(lam.parts[r])
            row = len(p)
            grown = MultiPartition(
                [lam.parts[0], lam.parts[1]][:r] + [tuple(p + [1])]
                + list(lam.parts[r + 1:]))
            i = (nu[r] - row) % e
            if residues(grown, nu, e) != base + DimVec({i: 1}):
                res_ok = False
    checks.append(_check("residue-addable-box", res_ok))
    checks.append(_check("residue-projection", proj_ok))
    return _report("fock-bracket", {
        "es": list(es), "Nmax": Nmax, "max_parts": max_parts,
        "window": list(window),
    }, checks, t0)


# -- affine Weyl suite


def suite_weyl_upsilon(samples=500, max_len=6, bfs_len=8, Ns=(2, 3, 4),
                       es=(2, 3), seed=0):
    """Equivariance of the coordinate stretching under the extended
    affine action, the defining relations in window notation, and the
    inversion-count length against a word-length oracle."""
    import random
    from collections import deque

    from .weyl import AffPerm, length, rot_pow, upsilon_equivariance_check

    t0 = time.time()
    checks = []
    rng = random.Random(seed)

    equi_ok, anti_ok = True, True
    for trial in range(samples):
        N = rng.choice(Ns)
        e = rng.choice(es)
        k = rng.randrange(e)
        word = [rng.randrange(N) for _ in range(rng.randrange(max_len + 1))]
        w = AffPerm.from_word(N, word, rng.randrange(-2, 3))
        if length(w) > max_len:
            continue
        if trial % 2:
            lam = tuple(rng.randrange(-3 * e, 3 * e) for _ in range(N))
        else:
            # anti-dominant input so the preservation clause is live
            shift = rng.randrange(-e, e + 1)
            lam = tuple(shift + b
                        for b in sorted(rng.randrange(e) for _ in range(N)))
        if not upsilon_equivariance_check(w, lam, e, k):
            equi_ok = False
    checks.append(_check("upsilon-equivariance", equi_ok))

    rel_ok = True
    for N in range(2, 6):
        ident = AffPerm.identity(N)
        pi = AffPerm.rotation(N)
        s = [AffPerm.simple(N, r) for r in range(N)]
        for i in range(N):
            if s[i] * s[i] != ident:
                rel_ok = False
            if pi * s[(i + 1) % N] != s[i] * pi:
                rel_ok = False
            if N >= 3:
                j = (i + 1) % N
                if s[i] * s[j] * s[i] != s[j] * s[i] * s[j]:
                    rel_ok = False
            for j in range(N):
                if (i - j) % N in (0, 1, N - 1):
                    continue
                if s[i] * s[j] != s[j] * s[i]:
                    rel_ok = False
    checks.append(_check("presentation-relations", rel_ok))

    len_ok = True
    for N in (2, 3):
        gens = [AffPerm.simple(N, r) for r in range(N)]
        dist = {AffPerm.identity(N): 0}
        frontier = deque(dist)
        while frontier:
            w = frontier.popleft()
            if dist[w] == bfs_len:
                continue
            for g in gens:
                x = w * g
                if x not in dist:
                    dist[x] = dist[w] + 1
                    frontier.append(x)
        for w, d in dist.items():
            if length(w) != d:
                len_ok = False
            for n in (-1, 1, 2):
                if length(w * rot_pow(N, n)) != d:
                    len_ok = False
    checks.append(_check("length-vs-bfs", len_ok))

    return _report("weyl-upsilon", {
        "samples": samples, "max_len": max_len, "bfs_len": bfs_len,
        "Ns": list(Ns), "es": list(es), "seed": seed,
    }, checks, t0)


# -- structure algebra suite


def _weyl_ball(N, L):
    from collections import deque

    from .weyl import AffPerm

    gens = [AffPerm.simple(N, r) for r in range(N)]
    dist = {AffPerm.identity(N): 0}
    frontier = deque(dist)
    while frontier:
        w = frontier.popleft()
        if dist[w] == L:
            continue
        for g in gens:
            x = w * g
            if x not in dist:
                dist[x] = dist[w] + 1
                frontier.append(x)
    return dist


def _merge_cases(N):
    out = []
    for e in range(2, N + 1):
        for cuts in itertools.combinations(range(1, N), e - 1):
            parts, prev = [], 0
            for c in list(cuts) + [N]:
                parts.append(c - prev)
                prev = c
            for k in range(e - 1):
                if parts[k] == 1:
                    out.append((tuple(parts), k))
    return out


def _in_indicator_span(Z, vec, d):
    """Membership in the congruence algebra: the coefficient function
    must be constant on every degree-d component."""
    slots = {}
    for comp in Z.basis(d):
        vals = {vec.get(key, 0) for key in comp}
        if len(vals) > 1:
            return False
        slots.update({key: None for key in comp})
    return all(key in slots for key in vec)


def suite_center_resind(Nmax=4, lmax=6, D=8, free_lmax={2: 6, 3: 6, 4: 4},
                        showcase=((1, 1, 2), 0, 6), seed=0):
    """Exhaustive combinatorial factorization for the singleton merge,
    sampled freeness certification on the fixed-point graph quotients,
    and the congruence-algebra layer checks."""
    import random

    from .center import (CongruenceAlgebra, NotFree, _vec_from_indicator,
                         _vec_mul, invariants, poincare_factorization,
                         res_ind_report)
    from .weyl import coset_reps, is_max_rep, length, one_mu, young_gens

    t0 = time.time()
    checks = []
    rng = random.Random(seed)

    # exhaustive: factorization, bijection, length gap
    comb_ok, comb_count = True, 0
    for N in range(2, Nmax + 1):
        ball = _weyl_ball(N, lmax)
        for mu, k in _merge_cases(N):
            mup = list(mu)
            mup[k] = 0
            mup[k + 1] += 1
            gensp = young_gens(one_mu(tuple(mup)))
            for v in ball:
                if not is_max_rep(v, gensp):
                    continue
                r = poincare_factorization(mu, k, v)
                comb_count += 1
                if not (r["gap_ok"] and r["bijection_ok"]
                        and r["factorization_ok"]):
                    comb_ok = False
    checks.append(_check("merge-factorization", comb_ok,
                         None if comb_ok else {"count": comb_count}))

    # sampled freeness with the graded rank of the merge
    free_ok, wit = True, None
    plan = []
    for N in range(2, Nmax + 1):
        ball = _weyl_ball(N, free_lmax.get(N, 4))
        for mu, k in _merge_cases(N):
            mup = list(mu)
            mup[k] = 0
            mup[k + 1] += 1
            gensp = young_gens(one_mu(tuple(mup)))
            vs = sorted((v for v in ball if is_max_rep(v, gensp)),
                        key=lambda w: (length(w), w.win))
            if vs:
                plan.append((mu, k, vs[-1]))
                if N <= 3 and len(vs) > 1:
                    plan.append((mu, k, vs[rng.randrange(len(vs) - 1)]))
    if showcase:
        mu_s, k_s, l_s = showcase
        mup = list(mu_s)
        mup[k_s] = 0
        mup[k_s + 1] += 1
        ball = _weyl_ball(len(one_mu(mu_s)), l_s)
        gensp = young_gens(one_mu(tuple(mup)))
        vs = sorted((v for v in ball if is_max_rep(v, gensp)),
                    key=lambda w: (length(w), w.win))
        plan.append((mu_s, k_s, vs[-1]))
    for mu, k, v in plan:
        try:
            rep = res_ind_report(mu, k, v, D=D)
        except NotFree as exc:
            free_ok, wit = False, {"mu": mu, "k": k, "v": v.win,
                                   "error": str(exc)}
            continue
        if not (rep["rank_ok"] and rep["cohomology_dims_ok"]):
            free_ok, wit = False, {"mu": mu, "k": k, "v": v.win}
    checks.append(_check("merge-freeness", free_ok, wit))

    # congruence-algebra layer: subring closure, degree-zero count,
    # generic fiber rank, invariants against the direct construction
    from .weyl import AffPerm, longest_element, young_subgroup

    v3 = longest_element(young_subgroup(3, (1, 2)))
    lam = one_mu((1, 2))
    Zi = invariants(v3, lam)
    Zd = CongruenceAlgebra(coset_reps(lam, v3))
    checks.append(_check("invariants-match-direct",
                         Zi.graded_dims(D) == Zd.graded_dims(D)))

    sub_ok = True
    for _ in range(30):
        d1 = 2 * rng.randrange(0, 3)
        d2 = 2 * rng.randrange(0, (D - d1) // 2 + 1)
        b1 = Zd.basis(d1)
        b2 = Zd.basis(d2)
        z1 = _vec_from_indicator(b1[rng.randrange(len(b1))])
        z2 = _vec_from_indicator(b2[rng.randrange(len(b2))])
        if not _in_indicator_span(Zd, _vec_mul(z1, z2), d1 + d2):
            sub_ok = False
    checks.append(_check("subring-closure", sub_ok))

    deg0_ok = len(Zd.basis(0)) == 1 and len(
        CongruenceAlgebra(list(Zd.elements[:1])).basis(0)) == 1
    checks.append(_check("degree-zero-components", deg0_ok))

    point = [2, 3, 5][:Zd.N] + [7] * max(0, Zd.N - 3)
    rows = []
    bound = 2 * max(length(w) for w in Zd.elements) + 2
    for d in range(0, bound + 1, 2):
        for comp in Zd.basis(d):
            rows.append(Zd.evaluate(_vec_from_indicator(comp), point))
    rank = 0
    cols = len(Zd.elements)
    mat = [list(r) for r in rows]
    for c in range(cols):
        piv = next((i for i in range(rank, len(mat)) if mat[i][c]), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        for i in range(len(mat)):
            if i != rank and mat[i][c]:
                f = mat[i][c] / mat[rank][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[rank])]
        rank += 1
    checks.append(_check("generic-fiber-rank", rank == cols,
                         None if rank == cols else {"rank": rank,
                                                    "size": cols}))

    return _report("center-resind", {
        "Nmax": Nmax, "lmax": lmax, "D": D, "seed": seed,
        "combinatorial_instances": comb_count,
        "freeness_instances": len(plan),
    }, checks, t0)


# -- quadratic duality suite


def suite_koszul_dual(corpus_size=12, D=6, seed=0):
    """Double duals and truncation duals over a seeded corpus of small
    quadratic presentations, Koszulity probes on stock algebras, and
    square-zero checks for every linear complex built."""
    import random

    from .koszul import (BoundaryNotSquareZero, BimoduleOverBasic,
                         DualModule, QuadPresentation, adjunction_dims,
                         bimodule_dual, bimodule_tensor, dual_numbers,
                         graded_dims, koszulity_probe, linear_complex,
                         path_algebra_line, prop_truncation_dual_check,
                         quadratic_dual, random_presentation,
                         regular_dual_module, subalgebra_hypothesis_check)

    t0 = time.time()
    checks = []
    rng = random.Random(seed)
    corpus = [random_presentation(rng) for _ in range(corpus_size)]

    dd_ok, wit = True, None
    for n, Q in enumerate(corpus):
        lhs = graded_dims(Q, D)
        rhs = graded_dims(quadratic_dual(quadratic_dual(Q)), D)
        if lhs != rhs:
            dd_ok, wit = False, {"index": n, "lhs": lhs, "rhs": rhs}
    checks.append(_check("double-dual-dims", dd_ok, wit))

    tr_ok, wit = True, None
    for n, Q in enumerate(corpus):
        for r in range(len(Q.idempotents) + 1):
            for sub in itertools.combinations(Q.idempotents, r):
                ok, lhs, rhs = prop_truncation_dual_check(Q, sub, D)
                if not ok:
                    tr_ok, wit = False, {"index": n, "subset": sub,
                                         "lhs": lhs, "rhs": rhs}
    checks.append(_check("truncation-dual-dims", tr_ok, wit))

    pr_ok, wit = True, None
    for name, P in [("dual-numbers", dual_numbers())] + [
            ("line-%d" % n, path_algebra_line(n)) for n in (3, 4, 5)]:
        rep = koszulity_probe(P, D)
        if not (rep["is_koszul"] and rep["dual_match"]):
            pr_ok, wit = False, {"algebra": name, "report": rep["steps"]}
    checks.append(_check("koszulity-probes", pr_ok, wit))

    lc_ok, wit = True, None
    builds = []
    P = dual_numbers()
    builds.append((P, regular_dual_module(quadratic_dual(P), 3)))
    builds.append((P, DualModule({0: ["*"]}, {})))
    A3 = path_algebra_line(3)
    builds.append((A3, regular_dual_module(quadratic_dual(A3), 2)))
    builds.append((A3, DualModule({2: ["1"]}, {})))
    for n, (P, M) in enumerate(builds):
        try:
            linear_complex(P, M)
        except BoundaryNotSquareZero as exc:
            lc_ok, wit = False, {"index": n, "error": str(exc)}
    checks.append(_check("linear-complex-square-zero", lc_ok, wit))

    bm_ok = True
    for _ in range(20):
        lams = [str(i) for i in range(rng.randrange(1, 4))]
        comp = lambda: BimoduleOverBasic({
            (a, b): ["m%d" % t for t in range(rng.randrange(3))]
            for a in lams for b in lams})
        M, N = comp(), comp()
        Md = bimodule_dual(M)
        if any(Md.dim(b, a) != M.dim(a, b) for a in lams for b in lams):
            bm_ok = False
        lhsd = bimodule_dual(bimodule_tensor(M, N))
        rhsd = bimodule_tensor(bimodule_dual(N), bimodule_dual(M))
        if any(lhsd.dim(a, b) != rhsd.dim(a, b)
               for a in lams for b in lams):
            bm_ok = False
        X = {a: rng.randrange(3) for a in lams}
        Y = {a: rng.randrange(3) for a in lams}
        left, right = adjunction_dims(M, X, Y)
        if left != right:
            bm_ok = False
    checks.append(_check("bimodule-duality", bm_ok))

    hy_ok, wit = True, None
    for Q in corpus[:4]:
        sub = Q.idempotents[: max(1, len(Q.idempotents) - 1)]
        from .koszul import AlgebraBasis, _corner_presentation

        corner = _corner_presentation(Q, AlgebraBasis(Q, 2), sub)
        rep = subalgebra_hypothesis_check(
            corner, Q, sub, {lam: lam for lam in sub},
            {n: {n: 1} for n, _, _ in corner.arrows}, D=D)
        if not (rep["iso_degree_0"] and rep["iso_degree_1"]
                and rep["kernels_match"] and rep["dual_dims_match"]):
            hy_ok, wit = False, rep
    checks.append(_check("subalgebra-hypothesis", hy_ok, wit))

    return _report("koszul-dual", {
        "corpus_size": corpus_size, "D": D, "seed": seed,
    }, checks, t0)
