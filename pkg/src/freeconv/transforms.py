"""Boxed convolutions and the S-, U-, and S'-transforms.

Four convolution products on truncated series are defined by summing the
two-series tree evaluations over doubled trees R(tau), with unit elements
interleaved between the genuine arguments in a pattern that depends on the
variant.  The S-transform of f = I.F is the series S with f^{o-1} = I.S; the
U-transform is S^{-1}.I.S; the primed transform inverts F.I instead.  Each
transform is computed along two or three independent routes and the results
are compared before anything is returned, so a silent regression in the
series arithmetic cannot slip through.
"""

import random
import time
from itertools import product

from .algebra import AlgebraElement, mat_inverse
from .multiseries import (MultiMap, TruncSeries, alt_tree_eval, comp_inverse,
                          compose_at, is_gdif, is_gi, is_ginv, mul_at,
                          mult_inverse, random_series)
from .trees import enumerate_trees, rmap

BOX_VARIANTS = ("box", "line", "red", "redred")


def _doubled_forest(n, planted):
    """All R(tau) for tau in Y_n, each prefixed with an extra root if planted."""
    if planted:
        return [((), rmap(t)) for t in enumerate_trees(n)]
    return [rmap(t) for t in enumerate_trees(n)]


def boxconv(variant, f, g):
    """One of the four boxed convolutions of f and g.

    variant   trees          argument pattern         degree 0
    box       R(tau)         x1,1,x2,1,...,xn,1       g_0
    line      R(tau)         1,x1,1,x2,...,1,xn       g_0
    red       (|,R(tau))     x1,1,x2,1,...,1,xn       0
    redred    (|,R(tau))     1,x1,1,x2,...,xn,1       g_1(1)

    For 'red' the tree sum at degree n runs over Y_{n-1} and the two series
    swap roles inside the evaluation.  Degree n of 'redred' reads g at degree
    n+1, so its output is truncated one order lower than the inputs.
    """
    if variant not in BOX_VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    if f.d != g.d or f.N != g.N:
        raise ValueError("series must share dimension and truncation order")
    d, N = f.d, f.N
    if N < 1:
        raise ValueError("convolution needs at least order 1")
    dd = d * d
    one = AlgebraElement.unit(d)
    basis = [AlgebraElement.basis(d, i) for i in range(dd)]
    order = N - 1 if variant == "redred" else N
    if variant == "red":
        out = [MultiMap.zero(d, 0)]
    elif variant == "redred":
        out = [MultiMap.constant(g[1](one))]
    else:
        out = [g[0]]
    memo = {}
    for n in range(1, order + 1):
        if variant == "box" or variant == "line":
            forest = _doubled_forest(n, planted=False)
        elif variant == "red":
            forest = _doubled_forest(n - 1, planted=True)
        else:
            forest = _doubled_forest(n, planted=True)
        tensor = {}
        for key in product(range(dd), repeat=n):
            xs = [basis[i] for i in key]
            if variant == "box":
                args = tuple(y for x in xs for y in (x, one))
            elif variant == "line":
                args = tuple(y for x in xs for y in (one, x))
            elif variant == "red":
                args = tuple(y for x in xs for y in (x, one))[:-1]
            else:
                args = (one,) + tuple(y for x in xs for y in (x, one))
            total = AlgebraElement.zero(d)
            for t in forest:
                if variant == "red":
                    total = total + alt_tree_eval(g, f, t, args, memo)
                else:
                    total = total + alt_tree_eval(f, g, t, args, memo)
            tensor[key] = total
        out.append(MultiMap(d, n, tensor))
    return TruncSeries(d, order, out)


def strip_identity(f):
    """The series F with f = I.F, read off as F_m = f_{m+1}(1, . , ..., .).

    Only faithful when f actually has the first-argument-absorbing shape;
    callers check is_gi first (or compare a rebuilt I.F against f).
    """
    if f.N < 1:
        raise ValueError("cannot strip the identity from an order-0 series")
    return TruncSeries(f.d, f.N - 1,
                       [f[m + 1].unit_in_first_slot() for m in range(f.N)])


def _s_via_inverse(f):
    return strip_identity(comp_inverse(f))


def _s_via_fixed_point(f):
    # S solves S = (F o (I.S))^{-1}: degree m of the right-hand side only
    # involves S below degree m, so the coefficients peel off one at a time.
    d = f.d
    F = strip_identity(f)
    s0 = mat_inverse(F[0].tensor[()])
    smaps = [MultiMap.constant(s0)]
    for m in range(1, f.N):
        part = TruncSeries(d, m - 1, smaps)
        inner = mul_at(TruncSeries.identity(d, m), part, m)
        comp = compose_at(F, inner, m)
        t0_inv = mat_inverse(comp[0].tensor[()])
        tensor = {}
        for k in range(m):
            sk, ck = smaps[k], comp[m - k]
            if sk.is_zero() or ck.is_zero():
                continue
            for ka, va in sk.tensor.items():
                for kb, vb in ck.tensor.items():
                    key = ka + kb
                    val = va * vb
                    tensor[key] = tensor[key] + val if key in tensor else val
        smaps.append(MultiMap(d, m, {k: (v * t0_inv).scale(-1)
                                     for k, v in tensor.items()}))
    return TruncSeries(d, f.N - 1, smaps)


def s_transform(f, path="both"):
    """S with f^{o-1} = I.S; one order shorter than f.

    path 'inverse' reverts f and strips the identity; path 'fixed' runs the
    degree-by-degree fixed-point recursion; 'both' (default) computes the two
    and insists they agree.
    """
    if not is_gi(f):
        raise ValueError("the S-transform needs a series of the I.F shape")
    if path == "inverse":
        return _s_via_inverse(f)
    if path == "fixed":
        return _s_via_fixed_point(f)
    if path != "both":
        raise ValueError(f"unknown path {path!r}")
    a = _s_via_inverse(f)
    b = _s_via_fixed_point(f)
    if a != b:
        raise ArithmeticError("the two S-transform computations disagree")
    return a


def u_transform(f):
    """S^{-1}.I.S, computed three ways and cross-checked.

    The alternatives are (F.I) o (I.S) and (F.I) o f^{o-1}; all three agree
    degree by degree.  Lands in the composition group, same order as f.
    """
    if not is_gi(f):
        raise ValueError("the U-transform needs a series of the I.F shape")
    d, N = f.d, f.N
    s = s_transform(f)
    ident = TruncSeries.identity(d, N)
    u1 = mul_at(mul_at(mult_inverse(s), ident, N), s, N)
    fi = mul_at(strip_identity(f), ident, N)
    u2 = compose_at(fi, mul_at(ident, s, N), N)
    u3 = compose_at(fi, comp_inverse(f), N)
    if not (u1 == u2 == u3):
        raise ArithmeticError("the three U-transform expressions disagree")
    return u1


def s_prime(f):
    """S' with S'.I = (F.I)^{o-1}, for f = I.F; one order shorter than f.

    The reversion of F.I absorbs its last argument on the right, which is
    checked by reassembling S'.I before returning.
    """
    if not is_gi(f):
        raise ValueError("the primed transform needs a series of the I.F shape")
    d, N = f.d, f.N
    ident = TruncSeries.identity(d, N)
    h = comp_inverse(mul_at(strip_identity(f), ident, N))
    sp = TruncSeries(d, N - 1, [h[m + 1].unit_in_last_slot() for m in range(N)])
    if mul_at(sp, ident, N) != h:
        raise ArithmeticError("the reversion of F.I does not factor as S'.I")
    return sp


# -- the identity suite ---------------------------------------------------------

def _first_difference(a, b):
    for n in range(min(a.N, b.N) + 1):
        if a[n] != b[n]:
            keys = sorted(set(a[n].tensor) | set(b[n].tensor))
            for key in keys:
                va = a[n].tensor.get(key, AlgebraElement.zero(a.d))
                vb = b[n].tensor.get(key, AlgebraElement.zero(b.d))
                if va != vb:
                    return {"degree": n, "entry": list(key),
                            "lhs": va.to_json(), "rhs": vb.to_json()}
    if a.N != b.N:
        return {"degree": min(a.N, b.N) + 1, "entry": None,
                "lhs": f"order {a.N}", "rhs": f"order {b.N}"}
    return None


def _transpose_map(d):
    return MultiMap(d, 1, {(p * d + q,): AlgebraElement.basis(d, q * d + p)
                           for p in range(d) for q in range(d)})


def verify_transform_identities(N=4, d=2, trials=20, seed=0):
    """Check every convolution/transform identity on seeded random series.

    Returns a report dict; each check carries an id, a code-like statement,
    a pass/fail status, and on failure the first differing tensor entry.
    """
    rng = random.Random(seed)
    started = time.time()
    results = {}

    def record(cid, statement, ok, witness=None, params=None):
        slot = results.setdefault(cid, {"id": cid, "statement": statement,
                                        "status": "pass", "params": params or {}})
        if not ok and slot["status"] == "pass":
            slot["status"] = "fail"
            slot["witness"] = witness

    for trial in range(trials):
        params = {"trial": trial}
        f = random_series(rng, d, N, "gi", bound=2)
        g = random_series(rng, d, N, "gi", bound=2)
        p = random_series(rng, d, N, "mult", bound=2)
        q = random_series(rng, d, N, "mult", bound=2)
        ident = TruncSeries.identity(d, N)

        # composition factorizations hold for arbitrary zero-constant pairs
        for tag, (a, b) in (("general", (p, q)), ("absorbing", (f, g))):
            box = boxconv("box", a, b)
            red = boxconv("red", a, b)
            rhs = compose_at(b, red, N)
            record(f"box-compose-{tag}", "box(f,g) == compose(g, red(f,g))",
                   box == rhs, _first_difference(box, rhs), params)
            line = boxconv("line", b, a)
            redred = boxconv("redred", a, b)
            rhs = compose_at(a, mul_at(redred, ident, N), N)
            record(f"line-compose-{tag}", "line(g,f) == compose(f, redred(f,g)*I)",
                   line == rhs, _first_difference(line, rhs), params)

        box = boxconv("box", f, g)
        red = boxconv("red", f, g)
        redred = boxconv("redred", f, g)
        line_gf = boxconv("line", g, f)

        rhs = mul_at(red, redred, N)
        record("box-mult-split", "box(f,g) == red(f,g) * redred(f,g) on I.Mult",
               box == rhs, _first_difference(box, rhs), params)
        rhs = mul_at(redred, red, N)
        record("line-mult-split", "line(g,f) == redred(f,g) * red(f,g) on I.Mult",
               line_gf == rhs, _first_difference(line_gf, rhs), params)

        record("box-class", "box and red stay in I.Mult; redred invertible; "
               "line compositionally invertible",
               is_gi(box) and is_gi(red) and is_ginv(redred) and is_gdif(line_gf),
               None, params)

        s_box = s_transform(box)
        s_f, s_g = s_transform(f), s_transform(g)
        u_f, u_g = u_transform(f), u_transform(g)
        rhs = mul_at(s_g, compose_at(s_f, u_g, N - 1), N - 1)
        record("s-of-box", "S(box(f,g)) == S(g) * (S(f) o U(g))",
               s_box == rhs, _first_difference(s_box, rhs), params)
        u_box = u_transform(box)
        rhs = compose_at(u_f, u_g, N)
        record("u-of-box", "U(box(f,g)) == U(f) o U(g)",
               u_box == rhs, _first_difference(u_box, rhs), params)

        if d == 1:
            rhs = mul_at(s_g, s_f, N - 1)
            record("s-of-box-scalar", "S(box(f,g)) == S(g) * S(f) when d == 1",
                   s_box == rhs, _first_difference(s_box, rhs), params)

    if d >= 2:
        # outside I.Mult the product factorization breaks: degree one of
        # box is g1(f1(x)) while red*redred gives f1(x) g1(1), and a
        # transpose in g1 tells them apart.
        zero, one_m = MultiMap.zero(d, 0), MultiMap.identity(d)
        pad = [MultiMap.zero(d, n) for n in range(2, N + 1)]
        f_bad = TruncSeries(d, N, [zero, one_m] + pad)
        g_bad = TruncSeries(d, N, [zero, _transpose_map(d)] + pad)
        box = boxconv("box", f_bad, g_bad)
        rhs = mul_at(boxconv("red", f_bad, g_bad),
                     boxconv("redred", f_bad, g_bad), N)
        record("mult-split-needs-absorption",
               "box(f,g) != red(f,g) * redred(f,g) for some f,g outside I.Mult",
               box != rhs, _first_difference(box, rhs), {"g1": "transpose"})

    checks = list(results.values())
    return {"suite": "transforms",
            "checks": checks,
            "seed": seed, "order": N, "dim": d, "trials": trials,
            "status": "pass" if all(c["status"] == "pass" for c in checks) else "fail",
            "elapsed": round(time.time() - started, 3)}
