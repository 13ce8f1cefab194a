"""Boxed convolutions and the S/U/S' transforms."""

import random

import pytest

from freeconv.algebra import AlgebraElement, random_element_from
from freeconv.multiseries import (TruncSeries, comp_inverse, compose_at,
                                  is_gdif, is_gi, is_ginv, mul_at,
                                  mult_inverse, random_series)
from freeconv.transforms import (BOX_VARIANTS, boxconv, s_prime, s_transform,
                                 strip_identity, u_transform,
                                 verify_transform_identities)

D, N = 2, 3


def _pair(seed, kind="mult"):
    rng = random.Random(seed)
    return (random_series(rng, D, N, kind, bound=2),
            random_series(rng, D, N, kind, bound=2))


def _args(seed, count):
    rng = random.Random(seed)
    return tuple(random_element_from(rng, 3, D) for _ in range(count))


def test_box_low_order_formulas():
    f, g = _pair(0)
    one = AlgebraElement.unit(D)
    out = boxconv("box", f, g)
    x1, x2 = _args(1, 2)
    assert out[0]() == g[0]()
    assert out[1](x1) == g[1](f[1](x1))
    assert out[2](x1, x2) == (g[1](f[2](x1, g[1](one) * x2))
                              + g[2](f[1](x1), f[1](x2)))


def test_line_low_order_formulas():
    f, g = _pair(2)
    one = AlgebraElement.unit(D)
    out = boxconv("line", f, g)
    x1, x2 = _args(3, 2)
    assert out[0]() == g[0]()
    assert out[1](x1) == g[1](f[1](one) * x1)
    assert out[2](x1, x2) == (g[1](f[2](one, g[1](x1)) * x2)
                              + g[2](f[1](one) * x1, f[1](one) * x2))


def test_red_low_order_formulas():
    f, g = _pair(4)
    one = AlgebraElement.unit(D)
    out = boxconv("red", f, g)
    x1, x2 = _args(5, 2)
    assert out[0]().is_zero()
    assert out[1](x1) == f[1](x1)
    assert out[2](x1, x2) == f[2](x1, g[1](one) * x2)


def test_redred_low_order_formulas():
    f, g = _pair(6)
    one = AlgebraElement.unit(D)
    out = boxconv("redred", f, g)
    x1, x2 = _args(7, 2)
    assert out.N == N - 1
    assert out[0]() == g[1](one)
    assert out[1](x1) == g[2](one, f[1](x1))
    assert out[2](x1, x2) == (g[2](one, f[2](x1, g[1](one) * x2))
                              + g[3](one, f[1](x1), f[1](x2)))


def test_boxconv_input_validation():
    f, g = _pair(8)
    with pytest.raises(ValueError):
        boxconv("boxed", f, g)
    h = random_series(random.Random(9), D, N + 1, "mult")
    with pytest.raises(ValueError):
        boxconv("box", f, h)
    assert set(BOX_VARIANTS) == {"box", "line", "red", "redred"}


def test_class_closure_on_absorbing_inputs():
    rng = random.Random(10)
    f = random_series(rng, D, N, "gi")
    g = random_series(rng, D, N, "gi")
    assert is_gi(boxconv("box", f, g))
    assert is_gi(boxconv("red", f, g))
    assert is_ginv(boxconv("redred", f, g))
    assert is_gdif(boxconv("line", f, g))


def test_s_transform_of_the_identity_is_one():
    ident = TruncSeries.identity(D, N)
    one = TruncSeries.constant(AlgebraElement.unit(D), N - 1)
    assert s_transform(ident) == one
    assert s_prime(ident) == one
    assert u_transform(ident) == ident


def test_s_transform_defining_property():
    # f^{o-1} = I.S, with S one order shorter
    f = random_series(random.Random(11), D, N, "gi")
    s = s_transform(f)
    assert s.N == N - 1
    ident = TruncSeries.identity(D, N)
    assert mul_at(ident, s, N) == comp_inverse(f)


def test_s_transform_paths_agree():
    f = random_series(random.Random(12), D, N, "gi")
    assert s_transform(f, path="inverse") == s_transform(f, path="fixed")
    with pytest.raises(ValueError):
        s_transform(f, path="sideways")


def test_transforms_reject_non_absorbing_series():
    f = random_series(random.Random(13), D, N, "ginv")
    for op in (s_transform, u_transform, s_prime):
        with pytest.raises(ValueError):
            op(f)


def test_u_transform_is_the_conjugated_identity():
    f = random_series(random.Random(14), D, N, "gi")
    s = s_transform(f)
    u = u_transform(f)
    expected = mul_at(mul_at(mult_inverse(s), TruncSeries.identity(D, N - 1),
                             N - 1), s, N - 1)
    assert u.truncate(N - 1) == expected
    assert is_gdif(u)


def test_u_transform_is_trivial_in_the_scalar_case():
    f = random_series(random.Random(15), 1, 4, "gi")
    assert u_transform(f) == TruncSeries.identity(1, 4)


def test_s_prime_defining_property():
    f = random_series(random.Random(16), D, N, "gi")
    sp = s_prime(f)
    ident = TruncSeries.identity(D, N)
    fi = mul_at(strip_identity(f), ident, N)
    assert mul_at(sp, ident, N) == comp_inverse(fi)


def test_strip_identity_round_trip():
    f = random_series(random.Random(17), D, N, "gi")
    rebuilt = mul_at(TruncSeries.identity(D, N), strip_identity(f), N)
    assert rebuilt == f


def test_identity_suite_passes():
    report = verify_transform_identities(N=3, d=2, trials=3, seed=1)
    assert report["status"] == "pass"
    ids = {c["id"] for c in report["checks"]}
    assert "box-compose-general" in ids
    assert "s-of-box" in ids
    assert "mult-split-needs-absorption" in ids
    assert all(c["status"] == "pass" for c in report["checks"])


def test_identity_suite_scalar_case():
    report = verify_transform_identities(N=3, d=1, trials=2, seed=2)
    assert report["status"] == "pass"
    assert "s-of-box-scalar" in {c["id"] for c in report["checks"]}
