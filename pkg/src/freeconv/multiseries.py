"""Truncated series of multilinear maps over the matrix algebra B.

A series is a tuple (f_0, f_1, ..., f_N) where f_n is an n-multilinear map
B^n -> B, stored exactly through its values on basis tuples.  Degree 0 is a
constant.  The three groups of interest:

* ``G^inv``: f_0 invertible (group under the convolution product),
* ``G^dif``: f_0 = 0 and f_1 bijective (group under composition),
* ``G^I``:   f = I.h with h in G^inv, i.e. f_n(x_1,...,x_n) =
  x_1 f_n(1, x_2,...,x_n) and f_1(1) invertible.

All arithmetic is exact (Fraction entries).  Operations that mix two series
of different truncation orders are rejected at the public level; the
``mul_at``/``compose_at`` variants compute a requested output order and raise
unless the inputs genuinely determine every coefficient up to it, which is
what the transform identities rely on (a factor with zero constant term
raises the usable order of the other factor).
"""

from fractions import Fraction
from itertools import product
from math import gcd

from .algebra import (AlgebraElement, LinMap, NotInvertibleError, linmap_inverse,
                      mat_inverse, random_element_from, random_invertible_from)
from .trees import comb_decompose, is_leaf, size as tree_size


class MultiMap:
    """An n-multilinear map B^n -> B; ``tensor[(i_1..i_n)]`` is the value on
    the basis tuple (e_{i_1}, ..., e_{i_n}), zero values omitted."""

    __slots__ = ("d", "n", "tensor")

    def __init__(self, d, n, tensor):
        clean = {}
        for key, val in tensor.items():
            if len(key) != n or not all(0 <= i < d * d for i in key):
                raise ValueError(f"bad index {key!r} for a degree-{n} map")
            if val.d != d:
                raise ValueError("value dimension mismatch")
            if not val.is_zero():
                clean[key] = val
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "tensor", clean)

    def __setattr__(self, *a):
        raise AttributeError("MultiMap is immutable")

    @classmethod
    def zero(cls, d, n):
        return cls(d, n, {})

    @classmethod
    def constant(cls, value):
        return cls(value.d, 0, {(): value})

    @classmethod
    def identity(cls, d):
        return cls(d, 1, {(i,): AlgebraElement.basis(d, i) for i in range(d * d)})

    @classmethod
    def from_function(cls, d, n, fn):
        """Tabulate fn on all basis tuples."""
        tensor = {}
        for key in product(range(d * d), repeat=n):
            tensor[key] = fn(*(AlgebraElement.basis(d, i) for i in key))
        return cls(d, n, tensor)

    def __call__(self, *args):
        """Multilinear evaluation at arbitrary algebra elements."""
        if len(args) != self.n:
            raise ValueError(f"degree-{self.n} map called with {len(args)} arguments")
        coords = [a.coords() for a in args]
        acc = None
        for key, val in self.tensor.items():
            c = 1
            for j, i in enumerate(key):
                cj = coords[j][i]
                if not cj:
                    c = None
                    break
                c = c * cj
            if c is None:
                continue
            vc = val.coords()
            if acc is None:
                acc = [c * x for x in vc]
            else:
                for t, x in enumerate(vc):
                    if x:
                        acc[t] += c * x
        if acc is None:
            return AlgebraElement.zero(self.d)
        return AlgebraElement.from_coords(self.d, tuple(acc))

    def __add__(self, other):
        if (self.d, self.n) != (other.d, other.n):
            raise ValueError("cannot add maps of different shape")
        tensor = dict(self.tensor)
        for key, val in other.tensor.items():
            tensor[key] = tensor[key] + val if key in tensor else val
        return MultiMap(self.d, self.n, tensor)

    def scale(self, c):
        return MultiMap(self.d, self.n, {k: v.scale(c) for k, v in self.tensor.items()})

    def is_zero(self):
        return not self.tensor

    def __eq__(self, other):
        return (isinstance(other, MultiMap)
                and (self.d, self.n) == (other.d, other.n)
                and self.tensor == other.tensor)

    def __hash__(self):
        return hash((self.d, self.n, frozenset(self.tensor.items())))

    def __repr__(self):
        return f"MultiMap(d={self.d}, n={self.n}, {len(self.tensor)} entries)"

    def as_linmap(self):
        if self.n != 1:
            raise ValueError("only degree-1 maps convert to LinMap")
        images = [self.tensor.get((i,), AlgebraElement.zero(self.d))
                  for i in range(self.d * self.d)]
        return LinMap(self.d, images)

    def unit_in_first_slot(self):
        """The degree-(n-1) map (x_2..x_n) -> f(1, x_2..x_n)."""
        if self.n == 0:
            raise ValueError("degree-0 map has no slot")
        d = self.d
        tensor = {}
        for key, val in self.tensor.items():
            p, q = divmod(key[0], d)
            if p == q:
                rest = key[1:]
                tensor[rest] = tensor[rest] + val if rest in tensor else val
        return MultiMap(d, self.n - 1, tensor)

    def unit_in_last_slot(self):
        if self.n == 0:
            raise ValueError("degree-0 map has no slot")
        d = self.d
        tensor = {}
        for key, val in self.tensor.items():
            p, q = divmod(key[-1], d)
            if p == q:
                rest = key[:-1]
                tensor[rest] = tensor[rest] + val if rest in tensor else val
        return MultiMap(d, self.n - 1, tensor)


class TruncSeries:
    """A series truncated at order N: degrees 0..N inclusive."""

    __slots__ = ("d", "N", "maps")

    def __init__(self, d, N, maps):
        maps = tuple(maps)
        if len(maps) != N + 1:
            raise ValueError(f"expected {N + 1} maps, got {len(maps)}")
        for n, m in enumerate(maps):
            if m.d != d or m.n != n:
                raise ValueError(f"map at degree {n} has shape (d={m.d}, n={m.n})")
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "N", N)
        object.__setattr__(self, "maps", maps)

    def __setattr__(self, *a):
        raise AttributeError("TruncSeries is immutable")

    def __getitem__(self, n):
        return self.maps[n]

    def __eq__(self, other):
        return (isinstance(other, TruncSeries)
                and (self.d, self.N) == (other.d, other.N)
                and self.maps == other.maps)

    def __hash__(self):
        return hash((self.d, self.N, self.maps))

    def __repr__(self):
        return f"TruncSeries(d={self.d}, N={self.N})"

    def __add__(self, other):
        if (self.d, self.N) != (other.d, other.N):
            raise ValueError("series shape mismatch")
        return TruncSeries(self.d, self.N,
                           [a + b for a, b in zip(self.maps, other.maps)])

    def scale(self, c):
        return TruncSeries(self.d, self.N, [m.scale(c) for m in self.maps])

    def truncate(self, N):
        if N > self.N:
            raise ValueError("cannot extend a truncated series")
        return TruncSeries(self.d, N, self.maps[:N + 1])

    def lead(self):
        """Smallest degree with a nonzero map; None for the zero series."""
        for n, m in enumerate(self.maps):
            if not m.is_zero():
                return n
        return None

    @classmethod
    def zero(cls, d, N):
        return cls(d, N, [MultiMap.zero(d, n) for n in range(N + 1)])

    @classmethod
    def constant(cls, value, N):
        maps = [MultiMap.constant(value)]
        maps += [MultiMap.zero(value.d, n) for n in range(1, N + 1)]
        return cls(value.d, N, maps)

    @classmethod
    def identity(cls, d, N):
        """The series I: degree 1 is the identity map, all else zero."""
        maps = [MultiMap.zero(d, n) for n in range(N + 1)]
        if N >= 1:
            maps[1] = MultiMap.identity(d)
        return cls(d, N, maps)

    def to_json(self):
        def pack(m):
            def nest(prefix, depth):
                if depth == 0:
                    return m.tensor.get(prefix, AlgebraElement.zero(m.d)).to_json()
                return [nest(prefix + (i,), depth - 1) for i in range(m.d * m.d)]
            if m.n == 0:
                return {"n": 0, "value": m.tensor.get((), AlgebraElement.zero(m.d)).to_json()}
            return {"n": m.n, "tensor": nest((), m.n)}
        return {"d": self.d, "N": self.N, "maps": [pack(m) for m in self.maps]}

    @classmethod
    def from_json(cls, obj):
        d, N = obj["d"], obj["N"]
        maps = []
        for n, rec in enumerate(obj["maps"]):
            if rec.get("n") != n:
                raise ValueError(f"maps out of order at degree {n}")
            if n == 0:
                maps.append(MultiMap.constant(AlgebraElement.from_json(rec["value"])))
                continue
            tensor = {}
            def unpack(node, prefix):
                if len(prefix) == n:
                    tensor[prefix] = AlgebraElement.from_json(node)
                    return
                if len(node) != d * d:
                    raise ValueError("tensor arity mismatch")
                for i, sub in enumerate(node):
                    unpack(sub, prefix + (i,))
            unpack(rec["tensor"], ())
            maps.append(MultiMap(d, n, tensor))
        return cls(d, N, maps)


# -- membership predicates -------------------------------------------------------

def is_ginv(f):
    """Constant term invertible."""
    c = f[0].tensor.get((), AlgebraElement.zero(f.d))
    try:
        mat_inverse(c)
    except NotInvertibleError:
        return False
    return True


def is_gdif(f):
    """Zero constant term, bijective linear term."""
    if not f[0].is_zero() or f.N < 1:
        return False
    try:
        linmap_inverse(f[1].as_linmap())
    except NotInvertibleError:
        return False
    return True


def is_gi(f):
    """f = I.h with h invertible: every f_n factors through its first argument
    as f_n(x_1, ..., x_n) = x_1 f_n(1, x_2, ..., x_n), and f_1(1) in B^x."""
    if not f[0].is_zero() or f.N < 1:
        return False
    d = f.d
    try:
        mat_inverse(f[1].unit_in_first_slot().tensor.get((), AlgebraElement.zero(d)))
    except NotInvertibleError:
        return False
    for n in range(1, f.N + 1):
        stripped = f[n].unit_in_first_slot()
        for key in product(range(d * d), repeat=n):
            lhs = f[n].tensor.get(key, AlgebraElement.zero(d))
            rhs = AlgebraElement.basis(d, key[0]) * stripped(
                *(AlgebraElement.basis(d, i) for i in key[1:]))
            if lhs != rhs:
                return False
    return True


# -- product and composition ------------------------------------------------------

def mul_at(f, g, order):
    """(f.g) to the given order: (f.g)_n = sum_k f_k(x_1..x_k) g_{n-k}(rest).

    Exact as long as every consumed degree exists: degree n needs f_k for
    k >= lead(f) down to n - g.N and g_{n-k} symmetrically, so the order is
    admissible iff order <= min(f.N + lead(g), g.N + lead(f)).
    """
    if f.d != g.d:
        raise ValueError("dimension mismatch")
    lf = f.lead()
    lg = g.lead()
    if order > f.N + (lg if lg is not None else order) or \
       order > g.N + (lf if lf is not None else order):
        raise ValueError(f"order {order} not determined by inputs of orders "
                         f"{f.N} and {g.N}")
    d = f.d
    out = []
    for n in range(order + 1):
        tensor = {}
        for k in range(max(0, n - g.N), min(n, f.N) + 1):
            fk, gk = f[k], g[n - k]
            if fk.is_zero() or gk.is_zero():
                continue
            for kf, vf in fk.tensor.items():
                for kg, vg in gk.tensor.items():
                    key = kf + kg
                    val = vf * vg
                    tensor[key] = tensor[key] + val if key in tensor else val
        out.append(MultiMap(d, n, tensor))
    return TruncSeries(d, order, out)


def _compositions(n, parts):
    """All ways to write n as an ordered sum of `parts` positive integers."""
    if parts == 1:
        yield (n,)
        return
    for first in range(1, n - parts + 2):
        for rest in _compositions(n - first, parts - 1):
            yield (first,) + rest


# Composition is the one genuinely expensive operation, so its inner sum runs
# on integers: each tensor is cleared of denominators once, the k-fold
# contraction f_k(g_{m_1}(...), ..., g_{m_k}(...)) proceeds slot by slot on
# integer coordinate vectors, and fractions reappear only in the final merge.

def _int_table(m):
    """(key -> integer coordinate vector, common denominator) for a MultiMap."""
    den = 1
    for val in m.tensor.values():
        for c in val.coords():
            den = den * c.denominator // gcd(den, c.denominator)
    return {key: tuple(int(c * den) for c in val.coords())
            for key, val in m.tensor.items()}, den


def _contract(fk_table, fk_den, parts, dd):
    """One composition term: contract f_k against the k part tables.

    Returns {concatenated output key: (integer vector, denominator)}.
    """
    state = {((), j): vec for j, vec in fk_table.items()}
    for tbl, _ in parts:
        new = {}
        for (prefix, jsuf), vec in state.items():
            j0, rest = jsuf[0], jsuf[1:]
            for key_i, avec in tbl.items():
                c = avec[j0]
                if not c:
                    continue
                nk = (prefix + (key_i,), rest)
                cur = new.get(nk)
                if cur is None:
                    new[nk] = [c * x for x in vec]
                else:
                    for t in range(dd):
                        cur[t] += c * vec[t]
        state = new
    den = fk_den
    for _, dn in parts:
        den *= dn
    out = {}
    for (prefix, _), vec in state.items():
        key = ()
        for piece in prefix:
            key += piece
        out[key] = (vec, den)
    return out


def _merge_contrib(acc, contrib, dd):
    for key, (vec, den) in contrib.items():
        cur = acc.get(key)
        if cur is None:
            acc[key] = [Fraction(x, den) for x in vec]
        else:
            for t in range(dd):
                if vec[t]:
                    cur[t] += Fraction(vec[t], den)


def _acc_to_tensor(acc, d):
    return {key: AlgebraElement.from_coords(d, tuple(vec))
            for key, vec in acc.items()}


def compose_at(f, g, order):
    """(f o g) to the given order; g must have zero constant term.

    Degree n consumes f_k for k <= n // lead(g) and g_m for
    m <= n - (lead_+(f) - 1) * lead(g), where lead_+ is the first nonzero
    positive degree; the output order is admissible only when every consumed
    degree lies inside the truncations.
    """
    if f.d != g.d:
        raise ValueError("dimension mismatch")
    if not g[0].is_zero():
        raise ValueError("composition needs a zero constant term on the right")
    d = f.d
    lg = g.lead()
    if lg is None:
        maps = [f[0]] + [MultiMap.zero(d, n) for n in range(1, order + 1)]
        return TruncSeries(d, order, maps)
    pos_lead = next((k for k in range(1, f.N + 1) if not f[k].is_zero()), None)
    if order // lg > f.N or \
       (pos_lead is not None and order - (pos_lead - 1) * lg > g.N):
        raise ValueError(f"order {order} not determined by inputs of orders "
                         f"{f.N} and {g.N}")
    dd = d * d
    f_tabs = {}
    g_tabs = {}
    out = [f[0]]
    for n in range(1, order + 1):
        acc = {}
        for k in range(1, min(n, f.N) + 1):
            if f[k].is_zero():
                continue
            if k not in f_tabs:
                f_tabs[k] = _int_table(f[k])
            for comp in _compositions(n, k):
                if any(m > g.N or g[m].is_zero() for m in comp):
                    continue
                for m in comp:
                    if m not in g_tabs:
                        g_tabs[m] = _int_table(g[m])
                contrib = _contract(f_tabs[k][0], f_tabs[k][1],
                                    [g_tabs[m] for m in comp], dd)
                _merge_contrib(acc, contrib, dd)
        out.append(MultiMap(d, n, _acc_to_tensor(acc, d)))
    return TruncSeries(d, order, out)


def series_mul(f, g):
    if (f.d, f.N) != (g.d, g.N):
        raise ValueError("series must share dimension and truncation order")
    return mul_at(f, g, f.N)


def series_compose(f, g):
    if (f.d, f.N) != (g.d, g.N):
        raise ValueError("series must share dimension and truncation order")
    return compose_at(f, g, f.N)


def mult_inverse(f):
    """Inverse for the convolution product; needs f in G^inv."""
    if not is_ginv(f):
        raise ValueError("constant term is not invertible")
    d, N = f.d, f.N
    c0 = mat_inverse(f[0].tensor[()])
    inv = [MultiMap.constant(c0)]
    for n in range(1, N + 1):
        tensor = {}
        for k in range(1, min(n, N) + 1):
            fk = f[k]
            if fk.is_zero():
                continue
            for kf, vf in fk.tensor.items():
                for kg, vg in inv[n - k].tensor.items():
                    key = kf + kg
                    val = vf * vg
                    tensor[key] = tensor[key] + val if key in tensor else val
        inv.append(MultiMap(d, n, {k: (c0 * v).scale(-1) for k, v in tensor.items()}))
    return TruncSeries(d, N, inv)


def comp_inverse(f):
    """Inverse for composition; needs f in G^dif."""
    if not is_gdif(f):
        raise ValueError("series is not compositionally invertible")
    d, N = f.d, f.N
    dd = d * d
    l_inv = linmap_inverse(f[1].as_linmap())
    basis = [AlgebraElement.basis(d, i) for i in range(dd)]
    g = [MultiMap.zero(d, 0),
         MultiMap(d, 1, {(i,): l_inv(basis[i]) for i in range(dd)})]
    f_tabs = {}
    for n in range(2, N + 1):
        g_tabs = [_int_table(m) for m in g]
        acc = {}
        for k in range(2, n + 1):
            if f[k].is_zero():
                continue
            if k not in f_tabs:
                f_tabs[k] = _int_table(f[k])
            for comp in _compositions(n, k):
                if any(g[m].is_zero() for m in comp):
                    continue
                contrib = _contract(f_tabs[k][0], f_tabs[k][1],
                                    [g_tabs[m] for m in comp], dd)
                _merge_contrib(acc, contrib, dd)
        tensor = {key: l_inv(val).scale(-1)
                  for key, val in _acc_to_tensor(acc, d).items()}
        g.append(MultiMap(d, n, tensor))
    return TruncSeries(d, N, g)


# -- tree-indexed evaluation ------------------------------------------------------
#
# For a binary tree t with n vertices, f_t is the n-multilinear map built by
# reading t along right spines: if t has spine length m with left subtrees
# s_1..s_m, then f_t(x_1..x_n) = f_m(v_1, ..., v_m) where
# v_i = f_{s_i}(arguments under s_i) . x_{spine position of vertex i},
# and f_leaf = 1.  The two-series variant alternates which series supplies
# the spine map at each nesting depth, outermost from g.

def alt_tree_eval(f, g, t, args, memo=None):
    """(f u g)_t (args); spine maps come from g at the outermost level.

    A dict passed as `memo` is reused across calls, which pays off when the
    same subtree/argument slices recur (the boxed convolutions do this a lot).
    """
    if is_leaf(t):
        raise ValueError("the empty tree does not index a map")
    if len(args) != tree_size(t):
        raise ValueError("argument count must match the vertex count")
    return _alt_eval(f, g, t, tuple(args), {} if memo is None else memo)


def tree_eval(f, t, args):
    """f_t(args): the one-series case."""
    return alt_tree_eval(f, f, t, args)


def _alt_eval(f, g, t, args, memo):
    key = (id(f), id(g), t, args)
    hit = memo.get(key)
    if hit is not None:
        return hit
    parts = comb_decompose(t)
    m = len(parts)
    if m > g.N:
        raise ValueError(f"tree needs a degree-{m} map but the series stops at {g.N}")
    values = []
    pos = 0
    for s in parts:
        w = tree_size(s)
        if w == 0:
            values.append(args[pos])
        else:
            inner = _alt_eval(g, f, s, args[pos:pos + w], memo)
            values.append(inner * args[pos + w])
        pos += w + 1
    out = g[m](*values)
    memo[key] = out
    return out


# -- the same maps through words ---------------------------------------------------
#
# When f_n(x_1...x_n) = x_1 f_n(1, x_2...) (the G^I shape), f extends to a
# module morphism from the tensor algebra, and f_t factors through a single
# word in B built by a two-generator recursion: the tree with one vertex reads
# its argument, a left subtree is folded to f(word) times the root argument,
# and a right subtree concatenates.  The equality with tree_eval is the
# content of the operadic description and is pinned by the test suite.

def word_of_tree(f, t, args):
    """The element of the tensor algebra produced by reading t at args."""
    if is_leaf(t):
        raise ValueError("the empty tree produces no word")
    left, right = t
    s = tree_size(left)
    if s == 0:
        head = (args[0],)
    else:
        head = (apply_to_word(f, word_of_tree(f, left, args[:s])) * args[s],)
    if is_leaf(right):
        return head
    return head + word_of_tree(f, right, args[s + 1:])


def apply_to_word(f, word):
    """f as a map on the tensor algebra: a k-letter word feeds f_k."""
    if len(word) > f.N:
        raise ValueError(f"word of length {len(word)} exceeds order {f.N}")
    return f[len(word)](*word)


def operad_eval(f, t, args):
    """f_t(args) computed through the word recursion; needs f in G^I shape."""
    if not is_gi(f):
        raise ValueError("the word recursion is only valid for series in I.Mult")
    if len(args) != tree_size(t):
        raise ValueError("argument count must match the vertex count")
    return apply_to_word(f, word_of_tree(f, t, tuple(args)))


def word_action(f, u, v):
    """The module action on word pairs, u|v -> f(u) v.

    Together with concatenation this generates everything word_of_tree
    builds; the two operations satisfy three mixed associativity laws
    (u|v|w -> f(u)f(v)w, u (+) v (+) w, and f(u)v (+) w no matter how the
    pair operations are nested), which the verification suite checks on
    random words.
    """
    if not v:
        raise ValueError("the action needs a nonempty right word")
    return (apply_to_word(f, u) * v[0],) + tuple(v[1:])


# -- randomized series for the verification suites ---------------------------------

def random_multimap(rng, d, n, bound=3):
    return MultiMap(d, n, {key: random_element_from(rng, bound, d)
                           for key in product(range(d * d), repeat=n)})


def random_series(rng, d, N, kind, bound=3):
    """Draw a series from one of the structured classes.

    kind: 'ginv' (invertible constant term), 'gdif' (zero constant, bijective
    linear term), 'gi' (the I.h shape with h in G^inv), or 'mult' (zero
    constant term, no other constraint).
    """
    if kind == "ginv":
        maps = [MultiMap.constant(random_invertible_from(rng, bound, d))]
        maps += [random_multimap(rng, d, n, bound) for n in range(1, N + 1)]
        return TruncSeries(d, N, maps)
    if kind == "gdif":
        while True:
            m1 = random_multimap(rng, d, 1, bound)
            try:
                linmap_inverse(m1.as_linmap())
                break
            except NotInvertibleError:
                continue
        maps = [MultiMap.zero(d, 0), m1]
        maps += [random_multimap(rng, d, n, bound) for n in range(2, N + 1)]
        return TruncSeries(d, N, maps)
    if kind == "gi":
        h = random_series(rng, d, N - 1, "ginv", bound)
        return mul_at(TruncSeries.identity(d, N), h, N)
    if kind == "mult":
        maps = [MultiMap.zero(d, 0)]
        maps += [random_multimap(rng, d, n, bound) for n in range(1, N + 1)]
        return TruncSeries(d, N, maps)
    raise ValueError(f"unknown kind {kind!r}")
