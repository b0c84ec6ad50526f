"""The Gl(2|2) fusion engine for the maximal atypical block.

Simple objects of the block are written [a,b] with integers a >= b: this
is the Berezin twist B^b S^{a-b}, where S^i = [i,0] and B = [1,1] is the
Berezin class (S^k = 0 for k < 0 by convention).  The block sits inside
the weight lattice as the set of dominant pairs, with extension quiver
edges [a,b] -- [a+1,b], [a,b] -- [a,b+1] and the diagonal wall edges
[a,a] -- [a+2,a+1]; all Ext^1 spaces are at most one-dimensional.

The K-class of the tensor product S^i (x) S^j restricted to the block is
computed two independent ways: a closed two-staircase formula, and a
recursion that expands the product of the mixed tensors AS(i) (x) AS(j)
through their composition factors and solves for the single unknown
[S^i (x) S^j].  The block-restricted answer assembles, together with the
typical (projective, multiplicity free) summands coming from pairs of
Gl(2) x Gl(2) weights, into the final decomposition: one indecomposable
three-layer module whose socle and top are the odd staircase, plus a
split Berezin power when i = j.

The shadow of the cohomological reduction functor on K-groups is the ring
homomorphism d with d(S^k) = B^k + (-1)^{1-k} B^{-1} (k >= 1) and
d(B) = -B, landing in Laurent polynomials in the rank-one Berezin class.
Projective classes die under d, and iterating d computes superdimensions.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

from .deligne import (
    InconsistencyError,
    RtElement,
    alt_power,
    gl0_tensor,
    shorthand,
    sym_power,
    truncate,
)
from .formal import IntCombination, format_sum
from .partitions import Bipartition, Gl2Weight, Partition, gl2_tensor, row


@dataclass(frozen=True, order=True)
class SimpleGamma:
    """The simple block object [a,b] = B^b S^{a-b}, a >= b."""

    a: int
    b: int

    def __post_init__(self):
        if self.a < self.b:
            raise ValueError(f"not dominant: [{self.a},{self.b}]")

    @property
    def s_degree(self) -> int:
        return self.a - self.b

    def twist(self, v: int) -> "SimpleGamma":
        return SimpleGamma(self.a + v, self.b + v)

    def dual(self) -> "SimpleGamma":
        return SimpleGamma(-self.b, -self.a)

    def __str__(self) -> str:
        k, b = self.a - self.b, self.b
        s_part = f"S{k}" if k else ""
        b_part = "" if b == 0 else "B" if b == 1 else f"B^{b}"
        return " ".join(p for p in (b_part, s_part) if p) or "1"


def S(i: int) -> SimpleGamma:
    return SimpleGamma(i, 0)


def Ber(v: int = 1) -> SimpleGamma:
    return SimpleGamma(v, v)


class K0Gamma(IntCombination[SimpleGamma]):
    """Exact K-group class of the maximal atypical block."""

    def twist(self, v: int) -> "K0Gamma":
        return self.map_keys(lambda s: s.twist(v))

    def dual(self) -> "K0Gamma":
        return self.map_keys(SimpleGamma.dual)

    def __str__(self) -> str:
        items = self.sorted_items(key=lambda s: (-(s.a + s.b), -s.a))
        return format_sum((str(s), c) for s, c in items)


class LaurentB(IntCombination[int]):
    """Integer Laurent polynomial in the rank-one Berezin class."""

    def __mul__(self, other: "LaurentB") -> "LaurentB":
        out: dict[int, int] = {}
        for k1, c1 in self:
            for k2, c2 in other:
                k = k1 + k2
                new = out.get(k, 0) + c1 * c2
                if new:
                    out[k] = new
                else:
                    del out[k]
        return LaurentB._raw(out)

    def at_minus_one(self) -> int:
        return sum(c if k % 2 == 0 else -c for k, c in self)

    def __str__(self) -> str:
        items = self.sorted_items(key=lambda k: -k)
        def name(k: int) -> str:
            return "1" if k == 0 else "B" if k == 1 else f"B^{k}"
        return format_sum((name(k), c) for k, c in items)


@dataclass(frozen=True, order=True)
class TypicalWeight:
    """Highest weight (l1, l2 | m1, m2) of a typical irreducible."""

    l1: int
    l2: int
    m1: int
    m2: int

    def __post_init__(self):
        if self.l1 < self.l2 or self.m1 < self.m2:
            raise ValueError("weight is not dominant")
        if (self.m1, self.m2) == (-self.l2, -self.l1):
            raise ValueError("weight is maximally atypical, not typical")

    def twist(self, v: int) -> "TypicalWeight":
        return TypicalWeight(self.l1 + v, self.l2 + v, self.m1 - v, self.m2 - v)

    def __str__(self) -> str:
        return f"L({self.l1},{self.l2}|{self.m1},{self.m2})"


class TypicalSum(IntCombination[TypicalWeight]):
    def twist(self, v: int) -> "TypicalSum":
        return self.map_keys(lambda w: w.twist(v))

    def __str__(self) -> str:
        return format_sum((str(w), c) for w, c in self.sorted_items())


@dataclass(frozen=True)
class LoewyPresentation:
    """Socle-filtration layers, listed top to socle."""

    layers: tuple[K0Gamma, ...]

    def k0(self) -> K0Gamma:
        total = K0Gamma()
        for layer in self.layers:
            total = total + layer
        return total


@dataclass(frozen=True)
class TensorDecomposition:
    """Final answer for S^i (x) S^j: split simple summands, the big
    indecomposable module by Loewy layers, and the typical summands."""

    split_simples: K0Gamma
    big_module: LoewyPresentation
    typicals: TypicalSum

    def k0_gamma(self) -> K0Gamma:
        return self.big_module.k0() + self.split_simples


# ---------------------------------------------------------------------------
# Composition factors of the towers and of projective covers
# ---------------------------------------------------------------------------


def k0_sym(i: int) -> K0Gamma:
    """Block K-class of the mixed tensor AS(i) in the rank-two theory."""
    if i < 1:
        raise ValueError("tower index must be positive")
    if i == 1:
        return K0Gamma({SimpleGamma(0, 0): 2, S(1): 1})
    if i == 2:
        return K0Gamma({S(1): 2, S(2): 1, SimpleGamma(0, 0): 1, Ber(-1): 1})
    return K0Gamma({S(i - 1): 2, S(i): 1, S(i - 2): 1})


def k0_alt(i: int) -> K0Gamma:
    """Block K-class of AL(i) = AS(i) dual."""
    return k0_sym(i).dual()


def _layer(*terms: tuple[int, int, int]) -> K0Gamma:
    return K0Gamma({SimpleGamma(a, b): m for a, b, m in terms})


def loewy_projective(a: int, b: int) -> LoewyPresentation:
    """The five socle layers of the projective cover of [a,b].

    The middle layer follows the extension quiver: twice the top, the four
    diagonal neighbours at distance two, and at the wall (small a - b) the
    extra Berezin classes reachable through the diagonal edges.
    """
    if a < b:
        raise ValueError(f"not dominant: [{a},{b}]")
    k = a - b
    top = _layer((a, b, 1))
    if k == 0:
        ext = _layer((a + 1, a, 1), (a, a - 1, 1), (a + 2, a + 1, 1))
        mid = _layer(
            (a, a, 2),
            (a - 1, a - 1, 1), (a - 2, a - 2, 1),
            (a + 1, a - 1, 1), (a + 2, a, 1),
            (a + 1, a + 1, 1), (a + 2, a + 2, 1),
        )
    elif k == 1:
        ext = _layer((a + 1, b, 1), (a - 1, b, 1), (a, b + 1, 1), (a, b - 1, 1), (a - 2, b - 1, 1))
        mid = _layer((a, b, 2), (a + 1, b - 1, 1), (a - 1, b - 1, 1), (a + 1, b + 1, 1))
    elif k == 2:
        ext = _layer((a + 1, b, 1), (a - 1, b, 1), (a, b + 1, 1), (a, b - 1, 1))
        mid = _layer(
            (a, b, 2),
            (a + 1, b - 1, 1), (a - 1, b - 1, 1),
            (a + 1, b + 1, 1), (a - 1, b + 1, 1),
            (a - 2, b, 1),
        )
    else:
        ext = _layer((a + 1, b, 1), (a - 1, b, 1), (a, b + 1, 1), (a, b - 1, 1))
        mid = _layer(
            (a, b, 2),
            (a + 1, b - 1, 1), (a - 1, b - 1, 1),
            (a + 1, b + 1, 1), (a - 1, b + 1, 1),
        )
    return LoewyPresentation((top, ext, mid, ext, top))


def k0_projective(a: int, b: int) -> K0Gamma:
    return loewy_projective(a, b).k0()


def mixed_to_projective(a: int, b: int) -> SimpleGamma:
    """The label [x,y] with R(a,b) = P[x,y]: the two-row mixed tensors with
    a >= b >= 1 are projective covers.

    (1,1) is excluded: that shorthand is the alternating square AL(2),
    which has k = 1 and is not projective in the rank-two theory.
    """
    if b < 1:
        raise ValueError("requires a >= b >= 1")
    if (a, b) == (1, 1):
        raise ValueError("R(1,1) is the alternating square, not a projective cover")
    if a == b:
        return SimpleGamma(a - 2, a - 2)
    return SimpleGamma(a - 1, b - 1)


def projective_identity_holds(i: int) -> bool:
    """P[i,0] = 2 AS(i+1) + B^{-1} AS(i+2) + B AS(i) on block K-classes."""
    if i < 1:
        raise ValueError("requires i >= 1")
    rhs = 2 * k0_sym(i + 1) + k0_sym(i + 2).twist(-1) + k0_sym(i).twist(1)
    return k0_projective(i, 0) == rhs


# ---------------------------------------------------------------------------
# The fusion K-classes
# ---------------------------------------------------------------------------


def fuse_k0_closed(i: int, j: int) -> K0Gamma:
    """Closed block K-class of S^i (x) S^j (symmetric in i and j).

    Twice the odd staircase B^v S^{i+j-1-2v} for v < min(i,j), plus the
    even staircase B^v S^{i+j-2v} (1 + B^{-1}) for v <= min(i,j), plus
    B^{i-1} + B^{i-2} when i = j.
    """
    i, j = max(i, j), min(i, j)
    if j < 1:
        raise ValueError("requires i, j >= 1")
    out: dict[SimpleGamma, int] = {}

    def add(s: SimpleGamma, m: int) -> None:
        out[s] = out.get(s, 0) + m

    for v in range(j):
        add(SimpleGamma(i + j - 1 - v, v), 2)
    for v in range(j + 1):
        add(SimpleGamma(i + j - v, v), 1)
        add(SimpleGamma(i + j - v - 1, v - 1), 1)
    if i == j:
        add(Ber(i - 1), 1)
        add(Ber(i - 2), 1)
    return K0Gamma(out)


_FUSE_BASES: dict[tuple[int, int], dict[tuple[int, int], int]] = {
    (1, 1): {(0, 0): 2, (1, 0): 2, (1, 1): 1, (-1, -1): 1, (1, -1): 1, (2, 0): 1},
    (2, 1): {(2, 0): 2, (3, 0): 1, (2, -1): 1, (1, 0): 1, (2, 1): 1},
    (2, 2): {(4, 0): 1, (3, -1): 1, (3, 0): 2, (2, 0): 1, (3, 1): 1,
             (2, 1): 2, (0, 0): 1, (1, 1): 2, (2, 2): 1},
}


def _expand_closed_k0(i: int, j: int) -> K0Gamma:
    """Block K-class of the whole product AS(i) (x) AS(j), summing the
    composition factors of every summand in the closed decomposition."""
    from .deligne import closed_sym_sym

    total = K0Gamma()
    formula = closed_sym_sym(i, j)
    for kind, idx, mult in formula.symmetric_terms:
        part = k0_sym(idx) if kind == "AS" else k0_alt(idx)
        total = total + mult * part
    for mu, mult in formula.mixed_terms:
        label = mixed_to_projective(mu.part(1), mu.part(2))
        total = total + mult * k0_projective(label.a, label.b)
    return total


@functools.lru_cache(maxsize=None)
def fuse_k0_recursive(i: int, j: int) -> K0Gamma:
    """Block K-class of S^i (x) S^j by induction on the tower products.

    The product AS(i) (x) AS(j) contains S^i (x) S^j exactly once among
    the pairwise products of composition factors; everything else is a
    Berezin twist of a smaller product, so subtract and solve.
    """
    i, j = max(i, j), min(i, j)
    if j < 0:
        raise ValueError("requires i, j >= 0")
    if j == 0:
        return K0Gamma({S(i): 1}) if i else K0Gamma({SimpleGamma(0, 0): 1})
    if (i, j) in _FUSE_BASES:
        return K0Gamma({SimpleGamma(a, b): m for (a, b), m in _FUSE_BASES[(i, j)].items()})
    result = _expand_closed_k0(i, j)
    for s1, m1 in k0_sym(i):
        for s2, m2 in k0_sym(j):
            mult = m1 * m2
            if (s1, s2) == (S(i), S(j)):
                mult -= 1  # the unknown itself, appearing exactly once
            if mult:
                known = fuse_k0_recursive(max(s1.s_degree, s2.s_degree),
                                          min(s1.s_degree, s2.s_degree))
                result = result - mult * known.twist(s1.b + s2.b)
    if not result.is_nonnegative():
        raise InconsistencyError(f"negative multiplicity solving for S^{i} x S^{j}: {result}")
    return result


# ---------------------------------------------------------------------------
# The reduction homomorphism d and superdimension
# ---------------------------------------------------------------------------


def d_hom(x: K0Gamma) -> LaurentB:
    """K-group shadow of the rank-lowering cohomology functor.

    d[a,b] = (-1)^b (B^a + (-1)^{1-(a-b)} B^{b-1}) for a > b, and
    d(B^a) = (-B)^a; extended linearly.  A ring homomorphism that kills
    every projective class.
    """
    out: dict[int, int] = {}

    def add(k: int, c: int) -> None:
        new = out.get(k, 0) + c
        if new:
            out[k] = new
        else:
            del out[k]

    for s, m in x:
        sign_b = -1 if s.b % 2 else 1
        if s.a == s.b:
            add(s.a, m * sign_b)
        else:
            add(s.a, m * sign_b)
            sign_k = -1 if (1 - s.s_degree) % 2 else 1
            add(s.b - 1, m * sign_b * sign_k)
    return LaurentB._raw(out)


def d_of_fusion(i: int, j: int) -> LaurentB:
    """The four-term value of d on S^i (x) S^j, straight from
    multiplicativity: d(S^i) d(S^j)."""
    return d_hom(K0Gamma({S(i): 1})) * d_hom(K0Gamma({S(j): 1}))


def sdim(x: K0Gamma) -> int:
    """Superdimension, computed by applying d twice (B evaluates to -1
    one rank down)."""
    return d_hom(x).at_minus_one()


def w_invariant(i: int, j: int) -> int:
    """Berezin-twist weight of the duality on S^i (x) S^j."""
    if i < 1 or j < 1:
        raise ValueError("requires i, j >= 1")
    return i + j - 2


# ---------------------------------------------------------------------------
# Socle, extensions, typical summands, decomposition
# ---------------------------------------------------------------------------


def _staircase(i: int, j: int) -> K0Gamma:
    return K0Gamma({SimpleGamma(i + j - 1 - v, v): 1 for v in range(j)})


def socle(i: int, j: int) -> K0Gamma:
    """Socle of S^i (x) S^j for i >= j >= 1: the odd staircase, plus
    B^{i-1} when i = j."""
    if j < 1 or i < j:
        raise ValueError("requires i >= j >= 1")
    out = _staircase(i, j)
    if i == j:
        out = out + K0Gamma({Ber(i - 1): 1})
    return out


def socle_bound(i: int, j: int) -> K0Gamma:
    """Multiset upper bound for the socle of S^i (x) S^j, read off from the
    socles of the summands of AS(i+1) (x) AS(j+1): three copies at the top
    step, two on the lower steps, one lone Berezin class when i = j."""
    if j < 1 or i < j:
        raise ValueError("requires i >= j >= 1")
    out: dict[SimpleGamma, int] = {SimpleGamma(i + j - 1, 0): 3}
    for v in range(1, j):
        out[SimpleGamma(i + j - 1 - v, v)] = 2
    if i == j:
        out[Ber(i - 1)] = 1
    return K0Gamma(out)


def ext1(s1: SimpleGamma, s2: SimpleGamma) -> int:
    """Dimension (0 or 1) of the extension space between two simples."""
    if s1 == s2:
        return 0
    pairs = {(s1.a - s2.a, s1.b - s2.b), (s2.a - s1.a, s2.b - s1.b)}
    if (1, 0) in pairs or (0, 1) in pairs:
        return 1
    # diagonal wall edge [a,a] -- [a+2,a+1]
    for lo, hi in ((s1, s2), (s2, s1)):
        if lo.a == lo.b and (hi.a, hi.b) == (lo.a + 2, lo.a + 1):
            return 1
    return 0


def typical_summands(i: int, j: int) -> TypicalSum:
    """The multiplicity-one typical summands of S^i (x) S^j: weights
    L(i+j-k, k | -r, r-i-j) over 0 <= k, r <= min(i,j) with k != r."""
    if i < 1 or j < 1:
        raise ValueError("requires i, j >= 1")
    m = min(i, j)
    out: dict[TypicalWeight, int] = {}
    for k in range(m + 1):
        for r in range(m + 1):
            if k != r:
                out[TypicalWeight(i + j - k, k, -r, r - i - j)] = 1
    return TypicalSum(out)


def typical_summands_via_gl2(i: int, j: int) -> TypicalSum:
    """The same multiset through the even group: Clebsch-Gordan squares of
    the underlying Gl(2) x Gl(2) weights, with maximal atypical pairs
    projected away."""
    if i < 1 or j < 1:
        raise ValueError("requires i, j >= 1")
    left = gl2_tensor(Gl2Weight(i, 0), Gl2Weight(j, 0))
    right = gl2_tensor(Gl2Weight(0, -i), Gl2Weight(0, -j))
    out: dict[TypicalWeight, int] = {}
    for w1, c1 in left.items():
        for w2, c2 in right.items():
            if (w2.a, w2.b) == (-w1.b, -w1.a):
                continue  # maximally atypical: killed by the projection
            key = TypicalWeight(w1.a, w1.b, w2.a, w2.b)
            out[key] = out.get(key, 0) + c1 * c2
    return TypicalSum(out)


def decompose(i: int, j: int) -> TensorDecomposition:
    """The full decomposition of S^i (x) S^j (arguments may come in either
    order; j >= 1 required).

    For i > j a single indecomposable three-layer module carries the whole
    block part; for i = j the Berezin power B^{i-1} splits off and B^{i-2}
    joins the middle layer.  Block accounting against the closed K-class
    is asserted.
    """
    i, j = max(i, j), min(i, j)
    if j < 1:
        raise ValueError("requires i, j >= 1")
    stair = _staircase(i, j)
    middle: dict[SimpleGamma, int] = {}
    for v in range(j + 1):
        for s in (SimpleGamma(i + j - v, v), SimpleGamma(i + j - v - 1, v - 1)):
            middle[s] = middle.get(s, 0) + 1
    split = K0Gamma()
    if i == j:
        middle[Ber(i - 2)] = middle.get(Ber(i - 2), 0) + 1
        split = K0Gamma({Ber(i - 1): 1})
    big = LoewyPresentation((stair, K0Gamma(middle), stair))
    dec = TensorDecomposition(split, big, typical_summands(i, j))
    if dec.k0_gamma() != fuse_k0_closed(i, j):
        raise InconsistencyError(f"block accounting failed for S^{i} x S^{j}")
    return dec


# ---------------------------------------------------------------------------
# Bridge from the interpolating-category pipeline to block K-classes
# ---------------------------------------------------------------------------


def term_k0(bip: Bipartition) -> tuple[K0Gamma, TypicalSum]:
    """Composition factors of the rank-two mixed tensor with this index.

    Maximal atypical indices expand through the tower and projective-cover
    tables; the remaining indices occurring in tower products all have a
    two-column right part and two crosses, and are single typical weights
    L(a, b | -r, r-a-b) with r the number of columns of height >= 2.
    """
    if bip.max_atypical:
        mu = bip.left
        if not len(mu):
            return K0Gamma({SimpleGamma(0, 0): 1}), TypicalSum()
        if len(mu) == 1:
            return k0_sym(mu.part(1)), TypicalSum()
        if mu.parts == (1,) * len(mu):
            return k0_alt(len(mu)), TypicalSum()
        if len(mu) == 2:
            label = mixed_to_projective(mu.part(1), mu.part(2))
            return k0_projective(label.a, label.b), TypicalSum()
        raise ValueError(f"unsupported maximal atypical index {bip}")
    from .diagrams import invariants, weight_diagram

    inv = invariants(weight_diagram(bip))
    if (inv.rk, inv.d) != (2, 0) or any(p > 2 for p in bip.right.parts) or len(bip.left) > 2:
        raise ValueError(f"unsupported typical index {bip}")
    a, b = bip.left.part(1), bip.left.part(2)
    r = sum(1 for p in bip.right.parts if p == 2)
    return K0Gamma(), TypicalSum({TypicalWeight(a, b, -r, r - a - b): 1})


def expand_rt_to_k0(x: RtElement) -> tuple[K0Gamma, TypicalSum]:
    gamma, typ = K0Gamma(), TypicalSum()
    for bip, mult in x:
        g, t = term_k0(bip)
        gamma = gamma + mult * g
        typ = typ + mult * t
    return gamma, typ


@functools.lru_cache(maxsize=None)
def tensor_k0_full(i: int, j: int) -> tuple[K0Gamma, TypicalSum]:
    """Full K-class (block plus typicals) of S^i (x) S^j, i >= j >= 0."""
    if j == 0:
        return (K0Gamma({S(i): 1}) if i else K0Gamma({SimpleGamma(0, 0): 1})), TypicalSum()
    return fuse_k0_closed(i, j), typical_summands(i, j)


def deligne_residue(i: int, j: int) -> tuple[K0Gamma, TypicalSum]:
    """End-to-end consistency route: expand the truncated interpolating
    product of AS(i) (x) AS(j) into block and typical classes, subtract
    every inductively known twisted product of smaller tower factors, and
    return what is left — which must be exactly the K-class and typical
    multiset of S^i (x) S^j."""
    product = truncate(gl0_tensor(RtElement.basis(sym_power(i)),
                                  RtElement.basis(sym_power(j))), 2)
    gamma, typ = expand_rt_to_k0(product)
    for s1, m1 in k0_sym(i):
        for s2, m2 in k0_sym(j):
            mult = m1 * m2
            if (s1, s2) == (S(i), S(j)):
                mult -= 1
            if mult:
                g, t = tensor_k0_full(max(s1.s_degree, s2.s_degree),
                                      min(s1.s_degree, s2.s_degree))
                tw = s1.b + s2.b
                gamma = gamma - mult * g.twist(tw)
                typ = typ - mult * t.twist(tw)
    return gamma, typ


# ---------------------------------------------------------------------------
# Serialisation
# ---------------------------------------------------------------------------


def decomposition_to_json(dec: TensorDecomposition) -> dict:
    def k0_list(x: K0Gamma) -> list[list[int]]:
        return [[s.a, s.b, c] for s, c in x.sorted_items(key=lambda s: (-(s.a + s.b), -s.a))]

    split = []
    for s, c in dec.split_simples.sorted_items():
        split.extend([[s.a, s.b]] * c)
    typicals = []
    for w, c in dec.typicals.sorted_items():
        typicals.extend([[w.l1, w.l2, w.m1, w.m2]] * c)
    return {
        "split": split,
        "layers": [k0_list(layer) for layer in dec.big_module.layers],
        "typicals": typicals,
        "k0": k0_list(dec.k0_gamma()),
    }


def decomposition_from_json(data: dict) -> TensorDecomposition:
    split = K0Gamma([(SimpleGamma(a, b), 1) for a, b in data["split"]])
    layers = tuple(
        K0Gamma({SimpleGamma(a, b): m for a, b, m in layer}) for layer in data["layers"]
    )
    typicals = TypicalSum([(TypicalWeight(*entry), 1) for entry in data["typicals"]])
    dec = TensorDecomposition(split, LoewyPresentation(layers), typicals)
    declared = K0Gamma({SimpleGamma(a, b): m for a, b, m in data["k0"]})
    if dec.k0_gamma() != declared:
        raise ValueError("inconsistent serialised decomposition: k0 does not match layers")
    return dec
