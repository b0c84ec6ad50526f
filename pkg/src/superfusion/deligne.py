"""Grothendieck-ring arithmetic for the interpolating tensor category.

Elements are finite integer sums of bipartitions.  In the generic ring the
product of two basis classes expands with the structure constants

    Gamma_{lm,mu}^{nu} = sum ( sum_k c^{lL}_{k,a} c^{mR}_{k,b} )
                             ( sum_g c^{lR}_{g,e} c^{mL}_{g,t} )
                             c^{nL}_{a,t} c^{nR}_{b,e}

over partitions a, b, e, t, so candidates for nu are generated
constructively from LR products of the cofactor pairs and never by
scanning a universe of bipartitions.

At interpolation parameter zero, products of indecomposable classes are
computed through the lift ring isomorphism: lift sends a class to the sum
of its cap re-orientations (see `diagrams.linked_orientations`), is
unitriangular with respect to size and therefore inverts exactly, and

    product_at_zero(x, y) = lift_inv(rt_tensor(lift(x), lift(y))).

Truncation drops every term that is not (n|n)-cross, modelling the fibre
functor to Gl(n|n).

Conventions for the distinguished towers: AS(i) is the bipartition
((i); (1^i)), AL(i) its dual ((1^i); (i)), and a single partition mu
abbreviates the maximal atypical bipartition (mu; mu*).  The closed
formulas below give the maximal atypical part of the products
AS(i) (x) AS(j) and AS(i) (x) AL(j) for any n >= 2; the degenerate
boundary of the tower is AL(2), never a unit term, matching the exact
product (the projective cover ladder of the (1|1) theory steps from P[0]
down to P[-1] = AL(2), not to the trivial class).
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

from .diagrams import invariants, is_max_atypical, linked_orientations, weight_diagram
from .formal import IntCombination, format_sum
from .partitions import (
    Bipartition,
    Partition,
    column,
    hook,
    lr_coeff,
    lr_product,
    cofactorizations,
    row,
)


class InconsistencyError(ArithmeticError):
    """An exact identity that must hold failed; indicates an internal bug."""


def sym_power(i: int) -> Bipartition:
    """The mixed tensor index AS(i) = ((i); (1^i))."""
    return Bipartition(row(i), column(i))


def alt_power(i: int) -> Bipartition:
    """The mixed tensor index AL(i) = ((1^i); (i))."""
    return Bipartition(column(i), row(i))


def shorthand(mu: Partition) -> Bipartition:
    """The maximal atypical bipartition (mu; mu*)."""
    return Bipartition(mu, mu.conjugate())


UNIT = Bipartition(Partition(), Partition())


def _term_name(bip: Bipartition) -> str:
    if bip.max_atypical:
        return str(bip.left)
    return str(bip)


class RtElement(IntCombination[Bipartition]):
    """Integer formal sum of bipartitions, an element of the generic ring."""

    @staticmethod
    def basis(bip: Bipartition) -> "RtElement":
        return RtElement({bip: 1})

    @staticmethod
    def unit() -> "RtElement":
        return RtElement({UNIT: 1})

    def __str__(self) -> str:
        items = self.sorted_items(
            key=lambda b: (-(b.left.size + b.right.size), b.left.parts, b.right.parts)
        )
        return format_sum((_term_name(b), c) for b, c in items)


# ---------------------------------------------------------------------------
# Structure constants and the generic product
# ---------------------------------------------------------------------------


@functools.lru_cache(maxsize=None)
def _pair_table(p: Partition, q: Partition) -> tuple[tuple[Partition, Partition, int], ...]:
    """Pairs (a, b) with a common cofactor: sum_k c^p_{k,a} c^q_{k,b}."""
    by_kappa: dict[Partition, list[tuple[Partition, int]]] = {}
    for kappa, a, c in cofactorizations(p):
        by_kappa.setdefault(kappa, []).append((a, c))
    out: dict[tuple[Partition, Partition], int] = {}
    for kappa, b, c2 in cofactorizations(q):
        for a, c1 in by_kappa.get(kappa, ()):
            key = (a, b)
            out[key] = out.get(key, 0) + c1 * c2
    return tuple((a, b, c) for (a, b), c in out.items())


def gamma_coeff(lam: Bipartition, mu: Bipartition, nu: Bipartition) -> int:
    """The structure constant of the generic ring on basis classes."""
    total = 0
    for a, b, c_ab in _pair_table(lam.left, mu.right):
        for e, t, c_et in _pair_table(lam.right, mu.left):
            c_l = lr_coeff(a, t, nu.left)
            if not c_l:
                continue
            c_r = lr_coeff(b, e, nu.right)
            if c_r:
                total += c_ab * c_et * c_l * c_r
    return total


@functools.lru_cache(maxsize=None)
def _rt_tensor_basis(lam: Bipartition, mu: Bipartition) -> RtElement:
    out: dict[Bipartition, int] = {}
    for a, b, c_ab in _pair_table(lam.left, mu.right):
        for e, t, c_et in _pair_table(lam.right, mu.left):
            weight = c_ab * c_et
            for nu_l, c_l in lr_product(a, t):
                for nu_r, c_r in lr_product(b, e):
                    key = Bipartition(nu_l, nu_r)
                    out[key] = out.get(key, 0) + weight * c_l * c_r
    return RtElement(out)


def rt_tensor(x: RtElement, y: RtElement) -> RtElement:
    """Bilinear extension of the generic-ring product."""
    out = RtElement()
    for bx, cx in x:
        for by, cy in y:
            out = out + (cx * cy) * _rt_tensor_basis(bx, by)
    return out


# ---------------------------------------------------------------------------
# Lift, its inverse, and the product at interpolation parameter zero
# ---------------------------------------------------------------------------


@functools.lru_cache(maxsize=None)
def _lift_basis(bip: Bipartition) -> RtElement:
    return RtElement({b: 1 for b in linked_orientations(bip)})


def lift(x: RtElement) -> RtElement:
    """Sum over cap re-orientations, extended linearly (a ring isomorphism)."""
    return x.map_linear(_lift_basis)


def lift_inv(x: RtElement) -> RtElement:
    """Exact inverse of `lift`.

    lift(b) = b + strictly smaller terms, so peel maximal terms off: total
    by unitriangularity, no remainder is ever left behind.
    """
    remaining = x
    out: dict[Bipartition, int] = {}
    while remaining:
        bip, coeff = max(
            remaining,
            key=lambda kv: (kv[0].left.size + kv[0].right.size, kv[0].left.parts, kv[0].right.parts),
        )
        out[bip] = out.get(bip, 0) + coeff
        remaining = remaining - coeff * _lift_basis(bip)
    return RtElement(out)


def gl0_tensor(x: RtElement, y: RtElement) -> RtElement:
    """Product of classes at interpolation parameter zero.

    Computed as lift_inv(rt_tensor(lift(x), lift(y))).  A genuine
    decomposition has non-negative multiplicities; anything else is an
    internal inconsistency.
    """
    result = lift_inv(rt_tensor(lift(x), lift(y)))
    if (x.is_nonnegative() and y.is_nonnegative()) and not result.is_nonnegative():
        raise InconsistencyError(f"negative multiplicity in decomposition: {result}")
    return result


@functools.lru_cache(maxsize=None)
def _k_invariant(bip: Bipartition) -> int:
    return invariants(weight_diagram(bip)).k


def truncate(x: RtElement, n: int) -> RtElement:
    """Drop every term with k > n (the kernel of the fibre functor to Gl(n|n))."""
    return x.filtered(lambda b: _k_invariant(b) <= n)


def project_max_atypical(x: RtElement) -> RtElement:
    """Keep only the maximal atypical terms (right = conjugate of left)."""
    return x.filtered(is_max_atypical)


# ---------------------------------------------------------------------------
# Closed formulas for tower products, maximal atypical part
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ClosedFormulaResult:
    """A symbolic decomposition: tower terms AS(i)/AL(i) plus mixed tensors
    R(mu) given by their maximal atypical shorthand."""

    symmetric_terms: tuple[tuple[str, int, int], ...]  # (kind 'AS'|'AL', index, mult)
    mixed_terms: tuple[tuple[Partition, int], ...]

    def expand(self) -> RtElement:
        terms: dict[Bipartition, int] = {}
        for kind, idx, mult in self.symmetric_terms:
            bip = sym_power(idx) if kind == "AS" else alt_power(idx)
            terms[bip] = terms.get(bip, 0) + mult
        for mu, mult in self.mixed_terms:
            bip = shorthand(mu)
            terms[bip] = terms.get(bip, 0) + mult
        return RtElement(terms)

    def __str__(self) -> str:
        sym = ((f"{kind}{idx}", m) for kind, idx, m in self.symmetric_terms)
        mixed = ((f"R{mu}", m) for mu, m in self.mixed_terms)
        return format_sum(list(sym) + list(mixed))


def _classified(mixed: list[tuple[Partition, int]]) -> ClosedFormulaResult:
    """Fold degenerate mixed shorthands into tower terms: a single row is
    AS, a single column AL (so (1,1) is the alternating square)."""
    sym: list[tuple[str, int, int]] = []
    true_mixed: list[tuple[Partition, int]] = []
    for mu, mult in mixed:
        if len(mu) == 1:
            sym.append(("AS", mu.part(1), mult))
        elif mu.parts == (1,) * len(mu):
            sym.append(("AL", len(mu), mult))
        else:
            true_mixed.append((mu, mult))
    return ClosedFormulaResult(tuple(sym), tuple(true_mixed))


def closed_sym_sym(i: int, j: int, n: int = 2) -> ClosedFormulaResult:
    """Maximal atypical part of AS(i) (x) AS(j), valid for every n >= 2.

    Every mixed term has k = 2, so the expression needs no n-dependence
    once n >= 2; the argument is only validated.
    """
    if i < 1 or j < 1:
        raise ValueError("tower indices must be positive")
    if n < 2:
        raise ValueError("closed formulas hold for n >= 2 only")
    hi, lo = max(i, j), min(i, j)
    tower: list[tuple[str, int, int]] = [("AS", hi + lo, 1), ("AS", hi + lo - 1, 2)]
    if hi + lo - 2 >= 1:
        tower.append(("AS", hi + lo - 2, 1))
    mixed: list[tuple[Partition, int]] = []
    for m in range(1, lo + 1):
        first = hi + lo - m
        mixed.append((Partition((first, m)), 1))
        if m - 1 >= 1:
            mixed.append((Partition((first, m - 1)), 2))
        if m - 2 >= 1:
            mixed.append((Partition((first, m - 2)), 1))
    if hi > lo and lo - 1 >= 1:
        mixed.append((Partition((hi - 1, lo - 1)), 1))
    folded = _classified(mixed)
    return ClosedFormulaResult(tuple(tower) + folded.symmetric_terms, folded.mixed_terms)


def closed_sym_alt(i: int, j: int, n: int = 2) -> ClosedFormulaResult:
    """Maximal atypical part of AS(i) (x) AL(j) for i >= j, any n >= 2.

    Callers dualise when i < j.  The mixed terms are hooks: a single
    leading hook (i+1, 1^{j-1}), then for each arm a from i down to
    i-j+1 the run (a,1^l) + 2 (a,1^{l-1}) + (a,1^{l-2}) with leading leg
    l = a - i + j, dropping legs <= 0; the last run degenerates to
    (i-j+1, 1), which for i = j is the alternating square AL(2).
    """
    if i < 1 or j < 1:
        raise ValueError("tower indices must be positive")
    if i < j:
        raise ValueError("requires i >= j; dualise the product otherwise")
    if n < 2:
        raise ValueError("closed formulas hold for n >= 2 only")
    if j == 1:
        return closed_sym_sym(i, 1, n)
    tower: list[tuple[str, int, int]] = [("AS", i - j + 2, 1), ("AS", i - j + 1, 2)]
    if i - j >= 1:
        tower.append(("AS", i - j, 1))
    mixed: list[tuple[Partition, int]] = [(hook(i + 1, j - 1), 1)]
    for arm in range(i, i - j, -1):
        leg = arm - i + j
        for drop, mult in ((0, 1), (1, 2), (2, 1)):
            if leg - drop >= 1:
                mixed.append((hook(arm, leg - drop), mult))
    folded = _classified(mixed)
    return ClosedFormulaResult(tuple(tower) + folded.symmetric_terms, folded.mixed_terms)


# ---------------------------------------------------------------------------
# Closed formulas in the generic ring itself
# ---------------------------------------------------------------------------


def _two_row(a: int, b: int) -> Bipartition:
    return shorthand(Partition((a, b)))


def closed_rt_sym_sym(i: int, j: int) -> RtElement:
    """Maximal atypical part of the basis product (i) (x) (j): four
    staircases of two-row shorthands."""
    if i < 1 or j < 1:
        raise ValueError("indices must be positive")
    hi, lo = max(i, j), min(i, j)
    out: dict[Bipartition, int] = {}

    def add(bip: Bipartition, mult: int) -> None:
        out[bip] = out.get(bip, 0) + mult

    for b in range(0, lo + 1):
        add(_two_row(hi + lo - b, b), 1)
    for b in range(0, lo):
        add(_two_row(hi + lo - 1 - b, b), 2)
    for b in range(0, lo):
        add(_two_row(hi + lo - 2 - b, b), 1)
    return RtElement(out)


def closed_rt_sym_alt(i: int, j: int) -> RtElement:
    """Maximal atypical part of the basis product (i) (x) (1^j) for i >= j."""
    if i < 1 or j < 1:
        raise ValueError("indices must be positive")
    if i < j:
        raise ValueError("requires i >= j; dualise the product otherwise")
    out: dict[Bipartition, int] = {}

    def add(mu: Partition, mult: int = 1) -> None:
        bip = shorthand(mu)
        out[bip] = out.get(bip, 0) + mult

    add(hook(i + 1, j - 1))
    add(hook(i, j))
    add(hook(i, j - 1))
    for l in range(1, j):
        add(hook(i - l, j - l - 1))
        add(hook(i - l, j - l))
        add(hook(i - l + 1, j - l - 1))
        add(hook(i - l + 1, j - l))
    if i > j:
        add(row(i - j + 1))
        add(row(i - j))
    else:
        add(row(1))
        add(Partition())
    return RtElement(out)


# ---------------------------------------------------------------------------
# JSON encoding
# ---------------------------------------------------------------------------


def rt_to_json(x: RtElement) -> list[dict]:
    items = x.sorted_items(
        key=lambda b: (-(b.left.size + b.right.size), b.left.parts, b.right.parts)
    )
    return [
        {"left": list(b.left.parts), "right": list(b.right.parts), "mult": c}
        for b, c in items
    ]


def rt_from_json(data: list[dict]) -> RtElement:
    terms: dict[Bipartition, int] = {}
    for entry in data:
        bip = Bipartition(Partition(tuple(entry["left"])), Partition(tuple(entry["right"])))
        terms[bip] = terms.get(bip, 0) + int(entry["mult"])
    return RtElement(terms)
