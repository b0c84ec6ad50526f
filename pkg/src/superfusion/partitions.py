"""Integer partitions, bipartitions and exact Littlewood-Richardson arithmetic.

Partitions are weakly decreasing tuples of positive integers.  Trailing
zeros are accepted on input and normalised away, so (3,1,0,0) and (3,1)
denote the same partition; the empty partition is the unique partition
of 0.

The Littlewood-Richardson coefficient c^lam_{alpha,beta} is computed by
backtracking over skew fillings of lam/alpha with content beta that are
weakly increasing along rows, strictly increasing down columns, and whose
reverse reading word (rows top to bottom, right to left within a row) is
a lattice word.  Constraints are checked incrementally in reading order,
and counts are memoised on (lam, alpha, beta).  An unoptimised
independent enumeration lives in `oracles` for cross-checking.

This module also carries the shared text syntax for partition and
bipartition literals, e.g. ``(3,1^2)`` and ``(3,1|2,1,1)``.
"""

from __future__ import annotations

import functools
from collections import Counter
from dataclasses import dataclass
from typing import Iterator

from .formal import IntCombination, format_sum


@dataclass(frozen=True, order=True)
class Partition:
    """A weakly decreasing tuple of positive integers."""

    parts: tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        if parts and parts[-1] < 0:
            raise ValueError(f"negative part in {parts}")
        for p, q in zip(parts, parts[1:]):
            if p < q:
                raise ValueError(f"parts not weakly decreasing: {parts}")
        object.__setattr__(self, "parts", parts)

    @property
    def size(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def part(self, r: int) -> int:
        """The r-th part, 1-indexed; 0 beyond the length."""
        return self.parts[r - 1] if 1 <= r <= len(self.parts) else 0

    def conjugate(self) -> "Partition":
        return Partition(_conjugate(self.parts))

    def contains(self, other: "Partition") -> bool:
        return all(self.part(r) >= other.part(r) for r in range(1, len(other) + 1))

    def __str__(self) -> str:
        return "(" + (",".join(map(str, self.parts)) or "0") + ")"


@functools.lru_cache(maxsize=None)
def _conjugate(parts: tuple[int, ...]) -> tuple[int, ...]:
    if not parts:
        return ()
    cols = [0] * parts[0]
    for p in parts:
        for c in range(p):
            cols[c] += 1
    return tuple(cols)


def row(i: int) -> Partition:
    return Partition((i,) if i else ())


def column(i: int) -> Partition:
    return Partition((1,) * i)


def hook(arm: int, legs: int) -> Partition:
    """The hook (arm, 1^legs); legs = 0 gives a single row."""
    return Partition((arm,) + (1,) * legs)


@dataclass(frozen=True, order=True)
class Bipartition:
    """An ordered pair of partitions, the index of a mixed tensor."""

    left: Partition
    right: Partition

    @property
    def bisize(self) -> tuple[int, int]:
        return (self.left.size, self.right.size)

    @property
    def max_atypical(self) -> bool:
        """Whether right is the conjugate of left (single-partition shorthand)."""
        return self.right == self.left.conjugate()

    def __str__(self) -> str:
        return f"({','.join(map(str, self.left.parts))}|{','.join(map(str, self.right.parts))})"


class PartitionSum(IntCombination[Partition]):
    """Exact integer formal sum of partitions (carrier of LR products)."""

    def __str__(self) -> str:
        items = self.sorted_items(key=lambda p: (-p.size, p.parts))
        return format_sum((str(p), c) for p, c in items)


# ---------------------------------------------------------------------------
# Littlewood-Richardson counting
# ---------------------------------------------------------------------------


def lr_coeff(alpha: Partition, beta: Partition, lam: Partition) -> int:
    """The Littlewood-Richardson coefficient c^lam_{alpha,beta}."""
    return _lr_coeff(lam.parts, alpha.parts, beta.parts)


@functools.lru_cache(maxsize=None)
def _lr_coeff(lam: tuple[int, ...], alpha: tuple[int, ...], beta: tuple[int, ...]) -> int:
    if sum(alpha) + sum(beta) != sum(lam):
        return 0
    if len(alpha) > len(lam) or any(a > l for a, l in zip(alpha, lam)):
        return 0
    if len(beta) > len(lam) or (beta and lam and beta[0] > lam[0]):
        return 0

    # Cells of lam/alpha in reading order: rows top to bottom, right to left.
    cells: list[tuple[int, int]] = []
    for r, end in enumerate(lam):
        start = alpha[r] if r < len(alpha) else 0
        cells.extend((r, c) for c in range(end - 1, start - 1, -1))
    nvals = len(beta)
    counts = [0] * (nvals + 1)
    fill: dict[tuple[int, int], int] = {}

    def place(idx: int) -> int:
        if idx == len(cells):
            return 1
        r, c = cells[idx]
        hi = fill[(r, c + 1)] if c + 1 < lam[r] else nvals
        lo = 1
        if r > 0 and c < lam[r - 1] and c >= (alpha[r - 1] if r - 1 < len(alpha) else 0):
            lo = fill[(r - 1, c)] + 1
        total = 0
        for v in range(lo, hi + 1):
            if counts[v] >= beta[v - 1]:
                continue
            if v > 1 and counts[v - 1] <= counts[v]:
                continue  # reverse reading word must stay a lattice word
            counts[v] += 1
            fill[(r, c)] = v
            total += place(idx + 1)
            counts[v] -= 1
        return total

    return place(0)


def _bounded_partitions(n: int, maxpart: int, floor: tuple[int, ...], maxlen: int) -> Iterator[tuple[int, ...]]:
    """Partitions of n with at most `maxlen` rows, largest part <= maxpart,
    containing `floor` componentwise."""

    def rec(rem: int, r: int, cap: int, acc: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
        if rem == 0:
            if r >= len(floor) or all(f == 0 for f in floor[r:]):
                yield acc
            return
        if r >= maxlen:
            return
        lo = max(floor[r] if r < len(floor) else 0, 1)
        hi = min(cap, rem)
        # need rem - p coverable by (maxlen - r - 1) further rows of size <= p
        for p in range(hi, lo - 1, -1):
            if rem - p <= p * (maxlen - r - 1):
                yield from rec(rem - p, r + 1, p, acc + (p,))

    yield from rec(n, 0, maxpart, ())


def lr_product(alpha: Partition, beta: Partition) -> PartitionSum:
    """Expansion of the product of Schur classes: sum of c^lam_{alpha,beta} lam."""
    return _lr_product(alpha.parts, beta.parts)


@functools.lru_cache(maxsize=None)
def _lr_product(alpha: tuple[int, ...], beta: tuple[int, ...]) -> PartitionSum:
    n = sum(alpha) + sum(beta)
    maxpart = (alpha[0] if alpha else 0) + (beta[0] if beta else 0)
    maxlen = len(alpha) + len(beta)
    out: dict[Partition, int] = {}
    for lam in _bounded_partitions(n, maxpart, alpha, maxlen):
        c = _lr_coeff(lam, alpha, beta)
        if c:
            out[Partition(lam)] = c
    return PartitionSum(out)


def _subpartitions(mu: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    def rec(r: int, cap: int, acc: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
        if r == len(mu):
            yield acc
            return
        for p in range(min(cap, mu[r]), 0, -1):
            yield from rec(r + 1, p, acc + (p,))
        yield acc  # all rows from r on are zero

    yield from rec(0, mu[0] if mu else 0, ())


def _lattice_contents(mu: tuple[int, ...], kappa: tuple[int, ...]) -> dict[tuple[int, ...], int]:
    """Contents of all LR fillings of mu/kappa, with their multiplicities.

    Contents of lattice words are automatically partitions.
    """
    cells: list[tuple[int, int]] = []
    for r, end in enumerate(mu):
        start = kappa[r] if r < len(kappa) else 0
        cells.extend((r, c) for c in range(end - 1, start - 1, -1))
    counts = [0] * (len(mu) + 1)
    fill: dict[tuple[int, int], int] = {}
    found: Counter[tuple[int, ...]] = Counter()

    def place(idx: int) -> None:
        if idx == len(cells):
            content = tuple(counts[1:])
            while content and content[-1] == 0:
                content = content[:-1]
            found[content] += 1
            return
        r, c = cells[idx]
        hi = min(fill[(r, c + 1)] if c + 1 < mu[r] else r + 1, r + 1)
        lo = 1
        if r > 0 and c < mu[r - 1] and c >= (kappa[r - 1] if r - 1 < len(kappa) else 0):
            lo = fill[(r - 1, c)] + 1
        for v in range(lo, hi + 1):
            if v > 1 and counts[v - 1] <= counts[v]:
                continue
            counts[v] += 1
            fill[(r, c)] = v
            place(idx + 1)
            counts[v] -= 1

    place(0)
    return dict(found)


@functools.lru_cache(maxsize=None)
def _cofactor_table(mu: tuple[int, ...]) -> tuple[tuple[tuple[int, ...], tuple[int, ...], int], ...]:
    out = []
    for kappa in _subpartitions(mu):
        for content, cnt in _lattice_contents(mu, kappa).items():
            out.append((kappa, content, cnt))
    out.sort(key=lambda t: (sum(t[0]), t[0], t[1]))
    return tuple(out)


def cofactorizations(mu: Partition) -> list[tuple[Partition, Partition, int]]:
    """All (kappa, alpha, c) with c^mu_{kappa,alpha} = c != 0, ordered by
    |kappa| then lexicographically."""
    return [(Partition(k), Partition(a), c) for k, a, c in _cofactor_table(mu.parts)]


# ---------------------------------------------------------------------------
# Dominant Gl(2) weights and their Clebsch-Gordan products
# ---------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class Gl2Weight:
    """A dominant Gl(2) weight (a, b) with a >= b; entries may be negative."""

    a: int
    b: int

    def __post_init__(self):
        if self.a < self.b:
            raise ValueError(f"not dominant: ({self.a},{self.b})")

    @property
    def dim(self) -> int:
        return self.a - self.b + 1

    def __str__(self) -> str:
        return f"({self.a},{self.b})"


def gl2_tensor(w1: Gl2Weight, w2: Gl2Weight) -> Counter[Gl2Weight]:
    """Clebsch-Gordan decomposition of Gl(2) irreducibles.

    Shift both factors to partitions (the minimal shift -b twists each off
    by a determinant power), multiply by the LR rule, keep the length <= 2
    terms and shift back.  The result does not depend on the shift.
    """
    shift = w1.b + w2.b
    prod = lr_product(row(w1.a - w1.b), row(w2.a - w2.b))
    out: Counter[Gl2Weight] = Counter()
    for lam, c in prod:
        if len(lam) <= 2:
            out[Gl2Weight(lam.part(1) + shift, lam.part(2) + shift)] += c
    return out


# ---------------------------------------------------------------------------
# Literal syntax, shared with the command line
# ---------------------------------------------------------------------------


class LiteralError(ValueError):
    """A parse failure, pointing at the offending position for caret display."""

    def __init__(self, message: str, text: str, pos: int):
        super().__init__(message)
        self.message = message
        self.text = text
        self.pos = pos

    def caret(self) -> str:
        return f"{self.text}\n{' ' * self.pos}^"


def _skip_ws(text: str, i: int) -> int:
    while i < len(text) and text[i].isspace():
        i += 1
    return i


def _parse_int(text: str, i: int) -> tuple[int, int]:
    j = i
    while j < len(text) and text[j].isdigit():
        j += 1
    if j == i:
        raise LiteralError("expected a non-negative integer", text, i)
    return int(text[i:j]), j


def _parse_parts(text: str, i: int, terminators: str) -> tuple[list[tuple[int, int]], int]:
    """Parse 'a,b^k,c' up to one of `terminators`; returns (part, position) pairs."""
    parts: list[tuple[int, int]] = []
    i = _skip_ws(text, i)
    if i < len(text) and text[i] in terminators:
        return parts, i
    while True:
        i = _skip_ws(text, i)
        start = i
        if i < len(text) and text[i] == "-":
            raise LiteralError("parts must be non-negative", text, i)
        value, i = _parse_int(text, i)
        repeat = 1
        if i < len(text) and text[i] == "^":
            repeat, i = _parse_int(text, i + 1)
        parts.extend((value, start) for _ in range(repeat))
        i = _skip_ws(text, i)
        if i < len(text) and text[i] == ",":
            i += 1
            continue
        if i < len(text) and text[i] in terminators:
            return parts, i
        raise LiteralError(f"expected ',' or one of '{terminators}'", text, i)


def _to_partition(pairs: list[tuple[int, int]], text: str) -> Partition:
    for (p, _), (q, pos) in zip(pairs, pairs[1:]):
        if q > p:
            raise LiteralError("parts must be weakly decreasing", text, pos)
    return Partition(tuple(p for p, _ in pairs))


def parse_partition(text: str) -> Partition:
    i = _skip_ws(text, 0)
    if i >= len(text) or text[i] != "(":
        raise LiteralError("expected '('", text, i)
    pairs, i = _parse_parts(text, i + 1, ")")
    if i >= len(text) or text[i] != ")":
        raise LiteralError("expected ')'", text, i)
    if _skip_ws(text, i + 1) != len(text):
        raise LiteralError("trailing input after ')'", text, i + 1)
    return _to_partition(pairs, text)


def parse_bipartition(text: str) -> Bipartition:
    i = _skip_ws(text, 0)
    if i >= len(text) or text[i] != "(":
        raise LiteralError("expected '('", text, i)
    left_pairs, i = _parse_parts(text, i + 1, "|)")
    if i >= len(text) or text[i] != "|":
        raise LiteralError("expected '|' between the two partitions", text, i)
    right_pairs, i = _parse_parts(text, i + 1, ")")
    if i >= len(text) or text[i] != ")":
        raise LiteralError("expected ')'", text, i)
    if _skip_ws(text, i + 1) != len(text):
        raise LiteralError("trailing input after ')'", text, i + 1)
    return Bipartition(_to_partition(left_pairs, text), _to_partition(right_pairs, text))
