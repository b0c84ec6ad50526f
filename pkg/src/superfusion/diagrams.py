"""Weight diagrams on the integer line, cap matchings and linkage.

A bipartition (L, R) is encoded by labelling every integer vertex with one
of four symbols.  Build the two index sets

    W = { L_r - r + 1 : r >= 1 }      (parts beyond the length are 0)
    V = { r - R_r     : r >= 1 }

and label vertex i with 'x' if i lies in both, 'o' if in neither, '^' if
only in W and 'v' if only in V.  Far to the left every vertex is '^', far
to the right 'v'; a diagram stores an explicit window that contains all
the non-tail structure, and correctness never depends on the window size.

Caps are the bracket matching of the diagram: scanning left to right, a
'v' opens and a '^' closes, 'o' and 'x' are transparent; every matched
pair is a cap and caps are automatically nested.  The diagram invariants
are rk (number of crosses), d (number of caps) and k = rk + d.  A
bipartition survives the truncation to Gl(n|n) exactly when k <= n, and
the corresponding mixed tensor is an indecomposable module of Loewy
length 2d + 1, projective exactly when k = n.

Linkage: re-orienting any subset of the caps (swapping 'v' and '^' at the
two endpoints) and reading the resulting diagram back off yields the
finitely many bipartitions linked to the original one; there are 2^d of
them and each swap shrinks both partition sizes by the same amount.  This
set is what the lift isomorphism of the interpolating-category ring sums
over.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .partitions import Bipartition, Partition

WEDGE, VEE, CIRCLE, CROSS = "^", "v", "o", "x"


@dataclass(frozen=True)
class WeightDiagram:
    """Labels over an explicit window; '^' tail to the left, 'v' tail right."""

    window_lo: int
    window_hi: int
    symbols: tuple[str, ...]

    def __post_init__(self):
        if len(self.symbols) != self.window_hi - self.window_lo + 1:
            raise ValueError("window and symbol run disagree")

    def label(self, i: int) -> str:
        if i < self.window_lo:
            return WEDGE
        if i > self.window_hi:
            return VEE
        return self.symbols[i - self.window_lo]

    def positions(self) -> range:
        return range(self.window_lo, self.window_hi + 1)


@dataclass(frozen=True)
class CapMatching:
    caps: tuple[tuple[int, int], ...]

    def __len__(self) -> int:
        return len(self.caps)

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.caps)


@dataclass(frozen=True)
class DiagramInvariants:
    rk: int
    d: int
    k: int


def weight_diagram(bip: Bipartition) -> WeightDiagram:
    """The labelled-line encoding of a bipartition."""
    left, right = bip.left, bip.right
    fin_w = {left.part(r) - r + 1 for r in range(1, len(left) + 1)}
    fin_v = {r - right.part(r) for r in range(1, len(right) + 1)}
    wedge_tail = -len(left)  # every vertex <= this bound lies in W
    vee_tail = len(right) + 1  # every vertex >= this bound lies in V
    lo = min(min(fin_w, default=0), min(fin_v, default=0), wedge_tail, 0) - 2
    hi = max(max(fin_w, default=0), max(fin_v, default=0), vee_tail, 1) + 2
    symbols = []
    for i in range(lo, hi + 1):
        in_w = i in fin_w or i <= wedge_tail
        in_v = i in fin_v or i >= vee_tail
        symbols.append(CROSS if in_w and in_v else WEDGE if in_w else VEE if in_v else CIRCLE)
    return WeightDiagram(lo, hi, tuple(symbols))


def caps(dg: WeightDiagram) -> CapMatching:
    """Bracket matching: 'v' opens, '^' closes; 'o' and 'x' are skipped."""
    stack: list[int] = []
    found: list[tuple[int, int]] = []
    for i in dg.positions():
        lab = dg.label(i)
        if lab == VEE:
            stack.append(i)
        elif lab == WEDGE and stack:
            found.append((stack.pop(), i))
    found.sort()
    return CapMatching(tuple(found))


def invariants(dg: WeightDiagram) -> DiagramInvariants:
    rk = sum(1 for i in dg.positions() if dg.label(i) == CROSS)
    d = len(caps(dg))
    return DiagramInvariants(rk, d, rk + d)


def is_cross(bip: Bipartition, n: int) -> bool:
    """Whether the bipartition survives truncation to Gl(n|n), i.e. k <= n."""
    return invariants(weight_diagram(bip)).k <= n


def is_max_atypical(bip: Bipartition) -> bool:
    """Whether the right partition is the conjugate of the left."""
    return bip.max_atypical


def read_bipartition(dg: WeightDiagram) -> Bipartition:
    """Invert `weight_diagram`.

    The r-th largest element of the '^/x' positions recovers L_r - r + 1,
    the r-th smallest of the 'v/x' positions recovers r - R_r.  Raises
    ValueError when the labels do not close up to a bipartition.
    """
    wedges = sorted((i for i in dg.positions() if dg.label(i) in (WEDGE, CROSS)), reverse=True)
    vees = sorted(i for i in dg.positions() if dg.label(i) in (VEE, CROSS))
    # The infinite tails contribute constant parts; they must be zero.
    if dg.window_lo - 1 + len(wedges) != 0:
        raise ValueError("left tail does not close up to a finite partition")
    if len(vees) - dg.window_hi != 0:
        raise ValueError("right tail does not close up to a finite partition")
    parts_l = tuple(pos + r for r, pos in enumerate(wedges))
    parts_r = tuple(r + 1 - pos for r, pos in enumerate(vees))
    try:
        return Bipartition(Partition(parts_l), Partition(parts_r))
    except ValueError as exc:
        raise ValueError(f"malformed weight diagram: {exc}") from exc


def _swap_caps(dg: WeightDiagram, chosen: Iterable[tuple[int, int]]) -> WeightDiagram:
    symbols = list(dg.symbols)
    for i, j in chosen:
        symbols[i - dg.window_lo] = WEDGE
        symbols[j - dg.window_lo] = VEE
    return WeightDiagram(dg.window_lo, dg.window_hi, tuple(symbols))


def linked_orientations(bip: Bipartition) -> list[Bipartition]:
    """All 2^d bipartitions obtained by re-orienting a subset of the caps.

    The input itself comes first (empty subset).  This is exactly the
    support of the lift of the corresponding indecomposable class.
    """
    dg = weight_diagram(bip)
    matching = caps(dg).caps
    out: list[Bipartition] = []
    for mask in range(1 << len(matching)):
        chosen = [matching[t] for t in range(len(matching)) if mask >> t & 1]
        out.append(read_bipartition(_swap_caps(dg, chosen)))
    return out


def render(dg: WeightDiagram, lo: int | None = None, hi: int | None = None) -> str:
    """Two-line ASCII picture: a coordinate ruler and the vertex symbols."""
    lo = dg.window_lo if lo is None else lo
    hi = dg.window_hi if hi is None else hi
    if lo > hi:
        raise ValueError("empty window")
    width = max(len(str(i)) for i in range(lo, hi + 1))
    ruler = " ".join(f"{i:>{width}}" for i in range(lo, hi + 1))
    line = " ".join(f"{dg.label(i):>{width}}" for i in range(lo, hi + 1))
    return f"{ruler}\n{line}"
