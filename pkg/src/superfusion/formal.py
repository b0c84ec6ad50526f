"""Sparse integer linear combinations over an arbitrary hashable basis.

All the Grothendieck-ring style objects in this package (partition sums,
formal sums of bipartitions, K-group classes, Laurent polynomials in the
Berezin class) are finitely supported Z-linear combinations.  They share
this one implementation; each ring defines its own multiplication where it
has one.
"""

from __future__ import annotations

from typing import Callable, Generic, Hashable, Iterable, Iterator, Mapping, TypeVar

K = TypeVar("K", bound=Hashable)


class IntCombination(Generic[K]):
    """A finite Z-linear combination of basis keys.

    Zero coefficients are dropped on construction, so two combinations are
    equal exactly when their term dicts are equal.  Instances are treated
    as immutable: every operation returns a fresh object and the internal
    dict is never exposed for mutation, which makes sharing between
    threads safe.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[K, int] | Iterable[tuple[K, int]] = ()):
        data: dict[K, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for key, coeff in items:
            if coeff:
                new = data.get(key, 0) + coeff
                if new:
                    data[key] = new
                else:
                    del data[key]
        self._terms = data

    @classmethod
    def _raw(cls, data: dict[K, int]):
        """Wrap an already-normalised dict without copying (internal)."""
        obj = cls.__new__(cls)
        obj._terms = data
        return obj

    # -- queries ---------------------------------------------------------

    def coeff(self, key: K) -> int:
        return self._terms.get(key, 0)

    def items(self) -> Iterator[tuple[K, int]]:
        return iter(self._terms.items())

    def support(self) -> set[K]:
        return set(self._terms)

    def sorted_items(self, key: Callable | None = None) -> list[tuple[K, int]]:
        return sorted(self._terms.items(), key=(lambda kv: key(kv[0])) if key else None)

    def total(self) -> int:
        """Sum of all coefficients (number of terms counted with multiplicity)."""
        return sum(self._terms.values())

    def is_nonnegative(self) -> bool:
        return all(c >= 0 for c in self._terms.values())

    def contains(self, other: "IntCombination[K]") -> bool:
        """Multiset containment: every coefficient of `other` fits under ours."""
        return all(self.coeff(k) >= c for k, c in other.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __iter__(self) -> Iterator[tuple[K, int]]:
        return iter(self._terms.items())

    def __eq__(self, other: object) -> bool:
        if isinstance(other, IntCombination):
            return self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    __hash__ = None  # mutable-looking container semantics; not hashable

    # -- linear structure -------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, IntCombination):
            return NotImplemented
        data = dict(self._terms)
        for k, c in other._terms.items():
            new = data.get(k, 0) + c
            if new:
                data[k] = new
            else:
                del data[k]
        return type(self)._raw(data)

    def __sub__(self, other):
        if not isinstance(other, IntCombination):
            return NotImplemented
        data = dict(self._terms)
        for k, c in other._terms.items():
            new = data.get(k, 0) - c
            if new:
                data[k] = new
            else:
                del data[k]
        return type(self)._raw(data)

    def __neg__(self):
        return type(self)._raw({k: -c for k, c in self._terms.items()})

    def __rmul__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n == 0:
            return type(self)._raw({})
        return type(self)._raw({k: n * c for k, c in self._terms.items()})

    def map_linear(self, f: Callable[[K], "IntCombination[K]"]):
        """Extend a basis map `f` linearly.  `f` must return combinations
        of the same type."""
        out: dict[K, int] = {}
        for k, c in self._terms.items():
            for k2, c2 in f(k)._terms.items():
                new = out.get(k2, 0) + c * c2
                if new:
                    out[k2] = new
                else:
                    del out[k2]
        return type(self)._raw(out)

    def map_keys(self, f: Callable[[K], K]):
        """Relabel basis keys through an injective-ish map (collisions add up)."""
        out: dict[K, int] = {}
        for k, c in self._terms.items():
            k2 = f(k)
            new = out.get(k2, 0) + c
            if new:
                out[k2] = new
            else:
                del out[k2]
        return type(self)._raw(out)

    def filtered(self, pred: Callable[[K], bool]):
        return type(self)._raw({k: c for k, c in self._terms.items() if pred(k)})

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self._terms!r})"


def format_sum(items: Iterable[tuple[str, int]], zero: str = "0") -> str:
    """Render (label, coefficient) pairs as 'a + 2 b - c'."""
    parts: list[str] = []
    for label, coeff in items:
        if coeff == 0:
            continue
        sign = "-" if coeff < 0 else "+"
        mag = abs(coeff)
        body = label if mag == 1 else f"{mag} {label}"
        if not parts:
            parts.append(body if coeff > 0 else f"-{body}")
        else:
            parts.append(f"{sign} {body}")
    return " ".join(parts) if parts else zero
