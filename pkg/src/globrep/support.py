"""Finite / cofinite support descriptors."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Iterable


@dataclass(frozen=True)
class SupportDescriptor:
    """A finite set of points, or (``cofinite=True``) the complement of one.

    Cofinite descriptors only make sense over an N-indexed family, where the
    points are natural numbers; ``points`` then holds the excluded indices.
    """

    points: frozenset
    cofinite: bool = False

    @classmethod
    def finite(cls, points: Iterable[Hashable] = ()) -> "SupportDescriptor":
        return cls(frozenset(points), False)

    @classmethod
    def cofinite_excluding(cls, excluded: Iterable[int] = ()) -> "SupportDescriptor":
        ex = frozenset(excluded)
        if any(not isinstance(n, int) or n < 0 for n in ex):
            raise ValueError("cofinite descriptors exclude natural numbers only")
        return cls(ex, True)

    @property
    def is_finite(self) -> bool:
        return not self.cofinite

    @property
    def excluded(self) -> frozenset:
        if not self.cofinite:
            raise ValueError("finite descriptor has no excluded set")
        return self.points

    def __contains__(self, x) -> bool:
        return (x not in self.points) if self.cofinite else (x in self.points)

    def is_empty(self) -> bool:
        return not self.cofinite and not self.points

    def union(self, other: "SupportDescriptor") -> "SupportDescriptor":
        a, b = self, other
        if not a.cofinite and not b.cofinite:
            return SupportDescriptor(a.points | b.points)
        if a.cofinite and b.cofinite:
            return SupportDescriptor(a.points & b.points, True)
        if a.cofinite:
            a, b = b, a
        return SupportDescriptor(b.points - a.points, True)

    def intersection(self, other: "SupportDescriptor") -> "SupportDescriptor":
        a, b = self, other
        if not a.cofinite and not b.cofinite:
            return SupportDescriptor(a.points & b.points)
        if a.cofinite and b.cofinite:
            return SupportDescriptor(a.points | b.points, True)
        if a.cofinite:
            a, b = b, a
        return SupportDescriptor(a.points - b.points)

    __or__ = union
    __and__ = intersection

    def complement(self, universe: Iterable[Hashable] | None = None) -> "SupportDescriptor":
        """Complement in ``universe`` (finite families) or in N (when omitted)."""
        if universe is not None:
            if self.cofinite:
                raise ValueError("cofinite descriptor over a finite universe")
            return SupportDescriptor(frozenset(universe) - self.points)
        return SupportDescriptor(self.points, not self.cofinite)

    def issubset(self, other: "SupportDescriptor") -> bool:
        if not self.cofinite and not other.cofinite:
            return self.points <= other.points
        if not self.cofinite and other.cofinite:
            return not (self.points & other.points)
        if self.cofinite and other.cofinite:
            return other.points <= self.points
        return False

    __le__ = issubset

    def truncate(self, top: int) -> frozenset:
        """The points with index ``<= top``."""
        if self.cofinite:
            return frozenset(n for n in range(top + 1) if n not in self.points)
        return frozenset(n for n in self.points if n <= top)

    def __repr__(self) -> str:
        pts = ", ".join(map(str, sorted(self.points, key=lambda x: (str(type(x)), x))))
        return f"N\\{{{pts}}}" if self.cofinite else f"{{{pts}}}"
