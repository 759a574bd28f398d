"""Named objects over an N-indexed family.

These are the objects whose support is known exactly at every level: ``0``,
the unit, ``chi_i``, ``gamma_i``, ``e_n`` and finite tensor products and
direct sums of them. Each one has a finite-or-cofinite support descriptor and
can be realized as a :class:`~globrep.rep.Rep` on any truncation that is
long enough.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

from .family import GroupFamily
from .rep import Rep, RepError, chi, dsum, gamma_rep, n_indexing, representable, tensor, unit, zero_rep
from .support import SupportDescriptor

_ATOMS = ("zero", "unit")
_INDEXED = ("chi", "gamma", "e")
_COMPOUND = ("tensor", "sum")


@dataclass(frozen=True)
class Named:
    kind: str
    index: int | None = None
    parts: tuple["Named", ...] = ()

    def __post_init__(self):
        if self.kind in _ATOMS:
            ok = self.index is None and not self.parts
        elif self.kind in _INDEXED:
            ok = isinstance(self.index, int) and self.index >= 0 and not self.parts
        elif self.kind in _COMPOUND:
            ok = self.index is None and len(self.parts) >= 1
        else:
            ok = False
        if not ok:
            raise ValueError(f"malformed named object {self.kind!r}")

    @classmethod
    def zero(cls):
        return cls("zero")

    @classmethod
    def unit(cls):
        return cls("unit")

    @classmethod
    def chi(cls, i: int):
        return cls("chi", i)

    @classmethod
    def gamma(cls, i: int):
        return cls("gamma", i)

    @classmethod
    def e(cls, n: int):
        return cls("e", n)

    def __matmul__(self, other: "Named") -> "Named":
        return Named("tensor", None, (self, other))

    def __add__(self, other: "Named") -> "Named":
        return Named("sum", None, (self, other))

    def descriptor(self) -> SupportDescriptor:
        k = self.kind
        if k == "zero":
            return SupportDescriptor.finite()
        if k == "unit":
            return SupportDescriptor.cofinite_excluding()
        if k == "chi":
            return SupportDescriptor.finite([self.index])
        if k == "gamma":
            return SupportDescriptor.cofinite_excluding([self.index])
        if k == "e":
            return SupportDescriptor.cofinite_excluding(range(self.index))
        descs = [p.descriptor() for p in self.parts]
        out = descs[0]
        for d in descs[1:]:
            out = out & d if k == "tensor" else out | d
        return out

    def max_index(self) -> int:
        if self.kind in _INDEXED:
            return self.index
        return max((p.max_index() for p in self.parts), default=0)

    @property
    def torsion_free_attested(self) -> bool:
        # builtin objects are eventually torsion-free on the builtin chain families
        return True

    def realize(self, family: GroupFamily, indexing: Sequence[str] | None = None) -> Rep:
        idx = list(indexing) if indexing is not None else n_indexing(family)
        if self.max_index() >= len(idx):
            raise RepError(f"{self} needs at least {self.max_index() + 1} levels")
        k = self.kind
        if k == "zero":
            return zero_rep(family)
        if k == "unit":
            return unit(family)
        if k == "chi":
            return chi(family, idx[self.index])
        if k == "gamma":
            return gamma_rep(family, self.index, idx)
        if k == "e":
            return representable(family, idx[self.index])
        reps = [p.realize(family, idx) for p in self.parts]
        if k == "sum":
            return dsum(*reps)
        out = reps[0]
        for r in reps[1:]:
            out = tensor(out, r)
        return out

    def __str__(self):
        if self.kind in _ATOMS:
            return self.kind
        if self.kind in _INDEXED:
            return f"{self.kind}_{self.index}"
        return f"{self.kind}(" + ",".join(map(str, self.parts)) + ")"


_TOKEN = re.compile(r"\s*(tensor|sum|zero|unit|chi_\d+|gamma_\d+|e_\d+|\(|\)|,)")


def parse_named(text: str) -> Named:
    """Parse ``chi_3``, ``gamma_0``, ``tensor(gamma_1,sum(chi_2,e_4))`` and the like."""
    toks = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"cannot parse named object at {text[pos:]!r}")
        toks.append(m.group(1))
        pos = m.end()
    state = {"i": 0}

    def peek():
        return toks[state["i"]] if state["i"] < len(toks) else None

    def take(expected=None):
        t = peek()
        if t is None or (expected and t != expected):
            raise ValueError(f"unexpected end or token in {text!r}")
        state["i"] += 1
        return t

    def expr():
        t = take()
        if t in ("zero", "unit"):
            return Named(t)
        if t in _COMPOUND:
            take("(")
            parts = [expr()]
            while peek() == ",":
                take(",")
                parts.append(expr())
            take(")")
            return Named(t, None, tuple(parts))
        kind, _, n = t.rpartition("_")
        if kind in _INDEXED:
            return Named(kind, int(n))
        raise ValueError(f"unexpected token {t!r} in {text!r}")

    out = expr()
    if peek() is not None:
        raise ValueError(f"trailing input in {text!r}")
    return out


def basic_catalog(top: int) -> list[Named]:
    """Zero, unit and every ``chi_i``, ``gamma_i``, ``e_i`` with ``i <= top``."""
    out = [Named.zero(), Named.unit()]
    for i in range(top + 1):
        out += [Named.chi(i), Named.gamma(i), Named.e(i)]
    return out
