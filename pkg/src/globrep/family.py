"""Finite group families as explicit finite categories.

A family is a set of isomorphism classes of finite groups together with the
hom-sets of (conjugacy classes of) surjections between them. For abelian
payloads every surjection is its own class and the hom-sets are enumerated
on demand; anything else must come as an explicit table.
"""

from __future__ import annotations

import functools
import itertools
import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence

from .smith import invariant_factors as _snf_diagonal
from .smith import smith_normal_form


class FamilyError(ValueError):
    """A family table violates the category laws."""


class UnsupportedOperation(TypeError):
    pass


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % q for q in range(2, math.isqrt(p) + 1))


def _factorize(n: int) -> dict[int, int]:
    out = {}
    q = 2
    while q * q <= n:
        while n % q == 0:
            out[q] = out.get(q, 0) + 1
            n //= q
        q += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@dataclass(frozen=True, order=True)
class AbelianGroup:
    """Finite abelian group ``Z/d_1 x ... x Z/d_r`` with ``d_1 | d_2 | ...``."""

    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self):
        f = tuple(int(d) for d in self.invariant_factors)
        object.__setattr__(self, "invariant_factors", f)
        for i, d in enumerate(f):
            if d < 2:
                raise ValueError(f"invariant factor {d} < 2")
            if i + 1 < len(f) and f[i + 1] % d:
                raise ValueError(f"{d} does not divide {f[i + 1]}")

    @classmethod
    def from_orders(cls, orders: Iterable[int]) -> "AbelianGroup":
        """Canonical form of ``Z/n_1 x ... x Z/n_k`` for arbitrary cyclic orders."""
        orders = [int(n) for n in orders]
        if not orders:
            return cls(())
        S = [[n if i == j else 0 for j in range(len(orders))] for i, n in enumerate(orders)]
        diag = _snf_diagonal(S)
        return cls(tuple(d for d in diag if d != 1))

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    @property
    def order(self) -> int:
        return math.prod(self.invariant_factors)

    @property
    def label(self) -> str:
        if not self.invariant_factors:
            return "1"
        return "x".join(f"C{d}" for d in reversed(self.invariant_factors))

    def primary_parts(self) -> dict[int, list[int]]:
        """Per prime, the exponents of the cyclic p-factors in descending order."""
        parts: dict[int, list[int]] = {}
        for d in self.invariant_factors:
            for p, e in _factorize(d).items():
                parts.setdefault(p, []).append(e)
        return {p: sorted(es, reverse=True) for p, es in parts.items()}

    def is_quotient_of(self, H: "AbelianGroup") -> bool:
        """Whether a surjection ``H -> self`` exists."""
        mine, theirs = self.primary_parts(), H.primary_parts()
        for p, lam in mine.items():
            mu = theirs.get(p, [])
            if len(lam) > len(mu) or any(a > b for a, b in zip(lam, mu)):
                return False
        return True

    def elements(self) -> Iterator[tuple[int, ...]]:
        return itertools.product(*(range(d) for d in self.invariant_factors))

    def __str__(self) -> str:
        return self.label


@functools.lru_cache(maxsize=None)
def parse_group_label(label: str) -> AbelianGroup:
    if label == "1":
        return AbelianGroup(())
    try:
        orders = [int(part[1:]) for part in label.split("x") if part.startswith("C")]
    except ValueError:
        raise ValueError(f"not an abelian group label: {label!r}") from None
    if len(orders) != len(label.split("x")):
        raise ValueError(f"not an abelian group label: {label!r}")
    G = AbelianGroup.from_orders(orders)
    if G.label != label:
        raise ValueError(f"non-canonical group label {label!r} (canonical: {G.label})")
    return G


# --- homomorphisms between abelian groups ------------------------------------
# A homomorphism H -> G is the integer matrix whose column j is the image of the
# j-th generator of H, with row i reduced modulo the i-th invariant factor of G.

HomMatrix = tuple[tuple[int, ...], ...]


def _image_lattice_factors(M: Sequence[Sequence[int]], moduli: Sequence[int], ncols: int) -> list[int]:
    """Invariant factors of the subgroup of ``prod Z/moduli`` spanned by the columns of ``M``."""
    r = len(moduli)
    if r == 0:
        return []
    block = [list(M[i]) + [moduli[k] if k == i else 0 for k in range(r)] for i in range(r)]
    S, U, _ = smith_normal_form(block, r, ncols + r)
    s = [S[i][i] for i in range(r)]
    UD = [[U[i][k] * moduli[k] for k in range(r)] for i in range(r)]
    C = [[UD[i][k] // s[i] for k in range(r)] for i in range(r)]
    return [d for d in _snf_diagonal(C, r, r) if d != 1]


def image_type(M: Sequence[Sequence[int]], target: AbelianGroup, ncols: int) -> AbelianGroup:
    """Isomorphism type of the image of the homomorphism given by ``M``."""
    return AbelianGroup(tuple(_image_lattice_factors(M, target.invariant_factors, ncols)))


def is_surjective(M: Sequence[Sequence[int]], H: AbelianGroup, G: AbelianGroup) -> bool:
    r = G.rank
    if r == 0:
        return True
    if r == 1:
        return math.gcd(G.invariant_factors[0], *M[0]) == 1
    block = [list(M[i]) + [G.invariant_factors[k] if k == i else 0 for k in range(r)] for i in range(r)]
    return all(d == 1 for d in _snf_diagonal(block, r, H.rank + r))


def enumerate_homomorphisms(H: AbelianGroup, G: AbelianGroup) -> list[HomMatrix]:
    """All homomorphisms ``H -> G``, lexicographically ordered."""
    g, h = G.invariant_factors, H.invariant_factors
    columns = []
    for hj in h:
        steps = [gi // math.gcd(gi, hj) for gi in g]
        columns.append(list(itertools.product(*(range(0, gi, st) for gi, st in zip(g, steps)))))
    out = []
    for cols in itertools.product(*columns):
        out.append(tuple(tuple(c[i] for c in cols) for i in range(len(g))) if g else ())
    return sorted(out)


def enumerate_surjections(H: AbelianGroup, G: AbelianGroup) -> list[HomMatrix]:
    """The surjective homomorphisms ``H -> G`` in canonical (lexicographic) order.

    For abelian groups conjugation is trivial, so these are exactly the
    morphism classes of the family category.
    """
    if not G.is_quotient_of(H):
        return []
    return [M for M in enumerate_homomorphisms(H, G) if is_surjective(M, H, G)]


def compose_matrices(A: HomMatrix, B: HomMatrix, G: AbelianGroup, rank_K: int) -> HomMatrix:
    """Matrix of ``alpha o beta`` for ``alpha: H -> G`` (A) and ``beta: K -> H`` (B)."""
    g = G.invariant_factors
    inner = len(B)
    return tuple(
        tuple(sum(A[i][t] * B[t][j] for t in range(inner)) % g[i] for j in range(rank_K))
        for i in range(len(g)))


def hom_label(src: str, tgt: str, M: HomMatrix) -> str:
    body = ";".join(",".join(str(a) for a in row) for row in M)
    return f"{src}>{tgt}[{body}]"


@functools.lru_cache(maxsize=None)
def parse_hom_label(label: str) -> tuple[str, str, HomMatrix]:
    head, _, body = label.partition("[")
    src, _, tgt = head.partition(">")
    body = body.rstrip("]")
    G = parse_group_label(tgt)
    H = parse_group_label(src)
    if not body:
        M: HomMatrix = tuple(() for _ in range(G.rank))
    else:
        M = tuple(tuple(int(a) for a in row.split(",")) if row else () for row in body.split(";"))
    if len(M) != G.rank or any(len(r) != H.rank for r in M):
        raise ValueError(f"malformed hom label {label!r}")
    return src, tgt, M


# --- backends -----------------------------------------------------------------


class _AbelianBackend:
    key = ("abelian",)

    def __init__(self):
        self._homs: dict[tuple[str, str], tuple[str, ...]] = {}
        self._compose: dict[tuple[str, str], str] = {}
        self._groups: dict[str, AbelianGroup] = {}

    def group(self, label: str) -> AbelianGroup:
        G = self._groups.get(label)
        if G is None:
            G = self._groups[label] = parse_group_label(label)
        return G

    def order(self, label: str) -> int:
        return self.group(label).order

    def has_epi(self, src: str, tgt: str) -> bool:
        return self.group(tgt).is_quotient_of(self.group(src))

    def homs(self, src: str, tgt: str) -> tuple[str, ...]:
        key = (src, tgt)
        hs = self._homs.get(key)
        if hs is None:
            H, G = self.group(src), self.group(tgt)
            hs = tuple(hom_label(src, tgt, M) for M in enumerate_surjections(H, G))
            self._homs[key] = hs
        return hs

    def endpoints(self, a: str) -> tuple[str, str]:
        head = a.partition("[")[0]
        src, _, tgt = head.partition(">")
        return src, tgt

    def compose(self, a: str, b: str) -> str:
        key = (a, b)
        c = self._compose.get(key)
        if c is None:
            h1, g, A = parse_hom_label(a)
            k, h2, B = parse_hom_label(b)
            if h1 != h2:
                raise FamilyError(f"cannot compose {a} after {b}")
            c = hom_label(k, g, compose_matrices(A, B, self.group(g), self.group(k).rank))
            self._compose[key] = c
        return c

    def identity(self, label: str) -> str:
        G = self.group(label)
        M = tuple(tuple(int(i == j) for j in range(G.rank)) for i in range(G.rank))
        return hom_label(label, label, M)

    def matrix(self, a: str) -> HomMatrix:
        return parse_hom_label(a)[2]


_ABELIAN = _AbelianBackend()


class _TableBackend:
    def __init__(self, table: Mapping):
        self.table = table
        self._orders: dict[str, int] = {}
        self._groups: dict[str, AbelianGroup | None] = {}
        for obj in table["objects"]:
            lab = str(obj["label"])
            if lab in self._orders:
                raise FamilyError(f"duplicate object label {lab!r}")
            if "invariant_factors" in obj:
                G = AbelianGroup(tuple(obj["invariant_factors"]))
                self._groups[lab] = G
                order = G.order
                if "order" in obj and int(obj["order"]) != order:
                    raise FamilyError(f"object {lab!r}: order disagrees with invariant factors")
            elif "order" in obj:
                self._groups[lab] = None
                order = int(obj["order"])
            else:
                raise FamilyError(f"object {lab!r} needs an order or invariant factors")
            self._orders[lab] = order
        self._homs: dict[tuple[str, str], list[str]] = {}
        self._ends: dict[str, tuple[str, str]] = {}
        for h in table["homs"]:
            lab, s, t = str(h["label"]), str(h["source"]), str(h["target"])
            if lab in self._ends:
                raise FamilyError(f"duplicate hom label {lab!r}")
            for o in (s, t):
                if o not in self._orders:
                    raise FamilyError(f"hom {lab!r} refers to unknown object {o!r}")
            self._ends[lab] = (s, t)
            self._homs.setdefault((s, t), []).append(lab)
        self._compose: dict[tuple[str, str], str] = {}
        for a, b, c in table["compose"]:
            self._compose[(str(a), str(b))] = str(c)
        self._identity = {str(k): str(v) for k, v in table["identity"].items()}
        self.key = ("table", json.dumps(table, sort_keys=True))

    def group(self, label):
        return self._groups[label]

    def order(self, label):
        return self._orders[label]

    def homs(self, src, tgt):
        return tuple(sorted(self._homs.get((src, tgt), ())))

    def has_epi(self, src, tgt):
        return bool(self._homs.get((src, tgt)))

    def endpoints(self, a):
        return self._ends[a]

    def compose(self, a, b):
        try:
            return self._compose[(a, b)]
        except KeyError:
            raise FamilyError(f"composition table has no entry for ({a}, {b})") from None

    def identity(self, label):
        return self._identity[label]

    def matrix(self, a):
        raise UnsupportedOperation("opaque family homs have no matrix")


# --- the family ----------------------------------------------------------------


class GroupFamily:
    """An essentially finite family of groups, viewed as a finite category.

    Objects are class labels. ``homs(H, G)`` lists the morphism classes
    ``H -> G`` (surjections), ``compose(a, b)`` is ``a o b``. Instances are
    treated as immutable; hom-sets are memoized on first use.
    """

    def __init__(self, backend, classes: Iterable[str], spec: Mapping):
        self._backend = backend
        cl = sorted(set(classes), key=lambda c: (backend.order(c), c))
        self.classes: tuple[str, ...] = tuple(cl)
        self.spec = dict(spec)
        self._classset = frozenset(cl)

    # identity and hashing follow the category data, not how it was specified
    def __eq__(self, other):
        return (isinstance(other, GroupFamily) and self._backend.key == other._backend.key
                and self.classes == other.classes)

    def __hash__(self):
        return hash((self._backend.key, self.classes))

    def __repr__(self):
        return f"GroupFamily({', '.join(self.classes)})"

    def __contains__(self, label) -> bool:
        return label in self._classset

    def __len__(self):
        return len(self.classes)

    def _check(self, label):
        if label not in self._classset:
            raise KeyError(f"unknown class {label!r}")

    @property
    def is_abelian(self) -> bool:
        return self._backend is _ABELIAN or all(
            self._backend.group(c) is not None for c in self.classes)

    def group(self, label: str) -> AbelianGroup | None:
        self._check(label)
        return self._backend.group(label)

    def order(self, label: str) -> int:
        self._check(label)
        return self._backend.order(label)

    def homs(self, src: str, tgt: str) -> tuple[str, ...]:
        self._check(src)
        self._check(tgt)
        return self._backend.homs(src, tgt)

    def has_epi(self, src: str, tgt: str) -> bool:
        """Whether some surjection ``src -> tgt`` exists."""
        self._check(src)
        self._check(tgt)
        return self._backend.has_epi(src, tgt)

    def source(self, a: str) -> str:
        return self._backend.endpoints(a)[0]

    def target(self, a: str) -> str:
        return self._backend.endpoints(a)[1]

    def compose(self, a: str, b: str) -> str:
        return self._backend.compose(a, b)

    def identity(self, label: str) -> str:
        self._check(label)
        return self._backend.identity(label)

    def out(self, label: str) -> tuple[str, ...]:
        return self.homs(label, label)

    def inverse(self, sigma: str) -> str:
        G = self.source(sigma)
        e = self.identity(G)
        for tau in self.out(G):
            if self.compose(sigma, tau) == e:
                return tau
        raise FamilyError(f"{sigma} has no inverse in Out({G})")

    def hom_matrix(self, a: str) -> HomMatrix:
        return self._backend.matrix(a)

    def all_homs(self) -> Iterator[str]:
        for H in self.classes:
            for G in self.classes:
                if self.has_epi(H, G):
                    yield from self.homs(H, G)

    def subfamily(self, classes: Iterable[str], spec: Mapping | None = None) -> "GroupFamily":
        classes = list(classes)
        for c in classes:
            self._check(c)
        if spec is None:
            spec = {"kind": "subfamily", "ambient": self.spec,
                    "classes": sorted(classes, key=lambda c: (self.order(c), c))}
        return GroupFamily(self._backend, classes, spec)

    def descending(self) -> list[str]:
        """A linear extension of the epi preorder, largest classes first."""
        return sorted(self.classes, key=lambda c: (-self.order(c), c))


# --- builders -----------------------------------------------------------------


def _partitions(n: int, max_part: int | None = None) -> Iterator[tuple[int, ...]]:
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for k in range(min(n, max_part), 0, -1):
        for rest in _partitions(n - k, k):
            yield (k,) + rest


def elementary_abelian(p: int, max_rank: int) -> GroupFamily:
    return build_family({"kind": "elementary_abelian", "p": p, "max_rank": max_rank})


def cyclic_p(p: int, max_exponent: int) -> GroupFamily:
    return build_family({"kind": "cyclic_p", "p": p, "max_exponent": max_exponent})


def abelian_p(p: int, order_bound: int) -> GroupFamily:
    return build_family({"kind": "abelian_p", "p": p, "order_bound": order_bound})


def custom(table: Mapping) -> GroupFamily:
    return build_family(dict(table, kind="custom"))


def build_family(spec: Mapping) -> GroupFamily:
    """Build and validate a family from a JSON-compatible description."""
    kind = spec.get("kind")
    if kind in ("elementary_abelian", "cyclic_p", "abelian_p"):
        p = int(spec["p"])
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        if kind == "elementary_abelian":
            n = int(spec["max_rank"])
            if n < 0:
                raise ValueError("max_rank must be >= 0")
            groups = [AbelianGroup((p,) * r) for r in range(n + 1)]
            spec = {"kind": kind, "p": p, "max_rank": n}
        elif kind == "cyclic_p":
            n = int(spec["max_exponent"])
            if n < 0:
                raise ValueError("max_exponent must be >= 0")
            groups = [AbelianGroup((p ** e,) if e else ()) for e in range(n + 1)]
            spec = {"kind": kind, "p": p, "max_exponent": n}
        else:
            bound = int(spec["order_bound"])
            if bound < 1:
                raise ValueError("order_bound must be >= 1")
            groups = []
            k = 0
            while p ** k <= bound:
                for lam in _partitions(k):
                    groups.append(AbelianGroup(tuple(p ** e for e in sorted(lam))))
                k += 1
            spec = {"kind": kind, "p": p, "order_bound": bound}
        return GroupFamily(_ABELIAN, [G.label for G in groups], spec)
    if kind == "custom":
        table = {k: spec[k] for k in ("objects", "homs", "compose", "identity")}
        backend = _TableBackend(table)
        fam = GroupFamily(backend, list(backend._orders), dict(table, kind="custom"))
        report = check_family(fam)
        if not report.ok:
            raise FamilyError("; ".join(report.violations[:5]))
        return fam
    if kind == "subfamily":
        ambient = build_family(spec["ambient"])
        return ambient.subfamily(spec["classes"])
    if kind == "abelian":
        labels = [str(c) for c in spec["classes"]]
        for c in labels:
            parse_group_label(c)
        return GroupFamily(_ABELIAN, labels, {"kind": "abelian", "classes": labels})
    raise ValueError(f"unknown family kind {kind!r}")


@dataclass
class FamilyReport:
    ok: bool
    violations: list[str] = field(default_factory=list)
    triples_checked: int = 0
    associativity_skipped: bool = False


def check_family(family: GroupFamily, guard: int = 2_000_000) -> FamilyReport:
    """Exhaustively check the category laws of a family table.

    Associativity is checked on every composable triple unless their number
    exceeds ``guard``; that case is flagged in the report.
    """
    v: list[str] = []
    cls = family.classes
    homs = {(H, G): family.homs(H, G) for H in cls for G in cls}
    for (H, G), hs in homs.items():
        for a in hs:
            if family.source(a) != H or family.target(a) != G:
                v.append(f"hom {a} has wrong endpoints")
        if hs and H != G and homs[(G, H)]:
            v.append(f"distinct classes {H}, {G} have surjections both ways")
        if hs and family.order(H) < family.order(G):
            v.append(f"surjection {H} -> {G} onto a larger group")
    for G in cls:
        e = family.identity(G)
        if e not in homs[(G, G)]:
            v.append(f"identity of {G} is not in homs({G},{G})")
            continue
        for H in cls:
            for a in homs[(G, H)]:
                if _safe_compose(family, a, e) != a:
                    v.append(f"identity law fails: ({a}, {e})")
            for a in homs[(H, G)]:
                if _safe_compose(family, e, a) != a:
                    v.append(f"identity law fails: ({e}, {a})")
    for K in cls:
        for H in cls:
            for G in cls:
                for a in homs[(H, G)]:
                    for b in homs[(K, H)]:
                        c = _safe_compose(family, a, b)
                        if c is None or c not in homs[(K, G)]:
                            v.append(f"composition ({a}, {b}) missing or ill-typed")
    for G in cls:
        out = homs[(G, G)]
        e = family.identity(G)
        for s in out:
            if not any(_safe_compose(family, s, t) == e for t in out):
                v.append(f"{s} has no inverse in Out({G})")
    count = sum(len(homs[(L, K)]) * len(homs[(K, H)]) * len(homs[(H, G)])
                for L in cls for K in cls for H in cls for G in cls)
    skipped = count > guard or bool(v)
    if not skipped:
        for L in cls:
            for K in cls:
                for H in cls:
                    for G in cls:
                        for a in homs[(H, G)]:
                            for b in homs[(K, H)]:
                                ab = family.compose(a, b)
                                for c in homs[(L, K)]:
                                    lhs = family.compose(ab, c)
                                    rhs = family.compose(a, family.compose(b, c))
                                    if lhs != rhs:
                                        v.append(f"associativity fails on ({a}, {b}, {c})")
    return FamilyReport(not v, v, 0 if skipped else count, skipped and not v)


def _safe_compose(family, a, b):
    try:
        return family.compose(a, b)
    except FamilyError:
        return None


# --- closure notions ------------------------------------------------------------


def up_closure(family: GroupFamily, S: Iterable[str]) -> frozenset[str]:
    """Classes admitting a surjection onto some member of ``S``."""
    S = list(S)
    for s in S:
        family._check(s)
    return frozenset(G for G in family.classes if any(family.has_epi(G, H) for H in S))


def down_closure(family: GroupFamily, S: Iterable[str]) -> frozenset[str]:
    S = list(S)
    for s in S:
        family._check(s)
    return frozenset(G for G in family.classes if any(family.has_epi(H, G) for H in S))


@dataclass(frozen=True)
class Inclusion:
    """Inclusion of a full subfamily; class and hom labels are shared."""

    sub: GroupFamily
    ambient: GroupFamily
    is_up_closed: bool
    is_down_closed: bool

    @property
    def object_map(self) -> dict[str, str]:
        return {c: c for c in self.sub.classes}

    def hom_map(self, a: str) -> str:
        return a

    @property
    def complement(self) -> tuple[str, ...]:
        return tuple(c for c in self.ambient.classes if c not in self.sub)

    def check_functorial(self) -> bool:
        for H in self.sub.classes:
            if self.sub.identity(H) != self.ambient.identity(H):
                return False
            for G in self.sub.classes:
                if self.sub.homs(H, G) != self.ambient.homs(H, G):
                    return False
        return True


def inclusion(ambient: GroupFamily, classes: Iterable[str]) -> Inclusion:
    classes = list(classes)
    sub = ambient.subfamily(classes)
    inside = set(sub.classes)
    down = all(not ambient.has_epi(G, H) or H in inside for G in inside for H in ambient.classes)
    up = all(not ambient.has_epi(H, G) or H in inside for G in inside for H in ambient.classes)
    return Inclusion(sub, ambient, up, down)


def truncate(family: GroupFamily, *, le: int | None = None, gt: int | None = None,
             classes: Iterable[str] | None = None) -> tuple[GroupFamily, Inclusion]:
    """Full subfamily on ``order <= le``, ``order > gt`` or an explicit class set."""
    if sum(x is not None for x in (le, gt, classes)) != 1:
        raise ValueError("give exactly one of le, gt, classes")
    if le is not None:
        sel = [c for c in family.classes if family.order(c) <= le]
    elif gt is not None:
        sel = [c for c in family.classes if family.order(c) > gt]
    else:
        sel = list(classes)
    inc = inclusion(family, sel)
    return inc.sub, inc


@dataclass
class NStableReport:
    total_order: bool
    indexing: list[str]
    failures: list[str] = field(default_factory=list)


def check_n_stable(family: GroupFamily) -> NStableReport:
    """Check that the classes form a chain under surjections, ordered by index."""
    idx = sorted(family.classes, key=lambda c: (family.order(c), c))
    fails = []
    for i, G in enumerate(idx):
        for j in range(i):
            H = idx[j]
            up, down = family.has_epi(G, H), family.has_epi(H, G)
            if up and down:
                fails.append(f"{G} and {H} surject onto each other")
            elif not up and not down:
                fails.append(f"{G} and {H} are incomparable")
            elif down:
                fails.append(f"{H} surjects onto {G} against the index order")
    return NStableReport(not fails, idx, fails)


def is_widely_closed(sub: Iterable[str], ambient: GroupFamily) -> bool:
    """For every span ``G <- H -> K`` in ``sub``, the image of ``H -> G x K`` lies in ``sub``."""
    sub = list(sub)
    for c in sub:
        ambient._check(c)
        if ambient.group(c) is None:
            raise UnsupportedOperation(f"class {c!r} has no abelian payload")
    members = {ambient.group(c) for c in sub}
    for H in sub:
        for G in sub:
            for K in sub:
                if not (ambient.has_epi(H, G) and ambient.has_epi(H, K)):
                    continue
                GH, GG, GK = ambient.group(H), ambient.group(G), ambient.group(K)
                prod_moduli = GG.invariant_factors + GK.invariant_factors
                for a in ambient.homs(H, G):
                    A = ambient.hom_matrix(a)
                    for b in ambient.homs(H, K):
                        B = ambient.hom_matrix(b)
                        img = AbelianGroup(tuple(_image_lattice_factors(A + B, prod_moduli, GH.rank)))
                        if img not in members:
                            return False
    return True
