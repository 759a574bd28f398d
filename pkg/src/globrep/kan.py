"""Restriction and Kan extensions along inclusions of full subfamilies.

Both extensions are computed pointwise from the comma category at each
ambient class ``H``. The left extension is the quotient of the node-indexed
sum by the relations coming from edges; the right extension is the
subspace of compatible families.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .exactla import (Matrix, Subspace, direct_sum, hstack, kernel_basis, kron, quotient_map,
                      quotient_section, vstack)
from .family import GroupFamily, Inclusion
from .rep import (Rep, RepError, RepMorphism, ShortExactSequence, cokernel, hom_space, identity, kernel,
                  make_rep, tensor)


def restrict(inc: Inclusion, X: Rep) -> Rep:
    if X.family != inc.ambient:
        raise RepError("object does not live over the ambient family")
    sub = inc.sub
    return make_rep(sub, {G: X.dims[G] for G in sub.classes}, X.map)


def restrict_morphism(inc: Inclusion, f: RepMorphism) -> RepMorphism:
    return RepMorphism(restrict(inc, f.source), restrict(inc, f.target),
                       {G: f[G] for G in inc.sub.classes})


@dataclass
class CommaDiagram:
    """Indexing category of the pointwise formula at ``H``.

    For the left extension, nodes are ``(G, a)`` with ``a: H -> G`` and an edge
    ``(b, src, dst)`` means ``dst = (G, b o a')`` for ``src = (G', a')`` and ``b: G' -> G``.
    For the right extension, nodes are ``(G, a)`` with ``a: G -> H`` and an edge
    ``(b, src, dst)`` means ``src = (G, a)``, ``dst = (G', a o b)`` for ``b: G' -> G``.
    """

    target: str
    side: str
    nodes: list[tuple[str, str]]
    edges: list[tuple[str, tuple[str, str], tuple[str, str]]] = field(default_factory=list)

    def check(self, family: GroupFamily) -> bool:
        pos = set(self.nodes)
        for b, s, d in self.edges:
            if s not in pos or d not in pos:
                return False
            if self.side == "left":
                if d[1] != family.compose(b, s[1]):
                    return False
            elif d[1] != family.compose(s[1], b):
                return False
        return True


def comma_diagram(inc: Inclusion, H: str, side: str = "left") -> CommaDiagram:
    amb, sub = inc.ambient, inc.sub
    if side == "left":
        nodes = [(G, a) for G in sub.classes if amb.has_epi(H, G) for a in amb.homs(H, G)]
        edges = []
        for Gp, ap in nodes:
            for G in sub.classes:
                if sub.has_epi(Gp, G):
                    for b in sub.homs(Gp, G):
                        edges.append((b, (Gp, ap), (G, amb.compose(b, ap))))
    elif side == "right":
        nodes = [(G, a) for G in sub.classes if amb.has_epi(G, H) for a in amb.homs(G, H)]
        edges = []
        for G, a in nodes:
            for Gp in sub.classes:
                if sub.has_epi(Gp, G):
                    for b in sub.homs(Gp, G):
                        edges.append((b, (G, a), (Gp, amb.compose(a, b))))
    else:
        raise ValueError("side must be 'left' or 'right'")
    return CommaDiagram(H, side, nodes, edges)


def _offsets(nodes, X: Rep):
    off, n = {}, 0
    for node in nodes:
        off[node] = n
        n += X.dims[node[0]]
    return off, n


def _block(X: Rep, node, off, n) -> Matrix:
    """Inclusion of ``X(node class)`` into the node-indexed sum of size ``n``."""
    d = X.dims[node[0]]
    o = off[node]
    return Matrix(n, d, tuple(tuple(int(r - o == c) for c in range(d)) for r in range(n)))


@dataclass
class _LanData:
    rep: Rep
    diagrams: dict[str, CommaDiagram]
    offsets: dict[str, dict]
    sizes: dict[str, int]
    q: dict[str, Matrix]
    s: dict[str, Matrix]


def _lan(inc: Inclusion, X: Rep) -> _LanData:
    if X.family != inc.sub:
        raise RepError("object does not live over the subfamily")
    amb = inc.ambient
    diags, offs, sizes, q, s = {}, {}, {}, {}, {}
    for H in amb.classes:
        D = comma_diagram(inc, H, "left")
        off, n = _offsets(D.nodes, X)
        rels = []
        for b, src, dst in D.edges:
            Xb = X.map(b)
            for c in range(X.dims[dst[0]]):
                v = [0] * n
                v[off[dst] + c] += 1
                for r in range(X.dims[src[0]]):
                    v[off[src] + r] -= Xb.data[r][c]
                rels.append(v)
        R = Subspace.span(n, rels)
        diags[H], offs[H], sizes[H] = D, off, n
        q[H], s[H] = quotient_map(n, R), quotient_section(n, R)
    dims = {H: q[H].rows for H in amb.classes}

    def tr(g):
        K, H = amb.source(g), amb.target(g)
        # node (G, a) at H goes to (G, a o g) at K
        cols = [None] * sizes[H]
        for G, a in diags[H].nodes:
            o_src, o_dst = offs[H][(G, a)], offs[K][(G, amb.compose(a, g))]
            for c in range(X.dims[G]):
                col = [0] * sizes[K]
                col[o_dst + c] = 1
                cols[o_src + c] = col
        P = Matrix.from_columns(cols, sizes[K])
        return q[K] @ P @ s[H]

    return _LanData(make_rep(amb, dims, tr), diags, offs, sizes, q, s)


def extension_by_zero(inc: Inclusion, X: Rep) -> Rep:
    if X.family != inc.sub:
        raise RepError("object does not live over the subfamily")
    dims = {H: (X.dims[H] if H in inc.sub else 0) for H in inc.ambient.classes}
    return make_rep(inc.ambient, dims, X.map)


def left_kan(inc: Inclusion, X: Rep, method: str = "auto") -> Rep:
    """``i_! X``. ``method`` is ``auto`` (zero fast path when up-closed), ``general`` or ``zero``."""
    if method == "zero" or (method == "auto" and inc.is_up_closed):
        if not inc.is_up_closed:
            raise RepError("extension by zero computes the left extension only for up-closed inclusions")
        return extension_by_zero(inc, X)
    if method not in ("auto", "general"):
        raise ValueError(f"unknown method {method!r}")
    return _lan(inc, X).rep


def left_kan_morphism(inc: Inclusion, f: RepMorphism, _src: _LanData | None = None,
                      _tgt: _LanData | None = None) -> RepMorphism:
    A = _src or _lan(inc, f.source)
    B = _tgt or _lan(inc, f.target)
    comps = {}
    for H in inc.ambient.classes:
        blocks = [f[G] for G, _ in A.diagrams[H].nodes]
        M = direct_sum(*blocks) if blocks else Matrix.zeros(0, 0)
        comps[H] = B.q[H] @ M @ A.s[H]
    return RepMorphism(A.rep, B.rep, comps)


def left_unit(inc: Inclusion, X: Rep, _data: _LanData | None = None) -> RepMorphism:
    """``X -> i* i_! X``."""
    L = _data or _lan(inc, X)
    amb = inc.ambient
    comps = {}
    for G in inc.sub.classes:
        node = (G, amb.identity(G))
        comps[G] = L.q[G] @ _block(X, node, L.offsets[G], L.sizes[G])
    return RepMorphism(X, restrict(inc, L.rep), comps)


def left_counit(inc: Inclusion, Y: Rep) -> RepMorphism:
    """``i_! i* Y -> Y``."""
    L = _lan(inc, restrict(inc, Y))
    comps = {}
    for H in inc.ambient.classes:
        nodes = L.diagrams[H].nodes
        if nodes:
            comps[H] = hstack(*(Y.map(a) for _, a in nodes)) @ L.s[H]
        else:
            comps[H] = Matrix.zeros(Y.dims[H], 0)
    return RepMorphism(L.rep, Y, comps)


@dataclass
class _RanData:
    rep: Rep
    diagrams: dict[str, CommaDiagram]
    offsets: dict[str, dict]
    sizes: dict[str, int]
    spaces: dict[str, Subspace]


def _ran(inc: Inclusion, X: Rep) -> _RanData:
    if X.family != inc.sub:
        raise RepError("object does not live over the subfamily")
    amb = inc.ambient
    diags, offs, sizes, spaces = {}, {}, {}, {}
    for H in amb.classes:
        D = comma_diagram(inc, H, "right")
        off, n = _offsets(D.nodes, X)
        rows = []
        for b, src, dst in D.edges:
            # X(b) x_src = x_dst
            Xb = X.map(b)
            for r in range(X.dims[dst[0]]):
                row = [0] * n
                row[off[dst] + r] -= 1
                for c in range(X.dims[src[0]]):
                    row[off[src] + c] += Xb.data[r][c]
                rows.append(row)
        M = Matrix(len(rows), n, tuple(tuple(r) for r in rows))
        diags[H], offs[H], sizes[H], spaces[H] = D, off, n, kernel_basis(M)
    dims = {H: spaces[H].dim for H in amb.classes}

    def tr(g):
        K, H = amb.source(g), amb.target(g)
        # y at (G, a') in K is x at (G, g o a') in H
        rows = []
        for G, ap in diags[K].nodes:
            o = offs[H][(G, amb.compose(g, ap))]
            for c in range(X.dims[G]):
                row = [0] * sizes[H]
                row[o + c] = 1
                rows.append(row)
        P = Matrix(sizes[K], sizes[H], tuple(tuple(r) for r in rows))
        return spaces[K].coordinate_matrix(P @ spaces[H].basis_matrix())

    return _RanData(make_rep(amb, dims, tr), diags, offs, sizes, spaces)


def right_kan(inc: Inclusion, X: Rep, method: str = "auto") -> Rep:
    """``i_* X``. ``method`` is ``auto`` (zero fast path when down-closed), ``general`` or ``zero``."""
    if method == "zero" or (method == "auto" and inc.is_down_closed):
        if not inc.is_down_closed:
            raise RepError("extension by zero computes the right extension only for down-closed inclusions")
        return extension_by_zero(inc, X)
    if method not in ("auto", "general"):
        raise ValueError(f"unknown method {method!r}")
    return _ran(inc, X).rep


def right_kan_morphism(inc: Inclusion, f: RepMorphism, _src: _RanData | None = None,
                       _tgt: _RanData | None = None) -> RepMorphism:
    A = _src or _ran(inc, f.source)
    B = _tgt or _ran(inc, f.target)
    comps = {}
    for H in inc.ambient.classes:
        blocks = [f[G] for G, _ in A.diagrams[H].nodes]
        M = direct_sum(*blocks) if blocks else Matrix.zeros(0, 0)
        comps[H] = B.spaces[H].coordinate_matrix(M @ A.spaces[H].basis_matrix())
    return RepMorphism(A.rep, B.rep, comps)


def right_unit(inc: Inclusion, Y: Rep) -> RepMorphism:
    """``Y -> i_* i* Y``."""
    R = _ran(inc, restrict(inc, Y))
    comps = {}
    for H in inc.ambient.classes:
        nodes = R.diagrams[H].nodes
        if nodes:
            comps[H] = R.spaces[H].coordinate_matrix(vstack(*(Y.map(a) for _, a in nodes)))
        else:
            comps[H] = Matrix.zeros(0, Y.dims[H])
    return RepMorphism(Y, R.rep, comps)


def right_counit(inc: Inclusion, X: Rep, _data: _RanData | None = None) -> RepMorphism:
    """``i* i_* X -> X``."""
    R = _data or _ran(inc, X)
    amb = inc.ambient
    comps = {}
    for G in inc.sub.classes:
        node = (G, amb.identity(G))
        proj = _block(X, node, R.offsets[G], R.sizes[G]).T
        comps[G] = proj @ R.spaces[G].basis_matrix()
    return RepMorphism(restrict(inc, R.rep), X, comps)


# --- adjunctions --------------------------------------------------------------------


@dataclass
class AdjunctionReport:
    left_dims: tuple[int, int]
    right_dims: tuple[int, int]
    left_triangles: bool
    right_triangles: bool

    @property
    def ok(self) -> bool:
        return (self.left_dims[0] == self.left_dims[1] and self.right_dims[0] == self.right_dims[1]
                and self.left_triangles and self.right_triangles)


def _same(f: RepMorphism, g: RepMorphism) -> bool:
    return all(f[G] == g[G] for G in f.family.classes)


def adjunction_check(inc: Inclusion, X: Rep, Y: Rep) -> AdjunctionReport:
    """Hom-dimension identities for both adjunctions and all four triangle identities."""
    LX = _lan(inc, X)
    RX = _ran(inc, X)
    iY = restrict(inc, Y)
    left_dims = (len(hom_space(LX.rep, Y)), len(hom_space(X, iY)))
    right_dims = (len(hom_space(Y, RX.rep)), len(hom_space(iY, X)))

    # eps_{i_! X} o i_!(eta_X) = id
    eta = left_unit(inc, X, LX)
    Leta = left_kan_morphism(inc, eta, LX)
    eps_L = left_counit(inc, LX.rep)
    t1 = _same(eps_L @ Leta, identity(LX.rep))
    # i*(eps_Y) o eta_{i* Y} = id
    eps_Y = left_counit(inc, Y)
    t2 = _same(restrict_morphism(inc, eps_Y) @ left_unit(inc, iY), identity(iY))

    # eps'_{i* Y} o i*(eta'_Y) = id
    eta_Y = right_unit(inc, Y)
    t3 = _same(right_counit(inc, iY) @ restrict_morphism(inc, eta_Y), identity(iY))
    # i_*(eps'_X) o eta'_{i_* X} = id
    epsX = right_counit(inc, X, RX)
    t4 = _same(right_kan_morphism(inc, epsX, None, RX) @ right_unit(inc, RX.rep), identity(RX.rep))
    return AdjunctionReport(left_dims, right_dims, t1 and t2, t3 and t4)


# --- gluing and the oplax comparison -------------------------------------------------


def glue_ses(down: Inclusion, up: Inclusion, X: Rep) -> ShortExactSequence:
    """``j_! j* X >-> X ->> i_* i* X`` for a down-closed ``i`` and its up-closed complement ``j``."""
    amb = X.family
    if down.ambient != amb or up.ambient != amb:
        raise RepError("inclusions do not share the object's family")
    a, b = set(down.sub.classes), set(up.sub.classes)
    if a & b or (a | b) != set(amb.classes):
        raise RepError("the two subfamilies do not partition the family")
    if not down.is_down_closed or not up.is_up_closed:
        raise RepError("need a down-closed part and an up-closed complement")
    ses = ShortExactSequence(left_counit(up, X), right_unit(down, X))
    bad = ses.violations()
    if bad:
        raise RepError(f"gluing sequence is not exact: {bad[0]}")
    return ses


@dataclass
class OplaxResult:
    h: RepMorphism
    kernel: Rep
    cokernel: Rep


def oplax_comparison(inc: Inclusion, X: Rep, Y: Rep) -> OplaxResult:
    """``h: i_!(X (x) Y) -> i_! X (x) i_! Y`` from the universal property of the colimit."""
    LXY = _lan(inc, tensor(X, Y))
    LX, LY = _lan(inc, X), _lan(inc, Y)
    etaX, etaY = left_unit(inc, X, LX), left_unit(inc, Y, LY)
    target = tensor(LX.rep, LY.rep)
    comps = {}
    for H in inc.ambient.classes:
        nodes = LXY.diagrams[H].nodes
        if not nodes:
            comps[H] = Matrix.zeros(target.dims[H], 0)
            continue
        blocks = [kron(LX.rep.map(a), LY.rep.map(a)) @ kron(etaX[G], etaY[G]) for G, a in nodes]
        comps[H] = hstack(*blocks) @ LXY.s[H]
    h = RepMorphism(LXY.rep, target, comps)
    K, _ = kernel(h)
    C, _ = cokernel(h)
    return OplaxResult(h, K, C)
