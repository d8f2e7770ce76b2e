"""Planar-embedded Brauer trees for principal blocks in the Coxeter regime.

A tree here has one exceptional node of multiplicity mu and a line branch

    exc --- chi_m --- chi_(m+1) --- ... --- chi_M

for every interval [m, M] in the series data; the intervals partition
{0..h0-1}.  Edge S_j joins chi_j to chi_(j-1), or to the exceptional node
when j starts its branch.  The anticlockwise cyclic order of the edges at
the exceptional node follows the congruence successor rule: after the edge
of the branch [m, M] comes the edge of the branch starting at M+1 mod h0.

Star trees (h0 singleton branches, the block of a metacyclic group D x| E)
are the degenerate special case and the target of the derived equivalence
checked in `homotopy`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import numpy as np

from .ell_arith import EllContext, TruncatedPadic, hensel_root
from .numtheory import prime_power_split, valuation

EXC = "exc"


class InvalidSeries(ValueError):
    """Branch intervals fail to partition {0..h0-1}."""


class NonIntegral(ArithmeticError):
    """(ell^v - 1)/h0 is not an integer; the regime is invalid."""


class BadAction(ValueError):
    """The action exponent does not have the required order mod ell."""


class MissingAnnotations(LookupError):
    """Vertex lacks the a/A degree annotations needed for this query."""


class ParseError(ValueError):
    """Malformed tree JSON; `location` points at the offending field."""

    def __init__(self, location: str, message: str):
        self.location = location
        super().__init__(f"{location}: {message}")


@dataclass(frozen=True)
class Branch:
    zeta: int
    m: int
    M: int


@dataclass(frozen=True)
class SeriesDatum:
    """Consecutive-integer intervals [m, M] per root-of-unity tag."""

    h0: int
    branches: tuple[Branch, ...]

    def __post_init__(self):
        object.__setattr__(self, "branches",
                           tuple(sorted(self.branches, key=lambda b: b.m)))
        self.validate()

    def validate(self):
        if self.h0 < 1:
            raise InvalidSeries("h0 must be positive")
        if not self.branches:
            raise InvalidSeries("series has no branches")
        seen: list[int] = []
        for b in self.branches:
            if not (0 <= b.m <= b.M < self.h0):
                raise InvalidSeries(f"branch [{b.m}, {b.M}] outside 0..{self.h0 - 1}")
            seen.extend(range(b.m, b.M + 1))
        if sorted(seen) != list(range(self.h0)):
            raise InvalidSeries("intervals do not partition {0..h0-1}")

    def branch_of(self, j: int) -> Branch:
        for b in self.branches:
            if b.m <= j <= b.M:
                return b
        raise KeyError(j)


@dataclass(frozen=True)
class ChiVertex:
    index: int
    label: str | None = None
    a_chi: int | None = None
    A_chi: int | None = None


@dataclass(frozen=True)
class Edge:
    index: int
    ends: tuple[object, object]   # vertex index or EXC


@dataclass(frozen=True)
class PlanarBrauerTree:
    h0: int
    r: int
    multiplicity: int
    series: SeriesDatum
    vertices: tuple[ChiVertex, ...]
    edges: tuple[Edge, ...]
    # node -> anticlockwise tuple of incident edge indices; present for the
    # exceptional node always and for every vertex of degree >= 2
    cyclic_order: tuple[tuple[object, tuple[int, ...]], ...]
    star_meta: tuple[tuple[str, int], ...] | None = None

    def cyclic_order_at(self, node) -> tuple[int, ...]:
        for n, order in self.cyclic_order:
            if n == node:
                return order
        edges = self.edges_at(node)
        if len(edges) != 1:
            raise KeyError(node)
        return tuple(edges)

    def edges_at(self, node) -> list[int]:
        return [e.index for e in self.edges if node in e.ends]

    def edge(self, j: int) -> Edge:
        for e in self.edges:
            if e.index == j:
                return e
        raise KeyError(j)

    def vertex(self, j: int) -> ChiVertex:
        for v in self.vertices:
            if v.index == j:
                return v
        raise KeyError(j)

    def edge_indices(self) -> list[int]:
        return [e.index for e in self.edges]

    def node_multiplicity(self, node) -> int:
        return self.multiplicity if node == EXC else 1

    def successor_at(self, node, j: int) -> int:
        order = self.cyclic_order_at(node)
        i = order.index(j)
        return order[(i + 1) % len(order)]

    def predecessor_at(self, node, j: int) -> int:
        order = self.cyclic_order_at(node)
        i = order.index(j)
        return order[(i - 1) % len(order)]

    def is_star(self) -> bool:
        return all(b.m == b.M for b in self.series.branches)


def exceptional_multiplicity(ctx: EllContext) -> int:
    """(ell-part of |T_c| minus 1) / h0; raises NonIntegral when it is not
    an integer, which signals an invalid regime."""
    v = valuation(ctx.torus_value, ctx.ell)
    num = ctx.ell ** v - 1
    if num % ctx.h0:
        raise NonIntegral(f"({ctx.ell}^{v} - 1)/{ctx.h0} is not integral")
    return num // ctx.h0


def assemble_tree(series: SeriesDatum, mu: int, r: int,
                  labels: dict[int, str] | None = None,
                  annotations: dict[int, tuple[int, int]] | None = None,
                  star_meta: dict[str, int] | None = None) -> PlanarBrauerTree:
    """Glue the line branches of a series at the exceptional node.

    The anticlockwise successor of the exceptional edge of a branch [m, M]
    is the exceptional edge of the branch starting at M+1 mod h0.
    """
    if mu < 1:
        raise InvalidSeries("multiplicity must be >= 1")
    series.validate()
    labels = labels or {}
    annotations = annotations or {}
    vertices = tuple(
        ChiVertex(j, labels.get(j),
                  *(annotations.get(j) or (None, None)))
        for j in range(series.h0))
    edges = []
    for b in series.branches:
        edges.append(Edge(b.m, (EXC, b.m)))
        for j in range(b.m + 1, b.M + 1):
            edges.append(Edge(j, (j - 1, j)))
    edges.sort(key=lambda e: e.index)

    # exceptional cycle by the successor rule, starting at the smallest m
    by_m = {b.m: b for b in series.branches}
    start = min(by_m)
    cycle, b = [], by_m[start]
    for _ in range(len(series.branches)):
        cycle.append(b.m)
        b = by_m[(b.M + 1) % series.h0]
    if b.m != start or len(set(cycle)) != len(series.branches):
        raise InvalidSeries("successor rule does not cycle through the branches")

    cyclic: list[tuple[object, tuple[int, ...]]] = [(EXC, tuple(cycle))]
    for b in series.branches:
        for j in range(b.m, b.M):
            # interior vertex chi_j carries edges S_j and S_(j+1)
            cyclic.append((j, (j, j + 1)))
    meta = tuple(sorted(star_meta.items())) if star_meta else None
    return PlanarBrauerTree(h0=series.h0, r=r, multiplicity=mu, series=series,
                            vertices=vertices, edges=tuple(edges),
                            cyclic_order=tuple(cyclic), star_meta=meta)


def principal_block_tree(ctx: EllContext, series: SeriesDatum,
                         labels: dict[int, str] | None = None) -> PlanarBrauerTree:
    """The tree of the principal block for a validated regime."""
    if series.h0 != ctx.h0:
        raise InvalidSeries(f"series h0={series.h0} but context h0={ctx.h0}")
    return assemble_tree(series, exceptional_multiplicity(ctx), ctx.datum.r,
                         labels=labels)


def star_tree(d_order: int, e_order: int, n: int, r: int = 0) -> PlanarBrauerTree:
    """Star tree of the block of D x| E with cyclic D of order ell^alpha.

    Edges are numbered by the linear characters eta_j pinned by the Hensel
    lift zeta of n (eta_j sends the generator of E to zeta^j); the
    anticlockwise successor of edge j is edge j+1 mod e_order.
    """
    split = prime_power_split(d_order)
    if split is None:
        raise BadAction(f"|D| = {d_order} is not a prime power")
    ell, alpha = split
    if gcd(e_order, ell) != 1:
        raise BadAction("|E| must be prime to ell")
    if pow(n, e_order, d_order) != 1:
        raise BadAction(f"n={n} does not have order dividing {e_order} mod {d_order}")
    from .numtheory import has_order
    if e_order > 1 and not has_order(n % ell, e_order, ell):
        raise BadAction(f"n={n} does not have order {e_order} mod {ell}")
    if (d_order - 1) % e_order:
        raise BadAction(f"{e_order} does not divide |D| - 1 = {d_order - 1}")
    zeta = hensel_root(TruncatedPadic(1, ell, alpha + 1), e_order, n % ell) \
        if e_order > 1 else TruncatedPadic(1, ell, alpha + 1)
    series = SeriesDatum(h0=e_order,
                         branches=tuple(Branch(j, j, j) for j in range(e_order)))
    labels = {j: f"eta{j}" for j in range(e_order)}
    meta = {"d_order": d_order, "e_order": e_order, "n": n % d_order,
            "zeta": zeta.value, "zeta_precision": zeta.n}
    return assemble_tree(series, (d_order - 1) // e_order, r,
                         labels=labels, star_meta=meta)


# ---------------------------------------------------------------------------
# matrices

@dataclass(frozen=True)
class DecompositionMatrix:
    """Rows: ordinary characters (chi_j ascending, then mu exceptional
    copies); columns: edges S_j ascending.  Entries count constituents."""

    row_labels: tuple[tuple[str, int], ...]
    col_edges: tuple[int, ...]
    matrix: np.ndarray
    multiplicity: int
    heights: tuple[int, ...]              # height of each column edge
    annotations: tuple[tuple[int | None, int | None], ...]  # per chi row

    def collapsed(self) -> np.ndarray:
        """Matrix with the identical exceptional rows collapsed to one."""
        n_chi = sum(1 for kind, _ in self.row_labels if kind == "chi")
        top = self.matrix[:n_chi]
        if self.multiplicity == 0 or len(self.matrix) == n_chi:
            return top.copy()
        return np.vstack([top, self.matrix[n_chi:n_chi + 1]])


def decomposition_matrix(tree: PlanarBrauerTree) -> DecompositionMatrix:
    cols = tuple(sorted(tree.edge_indices()))
    chi_rows = [("chi", v.index) for v in sorted(tree.vertices, key=lambda v: v.index)]
    exc_rows = [("exc", t) for t in range(tree.multiplicity)]
    mat = np.zeros((len(chi_rows) + len(exc_rows), len(cols)), dtype=int)
    col_of = {j: i for i, j in enumerate(cols)}
    for e in tree.edges:
        for end in e.ends:
            if end == EXC:
                for t in range(tree.multiplicity):
                    mat[len(chi_rows) + t, col_of[e.index]] = 1
            else:
                mat[end, col_of[e.index]] = 1
    heights = tuple(height(tree, j) for j in cols)
    annotations = tuple((tree.vertex(j).a_chi, tree.vertex(j).A_chi)
                        for _, j in chi_rows)
    d = DecompositionMatrix(tuple(chi_rows + exc_rows), cols, mat,
                            tree.multiplicity, heights, annotations)
    collapsed = d.collapsed()
    assert all(collapsed[:, c].sum() == 2 for c in range(len(cols))), \
        "every projective must have exactly two ordinary constituents"
    return d


def cartan_matrix(d: DecompositionMatrix) -> np.ndarray:
    """D^T D with the mu exceptional rows each counted."""
    return d.matrix.T @ d.matrix


def height(tree: PlanarBrauerTree, j: int) -> int:
    """Minimal number of edges between the exceptional node and edge S_j."""
    target = tree.edge(j)
    frontier, dist, seen = {EXC}, 0, {EXC}
    while frontier:
        if any(n in frontier for n in target.ends):
            return dist
        nxt = set()
        for e in tree.edges:
            if any(n in frontier for n in e.ends):
                for n in e.ends:
                    if n not in seen:
                        seen.add(n)
                        nxt.add(n)
        frontier, dist = nxt, dist + 1
    raise KeyError(j)


def perversity(tree: PlanarBrauerTree, i: int) -> int:
    return i - 2 * tree.r


def eigenvalue_exponent(tree: PlanarBrauerTree, vertex: int, h: int,
                        check_monotone: bool = False) -> Fraction:
    """n_chi = 2r - (a_chi + A_chi)/h for an annotated vertex.

    With check_monotone the value is required to increase with j along the
    branch of the vertex (all of whose vertices must then be annotated).
    """
    v = tree.vertex(vertex)
    if v.a_chi is None or v.A_chi is None:
        raise MissingAnnotations(f"vertex {vertex} lacks a/A annotations")
    value = 2 * tree.r - Fraction(v.a_chi + v.A_chi, h)
    if check_monotone:
        b = tree.series.branch_of(vertex)
        prev = None
        for j in range(b.m, b.M + 1):
            cur = eigenvalue_exponent(tree, j, h)
            if prev is not None and cur <= prev:
                raise AssertionError(f"n_chi not increasing along branch at {j}")
            prev = cur
    return value


def check_unitriangular(d: DecompositionMatrix, ordering="height"):
    """Test lower unitriangularity under a character ordering.

    `ordering` is "height" (sort character/edge pairs by decreasing edge
    height), "a_chi" (sort by increasing a annotation; requires all
    annotations), or an explicit list of chi indices.  Returns
    (is_unitriangular, row_order); the matrix is reordered with the
    exceptional rows kept at the bottom and column S_j tracking row chi_j.
    """
    chi = [j for kind, j in d.row_labels if kind == "chi"]
    hgt = dict(zip(d.col_edges, d.heights))
    if ordering == "height":
        order = sorted(chi, key=lambda j: (-hgt[j], j))
    elif ordering == "a_chi":
        ann = dict(zip(chi, d.annotations))
        if any(a is None for a, _ in ann.values()):
            raise MissingAnnotations("a_chi ordering needs annotations on every vertex")
        order = sorted(chi, key=lambda j: (ann[j][0], j))
    else:
        order = list(ordering)
        if sorted(order) != sorted(chi):
            raise ValueError("explicit ordering must permute the chi indices")
    row_of = {j: i for i, (kind, j) in enumerate(d.row_labels) if kind == "chi"}
    col_of = {j: i for i, j in enumerate(d.col_edges)}
    n = len(order)
    ok = True
    for rpos, j in enumerate(order):
        row = d.matrix[row_of[j]]
        for cpos, jc in enumerate(order):
            entry = row[col_of[jc]]
            if cpos == rpos and entry != 1:
                ok = False
            if cpos > rpos and entry != 0:
                ok = False
    return ok, order


# ---------------------------------------------------------------------------
# serialization

def tree_to_obj(tree: PlanarBrauerTree) -> dict:
    obj = {
        "h0": tree.h0,
        "r": tree.r,
        "multiplicity": tree.multiplicity,
        "branches": [{"zeta": b.zeta, "m": b.m, "M": b.M}
                     for b in tree.series.branches],
        "cyclic_order": list(tree.cyclic_order_at(EXC)),
    }
    labels = {str(v.index): v.label for v in tree.vertices if v.label}
    if labels:
        obj["labels"] = labels
    ann = {str(v.index): [v.a_chi, v.A_chi] for v in tree.vertices
           if v.a_chi is not None}
    if ann:
        obj["annotations"] = ann
    if tree.star_meta:
        obj["star"] = dict(tree.star_meta)
    return obj


def to_json(tree: PlanarBrauerTree) -> str:
    return json.dumps(tree_to_obj(tree), sort_keys=True)


def _expect(obj, key, types, loc):
    if key not in obj:
        raise ParseError(f"{loc}.{key}", "missing field")
    val = obj[key]
    if not isinstance(val, types) or isinstance(val, bool):
        raise ParseError(f"{loc}.{key}", f"expected {types}")
    return val


def obj_to_tree(obj: dict, loc: str = "$") -> PlanarBrauerTree:
    if not isinstance(obj, dict):
        raise ParseError(loc, "expected an object")
    h0 = _expect(obj, "h0", int, loc)
    r = _expect(obj, "r", int, loc)
    mu = _expect(obj, "multiplicity", int, loc)
    raw = _expect(obj, "branches", list, loc)
    if not raw:
        raise ParseError(f"{loc}.branches", "series has no branches")
    branches = []
    for i, b in enumerate(raw):
        bloc = f"{loc}.branches[{i}]"
        if not isinstance(b, dict):
            raise ParseError(bloc, "expected an object")
        branches.append(Branch(_expect(b, "zeta", int, bloc),
                               _expect(b, "m", int, bloc),
                               _expect(b, "M", int, bloc)))
    try:
        series = SeriesDatum(h0=h0, branches=tuple(branches))
    except InvalidSeries as exc:
        raise ParseError(f"{loc}.branches", str(exc)) from exc
    labels = {}
    for k, v in (obj.get("labels") or {}).items():
        if not isinstance(v, str):
            raise ParseError(f"{loc}.labels.{k}", "expected a string")
        labels[int(k)] = v
    annotations = {}
    for k, v in (obj.get("annotations") or {}).items():
        if (not isinstance(v, list) or len(v) != 2
                or not all(isinstance(x, int) for x in v)):
            raise ParseError(f"{loc}.annotations.{k}", "expected [a, A]")
        annotations[int(k)] = (v[0], v[1])
    star = obj.get("star")
    if star is not None and not isinstance(star, dict):
        raise ParseError(f"{loc}.star", "expected an object")
    if mu < 1:
        raise ParseError(f"{loc}.multiplicity", "must be >= 1")
    tree = assemble_tree(series, mu, r, labels=labels, annotations=annotations,
                         star_meta=star)
    stated = obj.get("cyclic_order")
    if stated is not None and tuple(stated) != tree.cyclic_order_at(EXC):
        raise ParseError(f"{loc}.cyclic_order",
                         f"inconsistent with the successor rule, expected "
                         f"{list(tree.cyclic_order_at(EXC))}")
    return tree


def from_json(text: str) -> PlanarBrauerTree:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"$:offset {exc.pos}", exc.msg) from exc
    return obj_to_tree(obj)


def to_dot(tree: PlanarBrauerTree) -> str:
    """Graphviz rendering; the `order` edge attribute is the position in
    the anticlockwise cyclic order at the node written first."""
    lines = ["graph brauer_tree {", "  graph [ordering=out];"]
    lines.append(f'  exc [shape=doublecircle, label="exc ({tree.multiplicity})"];')
    for v in sorted(tree.vertices, key=lambda v: v.index):
        label = v.label or f"chi{v.index}"
        lines.append(f'  v{v.index} [shape=circle, label="{label}"];')
    emitted = set()

    def node_name(n):
        return "exc" if n == EXC else f"v{n}"

    for pos, j in enumerate(tree.cyclic_order_at(EXC)):
        e = tree.edge(j)
        other = e.ends[0] if e.ends[1] == EXC else e.ends[1]
        lines.append(f'  exc -- {node_name(other)} [label="S{j}", order={pos}];')
        emitted.add(j)
    for e in sorted(tree.edges, key=lambda e: e.index):
        if e.index in emitted:
            continue
        a, b = sorted(e.ends, key=lambda n: (n == EXC, n))
        order = tree.cyclic_order_at(a).index(e.index)
        lines.append(f'  {node_name(a)} -- {node_name(b)} '
                     f'[label="S{e.index}", order={order}];')
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# built-in fixtures

def line_series(h0: int) -> SeriesDatum:
    """Single principal-series branch, the tree shape of the split A types."""
    return SeriesDatum(h0=h0, branches=(Branch(0, 0, h0 - 1),))


_REE_LABELS = {0: "St", 1: "1", 2: "2G2[i]", 3: "2G2[xi]",
               4: "2G2[xibar]", 5: "2G2[-i]"}

# Root-of-unity tags for the Ree tree, recorded as exponents of xi, the
# twelfth root of unity congruent to q^5 mod ell (so i = xi^3).
_REE_SERIES = SeriesDatum(h0=6, branches=(
    Branch(0, 0, 1),    # principal series: St, then the trivial character
    Branch(3, 2, 2),    # cuspidal, zeta = xi^3 = i
    Branch(1, 3, 3),    # cuspidal, zeta = xi
    Branch(11, 4, 4),   # cuspidal, zeta = xi^11 = conj(xi)
    Branch(9, 5, 5),    # cuspidal, zeta = xi^9 = -i
))


def fixture_series(name: str) -> tuple[SeriesDatum, dict[int, str]]:
    key = name.lower()
    if key == "2g2":
        return _REE_SERIES, dict(_REE_LABELS)
    if key.startswith("line") and key[4:].isdigit():
        h0 = int(key[4:])
        if h0 < 1:
            raise KeyError(name)
        return line_series(h0), {}
    raise KeyError(name)
