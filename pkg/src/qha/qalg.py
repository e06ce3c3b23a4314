"""Bound quiver algebras KQ/I with an explicit basis of reduced paths.

Paths compose diagrammatically: ``p * q`` means "first p, then q" and is
defined when ``target(p) == source(q)``. Modules are right modules, so an
arrow ``a: i -> j`` acts as a linear map ``M_i -> M_j``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

import numpy as np

from .exactlin import Field, default_field, rref


class AlgebraError(ValueError):
    pass


class NotAdmissible(AlgebraError):
    pass


class BoundTooSmall(AlgebraError):
    pass


@dataclass(frozen=True)
class Arrow:
    label: str
    source: str
    target: str


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...] = ()

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise AlgebraError("duplicate vertex labels")
        labels = [a.label for a in self.arrows]
        if len(set(labels)) != len(labels):
            raise AlgebraError("duplicate arrow labels")
        if set(labels) & set(self.vertices):
            raise AlgebraError("arrow labels must differ from vertex labels")
        for a in self.arrows:
            if a.source not in self.vertices or a.target not in self.vertices:
                raise AlgebraError(f"arrow {a.label} has an undeclared endpoint")

    def opposite(self) -> "Quiver":
        return Quiver(self.vertices, tuple(Arrow(a.label, a.target, a.source) for a in self.arrows))


@dataclass(frozen=True)
class Relation:
    """A linear combination of parallel paths; each path is a tuple of arrow labels."""

    terms: tuple[tuple[Fraction, tuple[str, ...]], ...]

    @classmethod
    def of(cls, *terms) -> "Relation":
        """``Relation.of("a1*b2")`` or ``Relation.of((1, "a2*b3"), (-1, "b2*a1"))``."""
        out = []
        for t in terms:
            coef, path = (1, t) if isinstance(t, str) else t
            if isinstance(path, str):
                path = tuple(path.split("*")) if path else ()
            out.append((Fraction(coef), tuple(path)))
        return cls(tuple(out))

    def reversed(self) -> "Relation":
        return Relation(tuple((c, tuple(reversed(p))) for c, p in self.terms))

    def __str__(self):
        parts = []
        for c, p in self.terms:
            parts.append(f"{c} {'*'.join(p)}")
        return " + ".join(parts)


class Path(NamedTuple):
    source: int
    target: int
    arrows: tuple[int, ...]

    def __len__(self):
        return len(self.arrows)


class Algebra:
    """A finite-dimensional quotient ``KQ/I`` of a path algebra.

    Construct with :func:`build_algebra`. The basis consists of reduced
    paths, grouped into blocks ``e_i A e_j`` of paths from ``i`` to ``j``.
    """

    def __init__(self, quiver: Quiver, relations: Sequence[Relation], bound: int,
                 field: Field, name: str = ""):
        self.quiver = quiver
        self.relations = tuple(relations)
        self.bound = bound
        self.field = field
        self.name = name
        self.vertex_index = {v: i for i, v in enumerate(quiver.vertices)}
        self.arrow_index = {a.label: k for k, a in enumerate(quiver.arrows)}
        self.arrow_source = [self.vertex_index[a.source] for a in quiver.arrows]
        self.arrow_target = [self.vertex_index[a.target] for a in quiver.arrows]
        self._index_relations()
        self._build_basis()
        self._op: Algebra | None = None
        self._projectives: dict[int, object] = {}
        self._injectives: dict[int, object] = {}

    # -- presentation --------------------------------------------------
    @property
    def n_vertices(self) -> int:
        return len(self.quiver.vertices)

    @property
    def n_arrows(self) -> int:
        return len(self.quiver.arrows)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def key(self):
        return (self.quiver, self.relations, self.bound, self.field)

    def __eq__(self, other):
        return isinstance(other, Algebra) and (self is other or self.key() == other.key())

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"Algebra({self.name or '?'}, vertices={self.n_vertices}, dim={self.dim}, field={self.field})"

    def _path(self, labels: tuple[str, ...]) -> Path:
        try:
            arrows = tuple(self.arrow_index[x] for x in labels)
        except KeyError as e:
            raise AlgebraError(f"unknown arrow {e.args[0]!r}") from None
        for x, y in zip(arrows, arrows[1:]):
            if self.arrow_target[x] != self.arrow_source[y]:
                raise AlgebraError(f"path {'*'.join(labels)} does not compose")
        return Path(self.arrow_source[arrows[0]], self.arrow_target[arrows[-1]], arrows)

    def _index_relations(self):
        self._rels: list[list[tuple[object, Path]]] = []
        for rel in self.relations:
            if not rel.terms:
                raise NotAdmissible("empty relation")
            terms = []
            for c, labels in rel.terms:
                if len(labels) < 2:
                    raise NotAdmissible(f"relation {rel} has a term of length {len(labels)}")
                terms.append((self.field.element(c), self._path(labels)))
            ends = {(p.source, p.target) for _, p in terms}
            if len(ends) != 1:
                raise NotAdmissible(f"relation {rel} mixes non-parallel paths")
            self._rels.append(terms)

    # -- path basis ----------------------------------------------------
    def _paths_of_degree(self, d: int, prev: list[Path]) -> list[Path]:
        if d == 0:
            return [Path(v, v, ()) for v in range(self.n_vertices)]
        out = []
        for p in prev:
            for k in range(self.n_arrows):
                if self.arrow_source[k] == p.target:
                    out.append(Path(p.source, self.arrow_target[k], p.arrows + (k,)))
        return out

    def _build_basis(self):
        F = self.field
        N = self.bound
        if N < 2:
            raise BoundTooSmall("nilpotency bound must be at least 2")
        degrees = [self._paths_of_degree(0, [])]
        for d in range(1, N + 1):
            degrees.append(self._paths_of_degree(d, degrees[-1]))
        homogeneous = all(len({len(p) for _, p in terms}) == 1 for terms in self._rels)
        self._normal: dict[tuple[int, tuple[int, ...]], dict[int, object]] = {}
        basis: list[Path] = []
        if homogeneous:
            reduced = self._reduce_graded(degrees)
        else:
            reduced = self._reduce_filtered(degrees)
        # reduced: path -> None (basis element) or {path: coef} expressing it via basis paths
        for d in range(N):
            for p in degrees[d]:
                if reduced[p] is None:
                    basis.append(p)
        self.basis = basis
        self.basis_index = {(p.source, p.arrows): i for i, p in enumerate(basis)}
        for d in range(N):
            for p in degrees[d]:
                r = reduced[p]
                if r is None:
                    self._normal[(p.source, p.arrows)] = {self.basis_index[(p.source, p.arrows)]: F.element(1)}
                else:
                    self._normal[(p.source, p.arrows)] = {
                        self.basis_index[(q.source, q.arrows)]: c for q, c in r.items() if c != 0}
        self._blocks: dict[tuple[int, int], list[int]] = {}
        for i, p in enumerate(basis):
            self._blocks.setdefault((p.source, p.target), []).append(i)
        self._block_pos = {}
        for (s, t), idx in self._blocks.items():
            for pos, i in enumerate(idx):
                self._block_pos[i] = pos

    def _relation_vector(self, terms, cols):
        F = self.field
        v = F.zeros(1, len(cols))
        for c, p in terms:
            if p in cols:
                v[0, cols[p]] = F.reduce(v[0, cols[p]] + c)
        return v

    def _reduce_graded(self, degrees):
        F = self.field
        N = self.bound
        reduced: dict[Path, object] = {}
        for p in degrees[0] + degrees[1]:
            reduced[p] = None
        ideal_rows = None  # rref rows spanning I_d in degree d
        prev_cols = None
        for d in range(2, N + 1):
            paths = degrees[d]
            cols = {p: i for i, p in enumerate(paths)}
            chunks = []
            for terms in self._rels:
                if len(terms[0][1]) == d:
                    chunks.append(self._relation_vector(terms, cols))
            if ideal_rows is not None and ideal_rows.shape[0] and paths:
                for k in range(self.n_arrows):
                    right = F.zeros(len(prev_cols), len(paths))
                    left = F.zeros(len(prev_cols), len(paths))
                    for q, i in prev_cols.items():
                        if q.target == self.arrow_source[k]:
                            right[i, cols[Path(q.source, self.arrow_target[k], q.arrows + (k,))]] = 1
                        if q.source == self.arrow_target[k]:
                            left[i, cols[Path(self.arrow_source[k], q.target, (k,) + q.arrows)]] = 1
                    chunks.append(F.matmul(ideal_rows, right))
                    chunks.append(F.matmul(ideal_rows, left))
            if chunks and paths:
                r, pivots, rk = rref(np.concatenate(chunks), F)
                ideal_rows = r[:rk]
            else:
                pivots, ideal_rows = [], F.zeros(0, len(paths))
            if d == N:
                if len(pivots) != len(paths):
                    raise BoundTooSmall(
                        f"paths of length {N} survive reduction; raise the nilpotency bound")
                break
            pivot_set = set(pivots)
            for j, p in enumerate(paths):
                if j not in pivot_set:
                    reduced[p] = None
            for row, pc in enumerate(pivots):
                reduced[paths[pc]] = {paths[j]: F.reduce(-ideal_rows[row, j])
                                      for j in range(len(paths)) if j not in pivot_set and ideal_rows[row, j] != 0}
            prev_cols = cols
        return reduced

    def _reduce_filtered(self, degrees):
        # Non-homogeneous relations: close the span of relations under
        # left/right arrow multiplication inside paths of length <= N.
        F = self.field
        N = self.bound
        paths = [p for d in range(N, -1, -1) for p in degrees[d]]  # high degree first
        cols = {p: i for i, p in enumerate(paths)}
        rows = np.concatenate([self._relation_vector(t, cols) for t in self._rels]) if self._rels \
            else F.zeros(0, len(paths))
        shift_r, shift_l = [], []
        for k in range(self.n_arrows):
            right = F.zeros(len(paths), len(paths))
            left = F.zeros(len(paths), len(paths))
            for q, i in cols.items():
                if len(q) == N:
                    continue
                if q.target == self.arrow_source[k]:
                    right[i, cols[Path(q.source, self.arrow_target[k], q.arrows + (k,))]] = 1
                if q.source == self.arrow_target[k]:
                    left[i, cols[Path(self.arrow_source[k], q.target, (k,) + q.arrows)]] = 1
            shift_r.append(right)
            shift_l.append(left)
        r, pivots, rk = rref(rows, F) if rows.shape[0] else (rows, [], 0)
        span = r[:rk]
        while True:
            grown = [span] + [F.matmul(span, m) for m in shift_r + shift_l]
            r, pivots, rk2 = rref(np.concatenate(grown), F)
            span = r[:rk2]
            if rk2 == rk:
                break
            rk = rk2
        pivot_set = set(pivots)
        for p in degrees[N]:
            if cols[p] not in pivot_set:
                raise BoundTooSmall(f"paths of length {N} survive reduction; raise the nilpotency bound")
        reduced: dict[Path, object] = {}
        for j, p in enumerate(paths):
            if j not in pivot_set:
                reduced[p] = None
        for row, pc in enumerate(pivots):
            p = paths[pc]
            if len(p) < 2:
                raise NotAdmissible("ideal contains a combination of vertices and arrows")
            reduced[p] = {paths[j]: F.reduce(-span[row, j]) for j in range(len(paths))
                          if j not in pivot_set and span[row, j] != 0}
        return reduced

    # -- arithmetic ----------------------------------------------------
    def block(self, i: int, j: int) -> list[int]:
        """Basis indices of reduced paths from vertex ``i`` to vertex ``j``."""
        return self._blocks.get((i, j), [])

    def block_position(self, basis_idx: int) -> int:
        return self._block_pos[basis_idx]

    def normal_form(self, source: int, arrows: tuple[int, ...]) -> dict[int, object]:
        """Sparse coordinates over the basis of the class of a path."""
        if len(arrows) >= self.bound:
            return {}
        return self._normal[(source, arrows)]

    def multiply(self, i: int, j: int) -> dict[int, object]:
        """Product of basis elements ``i`` and ``j`` as sparse coordinates."""
        p, q = self.basis[i], self.basis[j]
        if p.target != q.source:
            return {}
        return self.normal_form(p.source, p.arrows + q.arrows)

    def block_vector(self, coords: dict[int, object], i: int, j: int) -> np.ndarray:
        """Dense coordinates of an element of ``e_i A e_j`` in that block's basis."""
        F = self.field
        out = F.zeros(1, len(self.block(i, j)))
        for b, c in coords.items():
            out[0, self._block_pos[b]] = c
        return out[0]

    def check_associativity(self) -> bool:
        F = self.field
        n = self.dim

        def combine(pairs) -> dict[int, object]:
            out: dict[int, object] = {}
            for c, vec in pairs:
                for b, c2 in vec.items():
                    out[b] = F.reduce(out.get(b, 0) + c * c2)
            return {b: c for b, c in out.items() if c != 0}

        def mul_vec(vec: dict[int, object], k: int) -> dict[int, object]:
            return combine((c, self.multiply(b, k)) for b, c in vec.items())

        def lmul_vec(k: int, vec: dict[int, object]) -> dict[int, object]:
            return combine((c, self.multiply(k, b)) for b, c in vec.items())

        for i in range(n):
            for j in range(n):
                ij = self.multiply(i, j)
                for k in range(n):
                    if mul_vec(ij, k) != lmul_vec(i, self.multiply(j, k)):
                        return False
        return True

    def path_label(self, basis_idx: int) -> str:
        p = self.basis[basis_idx]
        if not p.arrows:
            return f"e{self.quiver.vertices[p.source]}"
        return "*".join(self.quiver.arrows[k].label for k in p.arrows)

    def dimension_matrix(self) -> np.ndarray:
        """Cartan-style matrix: entry (i, j) is dim e_i A e_j."""
        n = self.n_vertices
        return np.array([[len(self.block(i, j)) for j in range(n)] for i in range(n)], dtype=int)

    def opposite(self) -> "Algebra":
        if self._op is None:
            op = build_algebra(self.quiver.opposite(), [r.reversed() for r in self.relations],
                               self.bound, self.field, name=_op_name(self.name))
            op._op = self
            self._op = op
        return self._op

    # -- module constructors (implemented below) ----------------------
    def projective(self, v: int):
        if v not in self._projectives:
            self._projectives[v] = indecomposable_projective(self, v)
        return self._projectives[v]

    def injective(self, v: int):
        if v not in self._injectives:
            self._injectives[v] = indecomposable_injective(self, v)
        return self._injectives[v]

    def vertex(self, v) -> int:
        """Vertex index from an index or a label."""
        if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
            if 0 <= v < self.n_vertices:
                return int(v)
            raise AlgebraError(f"no vertex index {v}")
        if v in self.vertex_index:
            return self.vertex_index[v]
        raise AlgebraError(f"unknown vertex {v!r}")


def _op_name(name: str) -> str:
    if name.endswith("^op"):
        return name[:-3]
    return f"{name}^op" if name else ""


def build_algebra(quiver: Quiver, relations: Sequence[Relation], nilpotency_bound: int,
                  field: Field | None = None, name: str = "") -> Algebra:
    return Algebra(quiver, relations, nilpotency_bound, field or default_field(), name)


def opposite(a: Algebra) -> Algebra:
    return a.opposite()


def quiver_from(vertices, arrows) -> Quiver:
    """``quiver_from("12", [("a", "1", "2")])``"""
    return Quiver(tuple(str(v) for v in vertices),
                  tuple(Arrow(str(l), str(s), str(t)) for l, s, t in arrows))


# -- modules attached to an algebra ------------------------------------------

def indecomposable_projective(a: Algebra, v):
    """``e_v A``: reduced paths starting at ``v``, arrows acting by right composition."""
    from .repmod import Module
    v = a.vertex(v)
    F = a.field
    dims = [len(a.block(v, j)) for j in range(a.n_vertices)]
    actions = []
    for k in range(a.n_arrows):
        s, t = a.arrow_source[k], a.arrow_target[k]
        mat = F.zeros(dims[s], dims[t])
        for row, b in enumerate(a.block(v, s)):
            p = a.basis[b]
            mat[row] = a.block_vector(a.normal_form(p.source, p.arrows + (k,)), v, t)
        actions.append(mat)
    gen = (v, a.block_position(a.basis_index[(v, ())]))
    return Module(a, dims, actions, generators=[gen], name=f"P{a.quiver.vertices[v]}")


def indecomposable_injective(a: Algebra, v):
    """``D(A e_v)``, the injective envelope of the simple at ``v``."""
    from .repmod import Module
    v = a.vertex(v)
    F = a.field
    dims = [len(a.block(j, v)) for j in range(a.n_vertices)]
    actions = []
    for k in range(a.n_arrows):
        s, t = a.arrow_source[k], a.arrow_target[k]
        left = F.zeros(dims[t], dims[s])  # x in e_t A e_v  |->  arrow * x in e_s A e_v
        for row, b in enumerate(a.block(t, v)):
            p = a.basis[b]
            left[row] = a.block_vector(a.normal_form(s, (k,) + p.arrows), s, v)
        actions.append(left.T.copy())
    return Module(a, dims, actions, name=f"I{a.quiver.vertices[v]}")


def simple(a: Algebra, v):
    from .repmod import Module
    v = a.vertex(v)
    F = a.field
    dims = [1 if j == v else 0 for j in range(a.n_vertices)]
    actions = [F.zeros(dims[a.arrow_source[k]], dims[a.arrow_target[k]]) for k in range(a.n_arrows)]
    return Module(a, dims, actions, name=f"S{a.quiver.vertices[v]}")


def regular_module(a: Algebra):
    from .repmod import direct_sum
    return direct_sum([a.projective(v) for v in range(a.n_vertices)])


def dual_D(m):
    """Vector-space dual, a module over the opposite algebra."""
    from .repmod import Module
    op = m.algebra.opposite()
    return Module(op, m.dims, [x.T.copy() for x in m.actions],
                  name=f"D({m.name})" if m.name else "")


def left_multiplication(a: Algebra, k: int):
    """The morphism ``P_t -> P_s``, ``q |-> arrow_k * q``, for an arrow ``k: s -> t``."""
    from .repmod import Morphism
    F = a.field
    s, t = a.arrow_source[k], a.arrow_target[k]
    src, tgt = a.projective(t), a.projective(s)
    blocks = []
    for j in range(a.n_vertices):
        mat = F.zeros(src.dims[j], tgt.dims[j])
        for row, b in enumerate(a.block(t, j)):
            p = a.basis[b]
            mat[row] = a.block_vector(a.normal_form(s, (k,) + p.arrows), s, j)
        blocks.append(mat)
    return Morphism(src, tgt, blocks)
