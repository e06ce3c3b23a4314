"""Modules as quiver representations, and the arithmetic of their morphisms."""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np
from sympy import Poly, QQ, GF, symbols
from sympy.polys.matrices import DomainMatrix

from .exactlin import (Field, block_diag, complement_rows, is_zero, kernel_basis, left_kernel,
                       rank, row_basis, solve, solve_left)


class ModuleError(ValueError):
    pass


class FieldTooSmall(ArithmeticError):
    """A decomposition could not be certified over the current base field."""


class Module:
    """A right module over a bound quiver algebra, as a representation.

    ``dims[v]`` is the dimension at vertex ``v``; ``actions[k]`` is the
    ``dims[s] x dims[t]`` matrix of arrow ``k: s -> t`` (row vectors).
    ``tops`` is set on modules built as direct sums of indecomposable
    projectives and lists the top vertex of each summand.
    """

    def __init__(self, algebra, dims: Sequence[int], actions: Sequence[np.ndarray], *,
                 generators=None, tops=None, name: str = "", check: bool = True):
        self.algebra = algebra
        self.dims = tuple(int(d) for d in dims)
        F = algebra.field
        self.actions = tuple(F.array(a).reshape(self.dims[algebra.arrow_source[k]],
                                                self.dims[algebra.arrow_target[k]])
                             for k, a in enumerate(actions))
        self.name = name
        if generators is not None and tops is None:
            tops = [v for v, _ in generators]
        self.tops = list(tops) if tops is not None else None
        self._generators = list(generators) if generators is not None else None
        self._cache: dict = {}
        if len(self.dims) != algebra.n_vertices or len(self.actions) != algebra.n_arrows:
            raise ModuleError("dimension vector or action count does not match the quiver")
        if check:
            self._check_relations()

    # -- basics --------------------------------------------------------
    @property
    def field(self) -> Field:
        return self.algebra.field

    @property
    def dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return self.dim == 0

    def __repr__(self):
        label = self.name or "Module"
        return f"{label}{list(self.dims)}"

    def dim_vector(self) -> dict[str, int]:
        return {v: d for v, d in zip(self.algebra.quiver.vertices, self.dims)}

    def _check_relations(self):
        for terms in self.algebra._rels:
            s, t = terms[0][1].source, terms[0][1].target
            total = self.field.zeros(self.dims[s], self.dims[t])
            for c, p in terms:
                total = self.field.reduce(total + c * self.path_matrix(p.source, p.arrows))
            if not is_zero(total):
                raise ModuleError("a relation of the algebra does not vanish on the module")

    def path_matrix(self, source: int, arrows: tuple[int, ...]) -> np.ndarray:
        """The action of a path on ``M_source``."""
        F = self.field
        if not arrows:
            return F.eye(self.dims[source])
        return F.matmul(*[self.actions[k] for k in arrows])

    def basis_path_matrix(self, b: int) -> np.ndarray:
        key = ("path", b)
        if key not in self._cache:
            p = self.algebra.basis[b]
            self._cache[key] = self.path_matrix(p.source, p.arrows)
        return self._cache[key]

    @property
    def generators(self) -> list[tuple[int, int]]:
        """``(vertex, row)`` of each summand's top basis vector (projective sums only)."""
        if self._generators is None:
            raise ModuleError("module is not presented as a sum of indecomposable projectives")
        return self._generators


class Morphism:
    """A module homomorphism, one ``dim source_v x dim target_v`` block per vertex."""

    def __init__(self, source: Module, target: Module, blocks: Sequence[np.ndarray], check: bool = False):
        self.source = source
        self.target = target
        F = source.field
        self.blocks = tuple(F.array(b).reshape(source.dims[v], target.dims[v]) for v, b in enumerate(blocks))
        if check and not self.commutes():
            raise ModuleError("blocks do not commute with the arrow actions")

    @property
    def field(self) -> Field:
        return self.source.field

    def commutes(self) -> bool:
        F = self.field
        a = self.source.algebra
        for k in range(a.n_arrows):
            s, t = a.arrow_source[k], a.arrow_target[k]
            lhs = F.matmul(self.source.actions[k], self.blocks[t])
            rhs = F.matmul(self.blocks[s], self.target.actions[k])
            if not is_zero(F.reduce(lhs - rhs)):
                return False
        return True

    def then(self, other: "Morphism") -> "Morphism":
        """Composite ``other o self`` (first self, then other)."""
        F = self.field
        return Morphism(self.source, other.target,
                        [F.matmul(x, y) for x, y in zip(self.blocks, other.blocks)])

    def is_zero(self) -> bool:
        return all(is_zero(b) for b in self.blocks)

    def rank(self) -> int:
        return sum(rank(b, self.field) for b in self.blocks)

    def is_injective(self) -> bool:
        return self.rank() == self.source.dim

    def is_surjective(self) -> bool:
        return self.rank() == self.target.dim

    def is_iso(self) -> bool:
        return self.source.dims == self.target.dims and self.is_injective()

    def flat(self) -> np.ndarray:
        F = self.field
        parts = [b.reshape(-1) for b in self.blocks]
        return np.concatenate(parts) if parts else F.zeros(0, 0).reshape(-1)

    def __add__(self, other):
        F = self.field
        return Morphism(self.source, self.target, [F.reduce(x + y) for x, y in zip(self.blocks, other.blocks)])

    def scale(self, c):
        F = self.field
        return Morphism(self.source, self.target, [F.reduce(b * c) for b in self.blocks])

    def __sub__(self, other):
        return self + other.scale(self.field.element(-1))


def identity(m: Module) -> Morphism:
    return Morphism(m, m, [m.field.eye(d) for d in m.dims])


def zero_morphism(m: Module, n: Module) -> Morphism:
    return Morphism(m, n, [m.field.zeros(a, b) for a, b in zip(m.dims, n.dims)])


def combine(basis: Sequence[Morphism], coeffs) -> Morphism:
    """Linear combination of morphisms sharing source and target."""
    out = None
    for f, c in zip(basis, coeffs):
        if c == 0:
            continue
        term = f.scale(c)
        out = term if out is None else out + term
    return out if out is not None else zero_morphism(basis[0].source, basis[0].target)


def from_flat(m: Module, n: Module, vec: np.ndarray) -> Morphism:
    blocks, pos = [], 0
    for a, b in zip(m.dims, n.dims):
        blocks.append(vec[pos:pos + a * b].reshape(a, b))
        pos += a * b
    return Morphism(m, n, blocks)


def _same_algebra(m: Module, n: Module):
    if not (m.algebra is n.algebra or m.algebra == n.algebra):
        raise ModuleError("modules over different algebras")


def hom_space(m: Module, n: Module) -> list[Morphism]:
    """A basis of ``Hom(m, n)``."""
    _same_algebra(m, n)
    memo = m._cache.setdefault("hom", {})
    hit = memo.get(id(n))
    if hit is not None and hit[0] is n:
        return list(hit[1])
    out = _hom_space(m, n)
    memo[id(n)] = (n, out)
    return list(out)


def _kron(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    # np.kron is dominated by call overhead at these sizes
    r1, c1 = x.shape
    r2, c2 = y.shape
    return (x[:, None, :, None] * y[None, :, None, :]).reshape(r1 * r2, c1 * c2)


def _hom_equations(m: Module, n: Module) -> tuple[np.ndarray | None, int]:
    """Linear system whose kernel is ``Hom(m, n)`` in flattened block coordinates."""
    F = m.field
    a = m.algebra
    sizes = [x * y for x, y in zip(m.dims, n.dims)]
    offs = np.cumsum([0] + sizes)
    total = int(offs[-1])
    eqs = []
    for k in range(a.n_arrows):
        s, t = a.arrow_source[k], a.arrow_target[k]
        rows = m.dims[s] * n.dims[t]
        if rows == 0 or total == 0:
            continue
        eq = F.zeros(rows, total)
        if sizes[t]:
            eq[:, offs[t]:offs[t + 1]] = _kron(m.actions[k], F.eye(n.dims[t]))
        if sizes[s]:
            eq[:, offs[s]:offs[s + 1]] -= _kron(F.eye(m.dims[s]), n.actions[k].T)
        eqs.append(F.reduce(eq))
    return (np.concatenate(eqs) if eqs else None), total


def _hom_space(m: Module, n: Module) -> list[Morphism]:
    F = m.field
    eqs, total = _hom_equations(m, n)
    if total == 0:
        return []
    sol = kernel_basis(eqs, F) if eqs is not None else F.eye(total)
    return [from_flat(m, n, row) for row in sol]


def hom_dim(m: Module, n: Module) -> int:
    _same_algebra(m, n)
    hit = m._cache.get("hom", {}).get(id(n))
    if hit is not None and hit[0] is n:
        return len(hit[1])
    memo = m._cache.setdefault("homdim", {})
    hit = memo.get(id(n))
    if hit is not None and hit[0] is n:
        return hit[1]
    eqs, total = _hom_equations(m, n)
    d = total - (rank(eqs, m.field) if eqs is not None else 0)
    memo[id(n)] = (n, d)
    return d


# -- sub and quotient modules ------------------------------------------------

def _as_rows(r, d: int, F: Field) -> np.ndarray:
    r = F.array(r)
    if d == 0 or r.size == 0:
        return F.zeros(0, d)
    return r.reshape(-1, d)


def submodule(m: Module, rows: Sequence[np.ndarray], name: str = "") -> tuple[Module, Morphism]:
    """Submodule spanned per vertex by independent ``rows[v]`` (closed under the action)."""
    F = m.field
    a = m.algebra
    rows = [_as_rows(r, m.dims[v], F) for v, r in enumerate(rows)]
    actions = []
    for k in range(a.n_arrows):
        s, t = a.arrow_source[k], a.arrow_target[k]
        image = F.matmul(rows[s], m.actions[k])
        actions.append(solve_left(rows[t], image, F) if rows[s].shape[0] else F.zeros(0, rows[t].shape[0]))
    sub = Module(a, [r.shape[0] for r in rows], actions, name=name, check=False)
    return sub, Morphism(sub, m, rows)


def quotient(m: Module, rows: Sequence[np.ndarray], name: str = "") -> tuple[Module, Morphism]:
    """``m`` modulo the submodule spanned per vertex by ``rows[v]``."""
    F = m.field
    a = m.algebra
    proj = []
    for v, r in enumerate(rows):
        r = _as_rows(r, m.dims[v], F)
        proj.append(kernel_basis(r, F).T if r.shape[0] else F.eye(m.dims[v]))
    actions = []
    for k in range(a.n_arrows):
        s, t = a.arrow_source[k], a.arrow_target[k]
        rhs = F.matmul(m.actions[k], proj[t])
        actions.append(solve(proj[s], rhs, F) if proj[s].shape[0] else F.zeros(0, proj[t].shape[1]))
    q = Module(a, [p.shape[1] for p in proj], actions, name=name, check=False)
    return q, Morphism(m, q, proj)


def _null_rows(b: np.ndarray, F: Field) -> np.ndarray:
    if b.shape[0] == 0:
        return F.zeros(0, 0)
    return left_kernel(b, F)


def kernel(f: Morphism) -> tuple[Module, Morphism]:
    F = f.field
    return submodule(f.source, [_null_rows(b, F) for b in f.blocks])


def image(f: Morphism) -> tuple[Module, Morphism]:
    F = f.field
    return submodule(f.target, [row_basis(b, F) for b in f.blocks])


def cokernel(f: Morphism) -> tuple[Module, Morphism]:
    F = f.field
    return quotient(f.target, [row_basis(b, F) for b in f.blocks])


def radical_rows(m: Module) -> list[np.ndarray]:
    F = m.field
    a = m.algebra
    out = []
    for v in range(a.n_vertices):
        imgs = [m.actions[k] for k in range(a.n_arrows) if a.arrow_target[k] == v and m.actions[k].shape[0]]
        out.append(row_basis(np.concatenate(imgs), F) if imgs else F.zeros(0, m.dims[v]))
    return out


def radical(m: Module) -> tuple[Module, Morphism]:
    return submodule(m, radical_rows(m))


def top(m: Module) -> Module:
    return quotient(m, radical_rows(m))[0]


def socle_rows(m: Module) -> list[np.ndarray]:
    F = m.field
    a = m.algebra
    out = []
    for v in range(a.n_vertices):
        outs = [m.actions[k] for k in range(a.n_arrows) if a.arrow_source[k] == v]
        if outs and m.dims[v]:
            out.append(left_kernel(np.concatenate(outs, axis=1), F))
        else:
            out.append(F.eye(m.dims[v]))
    return out


def socle(m: Module) -> Module:
    return submodule(m, socle_rows(m))[0]


def top_vector(m: Module) -> tuple[int, ...]:
    return tuple(d - r.shape[0] for d, r in zip(m.dims, radical_rows(m)))


def socle_vector(m: Module) -> tuple[int, ...]:
    return tuple(r.shape[0] for r in socle_rows(m))


def direct_sum(ms: Sequence[Module], name: str = "") -> Module:
    ms = list(ms)
    if not ms:
        raise ModuleError("direct sum of an empty family needs an algebra; use zero_module")
    a = ms[0].algebra
    for m in ms[1:]:
        _same_algebra(ms[0], m)
    F = a.field
    if len(ms) == 1 and not name:
        return ms[0]
    dims = [sum(m.dims[v] for m in ms) for v in range(a.n_vertices)]
    actions = [block_diag([m.actions[k] for m in ms], F) for k in range(a.n_arrows)]
    gens = None
    if all(m._generators is not None for m in ms):
        gens = []
        offs = [0] * a.n_vertices
        for m in ms:
            gens.extend((v, offs[v] + r) for v, r in m.generators)
            offs = [o + d for o, d in zip(offs, m.dims)]
    return Module(a, dims, actions, generators=gens, name=name, check=False)


def zero_module(algebra) -> Module:
    F = algebra.field
    return Module(algebra, [0] * algebra.n_vertices,
                  [F.zeros(0, 0) for _ in range(algebra.n_arrows)], generators=[], check=False)


def direct_sum_maps(fs: Sequence[Morphism], source: Module, target: Module) -> Morphism:
    """Block-diagonal morphism between direct sums of the sources and targets of ``fs``."""
    F = source.field
    return Morphism(source, target, [block_diag([f.blocks[v] for f in fs], F)
                                     for v in range(source.algebra.n_vertices)])


def inclusions(summands: Sequence[Module], total: Module) -> list[Morphism]:
    F = total.field
    out = []
    offs = [0] * total.algebra.n_vertices
    for s in summands:
        blocks = []
        for v in range(total.algebra.n_vertices):
            b = F.zeros(s.dims[v], total.dims[v])
            b[:, offs[v]:offs[v] + s.dims[v]] = F.eye(s.dims[v])
            blocks.append(b)
        out.append(Morphism(s, total, blocks))
        offs = [o + d for o, d in zip(offs, s.dims)]
    return out


def projections(total: Module, summands: Sequence[Module]) -> list[Morphism]:
    return [Morphism(total, i.source, [b.T.copy() for b in i.blocks]) for i in inclusions(summands, total)]


def from_generators(p: Module, n: Module, images: Sequence[np.ndarray]) -> Morphism:
    """The morphism from a projective sum ``p`` sending its t-th generator to ``images[t]``."""
    F = p.field
    a = p.algebra
    blocks = [F.zeros(p.dims[v], n.dims[v]) for v in range(a.n_vertices)]
    offs = [0] * a.n_vertices
    for t, v in enumerate(p.tops):
        g = F.array(images[t]).reshape(1, n.dims[v])
        for j in range(a.n_vertices):
            for pos, b in enumerate(a.block(v, j)):
                blocks[j][offs[j] + pos] = F.matmul(g, n.basis_path_matrix(b))[0]
        offs = [o + len(a.block(v, j)) for j, o in enumerate(offs)]
    return Morphism(p, n, blocks)


def generator_images(f: Morphism) -> list[np.ndarray]:
    return [f.blocks[v][r] for v, r in f.source.generators]


def projective_sum(algebra, tops: Sequence[int]) -> Module:
    if not tops:
        return zero_module(algebra)
    mods = [algebra.projective(v) for v in tops]
    if len(mods) == 1:
        return mods[0]
    return direct_sum(mods, name="+".join(m.name for m in mods))


def projective_cover(m: Module) -> tuple[Module, Morphism]:
    """Minimal epimorphism ``P -> m`` from a sum of indecomposable projectives."""
    if m.is_zero():
        raise ModuleError("projective cover of the zero module")
    F = m.field
    rad = radical_rows(m)
    tops, images = [], []
    for v in range(m.algebra.n_vertices):
        for g in complement_rows(rad[v], m.dims[v], F):
            tops.append(v)
            images.append(g)
    p = projective_sum(m.algebra, tops)
    return p, from_generators(p, m, images)


def is_projective(m: Module) -> bool:
    a = m.algebra
    return m.dim == sum(t * a.projective(v).dim for v, t in enumerate(top_vector(m)))


def is_injective(m: Module) -> bool:
    a = m.algebra
    return m.dim == sum(s * a.injective(v).dim for v, s in enumerate(socle_vector(m)))


def composition_factors(m: Module) -> dict[str, int]:
    """Multiplicity of each simple (by vertex label) as a composition factor."""
    return {v: d for v, d in zip(m.algebra.quiver.vertices, m.dims) if d}


# -- endomorphisms, decomposition, isomorphism --------------------------------

_T = symbols("t")


def _poly_domain(F: Field):
    return QQ if F.is_rational else GF(F.characteristic)


def char_poly_factors(f: Morphism) -> list[list]:
    """Distinct monic irreducible factors of the characteristic polynomial of an endomorphism,
    as coefficient lists (leading coefficient first)."""
    F = f.field
    dom = _poly_domain(F)
    factors: dict[tuple, list] = {}
    for b in f.blocks:
        if b.shape[0] == 0:
            continue
        rows = [[dom(int(x)) if not F.is_rational else dom(x.numerator, x.denominator) for x in row] for row in b]
        cp = DomainMatrix(rows, b.shape, dom).charpoly()
        coeffs = [int(c) if not F.is_rational else Fraction(int(c.numerator), int(c.denominator)) for c in cp]
        poly = Poly(coeffs, _T, modulus=F.characteristic) if not F.is_rational else Poly(coeffs, _T, domain=QQ)
        for fac, _ in poly.factor_list()[1]:
            c = [F.element(x) for x in fac.all_coeffs()]
            lead = F.inv(c[0])
            c = [F.element(x * lead) for x in c]
            factors[tuple(c)] = c
    return list(factors.values())


def eigenvalues(f: Morphism) -> list[int] | None:
    """Eigenvalues in a prime field, by evaluating the characteristic polynomials at every element.

    Returns None over the rationals or when the field is too large to scan.
    """
    F = f.field
    p = F.characteristic
    if F.is_rational or p > 100_000:
        return None
    dom = GF(p)
    xs = np.arange(p, dtype=np.int64)
    roots: set[int] = set()
    for b in f.blocks:
        if b.shape[0] == 0:
            continue
        cp = DomainMatrix([[dom(int(x)) for x in row] for row in b], b.shape, dom).charpoly()
        vals = np.zeros(p, dtype=np.int64)
        for c in cp:
            vals = (vals * xs + int(c)) % p
        roots.update(np.nonzero(vals == 0)[0].tolist())
    return sorted(roots)


def _poly_eval(coeffs: list, f: Morphism) -> Morphism:
    F = f.field
    blocks = []
    for b in f.blocks:
        d = b.shape[0]
        acc = F.zeros(d, d)
        for c in coeffs:
            acc = F.reduce(F.matmul(acc, b) + c * F.eye(d))
        blocks.append(acc)
    return Morphism(f.source, f.target, blocks)


def _power(f: Morphism, e: int) -> Morphism:
    out = identity(f.source)
    base = f
    while e:
        if e & 1:
            out = out.then(base)
        base = base.then(base)
        e >>= 1
    return out


def scalar_part(f: Morphism):
    """``lam`` with ``f - lam`` nilpotent, or None if there is no such scalar."""
    F = f.field
    lam = None
    for b in f.blocks:
        d = b.shape[0]
        if d == 0:
            continue
        if not F.is_rational and d % F.characteristic == 0:
            facs = char_poly_factors(f)
            return F.element(-facs[0][1]) if len(facs) == 1 and len(facs[0]) == 2 else None
        x = F.element(sum(b[i, i] for i in range(d))) * F.inv(F.element(d))
        x = F.element(x)
        if lam is None:
            lam = x
        elif x != lam:
            return None
    if lam is None:
        return None
    for b in f.blocks:
        d = b.shape[0]
        if d == 0:
            continue
        n = F.reduce(b - lam * F.eye(d))
        e = 1
        while e < d and np.any(n != 0):
            n = F.matmul(n, n)
            e *= 2
        if np.any(n != 0):
            return None
    return lam


def _span_rows(morphs: Iterable[Morphism], F: Field) -> np.ndarray:
    vecs = [x.flat() for x in morphs]
    if not vecs:
        return None
    return row_basis(np.stack(vecs), F)


def local_certificate(m: Module, end: Sequence[Morphism] | None = None) -> bool:
    """True iff ``End(m)`` is local with residue field the base field.

    Checks that the non-scalar parts ``b - lambda(b)`` of a basis of End
    span a nilpotent subspace of codimension one.
    """
    if m.is_zero():
        return False
    F = m.field
    end = hom_space(m, m) if end is None else list(end)
    idm = identity(m)
    nil = []
    for b in end:
        lam = scalar_part(b)
        if lam is None:
            return False
        nil.append(b - idm.scale(lam))
    if not nil:
        return False
    span = _span_rows(nil, F)
    if span.shape[0] != len(end) - 1:
        return False
    if span.shape[0] == 0:
        return True
    gens = [from_flat(m, m, row) for row in span]
    current = gens
    for _ in range(m.dim + 1):
        prods = [x.then(y) for x in current for y in gens]
        rows = _span_rows(prods, F)
        if rows is None or rows.shape[0] == 0:
            return True
        current = [from_flat(m, m, row) for row in rows]
    return False


def _fitting_split(m: Module, psi: Morphism) -> tuple[Module, Module] | None:
    F = m.field
    big = _power(psi, max(m.dims) if m.dims else 1)
    r = big.rank()
    if r == 0 or r == m.dim:
        return None
    ker = submodule(m, [_null_rows(b, F) for b in big.blocks])[0]
    img = submodule(m, [row_basis(b, F) for b in big.blocks])[0]
    return ker, img


def _split_indecomposables(m: Module, rng: np.random.Generator, tries: int = 40) -> list[Module]:
    if m.is_zero():
        return []
    end = hom_space(m, m)
    if len(end) == 1 or local_certificate(m, end):
        m._cache["indecomposable"] = True
        return [m]
    F = m.field
    for _ in range(tries):
        coeffs = F.random(rng, 1, len(end))[0]
        phi = combine(end, coeffs)
        roots = eigenvalues(phi)
        if roots is not None and len(roots) >= 2:
            parts = _fitting_split(m, phi - identity(m).scale(roots[0]))
            if parts is not None:
                return _split_indecomposables(parts[0], rng) + _split_indecomposables(parts[1], rng)
        facs = char_poly_factors(phi)
        if len(facs) < 2:
            continue
        parts = _fitting_split(m, _poly_eval(facs[0], phi))
        if parts is None:
            continue
        return _split_indecomposables(parts[0], rng) + _split_indecomposables(parts[1], rng)
    raise FieldTooSmall(f"could not split or certify {m!r} over {F}")


def is_indecomposable(m: Module) -> bool:
    if "indecomposable" not in m._cache:
        if m.is_zero():
            m._cache["indecomposable"] = False
        elif hom_dim(m, m) == 1 or local_certificate(m):
            m._cache["indecomposable"] = True
        else:
            m._cache["indecomposable"] = sum(k for _, k in decompose(m)) == 1
    return m._cache["indecomposable"]


def _iso_indecomposable(x: Module, y: Module) -> bool:
    if x.dims != y.dims:
        return False
    # non-isomorphisms between isomorphic indecomposables form a proper subspace,
    # so some basis element is an isomorphism whenever one exists
    return any(f.is_iso() for f in hom_space(x, y))


def decompose(m: Module, seed: int = 0) -> list[tuple[Module, int]]:
    """Indecomposable summands with multiplicities; every summand has a local endomorphism ring."""
    if "decomposition" in m._cache:
        return m._cache["decomposition"]
    rng = np.random.default_rng(seed)
    pieces = _split_indecomposables(m, rng)
    groups: list[list] = []
    for x in pieces:
        for g in groups:
            if _iso_indecomposable(g[0], x):
                g[1] += 1
                break
        else:
            groups.append([x, 1])
    out = [(x, k) for x, k in groups]
    m._cache["decomposition"] = out
    return out


def indecomposable_summands(m: Module, seed: int = 0) -> list[Module]:
    """Summands with multiplicity, flattened."""
    return [x for x, k in decompose(m, seed) for _ in range(k)]


def is_isomorphic(m: Module, n: Module, seed: int = 0) -> bool:
    """Whether ``m`` and ``n`` are isomorphic.

    A few seeded random elements of ``Hom(m, n)`` are tried first; the
    verdict otherwise comes from comparing decompositions.
    """
    _same_algebra(m, n)
    if m.dims != n.dims:
        return False
    if m.is_zero():
        return True
    hs = hom_space(m, n)
    if not hs:
        return False
    rng = np.random.default_rng(seed)
    F = m.field
    for _ in range(4):
        if combine(hs, F.random(rng, 1, len(hs))[0]).is_iso():
            return True
    dm, dn = decompose(m, seed), decompose(n, seed)
    if sorted(k for _, k in dm) != sorted(k for _, k in dn):
        return False
    used = set()
    for x, k in dm:
        for j, (y, l) in enumerate(dn):
            if j not in used and k == l and _iso_indecomposable(x, y):
                used.add(j)
                break
        else:
            return False
    return True


def module_key(m: Module) -> tuple:
    """Isomorphism invariant used to bucket modules: dimension vector and
    hom-dimensions into each indecomposable projective and out of each indecomposable injective."""
    if "key" not in m._cache:
        a = m.algebra
        into_proj = tuple(hom_dim(m, a.projective(v)) for v in range(a.n_vertices))
        from_inj = tuple(hom_dim(a.injective(v), m) for v in range(a.n_vertices))
        m._cache["key"] = (m.dim, m.dims, into_proj, from_inj)
    return m._cache["key"]


class ModuleRegistry:
    """Isomorphism classes of indecomposables seen so far over one algebra."""

    def __init__(self, algebra):
        self.algebra = algebra
        self.modules: list[Module] = []
        self._buckets: dict[tuple, list[int]] = {}

    def __len__(self):
        return len(self.modules)

    def __getitem__(self, i) -> Module:
        return self.modules[i]

    def lookup(self, m: Module) -> int | None:
        for i in self._buckets.get(module_key(m), []):
            if _iso_indecomposable(self.modules[i], m):
                return i
        return None

    def add(self, m: Module) -> tuple[int, bool]:
        """Index of ``m``'s class, registering it if new; second item says whether it was new."""
        i = self.lookup(m)
        if i is not None:
            return i, False
        self.modules.append(m)
        idx = len(self.modules) - 1
        self._buckets.setdefault(module_key(m), []).append(idx)
        return idx, True


def random_module(algebra, rng: np.random.Generator, max_tops: int = 2, max_relations: int = 2) -> Module:
    """Cokernel of a random map between small sums of indecomposable projectives (never zero)."""
    n = algebra.n_vertices
    F = algebra.field
    while True:
        tops0 = sorted(int(v) for v in rng.integers(0, n, size=int(rng.integers(1, max_tops + 1))))
        tops1 = sorted(int(v) for v in rng.integers(0, n, size=int(rng.integers(0, max_relations + 1))))
        p0 = projective_sum(algebra, tops0)
        p1 = projective_sum(algebra, tops1)
        images = [F.random(rng, 1, p0.dims[v])[0] for v in tops1]
        m = cokernel(from_generators(p1, p0, images))[0]
        if not m.is_zero():
            return m
