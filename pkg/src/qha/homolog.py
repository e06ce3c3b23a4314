"""Projective resolutions, Ext, the duality (-)* = Hom(-, A), transpose, AR translate and grade."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .exactlin import Field, row_basis, solve_left
from .qalg import Algebra, dual_D, left_multiplication, regular_module
from .repmod import (Module, ModuleError, Morphism, cokernel, hom_space, kernel, projective_cover, quotient, zero_module, identity)


class ResolutionTooLong(ArithmeticError):
    """The minimal resolution did not terminate within the allowed length."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class TorsionlessViolation(AssertionError):
    """A structural guarantee for Auslander algebras failed; indicates a bug."""


@dataclass
class Resolution:
    """``... -> P_1 -> P_0 -> target -> 0``.

    ``maps[0]`` is the cover ``P_0 -> target`` and ``maps[k]`` the
    differential ``P_k -> P_{k-1}``.
    """

    target: Module
    terms: list[Module] = field(default_factory=list)
    maps: list[Morphism] = field(default_factory=list)
    complete: bool = False

    @property
    def length(self) -> int:
        """Index of the last nonzero term (``-1`` for the zero module)."""
        return len(self.terms) - 1

    def tops(self, k: int) -> list[int]:
        return sorted(self.terms[k].tops) if k < len(self.terms) else []

    def is_exact(self) -> bool:
        # dim ker(maps[k]) == rank(maps[k+1]) at every term
        for k, f in enumerate(self.maps):
            ker = f.source.dim - f.rank()
            nxt = self.maps[k + 1].rank() if k + 1 < len(self.maps) else 0
            if ker != nxt:
                return False
        return (not self.maps) or self.maps[0].is_surjective()

    def is_minimal(self) -> bool:
        from .repmod import radical_rows
        from .exactlin import in_row_space
        F = self.target.field
        for f in self.maps[1:]:
            rad = radical_rows(f.target)
            for v, b in enumerate(f.blocks):
                if b.shape[0] and not in_row_space(b, rad[v], F):
                    return False
        return True


def _resolve(m: Module, upto: int) -> Resolution:
    """Minimal resolution computed through term ``upto`` (or to termination)."""
    res = Resolution(m)
    if m.is_zero():
        res.complete = True
        return res
    p0, eps = projective_cover(m)
    res.terms.append(p0)
    res.maps.append(eps)
    k_mod, inc = kernel(eps)
    while not k_mod.is_zero():
        if len(res.terms) > upto:
            return res
        p, cov = projective_cover(k_mod)
        res.terms.append(p)
        res.maps.append(cov.then(inc))
        k_mod, inc2 = kernel(cov)
        inc = inc2
    res.complete = True
    return res


def min_proj_resolution(m: Module, max_len: int) -> Resolution:
    if max_len < 0:
        raise ValueError("max_len must be non-negative")
    key = ("resolution", max_len)
    if key in m._cache:
        return m._cache[key]
    res = _resolve(m, max_len)
    if not res.complete:
        raise ResolutionTooLong(f"resolution of {m!r} longer than {max_len}", partial=res)
    m._cache[key] = res
    return res


def pd_cap(a: Algebra) -> int:
    return a.dim + 2


def proj_dim(m: Module) -> int:
    """Projective dimension; ``-1`` for the zero module."""
    if "pd" not in m._cache:
        res = _resolve(m, pd_cap(m.algebra))
        if not res.complete:
            raise ResolutionTooLong(f"projective dimension of {m!r} exceeds cap {pd_cap(m.algebra)}", res)
        m._cache["pd"] = res.length
        m._cache[("resolution", pd_cap(m.algebra))] = res
    return m._cache["pd"]


def inj_dim(m: Module) -> int:
    if "id" not in m._cache:
        m._cache["id"] = proj_dim(dual_D(m))
    return m._cache["id"]


def gl_dim(a: Algebra) -> int:
    from .qalg import simple
    return max(proj_dim(simple(a, v)) for v in range(a.n_vertices))


def _full_resolution(m: Module, upto: int) -> Resolution:
    key = ("partial", upto)
    if key not in m._cache:
        m._cache[key] = _resolve(m, upto)
    return m._cache[key]


# -- Ext via the Hom complex --------------------------------------------------

def hom_from_projective_matrix(d: Morphism, n: Module) -> np.ndarray:
    """Matrix of ``Hom(d, n): Hom(P, n) -> Hom(Q, n)`` for ``d: Q -> P`` between projective sums,
    in generator coordinates (``Hom(P, n)`` identified with the sum of ``n_v`` over the tops of ``P``)."""
    F = n.field
    a = n.algebra
    P, Q = d.target, d.source
    row_off = np.cumsum([0] + [n.dims[v] for v in P.tops])
    col_off = np.cumsum([0] + [n.dims[w] for w in Q.tops])
    mat = F.zeros(int(row_off[-1]), int(col_off[-1]))
    # per-vertex offset of each P-summand
    summand_off = []
    offs = [0] * a.n_vertices
    for v in P.tops:
        summand_off.append(list(offs))
        offs = [o + len(a.block(v, j)) for j, o in enumerate(offs)]
    for t2, (w, r) in enumerate(Q.generators):
        y = d.blocks[w][r]
        for t, v in enumerate(P.tops):
            acc = F.zeros(n.dims[v], n.dims[w])
            for pos, b in enumerate(a.block(v, w)):
                c = y[summand_off[t][w] + pos]
                if c != 0:
                    acc = F.reduce(acc + c * n.basis_path_matrix(b))
            mat[row_off[t]:row_off[t + 1], col_off[t2]:col_off[t2 + 1]] = acc
    return mat


@dataclass
class ExtData:
    degree: int
    dim: int
    cochain_dim: int
    cocycles: np.ndarray
    coboundaries: np.ndarray


def ext_data(i: int, m: Module, n: Module) -> ExtData:
    if i < 0:
        raise ValueError("negative Ext degree")
    F = m.field
    res = _full_resolution(m, i + 1)
    if i >= len(res.terms):
        return ExtData(i, 0, 0, F.zeros(0, 0), F.zeros(0, 0))
    dim_c = sum(n.dims[v] for v in res.terms[i].tops)
    if i + 1 < len(res.terms):
        out = hom_from_projective_matrix(res.maps[i + 1], n)
        cocycles = _left_null(out, F)
    else:
        cocycles = F.eye(dim_c)
    if i >= 1:
        inc = hom_from_projective_matrix(res.maps[i], n)
        cob = row_basis(inc, F)
    else:
        cob = F.zeros(0, dim_c)
    return ExtData(i, cocycles.shape[0] - cob.shape[0], dim_c, cocycles, cob)


def _left_null(mat: np.ndarray, F: Field) -> np.ndarray:
    from .exactlin import left_kernel
    if mat.shape[0] == 0:
        return mat[:0]
    if mat.shape[1] == 0:
        return F.eye(mat.shape[0])
    return left_kernel(mat, F)


def ext(i: int, m: Module, n: Module) -> int:
    """``dim Ext^i(m, n)``."""
    if i == 0:
        return len(hom_space(m, n))
    return ext_data(i, m, n).dim


# -- the functor (-)* = Hom(-, A) ---------------------------------------------

def _star_bases(m: Module):
    if "star_bases" not in m._cache:
        a = m.algebra
        bases = []
        for v in range(a.n_vertices):
            hs = hom_space(m, a.projective(v))
            mat = np.stack([h.flat() for h in hs]) if hs else None
            bases.append((hs, mat))
        m._cache["star_bases"] = bases
    return m._cache["star_bases"]


def _coords(vecs: list[np.ndarray], basis_mat, F: Field, width: int) -> np.ndarray:
    if basis_mat is None:
        return F.zeros(len(vecs), 0)
    if not vecs:
        return F.zeros(0, basis_mat.shape[0])
    return solve_left(basis_mat, np.stack(vecs), F)


def star(m: Module) -> Module:
    """``Hom(m, A)`` as a right module over the opposite algebra."""
    if "star" in m._cache:
        return m._cache["star"]
    a = m.algebra
    op = a.opposite()
    F = m.field
    bases = _star_bases(m)
    dims = [len(hs) for hs, _ in bases]
    actions = []
    for k in range(a.n_arrows):
        s, t = a.arrow_source[k], a.arrow_target[k]
        # op arrow k: t -> s, acting by left multiplication with arrow k
        lk = left_multiplication(a, k)
        imgs = [h.then(lk).flat() for h in bases[t][0]]
        actions.append(_coords(imgs, bases[s][1], F, dims[s]) if dims[t] else F.zeros(0, dims[s]))
    out = Module(op, dims, actions, name=f"{m.name}*" if m.name else "", check=False)
    m._cache["star"] = out
    return out


def star_morphism(g: Morphism) -> Morphism:
    """``g*: N* -> M*`` for ``g: M -> N``."""
    F = g.field
    a = g.source.algebra
    src, tgt = star(g.target), star(g.source)
    nb, mb = _star_bases(g.target), _star_bases(g.source)
    blocks = []
    for v in range(a.n_vertices):
        imgs = [g.then(h).flat() for h in nb[v][0]]
        blocks.append(_coords(imgs, mb[v][1], F, tgt.dims[v]) if imgs else F.zeros(0, tgt.dims[v]))
    return Morphism(src, tgt, blocks)


def _op_path_conversion(a: Algebra, w: int, v: int) -> np.ndarray:
    """Rows: basis paths ``w -> v`` of ``a``; columns: op-basis paths ``v -> w`` (reversed)."""
    op = a.opposite()
    F = a.field
    blk = a.block(w, v)
    out = F.zeros(len(blk), len(op.block(v, w)))
    for row, b in enumerate(blk):
        p = a.basis[b]
        out[row] = op.block_vector(op.normal_form(v, tuple(reversed(p.arrows))), v, w)
    return out


@dataclass
class DoubleDualData:
    module: Module
    star: Module
    double_star: Module
    phi: Morphism
    kernel: Module
    cokernel: Module


def evaluation_map(m: Module) -> Morphism:
    """The canonical map ``m -> m**``."""
    if "phi" in m._cache:
        return m._cache["phi"]
    a = m.algebra
    F = m.field
    ms = star(m)
    mss = star(ms)
    sb = _star_bases(m)
    ssb = _star_bases(ms)
    conv = {(w, v): _op_path_conversion(a, w, v) for w in range(a.n_vertices) for v in range(a.n_vertices)}
    blocks = []
    for v in range(a.n_vertices):
        target_proj = a.opposite().projective(v)
        rows = []
        for x in F.eye(m.dims[v]):
            psi_blocks = []
            for w in range(a.n_vertices):
                hs = sb[w][0]
                if hs:
                    vals = np.stack([F.matmul(x.reshape(1, -1), h.blocks[v])[0] for h in hs])
                    psi_blocks.append(F.matmul(vals, conv[(w, v)]))
                else:
                    psi_blocks.append(F.zeros(0, target_proj.dims[w]))
            psi = Morphism(ms, target_proj, psi_blocks)
            rows.append(psi.flat())
        blocks.append(_coords(rows, ssb[v][1], F, mss.dims[v]) if rows else F.zeros(0, mss.dims[v]))
    phi = Morphism(m, mss, blocks)
    if not phi.commutes():
        raise TorsionlessViolation("evaluation map is not a module homomorphism")
    m._cache["phi"] = phi
    return phi


def double_dual_sequence(m: Module, check: bool = True) -> DoubleDualData:
    """``0 -> K -> m -> m** -> N -> 0`` from the evaluation map."""
    phi = evaluation_map(m)
    k, _ = kernel(phi)
    n, _ = cokernel(phi)
    if check and not k.is_zero() and proj_dim(m) <= 1:
        from .auslander import is_auslander_algebra
        if is_auslander_algebra(m.algebra):
            raise TorsionlessViolation(f"pd({m!r}) <= 1 over an Auslander algebra but m -> m** is not injective")
    return DoubleDualData(m, star(m), phi.target, phi, k, n)


def is_torsionless(m: Module) -> bool:
    return evaluation_map(m).is_injective()


# -- transpose and AR translate ---------------------------------------------

def minimal_presentation(m: Module) -> tuple[Module, Module, Morphism]:
    """``P_1 -> P_0`` with cokernel ``m``; ``P_1`` is zero when ``m`` is projective."""
    res = _full_resolution(m, 1)
    a = m.algebra
    if not res.terms:
        z = zero_module(a)
        return z, z, Morphism(z, z, [])
    p0 = res.terms[0]
    if len(res.terms) == 1:
        z = zero_module(a)
        return z, p0, Morphism(z, p0, [m.field.zeros(0, d) for d in p0.dims])
    return res.terms[1], p0, res.maps[1]


def transpose(m: Module) -> Module:
    """Auslander transpose, a module over the opposite algebra."""
    if "Tr" in m._cache:
        return m._cache["Tr"]
    p1, p0, d = minimal_presentation(m)
    op = m.algebra.opposite()
    if p1.is_zero():
        out = zero_module(op)
    else:
        out, _ = cokernel(star_morphism(d))
    out.name = f"Tr({m.name})" if m.name else ""
    m._cache["Tr"] = out
    return out


def tau(m: Module) -> Module:
    """AR translate ``D Tr``."""
    if "tau" not in m._cache:
        out = dual_D(transpose(m))
        out.name = f"tau({m.name})" if m.name else ""
        m._cache["tau"] = out
    return m._cache["tau"]


def tau_inverse(m: Module) -> Module:
    """``Tr D``."""
    if "tau_inv" not in m._cache:
        out = transpose(dual_D(m))
        out.name = f"tauinv({m.name})" if m.name else ""
        m._cache["tau_inv"] = out
    return m._cache["tau_inv"]


# -- grade and Ext(-, A) as modules -------------------------------------------

def regular(a: Algebra) -> Module:
    if not hasattr(a, "_regular"):
        a._regular = regular_module(a)
    return a._regular


def grade(m: Module) -> int:
    """Least ``j`` with ``Ext^j(m, A) != 0``."""
    if m.is_zero():
        raise ModuleError("grade of the zero module")
    if "grade" not in m._cache:
        lam = regular(m.algebra)
        for j in range(pd_cap(m.algebra) + 1):
            if ext(j, m, lam):
                m._cache["grade"] = j
                break
        else:
            raise ResolutionTooLong("grade exceeds cap")
    return m._cache["grade"]


def ext_module(j: int, m: Module) -> Module:
    """``Ext^j(m, A)`` as a right module over the opposite algebra."""
    res = _full_resolution(m, j + 1)
    op = m.algebra.opposite()
    F = m.field
    if j >= len(res.terms):
        return zero_module(op)
    pj = star(res.terms[j])
    if j + 1 < len(res.terms):
        z, inc = kernel(star_morphism(res.maps[j + 1]))
    else:
        z, inc = pj, identity(pj)
    if j == 0:
        return z
    d_in = star_morphism(res.maps[j])
    rows = []
    for v in range(op.n_vertices):
        img = row_basis(d_in.blocks[v], F)
        if img.shape[0] and z.dims[v]:
            rows.append(solve_left(inc.blocks[v], img, F))
        else:
            rows.append(F.zeros(0, z.dims[v]))
    return quotient(z, rows)[0]


# -- injective coresolution of the regular module -----------------------------

def injective_coresolution_tops(a: Algebra, length: int) -> list[list[int]]:
    """Socle vertices of ``I_0, ..., I_{length-1}`` in the minimal injective coresolution of ``A_A``."""
    d_reg = dual_D(regular(a))
    res = _resolve(d_reg, length - 1) if length > 0 else Resolution(d_reg)
    return [sorted(t.tops) for t in res.terms[:length]] + [[] for _ in range(length - len(res.terms))]


def k_gorenstein_level(a: Algebra, k_max: int) -> int:
    """Largest ``k <= k_max`` with ``pd I_j <= j`` for ``0 <= j < k``."""
    terms = injective_coresolution_tops(a, k_max)
    level = 0
    for j, tops in enumerate(terms):
        if any(proj_dim(a.injective(v)) > j for v in set(tops)):
            break
        level = j + 1
    return level
