"""AR-quiver knitting, Auslander algebras End_R(A), and the built-in example algebras."""
from __future__ import annotations

import itertools
from collections import Counter, deque
from dataclasses import dataclass, field

import numpy as np

from .exactlin import Field, default_field, kernel_basis, left_kernel, rank
from .homolog import (Resolution, ResolutionTooLong, _full_resolution, ext_data, gl_dim,
                      injective_coresolution_tops, min_proj_resolution, proj_dim, tau, tau_inverse)
from .qalg import Algebra, Relation, build_algebra, quiver_from, simple
from .repmod import (Module, ModuleRegistry, Morphism, _span_rows, cokernel,
                     direct_sum, from_flat, from_generators, hom_space, identity, indecomposable_summands,
                     is_injective, is_projective, module_key, quotient, radical, scalar_part, socle_rows)


# knitting cap used when a corpus is only needed if the algebra is representation-finite;
# knitting cost grows superlinearly, and every finite corpus handled here has under 30 modules
CORPUS_CAP = 60


class KnitCapExceeded(RuntimeError):
    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class NotAuslander(ValueError):
    pass


# -- built-in algebras ---------------------------------------------------------

def gamma(n: int, field: Field | None = None) -> Algebra:
    """Auslander algebra of K[x]/(x^n).

    Arrows ``a_i: i -> i+1`` and ``b_i: i -> i-1``; relations
    ``a_1 b_2 = 0`` and ``a_i b_{i+1} = b_i a_{i-1}``, read left to right.
    """
    if n < 1:
        raise ValueError("n must be positive")
    verts = [str(i) for i in range(1, n + 1)]
    arrows = [(f"a{i}", str(i), str(i + 1)) for i in range(1, n)]
    arrows += [(f"b{i}", str(i), str(i - 1)) for i in range(2, n + 1)]
    rels = []
    if n >= 2:
        rels.append(Relation.of("a1*b2"))
    for i in range(2, n):
        rels.append(Relation.of((1, f"a{i}*b{i + 1}"), (-1, f"b{i}*a{i - 1}")))
    return build_algebra(quiver_from(verts, arrows), rels, max(2, 2 * n), field, name=f"gamma_{n}")


def path_a(n: int, field: Field | None = None) -> Algebra:
    """Linearly oriented A_n: ``1 -> 2 -> ... -> n``."""
    verts = [str(i) for i in range(1, n + 1)]
    if n == 2:
        arrows = [("a", "1", "2")]
    else:
        arrows = [(f"a{i}", str(i), str(i + 1)) for i in range(1, n)]
    return build_algebra(quiver_from(verts, arrows), [], max(2, n), field, name=f"a{n}_path")


def kxn(n: int, field: Field | None = None) -> Algebra:
    """K[x]/(x^n): one vertex, a loop, relation x^n."""
    return build_algebra(quiver_from(["1"], [("x", "1", "1")]), [Relation.of("*".join(["x"] * n))],
                         n, field, name=f"kx{n}")


def aus_a2(field: Field | None = None) -> Algebra:
    """Auslander algebra of 1 -> 2: quiver 1 -> 2 -> 3, the length-two path is zero."""
    q = quiver_from("123", [("a1", "1", "2"), ("a2", "2", "3")])
    return build_algebra(q, [Relation.of("a1*a2")], 3, field, name="aus_a2")


def aus_a3(field: Field | None = None) -> Algebra:
    """Auslander algebra of 1 -> 2 -> 3 with the six-vertex presentation
    a1: 1->2, a2: 2->3, a3: 2->4, a4: 3->5, a5: 4->5, a6: 5->6.

    The printed relations compose right to left; stored left to right they
    read a1*a2 = 0, a3*a5 = a2*a4, a4*a6 = 0.
    """
    q = quiver_from("123456", [("a1", "1", "2"), ("a2", "2", "3"), ("a3", "2", "4"),
                               ("a4", "3", "5"), ("a5", "4", "5"), ("a6", "5", "6")])
    rels = [Relation.of("a1*a2"), Relation.of((1, "a3*a5"), (-1, "a2*a4")), Relation.of("a4*a6")]
    return build_algebra(q, rels, 4, field, name="aus_a3")


def semisimple_point(field: Field | None = None) -> Algebra:
    return build_algebra(quiver_from("1", []), [], 2, field, name="point")


BUILTIN_NAMES = (["gamma_1", "gamma_2", "gamma_3", "gamma_4", "a2_path", "a3_path",
                  "kx2", "kx3", "kx4", "aus_a2", "aus_a3"])


def builtin(name: str, field: Field | None = None) -> Algebra:
    field = field or default_field()
    key = (name, field)
    if key in _BUILTIN_CACHE:
        return _BUILTIN_CACHE[key]
    n = name.replace("_", "")
    if n.startswith("gamma") and n[5:].isdigit() and 1 <= int(n[5:]) <= 4:
        a = gamma(int(n[5:]), field)
    elif n in ("a2path", "a3path"):
        a = path_a(int(n[1]), field)
    elif n.startswith("kx") and n[2:].isdigit() and 2 <= int(n[2:]) <= 4:
        a = kxn(int(n[2:]), field)
    elif n == "ausa2":
        a = aus_a2(field)
    elif n == "ausa3":
        a = aus_a3(field)
    else:
        raise KeyError(f"unknown built-in algebra {name!r}; known: {', '.join(BUILTIN_NAMES)}")
    _BUILTIN_CACHE[key] = a
    return a


_BUILTIN_CACHE: dict = {}


def module_from_arrow_entries(a: Algebra, dims: dict, entries: dict, name: str = "") -> Module:
    """Module from a per-vertex dimension dict and ``{arrow: [[...]]}`` matrices (missing arrows act by zero)."""
    F = a.field
    dv = [int(dims.get(v, 0)) for v in a.quiver.vertices]
    actions = []
    for k, arr in enumerate(a.quiver.arrows):
        s, t = a.arrow_source[k], a.arrow_target[k]
        if arr.label in entries:
            actions.append(F.array(entries[arr.label]).reshape(dv[s], dv[t]))
        else:
            actions.append(F.zeros(dv[s], dv[t]))
    return Module(a, dv, actions, name=name)


def layered_gamma4_module(a: Algebra | None = None) -> Module:
    """The module with Loewy layers (2 4 | 3 | 4) over gamma_4.

    Basis: x2 at vertex 2, x3 at vertex 3, top and bottom copies of 4.
    a2 sends x2 to x3, b4 sends the top 4 to x3, a3 sends x3 to the bottom 4.
    """
    a = a or builtin("gamma_4")
    return module_from_arrow_entries(a, {"2": 1, "3": 1, "4": 2},
                                     {"a2": [[1]], "b4": [[1], [0]], "a3": [[0, 1]]}, name="M")


def grade_zero_module(a: Algebra | None = None) -> Module:
    """The module with top S(2) and socle S(3) + S(4) over aus_a3."""
    a = a or builtin("aus_a3")
    return module_from_arrow_entries(a, {"2": 1, "3": 1, "4": 1}, {"a2": [[1]], "a3": [[1]]}, name="M")


# -- almost split sequences and knitting -------------------------------------

def radical_endomorphisms(m: Module) -> list[Morphism]:
    """Basis of rad End(m) for an indecomposable ``m`` with split local endomorphism ring."""
    F = m.field
    end = hom_space(m, m)
    idm = identity(m)
    nil = []
    for b in end:
        lam = scalar_part(b)
        if lam is None:
            raise ValueError(f"{m!r} does not have a split local endomorphism ring")
        nil.append(b - idm.scale(lam))
    rows = _span_rows(nil, F)
    return [] if rows is None else [from_flat(m, m, r) for r in rows]


def almost_split_sequence(x: Module) -> tuple[Module, Module]:
    """``(tau x, E)`` for the almost split sequence ``0 -> tau x -> E -> x -> 0``.

    The sequence is the pushout of ``0 -> Omega x -> P_0 -> x -> 0`` along a
    cocycle spanning the socle of ``Ext^1(x, tau x)`` over ``End(tau x)``.
    """
    if is_projective(x):
        raise ValueError("no almost split sequence ends in a projective module")
    F = x.field
    t = tau(x)
    data = ext_data(1, x, t)
    res = _full_resolution(x, 2)
    p1, p0, d1 = res.terms[1], res.terms[0], res.maps[1]
    z, b = data.cocycles, data.coboundaries
    kb = kernel_basis(b, F).T if b.shape[0] else F.eye(data.cochain_dim)
    w = F.matmul(z, kb)
    conds = []
    for g in radical_endomorphisms(t):
        gmat = _block_diag_gen(p1, g, F)
        conds.append(F.matmul(z, gmat, kb))
    if conds:
        c_space = left_kernel(np.concatenate(conds, axis=1), F)
    else:
        c_space = F.eye(z.shape[0])
    soc = F.matmul(c_space, w)
    if rank(soc, F) != 1:
        raise ArithmeticError(f"socle of Ext^1({x!r}, tau) has dimension {rank(soc, F)}, expected 1")
    pick = next(i for i in range(c_space.shape[0]) if np.any(soc[i] != 0))
    xi_vec = F.matmul(c_space[pick:pick + 1], z)[0]
    images, pos = [], 0
    for v in p1.tops:
        images.append(xi_vec[pos:pos + t.dims[v]])
        pos += t.dims[v]
    xi = from_generators(p1, t, images)
    target = direct_sum([t, p0], name="tauX+P0")
    blocks = [np.concatenate([F.reduce(-xi.blocks[v]), d1.blocks[v]], axis=1)
              for v in range(x.algebra.n_vertices)]
    e, _ = cokernel(Morphism(p1, target, blocks))
    return t, e


def _block_diag_gen(p: Module, g: Morphism, F: Field) -> np.ndarray:
    from .exactlin import block_diag
    return block_diag([g.blocks[v] for v in p.tops], F)


@dataclass
class ARQuiver:
    algebra: Algebra
    modules: list[Module]
    irreducible: dict[tuple[int, int], int]
    translation: dict[int, int]
    projective: list[bool]
    injective: list[bool]
    complete: bool = True
    middle_terms: dict[int, list[int]] = field(default_factory=dict)

    def __len__(self):
        return len(self.modules)

    def index_of(self, m: Module) -> int | None:
        from .repmod import _iso_indecomposable
        key = module_key(m)
        for i, x in enumerate(self.modules):
            if module_key(x) == key and _iso_indecomposable(x, m):
                return i
        return None

    def label(self, i: int) -> str:
        return f"M{i}"

    def mesh_ok(self) -> bool:
        for x, z in self.translation.items():
            lhs = np.array(self.modules[x].dims) + np.array(self.modules[z].dims)
            rhs = np.zeros(len(lhs), dtype=int)
            for (j, i), mult in self.irreducible.items():
                if i == x:
                    rhs = rhs + mult * np.array(self.modules[j].dims)
            if not np.array_equal(lhs, rhs):
                return False
        return True

    def to_dot(self) -> str:
        lines = [f'digraph "AR({self.algebra.name})" {{', "  rankdir=LR;"]
        for i, m in enumerate(self.modules):
            dv = "".join(str(d) for d in m.dims)
            shape = "box" if self.projective[i] else ("doublecircle" if self.injective[i] else "ellipse")
            lines.append(f'  M{i} [label="M{i}\\n{dv}", shape={shape}];')
        for (j, i), mult in sorted(self.irreducible.items()):
            for _ in range(mult):
                lines.append(f"  M{j} -> M{i};")
        for x, z in sorted(self.translation.items()):
            lines.append(f"  M{x} -> M{z} [style=dashed, constraint=false];")
        lines.append("}")
        return "\n".join(lines) + "\n"


def _canonical_order(mods: list[Module]) -> list[int]:
    return sorted(range(len(mods)), key=lambda i: (mods[i].dim, module_key(mods[i]), i))


def knit(a: Algebra, cap: int = 500) -> ARQuiver:
    """The AR quiver of a representation-finite algebra.

    Starting from the indecomposable projectives, every new indecomposable
    contributes its almost split sequence (or radical, when projective), its
    inverse translate, and the summands of its top quotient by the socle when
    injective. The closure is the component containing the projectives.
    """
    if getattr(a, "_knit", None) is not None and a._knit.complete:
        return a._knit
    reg = ModuleRegistry(a)
    queue: deque[int] = deque()
    irr: Counter = Counter()
    tau_map: dict[int, int] = {}
    tau_inv: dict[int, int] = {}
    middle: dict[int, list[int]] = {}
    proj: dict[int, bool] = {}
    inj: dict[int, bool] = {}

    def add(m: Module) -> int:
        i, new = reg.add(m)
        if new:
            queue.append(i)
            if len(reg) > cap:
                raise KnitCapExceeded(f"more than {cap} indecomposables over {a.name}",
                                      partial=_assemble(a, reg.modules, irr, tau_map, proj, inj, middle, False))
        return i

    for v in range(a.n_vertices):
        add(a.projective(v))
    while queue:
        i = queue.popleft()
        x = reg[i]
        proj[i] = is_projective(x)
        inj[i] = is_injective(x)
        if proj[i]:
            rad, _ = radical(x)
            for y in indecomposable_summands(rad):
                irr[(add(y), i)] += 1
        else:
            t, e = almost_split_sequence(x)
            tau_map[i] = add(t)
            middle[i] = []
            for y in indecomposable_summands(e):
                j = add(y)
                irr[(j, i)] += 1
                middle[i].append(j)
        if inj[i]:
            q, _ = quotient(x, socle_rows(x))
            for y in indecomposable_summands(q):
                add(y)
        else:
            tau_inv[i] = add(tau_inverse(x))
    for i, j in tau_inv.items():
        if tau_map.get(j) != i:
            raise ArithmeticError(f"tau(tau^-1 M{i}) is not M{i}")
    quiver = _assemble(a, reg.modules, irr, tau_map, proj, inj, middle, True)
    if not quiver.mesh_ok():
        raise ArithmeticError("mesh dimension identity fails")
    a._knit = quiver
    return quiver


def _assemble(a, mods, irr, tau_map, proj, inj, middle, complete) -> ARQuiver:
    order = _canonical_order(mods)
    new = {old: k for k, old in enumerate(order)}
    return ARQuiver(
        algebra=a,
        modules=[mods[i] for i in order],
        irreducible={(new[j], new[i]): m for (j, i), m in irr.items()},
        translation={new[i]: new[j] for i, j in tau_map.items()},
        projective=[proj.get(i, False) for i in order],
        injective=[inj.get(i, False) for i in order],
        complete=complete,
        middle_terms={new[i]: sorted(new[j] for j in js) for i, js in middle.items()},
    )


def indecomposables(a: Algebra, cap: int = 500) -> list[Module]:
    return knit(a, cap).modules


# -- Auslander algebras ----------------------------------------------------------

@dataclass
class AuslanderPresentation:
    source_algebra: Algebra
    ar_quiver: ARQuiver
    result: Algebra
    dictionary: dict[int, str]  # AR-quiver index -> vertex label of the result

    def vertex(self, x: int) -> int:
        return self.result.vertex_index[self.dictionary[x]]


def auslander_algebra(r: Algebra, cap: int = 500) -> AuslanderPresentation:
    """``End_R(A)`` for an additive generator ``A``, as quiver with mesh relations.

    Vertex ``i`` is the i-th indecomposable in canonical order. Since
    ``Hom(P_X, P_Y)`` is spanned by paths from ``Y`` to ``X``, an irreducible
    map ``Y -> X`` becomes an arrow ``X -> Y``; each almost split sequence
    ``tau X -> E -> X`` gives the mesh relation through the summands of ``E``.
    """
    ar = knit(r, cap)
    n = len(ar)
    verts = [str(i + 1) for i in range(n)]
    arrows = []
    by_pair: dict[tuple[int, int], list[str]] = {}
    for (y, x), mult in sorted(ar.irreducible.items()):
        for k in range(mult):
            label = f"x{x + 1}_{y + 1}" + (f"_{k}" if mult > 1 else "")
            arrows.append((label, verts[x], verts[y]))
            by_pair.setdefault((x, y), []).append(label)
    rels = []
    for x, z in sorted(ar.translation.items()):
        terms = []
        for y in sorted(set(ar.middle_terms[x])):
            for l1, l2 in zip(by_pair[(x, y)], by_pair[(y, z)]):
                terms.append((1, f"{l1}*{l2}"))
        if terms:
            rels.append(Relation.of(*terms))
    bound = max(2, 2 * n + 2)
    res = build_algebra(quiver_from(verts, arrows), rels, bound, r.field, name=f"aus({r.name})")
    return AuslanderPresentation(r, ar, res, {i: verts[i] for i in range(n)})


def is_auslander_algebra(a: Algebra) -> bool:
    """gl.dim <= 2 and the first two terms of the minimal injective coresolution of A are projective."""
    if getattr(a, "_is_auslander", None) is None:
        try:
            g = gl_dim(a)
        except ResolutionTooLong:
            g = None
        if g is None or g > 2:
            a._is_auslander = False
        else:
            tops = injective_coresolution_tops(a, 2)
            a._is_auslander = all(is_projective(a.injective(v)) for t in tops for v in set(t))
    return a._is_auslander


def prop22_resolution(pres: AuslanderPresentation, x: int) -> Resolution:
    """Minimal resolution of the simple ``S_X``, checked against the AR data of ``X``."""
    ar = pres.ar_quiver
    lam = pres.result
    s = simple(lam, pres.vertex(x))
    res = min_proj_resolution(s, 3)
    if ar.projective[x]:
        rad, _ = radical(ar.modules[x])
        expected = [[pres.vertex(x)],
                    sorted(pres.vertex(ar.index_of(y)) for y in indecomposable_summands(rad))]
    else:
        expected = [[pres.vertex(x)], sorted(pres.vertex(y) for y in ar.middle_terms[x]),
                    [pres.vertex(ar.translation[x])]]
    while expected and not expected[-1]:
        expected.pop()
    got = [res.tops(k) for k in range(len(res.terms))]
    if got != expected:
        raise ArithmeticError(f"resolution of S_{x} has tops {got}, AR data predicts {expected}")
    return res


def presentation_isomorphic(a: Algebra, b: Algebra) -> dict | None:
    """A vertex/arrow relabeling (arrows rescaled by signs) identifying the presentations, or None."""
    if (a.n_vertices, a.n_arrows, a.dim) != (b.n_vertices, b.n_arrows, b.dim):
        return None
    F = b.field

    def arrow_table(alg):
        tab: dict[tuple[int, int], list[int]] = {}
        for k in range(alg.n_arrows):
            tab.setdefault((alg.arrow_source[k], alg.arrow_target[k]), []).append(k)
        return tab

    ta, tb = arrow_table(a), arrow_table(b)

    def signature(alg, tab, v):
        out_deg = sum(len(ks) for (s, t), ks in tab.items() if s == v)
        in_deg = sum(len(ks) for (s, t), ks in tab.items() if t == v)
        return (out_deg, in_deg, tuple(alg.dimension_matrix()[v]).__len__(),
                sorted(alg.dimension_matrix()[v]), sorted(alg.dimension_matrix()[:, v]))

    sig_a = [signature(a, ta, v) for v in range(a.n_vertices)]
    sig_b = [signature(b, tb, v) for v in range(b.n_vertices)]
    candidates = [[w for w in range(b.n_vertices) if sig_b[w] == sig_a[v]] for v in range(a.n_vertices)]
    for perm in _injective_choices(candidates):
        if any(len(ta.get((s, t), [])) != len(tb.get((perm[s], perm[t]), [])) for s in range(a.n_vertices)
               for t in range(a.n_vertices)):
            continue
        pair_maps = []
        for (s, t), ks in sorted(ta.items()):
            targets = tb[(perm[s], perm[t])]
            pair_maps.append([(ks, p) for p in itertools.permutations(targets)])
        for choice in itertools.product(*pair_maps):
            amap = {}
            for ks, p in choice:
                amap.update(zip(ks, p))
            for signs in itertools.product((1, -1), repeat=a.n_arrows):
                if _relations_hold(a, b, amap, signs, F):
                    return {"vertices": {a.quiver.vertices[v]: b.quiver.vertices[perm[v]] for v in range(a.n_vertices)},
                            "arrows": {a.quiver.arrows[k].label: (signs[k], b.quiver.arrows[amap[k]].label)
                                       for k in range(a.n_arrows)}}
    return None


def _injective_choices(candidates):
    def rec(i, used):
        if i == len(candidates):
            yield []
            return
        for w in candidates[i]:
            if w not in used:
                for rest in rec(i + 1, used | {w}):
                    yield [w] + rest
    for p in rec(0, frozenset()):
        yield p


def _relations_hold(a, b, amap, signs, F) -> bool:
    for terms in a._rels:
        total: dict[int, object] = {}
        for c, p in terms:
            coef = c
            for k in p.arrows:
                coef = coef * signs[k]
            arrows = tuple(amap[k] for k in p.arrows)
            src = b.arrow_source[arrows[0]]
            for idx, val in b.normal_form(src, arrows).items():
                total[idx] = F.reduce(total.get(idx, 0) + coef * val)
        if any(v != 0 for v in total.values()):
            return False
    return True


@dataclass
class ClassifierVerdict:
    pd2_simples: list[str]
    applicable: bool
    source: str | None = None  # built-in name of the source algebra R
    description: str | None = None

    def __str__(self):
        if not self.applicable:
            return f"not applicable ({len(self.pd2_simples)} simples of pd 2)"
        return f"unique pd-2 simple S({self.pd2_simples[0]}); Auslander algebra of {self.description}"


def unique_pd2_classifier(a: Algebra) -> ClassifierVerdict:
    """Identify an Auslander algebra with exactly one simple of projective dimension two."""
    if not is_auslander_algebra(a):
        raise NotAuslander(f"{a.name} is not an Auslander algebra")
    pd2 = [a.quiver.vertices[v] for v in range(a.n_vertices) if proj_dim(simple(a, v)) == 2]
    if len(pd2) != 1:
        return ClassifierVerdict(pd2, False)
    cases = [("a2_path", "KQ with Q: 1->2", path_a(2, a.field)),
             ("kx2", "K[x]/(x^2), the local Nakayama algebra with rad^2 = 0", kxn(2, a.field))]
    for name, text, r in cases:
        if presentation_isomorphic(a, auslander_algebra(r).result) is not None:
            return ClassifierVerdict(pd2, True, name, text)
    raise ArithmeticError(f"{a.name} has a unique pd-2 simple but matches neither classified algebra")
