"""Rigidity tests, support tau-tilting pairs, mutation and enumeration."""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field

import networkx as nx
import numpy as np

from .auslander import CORPUS_CAP, KnitCapExceeded, is_auslander_algebra, knit
from .exactlin import rank
from .homolog import (double_dual_sequence, ext, grade, inj_dim, minimal_presentation, proj_dim, tau,
                      transpose)
from .qalg import Algebra, Relation, build_algebra, quiver_from
from .repmod import (Module, ModuleRegistry, Morphism, cokernel, direct_sum,
                     from_generators, hom_dim, hom_space, indecomposable_summands, is_projective, local_certificate,
                     projective_sum, top_vector, zero_module)


class CriterionDisagreement(AssertionError):
    """Two rigidity criteria that should coincide returned different answers."""


class TheoremViolation(AssertionError):
    pass


# -- rigidity -------------------------------------------------------------------

def is_rigid(m: Module) -> bool:
    return ext(1, m, m) == 0


def is_tau_rigid(m: Module) -> bool:
    if "tau_rigid" not in m._cache:
        m._cache["tau_rigid"] = m.is_zero() or hom_dim(m, tau(m)) == 0
    return m._cache["tau_rigid"]


def rigidity_pd1_criterion(m: Module) -> bool:
    """``Ext^2(M**/M, M) = 0`` for a module of projective dimension one over an Auslander algebra."""
    if not is_auslander_algebra(m.algebra):
        raise ValueError("not Auslander algebra")
    if proj_dim(m) != 1:
        raise ValueError("precondition pd≠1")
    n = double_dual_sequence(m).cokernel
    return n.is_zero() or ext(2, n, m) == 0


def grade2_criterion(m: Module) -> bool:
    """``Tr M`` is tau-rigid of projective dimension one."""
    if m.is_zero() or grade(m) != 2:
        raise ValueError("precondition grade≠2")
    t = transpose(m)
    return is_tau_rigid(t) and proj_dim(t) == 1


@dataclass
class RigidityReport:
    module: Module
    pd: int
    id: int
    grade: int | None
    is_rigid: bool
    is_tau_rigid: bool
    criteria_used: dict[str, bool] = field(default_factory=dict)

    @property
    def agreement(self) -> bool:
        return all(v == self.is_tau_rigid for v in self.criteria_used.values())


def module_report(m: Module) -> RigidityReport:
    """All applicable rigidity criteria for ``m``; raises if two of them disagree."""
    pd = proj_dim(m)
    rep = RigidityReport(m, pd, inj_dim(m), None if m.is_zero() else grade(m), is_rigid(m), is_tau_rigid(m))
    rep.criteria_used["direct"] = rep.is_tau_rigid
    if rep.is_tau_rigid and not rep.is_rigid:
        raise CriterionDisagreement(f"{m!r} is tau-rigid but not rigid")
    if pd == 1 and is_auslander_algebra(m.algebra):
        c = rigidity_pd1_criterion(m)
        if not (c == rep.is_rigid == rep.is_tau_rigid):
            raise CriterionDisagreement(f"pd-1 criterion {c}, rigid {rep.is_rigid}, tau-rigid {rep.is_tau_rigid}")
        rep.criteria_used["pd1-criterion"] = c
    if rep.grade == 2:
        c = grade2_criterion(m)
        if c != rep.is_tau_rigid:
            raise CriterionDisagreement(f"grade-2 criterion {c}, tau-rigid {rep.is_tau_rigid}")
        rep.criteria_used["grade2-criterion"] = c
    return rep


# -- the transpose bijection ----------------------------------------------------

@dataclass
class TrBijection:
    set_g: list[Module]
    set_s: list[Module]
    pairing: list[tuple[int, int]]
    partial: bool

    @property
    def is_bijection(self) -> bool:
        return (len(self.set_g) == len(self.set_s) == len(self.pairing)
                and len({j for _, j in self.pairing}) == len(self.set_s))


def tr_bijection(a: Algebra, indecs: list[Module] | None = None, op_indecs: list[Module] | None = None,
                 partial: bool = False) -> TrBijection:
    """Grade-2 tau-rigid indecomposables against non-projective tau-rigid torsionless ones over the opposite side."""
    from .homolog import gl_dim, is_torsionless
    if gl_dim(a) != 2:
        raise ValueError("global dimension must be 2")
    indecs = knit(a).modules if indecs is None else indecs
    op_indecs = knit(a.opposite()).modules if op_indecs is None else op_indecs
    set_g = [x for x in indecs if is_tau_rigid(x) and grade(x) == 2]
    set_s = [y for y in op_indecs if not is_projective(y) and is_tau_rigid(y) and is_torsionless(y)]
    reg = ModuleRegistry(a.opposite())
    for y in set_s:
        reg.add(y)
    pairing = []
    for i, x in enumerate(set_g):
        t = transpose(x)
        j = reg.lookup(t)
        if j is None or j >= len(set_s):
            if not partial:
                raise TheoremViolation(f"Tr of {x!r} is not in S")
            continue
        back = transpose(set_s[j])
        from .repmod import _iso_indecomposable
        if not _iso_indecomposable(back, x):
            raise ArithmeticError("Tr is not an involution on non-projectives")
        pairing.append((i, j))
    out = TrBijection(set_g, set_s, pairing, partial)
    if not partial and not out.is_bijection:
        raise TheoremViolation(f"|G|={len(set_g)}, |S|={len(set_s)}, paired {len(pairing)}")
    return out


# -- support tau-tilting pairs -------------------------------------------------

def projective_vertex(p: Module) -> int:
    """Vertex of an indecomposable projective."""
    tv = top_vector(p)
    if sum(tv) != 1 or not is_projective(p):
        raise ValueError(f"{p!r} is not an indecomposable projective")
    return tv.index(1)


@dataclass
class STPair:
    """A tau-rigid pair: indecomposable module summands and the vertices of the projective part."""

    algebra: Algebra
    summands: tuple[Module, ...]
    vertices: tuple[int, ...]
    ids: tuple[tuple[int, ...], tuple[int, ...]] | None = None
    certificate: dict = field(default_factory=dict)

    @property
    def module_part(self) -> Module:
        return direct_sum(list(self.summands)) if self.summands else zero_module(self.algebra)

    @property
    def projective_part(self) -> Module:
        return projective_sum(self.algebra, sorted(self.vertices))

    @property
    def size(self) -> int:
        return len(self.summands) + len(self.vertices)

    def removed(self, k: int) -> tuple[list[Module], list[int], object]:
        """Split off position ``k`` (module summands first, then projective vertices)."""
        ms, vs = list(self.summands), list(self.vertices)
        if k < len(ms):
            return ms[:k] + ms[k + 1:], vs, ms[k]
        k -= len(ms)
        return ms, vs[:k] + vs[k + 1:], vs[k]

    def key(self):
        return self.ids

    def label(self) -> str:
        ms = ",".join(f"M{i}" for i in self.ids[0])
        ps = ",".join(f"P{self.algebra.quiver.vertices[v]}" for v in self.ids[1])
        return f"({ms} | {ps})"


class PairRegistry:
    """Canonical identifiers for indecomposables over an algebra and its opposite."""

    def __init__(self, a: Algebra):
        self.algebra = a
        self._regs: dict[int, ModuleRegistry] = {}

    def reg(self, a: Algebra) -> ModuleRegistry:
        return self._regs.setdefault(id(a), ModuleRegistry(a))

    def make(self, a: Algebra, summands, vertices) -> STPair:
        r = self.reg(a)
        canon = {}
        for m in summands:
            i, _ = r.add(m)
            canon[i] = r[i]
        ids = tuple(sorted(canon)), tuple(sorted(set(vertices)))
        if len(ids[0]) != len(summands) or len(ids[1]) != len(vertices):
            raise ArithmeticError("pair is not basic")
        return STPair(a, tuple(canon[i] for i in ids[0]), ids[1], ids)


def _pair_conditions(a: Algebra, summands, vertices) -> dict:
    cert = {}
    for i, x in enumerate(summands):
        for j, y in enumerate(summands):
            cert[f"hom(M{i},tau M{j})"] = hom_dim(x, tau(y))
    for i, x in enumerate(summands):
        for v in vertices:
            cert[f"hom(P{a.quiver.vertices[v]},M{i})"] = x.dims[v]
    return cert


def idempotent_quotient(a: Algebra, vertices) -> tuple[Algebra, list[int]]:
    """``A/<e>`` for ``e`` the sum of the given vertices, with the surviving vertex indices."""
    dead = set(vertices)
    keep = [v for v in range(a.n_vertices) if v not in dead]
    names = [a.quiver.vertices[v] for v in keep]
    arrows = [(ar.label, ar.source, ar.target) for k, ar in enumerate(a.quiver.arrows)
              if a.arrow_source[k] not in dead and a.arrow_target[k] not in dead]
    alive = {lab for lab, _, _ in arrows}
    rels = []
    for r in a.relations:
        terms = [(c, p) for c, p in r.terms if all(x in alive for x in p)]
        if terms:
            rels.append(Relation(tuple(terms)))
    q = build_algebra(quiver_from(names, arrows), rels, a.bound, a.field, name=f"{a.name}/e")
    return q, keep


def restrict(m: Module, q: Algebra, keep: list[int]) -> Module:
    a = m.algebra
    acts = []
    for arr in q.quiver.arrows:
        acts.append(m.actions[a.arrow_index[arr.label]])
    return Module(q, [m.dims[v] for v in keep], acts)


def is_support_tau_tilting(p: STPair, cross_check: bool = True) -> bool:
    a = p.algebra
    cert = _pair_conditions(a, p.summands, p.vertices)
    p.certificate = cert
    ok = all(v == 0 for v in cert.values()) and p.size == a.n_vertices
    ok = ok and len(set(p.vertices)) == len(p.vertices)
    if ok:
        r = ModuleRegistry(a)
        ok = all(r.add(x)[1] for x in p.summands)
    if cross_check:
        q, keep = idempotent_quotient(a, p.vertices)
        if q.n_vertices == 0:
            other = not p.summands
        else:
            restricted = [restrict(x, q, keep) for x in p.summands]
            other = (all(hom_dim(x, tau(y)) == 0 for x in restricted for y in restricted)
                     and len(restricted) == q.n_vertices
                     and all(x.dims[v] == 0 for x in p.summands for v in p.vertices))
        p.certificate["quotient-tau-tilting"] = other
        if other != ok:
            raise CriterionDisagreement("pair conditions and the idempotent-quotient test disagree")
    return ok


# -- corpora --------------------------------------------------------------------

def tau_rigid_indecomposables(modules: list[Module]) -> list[Module]:
    return [x for x in modules if is_tau_rigid(x)]


def g_vector(m: Module) -> tuple[int, ...]:
    """``[P_0] - [P_1]`` for the minimal projective presentation."""
    p1, p0, _ = minimal_presentation(m)
    n = m.algebra.n_vertices
    g = [0] * n
    for v in p0.tops:
        g[v] += 1
    for v in p1.tops:
        g[v] -= 1
    return tuple(g)


def generic_cokernel(a: Algebra, g, rng: np.random.Generator) -> Module:
    """Cokernel of a random map ``P_1 -> P_0`` with ``[P_0] - [P_1] = g``."""
    tops0 = [v for v, x in enumerate(g) for _ in range(max(x, 0))]
    tops1 = [v for v, x in enumerate(g) for _ in range(max(-x, 0))]
    p0 = projective_sum(a, tops0)
    p1 = projective_sum(a, tops1)
    F = a.field
    images = [F.random(rng, 1, p0.dims[v])[0] for v in tops1]
    f = from_generators(p1, p0, images)
    return cokernel(f)[0]


@dataclass
class GCorpus:
    modules: list[Module]
    radius: int
    complete: bool


def g_vector_corpus(a: Algebra, max_radius: int = 4, seed: int = 0, attempts: int = 3) -> GCorpus:
    """Tau-rigid indecomposables found as generic cokernels over growing boxes of g-vectors.

    Radius ``r`` covers g-vectors with entries in ``[-r, r]``; the search stops
    after the first shell that yields nothing new.
    """
    memo = a.__dict__.setdefault("_gcorpus", {})
    if (max_radius, seed, attempts) not in memo:
        memo[(max_radius, seed, attempts)] = _g_vector_corpus(a, max_radius, seed, attempts)
    return memo[(max_radius, seed, attempts)]


def _g_vector_corpus(a: Algebra, max_radius: int, seed: int, attempts: int) -> GCorpus:
    rng = np.random.default_rng(seed)
    reg = ModuleRegistry(a)
    n = a.n_vertices
    done: set = set()
    for r in range(1, max_radius + 1):
        found = False
        for g in itertools.product(range(-r, r + 1), repeat=n):
            if g in done or max(g) <= 0:
                continue
            done.add(g)
            for _ in range(attempts):
                m = generic_cokernel(a, g, rng)
                if m.is_zero() or g_vector(m) != g:
                    continue
                if is_tau_rigid(m):
                    # generic cokernels at sums of compatible g-vectors split
                    if local_certificate(m):
                        found |= reg.add(m)[1]
                    break
        if not found:
            return GCorpus(_sorted_modules(reg.modules), r, True)
    return GCorpus(_sorted_modules(reg.modules), max_radius, False)


def _sorted_modules(ms):
    from .repmod import module_key
    return [ms[i] for i in sorted(range(len(ms)), key=lambda i: (ms[i].dim, module_key(ms[i]), i))]


def corpus(a: Algebra, cap: int = CORPUS_CAP, max_radius: int = 4) -> tuple[list[Module], str]:
    """All indecomposables when knitting terminates; otherwise the tau-rigid g-vector corpus."""
    try:
        return knit(a, cap).modules, "knit"
    except KnitCapExceeded:
        gc = g_vector_corpus(a, max_radius)
        return gc.modules, "g-vector" if gc.complete else "partial"


# -- enumeration by cliques -----------------------------------------------------

def _compatible(x: Module, y: Module) -> bool:
    return hom_dim(x, tau(y)) == 0 and hom_dim(y, tau(x)) == 0


def stt_graph(a: Algebra, rigid: list[Module]) -> nx.Graph:
    g = nx.Graph()
    n = a.n_vertices
    for i in range(len(rigid)):
        g.add_node(("M", i))
    for v in range(n):
        g.add_node(("P", v))
    for i, j in itertools.combinations(range(len(rigid)), 2):
        if _compatible(rigid[i], rigid[j]):
            g.add_edge(("M", i), ("M", j))
    for i, x in enumerate(rigid):
        for v in range(n):
            if x.dims[v] == 0:
                g.add_edge(("M", i), ("P", v))
    for v, w in itertools.combinations(range(n), 2):
        g.add_edge(("P", v), ("P", w))
    return g


def enumerate_stt_repfinite(a: Algebra, modules: list[Module] | None = None,
                            registry: PairRegistry | None = None) -> list[STPair]:
    """Support tau-tilting pairs as the ``n``-cliques of the compatibility graph."""
    if modules is None:
        modules = knit(a).modules
    rigid = tau_rigid_indecomposables(modules)
    g = stt_graph(a, rigid)
    registry = registry or PairRegistry(a)
    out = []
    for clique in nx.find_cliques(g):
        if len(clique) > a.n_vertices:
            raise ArithmeticError("compatibility clique larger than the rank")
        if len(clique) != a.n_vertices:
            continue
        ms = [rigid[i] for t, i in clique if t == "M"]
        vs = [v for t, v in clique if t == "P"]
        out.append(registry.make(a, ms, vs))
    return sorted(out, key=lambda p: p.ids)


# -- mutation ------------------------------------------------------------------

def in_fac(x: Module, u: list[Module]) -> bool:
    """Whether ``x`` is a quotient of a module in ``add(u)``."""
    F = x.field
    if x.is_zero():
        return True
    for v in range(x.algebra.n_vertices):
        if x.dims[v] == 0:
            continue
        rows = [h.blocks[v] for y in u for h in hom_space(y, x) if h.blocks[v].shape[0]]
        if not rows or rank(np.concatenate(rows), F) < x.dims[v]:
            return False
    return True


def left_approximation_cokernel(x: Module, u: list[Module]) -> Module:
    """Cokernel of the (non-minimal) left ``add(u)``-approximation built from all hom bases."""
    maps, targets = [], []
    for y in u:
        for h in hom_space(x, y):
            maps.append(h)
            targets.append(y)
    if not maps:
        return zero_module(x.algebra)
    total = direct_sum(targets)
    blocks = [np.concatenate([h.blocks[v] for h in maps], axis=1) for v in range(x.algebra.n_vertices)]
    return cokernel(Morphism(x, total, blocks))[0]


def _left_mutation(a: Algebra, u: list[Module], vertices: list[int], x: Module) -> tuple[list[Module], list[int]]:
    from .repmod import _iso_indecomposable
    c = left_approximation_cokernel(x, u)
    new = []
    for y in indecomposable_summands(c):
        if any(_iso_indecomposable(y, z) for z in u) or any(_iso_indecomposable(y, z) for z in new):
            continue
        new.append(y)
    if len(new) > 1:
        raise ArithmeticError("exchange produced more than one new summand")
    if new:
        return u + new, vertices
    support = {v for y in u for v in range(a.n_vertices) if y.dims[v]}
    free = [v for v in range(a.n_vertices) if v not in support and v not in vertices]
    if len(free) != 1:
        raise ArithmeticError(f"no exchange: {len(free)} candidate projective vertices")
    return u, vertices + free


def dual_pair(reg: PairRegistry, p: STPair) -> STPair:
    """``(M, P) -> (Tr M_np + P*, M_pr*)`` over the opposite algebra."""
    op = p.algebra.opposite()
    ms, vs = [], []
    for x in p.summands:
        if is_projective(x):
            vs.append(projective_vertex(x))
        else:
            ms.append(transpose(x))
    ms += [op.projective(v) for v in p.vertices]
    return reg.make(op, ms, vs)


def mutate(p: STPair, k: int, registry: PairRegistry | None = None) -> STPair:
    """The other completion of ``p`` with its ``k``-th summand removed."""
    reg = registry or PairRegistry(p.algebra)
    a = p.algebra
    u, vs, z = p.removed(k)
    if isinstance(z, Module) and not in_fac(z, u):
        ms, ws = _left_mutation(a, u, vs, z)
        return reg.make(a, ms, ws)
    d = dual_pair(reg, p)
    op = a.opposite()
    target = op.projective(z) if not isinstance(z, Module) else transpose(z)
    kd = next(i for i, y in enumerate(d.summands) if reg.reg(op).lookup(y) == reg.reg(op).lookup(target))
    du, dvs, dz = d.removed(kd)
    if in_fac(dz, du):
        raise ArithmeticError("summand lies in Fac of the rest on both sides")
    ms, ws = _left_mutation(op, du, dvs, dz)
    return dual_pair(reg, reg.make(op, ms, ws))


def regular_pair(a: Algebra, reg: PairRegistry) -> STPair:
    return reg.make(a, [a.projective(v) for v in range(a.n_vertices)], [])


@dataclass
class MutationResult:
    pairs: list[STPair]
    complete: bool
    edges: list[tuple[int, int, int]]

    def to_dot(self) -> str:
        lines = ["graph mutation {"]
        for i, p in enumerate(self.pairs):
            lines.append(f'  n{i} [label="{p.label()}"];')
        for i, j, k in self.edges:
            lines.append(f'  n{i} -- n{j} [label="{k}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def graph(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(len(self.pairs)))
        g.add_edges_from((i, j) for i, j, _ in self.edges)
        return g


def enumerate_stt_mutation(a: Algebra, cap: int = 10000, registry: PairRegistry | None = None) -> MutationResult:
    """Breadth-first closure of ``(A, 0)`` under mutation, stopping at ``cap`` pairs."""
    reg = registry or PairRegistry(a)
    start = regular_pair(a, reg)
    index = {start.ids: 0}
    pairs = [start]
    queue = deque([0])
    edges = set()
    while queue:
        i = queue.popleft()
        p = pairs[i]
        for k in range(p.size):
            q = mutate(p, k, reg)
            j = index.get(q.ids)
            if j is None:
                if len(pairs) >= cap:
                    return _finish(pairs, edges, False)
                j = len(pairs)
                index[q.ids] = j
                pairs.append(q)
                queue.append(j)
            edges.add((min(i, j), max(i, j), k if i < j else -1))
    return _finish(pairs, edges, True)


def _finish(pairs, edges, complete) -> MutationResult:
    order = sorted(range(len(pairs)), key=lambda i: pairs[i].ids)
    new = {old: n for n, old in enumerate(order)}
    es = sorted({(min(new[i], new[j]), max(new[i], new[j]), k) for i, j, k in edges})
    uniq = {}
    for i, j, k in es:
        uniq.setdefault((i, j), k)
    return MutationResult([pairs[i] for i in order], complete, [(i, j, k) for (i, j), k in sorted(uniq.items())])


# -- tilting -------------------------------------------------------------------

def enumerate_tilting(a: Algebra, modules: list[Module] | None = None) -> list[Module]:
    """Basic tilting modules as ``n``-cliques of pd <= 1 rigid indecomposables with vanishing Ext^1."""
    if modules is None:
        modules = knit(a).modules
    cands = [x for x in modules if proj_dim(x) <= 1 and is_rigid(x)]
    g = nx.Graph()
    g.add_nodes_from(range(len(cands)))
    for i, j in itertools.combinations(range(len(cands)), 2):
        if ext(1, cands[i], cands[j]) == 0 and ext(1, cands[j], cands[i]) == 0:
            g.add_edge(i, j)
    out = []
    for c in nx.find_cliques(g):
        if len(c) == a.n_vertices:
            out.append(tuple(sorted(c)))
    return [direct_sum([cands[i] for i in c]) for c in sorted(out)]


# -- finiteness probe ------------------------------------------------------------

@dataclass
class ProbeVerdict:
    tilting_counts: tuple[int | None, int | None]
    hypothesis_i: bool | None
    hypothesis_ii: bool | None
    witnesses: list[Module]
    stt_count: int | None
    status: str


def theorem_2_11_probe(a: Algebra, knit_cap: int = CORPUS_CAP, mutation_cap: int = 10000) -> ProbeVerdict:
    """Two-sided tilting finiteness plus the grade condition on pd-2 tau-rigid indecomposables."""
    from .homolog import gl_dim
    if gl_dim(a) != 2:
        raise ValueError("global dimension must be 2")
    try:
        mods = knit(a, knit_cap).modules
        op_mods = knit(a.opposite(), knit_cap).modules
    except KnitCapExceeded:
        return ProbeVerdict((None, None), None, None, [], None, "inconclusive")
    counts = (len(enumerate_tilting(a, mods)), len(enumerate_tilting(a.opposite(), op_mods)))
    witnesses = [x for x in mods if is_tau_rigid(x) and proj_dim(x) == 2 and grade(x) != 2]
    h2 = not witnesses
    if not h2:
        return ProbeVerdict(counts, True, False, witnesses, None, "hypotheses not satisfied")
    res = enumerate_stt_mutation(a, mutation_cap)
    if not res.complete:
        raise TheoremViolation(f"hypotheses hold but mutation exceeded {mutation_cap} pairs")
    return ProbeVerdict(counts, True, True, [], len(res.pairs), "verified")
