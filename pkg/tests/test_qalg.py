
import numpy as np
import pytest
from hypothesis import given, strategies as st

from qha.auslander import builtin
from qha.exactlin import Field, rank
from qha.qalg import (AlgebraError, BoundTooSmall, NotAdmissible, Relation, build_algebra, dual_D,
                      indecomposable_injective, indecomposable_projective, quiver_from, regular_module, simple)

F = Field(101)


def all_paths(a, max_len):
    """Every path of length < max_len as (source, target, labels)."""
    q = a.quiver
    out = [(v, v, ()) for v in q.vertices]
    frontier = [(x.source, x.target, (x.label,)) for x in q.arrows]
    while frontier and len(frontier[0][2]) < max_len:
        out += frontier
        frontier = [(s, x.target, p + (x.label,)) for s, t, p in frontier for x in q.arrows if x.source == t]
    return out


def naive_dimension(a):
    """Paths modulo the span of all p * r * q, computed in the full path space."""
    paths = all_paths(a, a.bound)
    index = {p[2] if p[2] else ("e", p[0]): i for i, p in enumerate(paths)}
    by_end = {}
    for s, t, p in paths:
        by_end.setdefault(t, []).append((s, p))
    by_start = {}
    for s, t, p in paths:
        by_start.setdefault(s, []).append((t, p))
    arrows = {x.label: x for x in a.quiver.arrows}
    rows = []
    for r in a.relations:
        s = arrows[r.terms[0][1][0]].source
        t = arrows[r.terms[0][1][-1]].target
        for _, left in by_end.get(s, []):
            for _, right in by_start.get(t, []):
                vec = np.zeros(len(paths), dtype=np.int64)
                for c, p in r.terms:
                    word = left + p + right
                    if len(word) < a.bound:
                        vec[index[word]] = F.element(c)
                rows.append(vec % 101)
    return len(paths) - (rank(np.array(rows), F) if rows else 0)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_gamma_dimension_formula(n):
    # dim End(K[x]/x^1 + ... + K[x]/x^n) = sum_{i,j} min(i, j)
    a = builtin(f"gamma_{n}", F)
    assert a.dim == n * (n + 1) * (2 * n + 1) // 6


@pytest.mark.parametrize("name", ["gamma_2", "gamma_3", "aus_a2", "aus_a3", "kx3", "a3_path"])
def test_dimension_matches_naive_ideal_span(name):
    a = builtin(name, F)
    assert a.dim == naive_dimension(a)


def test_gamma2_basis():
    a = builtin("gamma_2", F)
    assert sorted(a.path_label(i) for i in range(a.dim)) == ["a1", "b2", "b2*a1", "e1", "e2"]
    assert a.check_associativity()


@pytest.mark.parametrize("name", ["gamma_3", "aus_a3"])
def test_associativity(name):
    assert builtin(name, F).check_associativity()


def test_aus_a3_shape():
    a = builtin("aus_a3", F)
    assert a.n_vertices == 6 and a.n_arrows == 6 and len(a.relations) == 3


def test_opposite_is_involutive():
    a = builtin("gamma_3", F)
    op = a.opposite()
    assert op.opposite() is a
    assert op.dim == a.dim
    assert (op.dimension_matrix() == a.dimension_matrix().T).all()


def test_projective_injective_dims_gamma2():
    a = builtin("gamma_2", F)
    assert indecomposable_projective(a, "1").dims == (1, 1)
    assert indecomposable_projective(a, "2").dims == (1, 2)
    assert indecomposable_injective(a, "1").dims == (1, 1)
    assert indecomposable_injective(a, "2").dims == (1, 2)
    assert regular_module(a).dim == a.dim
    assert dual_D(simple(a, "1")).algebra is a.opposite()


def test_non_admissible_relations():
    q = quiver_from("12", [("a", "1", "2")])
    with pytest.raises(NotAdmissible):
        build_algebra(q, [Relation.of("a")], 3, F)


def test_unknown_arrow_in_relation():
    q = quiver_from("12", [("a", "1", "2")])
    with pytest.raises(AlgebraError):
        build_algebra(q, [Relation.of("a*zz")], 3, F)


def test_bound_too_small():
    q = quiver_from("1", [("x", "1", "1")])
    with pytest.raises(BoundTooSmall):
        build_algebra(q, [Relation.of("x*x*x")], 2, F)


@st.composite
def acyclic_quivers(draw):
    n = draw(st.integers(1, 4))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), max_size=5)) if pairs else []
    verts = [f"v{i}" for i in range(n)]
    arrows = [(f"x{k}", verts[i], verts[j]) for k, (i, j) in enumerate(chosen)]
    return quiver_from(verts, arrows)


@given(acyclic_quivers())
def test_path_algebra_dimension_counts_paths(q):
    a = build_algebra(q, [], max(2, q.vertices.__len__() + 1), F)
    assert a.dim == len(all_paths(a, a.bound))
    assert a.opposite().dim == a.dim
    assert sum(a.projective(v).dim for v in range(a.n_vertices)) == a.dim
