from math import comb

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qha.auslander import builtin, grade_zero_module, layered_gamma4_module, knit
from qha.exactlin import Field
from qha.homolog import grade, proj_dim, tau
from qha.qalg import simple
from qha.repmod import hom_dim, is_isomorphic, random_module
from qha.taurigid import (PairRegistry, enumerate_stt_mutation, enumerate_stt_repfinite, enumerate_tilting,
                          g_vector, in_fac, is_rigid, is_support_tau_tilting, is_tau_rigid, module_report, mutate,
                          regular_pair, theorem_2_11_probe, tr_bijection)

from oracles import brute_force_stt_count

F = Field(101)


def catalan(n):
    return comb(2 * n, n) // (n + 1)


# -- rigidity --------------------------------------------------------------------

@pytest.mark.parametrize("name", ["gamma_2", "gamma_3", "aus_a3"])
def test_projectives_and_simples(name):
    a = builtin(name, F)
    for v in range(a.n_vertices):
        assert is_tau_rigid(a.projective(v)) and is_rigid(a.projective(v))
        s = simple(a, v)
        assert is_rigid(s)
        if is_tau_rigid(s):
            assert hom_dim(s, tau(s)) == 0


@pytest.mark.parametrize("name", ["gamma_2", "gamma_3", "aus_a2", "aus_a3"])
def test_criteria_agree_on_every_indecomposable(name):
    for x in knit(builtin(name, F)).modules:
        rep = module_report(x)
        assert rep.agreement
        if rep.is_tau_rigid:
            assert rep.is_rigid


@given(st.integers(0, 10 ** 6))
def test_criteria_agree_on_random_modules(seed):
    a = builtin("gamma_3", F)
    m = random_module(a, np.random.default_rng(seed))
    rep = module_report(m)
    assert rep.agreement and (rep.is_rigid or not rep.is_tau_rigid)


def test_layered_gamma4_module_is_tau_rigid(gamma4):
    rep = module_report(layered_gamma4_module(gamma4))
    assert rep.pd == 1 and rep.id == 2 and rep.is_rigid and rep.is_tau_rigid
    assert rep.criteria_used.get("pd1-criterion") is True


def test_grade_zero_witness(aus_a3):
    m = grade_zero_module(aus_a3)
    rep = module_report(m)
    assert rep.is_tau_rigid and rep.pd == 2 and rep.grade == 0


# -- transpose bijection ------------------------------------------------------------

@pytest.mark.parametrize("name,size", [("gamma_2", 1), ("gamma_3", 4), ("aus_a2", 1), ("aus_a3", 5)])
def test_transpose_bijection(name, size):
    b = tr_bijection(builtin(name, F))
    assert b.is_bijection and len(b.set_g) == size
    assert all(grade(x) == 2 for x in b.set_g)


def test_grade_zero_witness_outside_bijection(aus_a3):
    b = tr_bijection(aus_a3)
    m = grade_zero_module(aus_a3)
    assert not any(is_isomorphic(m, x) for x in b.set_g)


# -- support tau-tilting pairs ----------------------------------------------------

def test_trivial_pairs(gamma3):
    reg = PairRegistry(gamma3)
    assert is_support_tau_tilting(regular_pair(gamma3, reg))
    assert is_support_tau_tilting(reg.make(gamma3, [], range(3)))
    assert not is_support_tau_tilting(reg.make(gamma3, [gamma3.projective(0)], [1]))


def test_pair_with_overlapping_support_fails(gamma2):
    reg = PairRegistry(gamma2)
    p = reg.make(gamma2, [gamma2.projective(0)], [0])
    assert not is_support_tau_tilting(p)
    assert p.certificate["hom(P1,M0)"] == 1


@pytest.mark.parametrize("name,expected", [("a2_path", 5), ("a3_path", 14), ("gamma_2", 6), ("aus_a2", 12)])
def test_clique_count_matches_subset_search(name, expected):
    a = builtin(name, F)
    pairs = enumerate_stt_repfinite(a, registry=PairRegistry(a))
    assert len(pairs) == brute_force_stt_count(a) == expected
    assert all(is_support_tau_tilting(p) for p in pairs)


@pytest.mark.parametrize("n", [2, 3])
def test_path_algebra_counts_are_catalan(n):
    assert len(enumerate_stt_mutation(builtin(f"a{n}_path", F)).pairs) == catalan(n + 1)


@pytest.mark.parametrize("name", ["a2_path", "gamma_2", "aus_a2", "gamma_3"])
def test_clique_and_mutation_agree(name):
    a = builtin(name, F)
    reg = PairRegistry(a)
    clique = {p.ids for p in enumerate_stt_repfinite(a, registry=reg)}
    res = enumerate_stt_mutation(a, registry=reg)
    assert res.complete and clique == {p.ids for p in res.pairs}


def test_a2_mutation_graph_is_a_pentagon(a2):
    g = enumerate_stt_mutation(a2).graph()
    assert nx.is_isomorphic(g, nx.cycle_graph(5))


@pytest.mark.parametrize("name", ["gamma_2", "gamma_3", "aus_a3"])
def test_mutation_graph_is_regular_and_connected(name):
    a = builtin(name, F)
    res = enumerate_stt_mutation(a)
    g = res.graph()
    assert nx.is_connected(g)
    assert {d for _, d in g.degree()} == {a.n_vertices}


@settings(max_examples=25)
@given(st.data())
def test_mutation_is_an_involution(data):
    a = builtin(data.draw(st.sampled_from(["gamma_2", "aus_a2", "gamma_3"])), F)
    reg = PairRegistry(a)
    pairs = enumerate_stt_mutation(a, registry=reg).pairs
    p = data.draw(st.sampled_from(pairs))
    k = data.draw(st.integers(0, p.size - 1))
    q = mutate(p, k, reg)
    assert q.ids != p.ids and is_support_tau_tilting(q)
    kept = set(p.ids[0]) & set(q.ids[0]), set(p.ids[1]) & set(q.ids[1])
    assert sum(map(len, kept)) == p.size - 1
    back = [mutate(q, j, reg) for j in range(q.size)]
    assert any(r.ids == p.ids for r in back)


def test_mutation_cap_gives_partial_result(gamma3):
    res = enumerate_stt_mutation(gamma3, cap=3)
    assert not res.complete and len(res.pairs) == 3


def test_mutation_dot(a2):
    dot = enumerate_stt_mutation(a2).to_dot()
    assert dot.startswith("graph") and dot.count(" -- ") == 5


def test_in_fac(gamma2):
    p0, s = gamma2.projective(0), simple(gamma2, 0)
    assert in_fac(s, [p0]) and not in_fac(p0, [s])


def test_g_vectors_of_projectives(gamma3):
    for v in range(3):
        g = g_vector(gamma3.projective(v))
        assert g == tuple(int(w == v) for w in range(3))


# -- tilting and the finiteness probe --------------------------------------------------

@pytest.mark.parametrize("name,count", [("a2_path", 2), ("gamma_2", 2), ("gamma_3", 6), ("aus_a3", 12)])
def test_tilting_counts_both_sides(name, count):
    a = builtin(name, F)
    assert len(enumerate_tilting(a)) == count
    assert len(enumerate_tilting(a.opposite())) == count


def test_tilting_modules_are_support_tau_tilting(gamma3):
    reg = PairRegistry(gamma3)
    for t in enumerate_tilting(gamma3):
        assert proj_dim(t) <= 1 and is_rigid(t) and is_tau_rigid(t)
        from qha.repmod import indecomposable_summands
        assert is_support_tau_tilting(reg.make(gamma3, indecomposable_summands(t), []))


@pytest.mark.parametrize("name,count", [("gamma_2", 6), ("gamma_3", 24)])
def test_probe_verifies(name, count):
    v = theorem_2_11_probe(builtin(name, F))
    assert v.status == "verified" and v.stt_count == count


def test_probe_reports_failed_hypothesis(aus_a3):
    v = theorem_2_11_probe(aus_a3)
    assert v.status == "hypotheses not satisfied" and v.hypothesis_ii is False
    assert any(is_isomorphic(w, grade_zero_module(aus_a3)) for w in v.witnesses)


def test_probe_inconclusive_when_knitting_stops(gamma4):
    assert theorem_2_11_probe(gamma4, knit_cap=20).status == "inconclusive"
