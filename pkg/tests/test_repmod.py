
import numpy as np
import pytest
from hypothesis import given, strategies as st

from qha.auslander import builtin
from qha.exactlin import Field
from qha.qalg import simple
from qha.repmod import (ModuleRegistry, cokernel, composition_factors, decompose,
                        direct_sum, hom_dim, hom_space, identity, image, indecomposable_summands,
                        is_indecomposable, is_injective, is_isomorphic, is_projective, kernel, module_key,
                        radical, random_module, socle, top, zero_module)

from oracles import brute_force_hom_count, small_modules

F = Field(101)
GF2 = Field(2)


@pytest.mark.parametrize("name", ["gamma_2", "a3_path", "aus_a2", "kx3"])
@given(seed=st.integers(0, 10 ** 6))
def test_hom_dimension_matches_gf2_enumeration(name, seed):
    alg = builtin(name, GF2)
    m = small_modules(alg, seed, 3)
    n = small_modules(alg, seed + 1, 6 - m.dim)
    assert 2 ** hom_dim(m, n) == brute_force_hom_count(m, n)


def test_hom_between_gamma2_projectives(gamma2):
    p1, p2 = gamma2.projective(0), gamma2.projective(1)
    assert hom_dim(p2, p1) == 1
    assert hom_dim(p1, p2) == 1
    assert hom_dim(p2, p2) == 2


def test_projective_and_injective_recognition(gamma2):
    p1, p2 = gamma2.projective(0), gamma2.projective(1)
    i1 = gamma2.injective(0)
    assert is_projective(p1) and is_projective(p2)
    assert is_injective(p2) and not is_injective(p1)
    assert is_isomorphic(p2, gamma2.injective(1))
    assert not is_isomorphic(p1, i1)


def test_regular_module_decomposes_into_projectives(gamma2):
    from qha.qalg import regular_module
    parts = decompose(regular_module(gamma2))
    assert sorted((x.dims, k) for x, k in parts) == [((1, 1), 1), ((1, 2), 1)]


def test_radical_of_top_projective(gamma2):
    rad, _ = radical(gamma2.projective(1))
    assert is_isomorphic(rad, gamma2.projective(0))


@given(st.integers(0, 10 ** 6))
def test_hom_from_projectives_reads_dimension_vector(seed):
    a = builtin("gamma_3", F)
    m = random_module(a, np.random.default_rng(seed))
    for v in range(a.n_vertices):
        assert hom_dim(a.projective(v), m) == m.dims[v]
        assert hom_dim(m, a.injective(v)) == m.dims[v]


@given(st.integers(0, 10 ** 6))
def test_decomposition_is_a_partition(seed):
    a = builtin("gamma_3", F)
    rng = np.random.default_rng(seed)
    m = direct_sum([random_module(a, rng), random_module(a, rng)])
    parts = indecomposable_summands(m)
    assert tuple(np.sum([p.dims for p in parts], axis=0)) == m.dims
    assert all(is_indecomposable(p) for p in parts)
    assert is_isomorphic(m, direct_sum(parts))


@given(st.integers(0, 10 ** 6))
def test_direct_sum_is_commutative_up_to_iso(seed):
    a = builtin("aus_a3", F)
    rng = np.random.default_rng(seed)
    x, y = random_module(a, rng), random_module(a, rng)
    assert is_isomorphic(direct_sum([x, y]), direct_sum([y, x]))


@given(st.integers(0, 10 ** 6))
def test_kernel_image_cokernel_dimensions(seed):
    a = builtin("gamma_2", F)
    rng = np.random.default_rng(seed)
    x, y = random_module(a, rng), random_module(a, rng)
    hs = hom_space(x, y)
    if not hs:
        return
    f = hs[0]
    k, _ = kernel(f)
    im, _ = image(f)
    c, _ = cokernel(f)
    assert tuple(np.add(k.dims, im.dims)) == x.dims
    assert tuple(np.add(c.dims, im.dims)) == y.dims
    assert f.commutes()


@given(st.integers(0, 10 ** 6))
def test_top_radical_socle(seed):
    a = builtin("gamma_3", F)
    m = random_module(a, np.random.default_rng(seed))
    rad, inc = radical(m)
    assert tuple(np.add(rad.dims, top(m).dims)) == m.dims
    assert inc.is_injective()
    assert socle(m).dim >= 1
    assert sum(composition_factors(m).values()) == m.dim


def test_composition_factors_of_projective(gamma2):
    assert composition_factors(gamma2.projective(1)) == {"1": 1, "2": 2}


def test_registry_deduplicates(gamma2):
    reg = ModuleRegistry(gamma2)
    i, new = reg.add(gamma2.projective(1))
    j, again = reg.add(gamma2.injective(1))
    assert new and not again and i == j
    assert reg.add(simple(gamma2, 0))[1]
    assert len(reg) == 2


def test_module_key_is_invariant(gamma2):
    assert module_key(gamma2.projective(1)) == module_key(gamma2.injective(1))
    assert module_key(zero_module(gamma2))[0] == 0


def test_identity_is_iso(gamma3):
    m = gamma3.projective(2)
    assert identity(m).is_iso()
