from importlib.resources import files

import numpy as np
import pytest
from hypothesis import given, strategies as st

from qha.auslander import builtin, grade_zero_module, layered_gamma4_module
from qha.exactlin import Field
from qha.formats import FormatError, parse_algebra, parse_module, print_algebra, print_module, resolve_algebra
from qha.qalg import simple
from qha.repmod import is_isomorphic, random_module

F = Field(101)
DATA = files("qha") / "data"


@pytest.mark.parametrize("name", ["gamma2.alg", "gamma3.alg", "ausa3.alg"])
def test_algebra_fixtures_round_trip(name):
    text = (DATA / name).read_text()
    a = parse_algebra(text)
    assert print_algebra(a) == text
    assert a.dim == builtin(a.name, a.field).dim


def test_module_fixtures_match_builtins(gamma4, aus_a3):
    m = parse_module((DATA / "layered_g4.mod").read_text(), field=F)
    assert is_isomorphic(m, layered_gamma4_module(gamma4))
    m = parse_module((DATA / "grade0_ausa3.mod").read_text(), field=F)
    assert is_isomorphic(m, grade_zero_module(aus_a3))


def test_module_round_trip_is_byte_identical():
    text = (DATA / "layered_g4.mod").read_text()
    assert print_module(parse_module(text, field=F), "builtin:gamma_4") == text


def test_relative_algebra_path(tmp_path):
    (tmp_path / "g.alg").write_text((DATA / "gamma2.alg").read_text())
    (tmp_path / "s.mod").write_text("module S\nalgebra g.alg\ndims 1 0\n")
    m = parse_module((tmp_path / "s.mod").read_text(), base=tmp_path)
    assert m.dims == (1, 0) and m.algebra.name == "gamma_2"


def test_field_override():
    a = parse_algebra((DATA / "gamma2.alg").read_text(), Field(7))
    assert a.field.characteristic == 7
    assert resolve_algebra("builtin:gamma_2", field=Field(0)).field.is_rational


@pytest.mark.parametrize("text,line,fragment", [
    ("algebra x\nbound 2\nvertex 1\narrow a 1 9\n", 4, "unknown vertex"),
    ("algebra x\nbound 2\nvertex 1\narrow a 1 1\nrelation 1 a*b\n", 5, "unknown arrow 'b'"),
    ("algebra x\nbound 2\nvertex 1\nvertex 1\n", 4, "duplicate vertex"),
    ("algebra x\nbound 2\nvertex 1\nfrobnicate\n", 4, "unknown keyword"),
    ("algebra x\nfield banana\nbound 2\nvertex 1\n", 2, "bad field"),
])
def test_algebra_parse_errors_carry_positions(text, line, fragment):
    with pytest.raises(FormatError) as info:
        parse_algebra(text)
    assert info.value.line == line and fragment in str(info.value)


def test_algebra_without_vertices_or_bound():
    with pytest.raises(FormatError, match="no vertices"):
        parse_algebra("algebra x\nbound 2\n")
    with pytest.raises(FormatError, match="bound"):
        parse_algebra("algebra x\nvertex 1\n")


def test_unknown_arrow_column():
    with pytest.raises(FormatError) as info:
        parse_algebra("algebra x\nbound 2\nvertex 1\narrow a 1 1\nrelation 1 a*zz\n")
    assert info.value.column == len("relation 1 a*") + 1


@pytest.mark.parametrize("body,fragment", [
    ("dims 1 1\n", "'dims' needs"),
    ("dims 1 1 0 0\narrow a2 2x2\n1 0\n", "ends early"),
    ("dims 0 1 1 0\narrow a2 1x2\n1 0\n", "needs a 1x1"),
    ("dims 0 1 1 0\narrow zz 1x1\n1\n", "unknown arrow"),
])
def test_module_parse_errors(body, fragment):
    with pytest.raises(FormatError, match=fragment):
        parse_module("module M\nalgebra builtin:gamma_4\n" + body, field=F)


def test_module_violating_relations_is_rejected():
    with pytest.raises(FormatError):
        parse_module("module M\nalgebra builtin:gamma_2\ndims 1 1\narrow a1 1x1\n1\narrow b2 1x1\n1\n", field=F)


@given(st.sampled_from(["gamma_2", "gamma_3", "aus_a3", "kx3"]), st.integers(0, 10 ** 6))
def test_module_print_parse_round_trip(name, seed):
    a = builtin(name, F)
    m = random_module(a, np.random.default_rng(seed))
    back = parse_module(print_module(m), algebra=a)
    assert back.dims == m.dims
    assert all(np.array_equal(x, y) for x, y in zip(back.actions, m.actions))


@given(st.sampled_from(["gamma_1", "gamma_3", "a3_path", "kx4", "aus_a2"]))
def test_algebra_print_parse_round_trip(name):
    a = builtin(name, F)
    b = parse_algebra(print_algebra(a))
    assert print_algebra(b) == print_algebra(a) and b.dim == a.dim


def test_simple_module_text(gamma2):
    assert print_module(simple(gamma2, "1"), "builtin:gamma_2").splitlines()[2] == "dims 1 0"
