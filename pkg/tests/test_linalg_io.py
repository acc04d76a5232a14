import json
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from conelat import linalg as la
from conelat.exactlat import Lattice, LatticeError
from conelat.io import dumps, lattice_from_dict, lattice_to_dict, load_lattice, parse_matrix, parse_vector

from .helpers import smith_saturated

entries = st.integers(-5, 5)


def test_frac_rejects_floats():
    with pytest.raises(TypeError):
        la.frac(0.5)
    assert la.frac("-3/2") == Fraction(-3, 2)


def test_fmt():
    assert la.fmt(Fraction(4, 2)) == "2"
    assert la.fmt(Fraction(-1, 3)) == "-1/3"


@given(st.lists(st.lists(entries, min_size=3, max_size=3), min_size=3, max_size=3))
@settings(max_examples=80, deadline=None)
def test_det_inverse_against_sympy(rows):
    m = la.mat(rows)
    d = la.det(m)
    assert d == sympy.Matrix(rows).det()
    if d != 0:
        assert la.matmul(m, la.inverse(m)) == la.identity(3)


@given(st.integers(1, 3), st.data())
@settings(max_examples=80, deadline=None)
def test_integer_kernel_is_saturated_basis(k, data):
    n = 4
    rows = [data.draw(st.lists(entries, min_size=n, max_size=n)) for _ in range(k)]
    ker = la.integer_kernel(rows, n)
    assert len(ker) == n - la.rank(la.mat(rows))
    for v in ker:
        assert all(sum(r[i] * v[i] for i in range(n)) == 0 for r in rows)
    assert smith_saturated(ker, n)
    hnf = la.hnf_rows(ker)
    assert len(hnf) == len(ker)
    assert sympy.Matrix(hnf).rank() == len(ker) if ker else True


def test_primitive_and_content():
    assert la.primitive((Fraction(2, 3), Fraction(4, 3))) == (1, 2)
    assert la.content((6, -9, 12)) == 3


def test_lattice_round_trip(tmp_path):
    L = Lattice([[2, 1], [1, -2]], label="pell", named={"x0": (1, 0)}, isometries={"g": [[1, 1], [1, 2]]})
    data = lattice_to_dict(L)
    p = tmp_path / "l.json"
    p.write_text(dumps(data))
    back = load_lattice(p)
    assert back == L
    assert back.vector("x0") == la.vec((1, 0))
    assert back.isometry("g") == la.mat([[1, 1], [1, 2]])


def test_lattice_file_errors(tmp_path):
    with pytest.raises(LatticeError):
        lattice_from_dict({"rank": 2})
    with pytest.raises(LatticeError):
        lattice_from_dict({"rank": 3, "gram": [[1, 0], [0, -1]]})
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(LatticeError):
        load_lattice(bad)


def test_parse_vector_forms():
    L = Lattice([[2, 0, 0], [0, -2, 0], [0, 0, -2]], named={"a": (1, 2, 3)})
    assert parse_vector(L, "a") == la.vec((1, 2, 3))
    assert parse_vector(L, "1,0,-1/2") == la.vec((1, 0, Fraction(-1, 2)))
    assert parse_vector(L, '[1, 0, "2/3"]') == la.vec((1, 0, Fraction(2, 3)))
    with pytest.raises(LatticeError):
        parse_vector(L, "1,2")
    with pytest.raises(LatticeError):
        parse_vector(L, "b")
    assert parse_matrix(L, json.dumps([[1, 0, 0], [0, 1, 0], [0, 0, 1]])) == la.identity(3)
    with pytest.raises(LatticeError):
        parse_matrix(L, "nope")


def test_dumps_sorted():
    assert dumps({"b": 1, "a": 2}) == '{"a": 2, "b": 1}'
