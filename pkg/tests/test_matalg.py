from fractions import Fraction

import pytest

from matsing import (
    INFINITE,
    KINDS,
    MatrixFamily,
    Poly,
    PolyMatrix,
    flatten,
    generic_family,
    minors_ideal,
    parse_poly,
    quotient_dimension,
    sl_coords,
    space_dim,
    sub_pfaffian_matrix,
    unflatten,
)
from matsing.matalg import (adjugate, determinant, gl_basis, pfaffian,
                            skew_basis, sl_basis, sym_basis)

from oracle import random_poly


def P(text, names=("x", "y")):
    return parse_poly(text, list(names))


def random_matrix(rng, n, nvars):
    return PolyMatrix([[random_poly(rng, nvars, max_degree=2, terms=3,
                                    zero_constant=False)
                        for _ in range(n)] for _ in range(n)], nvars)


def random_skew(rng, n, nvars):
    z = Poly.zero(nvars)
    grid = [[z] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            p = random_poly(rng, nvars, max_degree=2, terms=2,
                            zero_constant=False)
            grid[i][j] = p
            grid[j][i] = -p
    return PolyMatrix(grid, nvars)


def test_determinant_known_values():
    m = PolyMatrix([[P("x"), P("y")], [P("y"), P("x")]], 2)
    assert determinant(m) == P("x^2 - y^2")
    c = PolyMatrix([[Poly.constant(0, Fraction(a)) for a in row]
                    for row in ((2, 0, 1), (1, 3, -1), (0, 5, 1))], 0)
    assert determinant(c) == Fraction(21)


def test_adjugate_identity(rng):
    for n in (1, 2, 3):
        m = random_matrix(rng, n, 2)
        det = determinant(m)
        left = adjugate(m) @ m
        right = m @ adjugate(m)
        expect = PolyMatrix.identity(n, 2).scale(det)
        assert left == expect
        assert right == expect


def test_pfaffian_generic_four():
    fam = generic_family("skew", 4)
    assert fam.function() == parse_poly(
        "x1*x6 - x2*x5 + x3*x4", [f"x{i}" for i in range(1, 7)])


def test_pfaffian_squares_to_determinant(rng):
    for n in (2, 4, 6):
        s = random_skew(rng, n, 2)
        pf = pfaffian(s)
        assert pf * pf == determinant(s)


def test_pfaffian_rejects_bad_shapes():
    odd = PolyMatrix([[Poly.zero(1)]], 1)
    with pytest.raises(ValueError):
        pfaffian(odd)
    not_skew = PolyMatrix([[P("x"), P("y")], [P("y"), P("x")]], 2)
    with pytest.raises(ValueError):
        pfaffian(not_skew)


def test_sub_pfaffian_identity(rng):
    for n in (2, 4):
        s = random_skew(rng, n, 2)
        comp = sub_pfaffian_matrix(s)
        pf = pfaffian(s)
        expect = PolyMatrix.identity(n, 2).scale(pf)
        assert comp @ s == expect
        assert s @ comp == expect


def test_sub_pfaffian_two_by_two():
    s = PolyMatrix([[Poly.zero(2), P("x")], [P("-x"), Poly.zero(2)]], 2)
    comp = sub_pfaffian_matrix(s)
    assert comp.entry(0, 1) == Poly.constant(2, -1)
    assert comp.entry(1, 0) == Poly.constant(2, 1)
    assert comp.entry(0, 0).is_zero() and comp.entry(1, 1).is_zero()


def test_matrix_ring_operations():
    a = PolyMatrix([[P("x"), P("y")], [Poly.zero(2), P("x")]], 2)
    b = PolyMatrix([[P("y"), Poly.zero(2)], [P("x"), P("y")]], 2)
    assert (a @ b).entry(0, 0) == P("x*y + x*y")
    assert (a + b - b) == a
    assert a.transpose().entry(0, 1).is_zero()
    assert (a @ b).trace() == P("2*x*y") + P("x*y")


def test_block_assembly():
    z = Poly.zero(1)
    x = Poly.variable(1, 0)
    a = PolyMatrix([[x]], 1)
    grid = [[a, None], [None, a]]
    m = PolyMatrix.block(grid, [1, 1], [1, 1], 1)
    assert m.entry(0, 0) == x and m.entry(1, 1) == x
    assert m.entry(0, 1) == z


def test_zero_row_matrices_keep_columns():
    m = PolyMatrix.zeros(0, 3, 2)
    assert m.rows == 0 and m.cols == 3
    t = m.transpose()
    assert t.rows == 3 and t.cols == 0
    prod = t @ m
    assert prod.rows == 3 and prod.cols == 3 and prod.is_zero()


def test_flatten_round_trips(rng):
    for kind, n in (("symmetric", 3), ("skew", 4), ("general", 2)):
        fam = generic_family(kind, n)
        coords = flatten(kind, fam.entries)
        assert len(coords) == space_dim(kind, n)
        back = unflatten(kind, coords, n, fam.m)
        assert back == fam.entries


def test_sl_coords_round_trip():
    m = PolyMatrix([[P("x"), P("y")], [P("x^2"), P("-x")]], 2)
    coords = sl_coords(m)
    assert len(coords) == 3
    trace_full = PolyMatrix([[P("x"), P("y")], [P("y"), P("x")]], 2)
    with pytest.raises(ValueError):
        sl_coords(trace_full)


def test_constant_bases_shapes():
    assert len(sym_basis(3, 1)) == 6
    assert len(skew_basis(4, 1)) == 6
    assert len(gl_basis(2, 1)) == 4
    assert len(sl_basis(3, 1)) == 8
    for b in skew_basis(4, 1):
        assert (b + b.transpose()).is_zero()


def test_family_validation():
    with pytest.raises(ValueError):
        MatrixFamily("symmetric", 2, 2,
                     PolyMatrix([[P("x"), P("y")], [P("x"), P("y")]], 2))
    with pytest.raises(ValueError):
        MatrixFamily("skew", 2, 2,
                     PolyMatrix([[P("x"), P("y")], [P("-y"), Poly.zero(2)]],
                                2))
    with pytest.raises(ValueError):
        MatrixFamily("nonsense", 2, 2,
                      PolyMatrix([[P("x"), P("y")], [P("y"), P("x")]], 2))


def test_generic_family_structure():
    for kind in KINDS:
        n = 4 if kind == "skew" else 2
        fam = generic_family(kind, n)
        assert fam.m == space_dim(kind, n)
        assert not fam.function().is_zero()


def test_minors_ideal_generic_colengths():
    fam = generic_family("symmetric", 2)
    b = minors_ideal(fam, 1)
    assert quotient_dimension(b) == 1
    skew = generic_family("skew", 4)
    sub = minors_ideal(skew, 2)
    assert quotient_dimension(sub) == 1
    with pytest.raises(ValueError):
        minors_ideal(skew, 3)
    unit = minors_ideal(fam, 0)
    assert quotient_dimension(unit) == 0


def test_minors_ideal_full_size_is_function():
    fam = generic_family("general", 2)
    b = minors_ideal(fam, 2)
    assert len(b.generators) == 1
    assert b.generators[0][0] == fam.function()


def test_matrix_of_partials():
    from matsing.matalg import matrix_of_partials
    g = P("x^2*y + y^3")
    assert list(matrix_of_partials(g)) == [P("2*x*y"), P("x^2 + 3*y^2")]
