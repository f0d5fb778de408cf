from fractions import Fraction

import pytest

from matsing import (
    ParseError,
    Poly,
    catalog,
    catalog_names,
    parse_family,
    parse_poly,
    print_family,
)


def test_parse_poly_examples():
    assert parse_poly("x^5*z + x^3*y^3 + y^5*z", ["x", "y", "z"]).terms == {
        (5, 0, 1): Fraction(1), (3, 3, 0): Fraction(1),
        (0, 5, 1): Fraction(1)}
    p = parse_poly("1/2*(x + y)^2", ["x", "y"])
    assert p == parse_poly("1/2*x^2 + x*y + 1/2*y^2", ["x", "y"])


def test_parse_poly_errors():
    with pytest.raises(ParseError):
        parse_poly("x^-1", ["x"])
    with pytest.raises(ParseError):
        parse_poly("x y", ["x", "y"])
    with pytest.raises(ParseError):
        parse_poly("w + 1", ["x"])
    with pytest.raises(ParseError):
        parse_poly("1/0", ["x"])
    with pytest.raises(ParseError):
        parse_poly("(x + 1", ["x"])
    with pytest.raises(ParseError):
        parse_poly("", ["x"])


def test_parse_poly_signs():
    # A sign is allowed at the start of an expression (including inside
    # parentheses), but not doubled after a binary operator.
    assert parse_poly("-x + 2", ["x"]) == parse_poly("2 - x", ["x"])
    assert parse_poly("x - (-1)", ["x"]) == parse_poly("x + 1", ["x"])
    with pytest.raises(ParseError):
        parse_poly("x - -1", ["x"])


def test_parse_family_minimal_symmetric():
    spec = parse_family("kind=symmetric; vars=x,y,z; matrix=[[x,y],[y,z]]")
    assert spec.kind == "symmetric"
    assert spec.n == 2
    assert spec.variables == ["x", "y", "z"]
    fam = spec.to_family()
    assert fam.function() == parse_poly("x*z - y^2", ["x", "y", "z"])


def test_parse_family_skew_upper():
    spec = parse_family(
        "kind=skew; vars=x1..x6; upper=[[x1,x2,x3],[x4,x5],[x6]]")
    assert spec.n == 4
    ref = catalog("generic-skew-4")
    assert spec.entries == ref.entries


def test_parse_family_vars_range():
    spec = parse_family("kind=general; vars=x1..x4; matrix=[[x1,x2],[x3,x4]]")
    assert spec.variables == ["x1", "x2", "x3", "x4"]


def test_parse_family_comments_and_newlines():
    text = """
# a comment line
kind = symmetric
vars = x, y, z   # trailing comment
matrix = [[x, y],
          [y, z]]
expected.mu = 1
"""
    spec = parse_family(text)
    assert spec.n == 2
    assert spec.expected == {"mu": 1}


def test_parse_family_section():
    text = ("kind=section; vars=x,y; fvars=u,v,w; f=u*w - v^2;"
            " map=[x, y, x + y]")
    spec = parse_family(text)
    f, fmap = spec.to_section()
    assert f.nvars == 3
    assert fmap.source_nvars == 2
    with pytest.raises(ValueError):
        spec.to_family()


def test_parse_family_errors():
    cases = [
        "vars=x; matrix=[[x]]",                        # missing kind
        "kind=banana; vars=x; matrix=[[x]]",           # unknown kind
        "kind=symmetric; vars=x",                      # no matrix
        "kind=symmetric; vars=x; matrix=[[x]]; upper=[[x]]",
        "kind=symmetric; vars=x,y; matrix=[[x,]]",     # trailing comma
        "kind=symmetric; vars=x,y; matrix=[[x,y]]",    # not square
        "kind=symmetric; vars=x,y; matrix=[[x,x],[y,y]]",  # not symmetric
        "kind=skew; vars=x; matrix=[[x,x],[-x,0]]",    # nonzero diagonal
        "kind=skew; vars=x,y; matrix=[[0,x],[x,0]]",   # not skew
        "kind=symmetric; vars=x,x; matrix=[[x,x],[x,x]]",  # repeated var
        "kind=symmetric; vars=x; n=3; matrix=[[x]]",   # n mismatch
        "kind=symmetric; vars=x; matrix=[[x]]; matrix=[[x]]",  # repeated key
        "kind=symmetric; vars=x; matrix=[[x]]; shape=1",  # unknown key
        "kind=section; vars=x; fvars=u,v; f=u; map=[x]",  # map too short
        "kind=section; vars=x; f=x",                   # missing fvars/map
        "kind=symmetric; vars=x; matrix=[[x]]; f=x",   # f on a matrix kind
        "kind=section; vars=x; fvars=u; f=u; map=[x]; n=1",  # n on section
        "kind=symmetric; vars=x; expected.mu! = 1; matrix=[[x]]",
        "kind=symmetric; vars=x; matrix=[[x]",         # unbalanced bracket
    ]
    for text in cases:
        with pytest.raises(ParseError):
            parse_family(text)


def test_print_family_round_trip_catalog():
    entries = [("generic-sym-2", {}), ("generic-gen-2", {}),
               ("generic-skew-4", {}), ("normal-form-sym", {"n": 3}),
               ("normal-form-gen", {"n": 3}), ("normal-form-skew", {"n": 6}),
               ("diag-sym", {"a": (1, 2)}), ("remark-4-8-iii", {}),
               ("cross-ratio-example", {})]
    for name, params in entries:
        spec = catalog(name, **params)
        text = print_family(spec)
        back = parse_family(text)
        assert back.kind == spec.kind
        assert back.variables == spec.variables
        assert back.n == spec.n
        assert back.entries == spec.entries
        assert back.f == spec.f
        assert back.map_images == spec.map_images
        assert back.expected == spec.expected
        assert back.name == spec.name


def test_catalog_names_and_errors():
    assert "generic-sym-2" in catalog_names()
    with pytest.raises(KeyError):
        catalog("no-such-family")
    with pytest.raises(ValueError):
        catalog("diag-sym")
    with pytest.raises(ValueError):
        catalog("normal-form-skew", n=5)
    with pytest.raises(ValueError):
        catalog("normal-form-sym", n=1)


def test_catalog_expected_metadata():
    spec = catalog("remark-4-8-iii")
    assert spec.expected == {"mu": 25, "tau_function_right": 10,
                             "codim_minors": 19}
    assert catalog("cross-ratio-example").expected == {"mu": 9}


def test_catalog_normal_form_blocks():
    spec = catalog("normal-form-sym", n=4)
    fam = spec.to_family()
    # The lower-right block is an identity, so the determinant matches the
    # core 2x2 determinant.
    core = catalog("generic-sym-2").to_family()
    assert fam.function() == core.function()
    skew = catalog("normal-form-skew", n=6).to_family()
    assert skew.function() == catalog("generic-skew-4").to_family().function()


def test_catalog_diag_entries():
    spec = catalog("diag-sym", a=(1, 2))
    fam = spec.to_family()
    assert fam.entries.entry(0, 0) == parse_poly("x", ["x"])
    assert fam.entries.entry(1, 1) == parse_poly("x^2", ["x"])
    assert fam.entries.entry(0, 1).is_zero()
