import pytest

from tiltree.formats import (FormatError, describe_module, describe_object, parse_algebra_file,
                             parse_complex_file, parse_module, parse_module_file, parse_object,
                             serialize_algebra, serialize_module)
from tiltree.modcat import is_isomorphic, simple


def test_algebra_round_trip(r6):
    again = parse_algebra_file(serialize_algebra(r6))
    assert again.dim == r6.dim
    assert serialize_algebra(again) == serialize_algebra(r6)


@pytest.mark.parametrize("text,line", [
    ("[vertices]\n1 2\n[arrows]\na 1 -> 2\n", 4),
    ("[vertices]\n1 2\n[arrows]\na: 1 -> 3\n", 4),
    ("[vertices]\n1 2 3\n[arrows]\na: 1 -> 2\nb: 2 -> 3\n[relations]\nb*c\n", 7),
    ("[field]\nGF(4)\n[vertices]\n1\n", 2),
])
def test_algebra_errors_carry_line_numbers(text, line):
    with pytest.raises(FormatError) as e:
        parse_algebra_file(text)
    assert e.value.line == line
    assert str(e.value).startswith(f"line {line}")


def test_algebra_missing_sections():
    with pytest.raises(FormatError, match="vertices"):
        parse_algebra_file("[arrows]\n")
    with pytest.raises(FormatError, match="unknown section"):
        parse_algebra_file("[vertices]\n1\n[bogus]\nx\n")


def test_field_override(r6):
    from tiltree.exactlin import GF
    alg = parse_algebra_file(serialize_algebra(r6), field=GF(7))
    assert alg.field.p == 7 and alg.dim == r6.dim


@pytest.mark.parametrize("desc", ["simple5", "simple 5", "S5", "S(5)", "5"])
def test_simple_spellings(r6, desc):
    assert is_isomorphic(parse_module(desc, r6), simple(r6, r6.vertex("5")))


def test_projective_and_injective_spellings(r6):
    assert describe_module(parse_module("P1", r6)) == "1/2"
    assert describe_module(parse_module("projective 6", r6)) == "6/5"
    assert describe_module(parse_module("injective5", r6)) == "4&6/5"


def test_thin_descriptors(r6):
    M = parse_module("4&6/5", r6)
    assert M.dims == (0, 0, 0, 1, 1, 1)
    assert describe_module(M) == "4&6/5"
    with pytest.raises(FormatError):
        parse_module("5/5", r6)
    with pytest.raises(FormatError):
        parse_module("1 + ", r6)
    with pytest.raises(FormatError, match="unknown vertex"):
        parse_module("7", r6)


def test_direct_sum_descriptor(t6):
    assert t6.dims == (1, 3, 2, 2, 1, 2)


def test_module_file_round_trip(r6):
    M = parse_module("4&6/5 + 2/3", r6)
    N = parse_module_file(serialize_module(M), r6)
    assert is_isomorphic(M, N)


@pytest.mark.parametrize("text,line", [
    ("[dims]\n0 0 0 1 1\n", 2),
    ("[dims]\n0 0 0 1 1 0\n[maps]\nzz: 1\n", 4),
    ("[dims]\n0 0 0 1 1 0\n[maps]\na4: 1 2\n", 4),
    ("[dims]\n0 0 0 1 x 0\n", 2),
])
def test_module_file_errors(r6, text, line):
    with pytest.raises(FormatError) as e:
        parse_module_file(text, r6)
    assert e.value.line == line


def test_module_file_relation_violation(r6):
    text = "[dims]\n0 1 1 1 0 0\n[maps]\na2: 1\na3: 1\n"
    with pytest.raises(FormatError):
        parse_module_file(text, r6)


def test_object_expressions(r6):
    x = parse_object("4&6/5->3/4->*2/3", r6)
    assert x.cohomology_dims() == {0: (0, 1, 0, 0, 0, 0), -2: (0, 0, 0, 0, 1, 1)}
    assert describe_object(parse_object("6/5[2]", r6)) == "6/5[2]"
    y = parse_object("(4/5->*3/4)[1]", r6)
    assert set(y.cohomology_dims()) == {-2, -1}
    with pytest.raises(FormatError, match="mark exactly one"):
        parse_object("4/5->3/4", r6)


def test_complex_file(r6):
    text = "[terms]\n-1: 4/5\n0: 3/4\n[differentials]\n-1: auto\n"
    x = parse_complex_file(text, r6)
    assert x.cohomology_dims() == {0: (0, 0, 1, 0, 0, 0), -1: (0, 0, 0, 0, 1, 0)}
    explicit = "[terms]\n-1: 4/5\n0: 3/4\n[differentials]\n-1: 4=1\n"
    assert parse_complex_file(explicit, r6).cohomology_dims() == x.cohomology_dims()
    with pytest.raises(FormatError) as e:
        parse_complex_file("[terms]\n0: 3\n[differentials]\n1: auto\n", r6)
    assert e.value.line == 4
