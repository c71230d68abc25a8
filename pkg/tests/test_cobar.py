import random

import pytest

from helpers_coalgebras import divided_line, dual_numbers_dual, strip_degrees

from cobarlab.coalg import (
    extension_comodule,
    flatten,
    opposite,
    regular_comodule,
    symmetric_coalgebra,
    tensor_coalgebra,
)
from cobarlab.cobar import (
    CobarClass,
    build_cobar,
    class_coordinates,
    cobar_with_coefficients,
    cohomology_basis,
    ext_algebra_table,
    ext_product,
    ext_table,
    product_vector,
    reverse_tensor_vector,
)
from cobarlab.exactlin import QQ, GF


def test_square_zero_dual_table_is_all_ones():
    cx = build_cobar(dual_numbers_dual(), 6)
    table = ext_table(cx)
    assert table.dims() == [1, 1, 1, 1, 1, 1, 1]


def test_divided_line_table_is_all_ones():
    cx = build_cobar(divided_line(), 5)
    table = ext_table(cx)
    assert table.dims() == [1, 1, 1, 1, 1, 1]


def test_differential_squares_to_zero_by_hand():
    c = strip_degrees(flatten(tensor_coalgebra(2, 2, QQ)))
    cx = build_cobar(c, 3)
    for i in range(3):
        prod = cx.diff(i + 1, None) @ cx.diff(i, None)
        assert prod.is_zero()


def test_symmetric_truncation_window_is_exterior():
    g = symmetric_coalgebra(2, 4, QQ)
    table = ext_table(build_cobar(g, 4, 4))
    for i in range(5):
        for j in range(5):
            want = {(0, 0): 1, (1, 1): 2, (2, 2): 1}.get((i, j), 0)
            assert table.entries[(i, j)] == want


def test_tensor_truncation_window_has_generators_only():
    g = tensor_coalgebra(2, 3, QQ)
    cx = build_cobar(g, 3, 3)
    assert cx.cell_dim(2, 3) == 16
    table = ext_table(cx)
    for (i, j), v in table.entries.items():
        want = 1 if (i, j) == (0, 0) else (2 if (i, j) == (1, 1) else 0)
        assert v == want


def test_truncation_stability_of_graded_tables():
    t3 = ext_table(build_cobar(tensor_coalgebra(2, 3, QQ), 3, 3))
    t4 = ext_table(build_cobar(tensor_coalgebra(2, 4, QQ), 3, 3))
    assert t3 == t4
    s3 = ext_table(build_cobar(symmetric_coalgebra(2, 3, QQ), 3, 3))
    s4 = ext_table(build_cobar(symmetric_coalgebra(2, 4, QQ), 3, 3))
    assert s3 == s4


def test_jmax_beyond_truncation_rejected():
    g = tensor_coalgebra(2, 3, QQ)
    with pytest.raises(ValueError):
        build_cobar(g, 2, 4)


def test_jmax_rejected_for_finite_input():
    with pytest.raises(ValueError):
        build_cobar(dual_numbers_dual(), 2, 2)


def test_split_and_plain_finite_tables_agree():
    flat = flatten(tensor_coalgebra(2, 2, QQ))
    split_cx = build_cobar(flat, 3)
    plain_cx = build_cobar(strip_degrees(flat), 3)
    assert split_cx.kind == "finite-split"
    assert plain_cx.kind == "finite"
    assert ext_table(split_cx) == ext_table(plain_cx)
    assert ext_table(split_cx, threads=3) == ext_table(plain_cx)


def test_flat_symmetric_table_prefix():
    flat = flatten(symmetric_coalgebra(2, 4, QQ))
    table = ext_table(build_cobar(flat, 3), threads=2)
    assert table.dims() == [1, 2, 7, 17]


def test_coefficients_in_cofree_comodule_vanish_above_zero():
    c = dual_numbers_dual()
    cx = cobar_with_coefficients(c, regular_comodule(c), 2)
    assert ext_table(cx).dims() == [1, 0, 0]


def test_coefficients_in_extension_comodule():
    c = divided_line()
    m = extension_comodule(c, (QQ.zero, QQ.one, QQ.zero))
    cx = cobar_with_coefficients(c, m, 2)
    assert ext_table(cx).dims()[:2] == [1, 1]


def test_trivial_coefficients_match_plain_complex():
    from cobarlab.coalg import trivial_comodule

    c = divided_line()
    with_k = ext_table(cobar_with_coefficients(c, trivial_comodule(c), 3))
    plain = ext_table(build_cobar(c, 3))
    assert with_k.dims() == plain.dims()


def test_square_zero_dual_class_is_not_nilpotent():
    cx = build_cobar(dual_numbers_dual(), 4)
    (xi,) = cohomology_basis(cx, 1)
    sq = ext_product(cx, xi, xi)
    assert any(v != QQ.zero for v in sq.coords)
    cube = ext_product(cx, sq, xi)
    assert any(v != QQ.zero for v in cube.coords)


def test_divided_line_class_squares_to_zero():
    cx = build_cobar(divided_line(), 4)
    (xi,) = cohomology_basis(cx, 1)
    sq = ext_product(cx, xi, xi)
    assert all(v == QQ.zero for v in sq.coords)
    assert all(v == QQ.zero for v in sq.vector)


def test_unit_class_is_neutral():
    cx = build_cobar(strip_degrees(flatten(tensor_coalgebra(2, 2, QQ))), 3)
    (unit,) = cohomology_basis(cx, 0)
    for i in (1, 2):
        for cls in cohomology_basis(cx, i):
            left = ext_product(cx, unit, cls)
            right = ext_product(cx, cls, unit)
            assert left.coords == class_coordinates(cx, cls)
            assert right.coords == class_coordinates(cx, cls)


def test_product_vector_is_concatenation():
    cx = build_cobar(dual_numbers_dual(), 3)
    a = CobarClass(1, (QQ.from_int(2),))
    b = CobarClass(2, (QQ.from_int(3),))
    assert product_vector(cx, a, b) == (QQ.from_int(6),)


def test_opposite_has_same_table_and_reversal_carries_cocycles():
    flat = strip_degrees(flatten(tensor_coalgebra(2, 2, QQ)))
    op = opposite(flat)
    cx = build_cobar(flat, 3)
    cxop = build_cobar(op, 3)
    assert ext_table(cx) == ext_table(cxop)
    d = flat.dim - 1
    for i in (1, 2, 3):
        reps = cohomology_basis(cxop, i)
        coords = [class_coordinates(cx, CobarClass(i, reverse_tensor_vector(d, i, r.vector))) for r in reps]
        seen = {tuple(v) for v in coords}
        assert len(seen) == len(reps)
        assert all(any(x != QQ.zero for x in v) for v in coords)


def test_reversal_is_an_involution():
    rng = random.Random(20260816)
    d, deg = 3, 3
    vec = tuple(QQ.from_int(rng.randrange(-4, 5)) for _ in range(d**deg))
    assert reverse_tensor_vector(d, deg, reverse_tensor_vector(d, deg, vec)) == vec


def test_reversal_antihomomorphism_on_classes():
    flat = strip_degrees(flatten(tensor_coalgebra(2, 2, QQ)))
    op = opposite(flat)
    cx = build_cobar(flat, 3)
    cxop = build_cobar(op, 3)
    d = flat.dim - 1

    def transport(cls):
        return CobarClass(cls.degree, reverse_tensor_vector(d, cls.degree, cls.vector))

    for a in cohomology_basis(cxop, 1):
        for b in cohomology_basis(cxop, 1):
            ab = ext_product(cxop, a, b)
            lhs = class_coordinates(cx, transport(ab))
            rhs = ext_product(cx, transport(b), transport(a))
            assert lhs == rhs.coords


def test_mod_p_table_of_divided_line():
    table = ext_table(build_cobar(divided_line(GF(5)), 4))
    assert table.dims() == [1, 1, 1, 1, 1]


def test_ext_algebra_table_shape():
    cx = build_cobar(dual_numbers_dual(), 4)
    dims, products = ext_algebra_table(cx, 3)
    assert dims == [1, 1, 1, 1]
    assert products[(1, 2)][0][0] == (QQ.one,) or products[(1, 2)][0][0] == (QQ.from_int(-1),)


def test_graded_table_to_json_roundtrip_fields():
    g = tensor_coalgebra(2, 2, QQ)
    table = ext_table(build_cobar(g, 2, 2))
    payload = table.to_json()
    assert payload["kind"] == "graded"
    assert payload["imax"] == 2
    assert payload["jmax"] == 2
    assert [1, 1, 2] in [[i, j, v] for i, j, v in payload["entries"] if v]
