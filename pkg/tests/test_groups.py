import pytest

from sepprof.groups import (FiniteGroup, GroupValidationError, cayley_graph,
                            cyclic_table, direct_product_group,
                            direct_product_table, klein_four, read_group_file,
                            symmetric_group_3_table, validate_group,
                            write_group_file)


def test_klein_four_projection_splits():
    g = klein_four()
    assert g.order == 4 and g.identity == 0
    # abelian with A, B the factors: proj is the identity splitting
    for x in g.elements():
        a, b = g.proj_elements(x)
        assert g.mul(a, b) == x


def test_constructor_requires_validation():
    with pytest.raises(TypeError):
        FiniteGroup(cyclic_table(3), A=(0,), B=(0,))


def test_s3_quotient_failure():
    table, perms = symmetric_group_3_table()
    e = perms.index((0, 1, 2))
    a = perms.index((1, 0, 2))      # the transposition (01)
    b = perms.index((1, 2, 0))      # a 3-cycle
    b2 = perms.index((2, 0, 1))
    with pytest.raises(GroupValidationError, match="order 2"):
        validate_group(table, A=(e, a), B=(e, b, b2))


def test_not_generating():
    table, perms = symmetric_group_3_table()
    e = perms.index((0, 1, 2))
    a = perms.index((1, 0, 2))
    with pytest.raises(GroupValidationError, match="not generating"):
        validate_group(table, A=(e, a), B=(e, a))


def test_non_associative_rejected():
    table = [[0, 1, 2], [1, 2, 0], [2, 1, 0]]
    with pytest.raises(GroupValidationError):
        validate_group(table, A=(0,), B=(0,))


def test_subgroup_closure_checked():
    table = direct_product_table(cyclic_table(2), cyclic_table(2))
    with pytest.raises(GroupValidationError, match="A not closed"):
        validate_group(table, A=(0, 1, 2), B=(0, 3))


def test_direct_product_group_z2_z3():
    g = direct_product_group(2, 3)
    assert g.order == 6
    assert len(g.A) == 2 and len(g.B) == 3
    for x in g.elements():
        a, b = g.proj_elements(x)
        assert g.mul(a, b) == x


def test_projection_is_decomposition_invariant():
    # products of A-parts of any decomposition equal the A-part of the product
    g = klein_four()
    for x in g.elements():
        for y in g.elements():
            xa, xb = g.proj_abstract(x)
            ya, yb = g.proj_abstract(y)
            za, zb = g.proj_abstract(g.mul(x, y))
            # abelian A, B of order 2: abstract positions add mod 2
            assert za == (xa + ya) % 2 and zb == (xb + yb) % 2


def test_cayley_graph_of_klein_four_is_c4():
    cg = cayley_graph(klein_four())
    assert cg.vertex_count == 4 and cg.edge_count == 4
    assert all(cg.degree(v) == 2 for v in range(4))


def test_group_file_roundtrip(tmp_path):
    g = direct_product_group(2, 3)
    path = tmp_path / "g.grp"
    write_group_file(g, path)
    h = read_group_file(path)
    assert h.table == g.table and h.A == g.A and h.B == g.B


def test_group_file_requires_sections(tmp_path):
    path = tmp_path / "bad.grp"
    path.write_text("order 2\ntable\n0 1\n1 0\n")
    with pytest.raises(ValueError, match="A and B"):
        read_group_file(path)
