import pytest

from knncensus.arith import unit_group_order
from knncensus.classify import (
    Atlas,
    CurveClass,
    atlas_csv_rows,
    build_atlas,
    canonical_triple,
    class_fibering,
    curve_aut_order,
    enumerate_classes,
    field_of_definition,
    galois_conjugate,
    galois_orbit,
    lift_epi,
    oracle_classify,
    representative_lift,
    scalar_stabilizer,
)
from knncensus.errors import AllDivisible, BoundExceeded, NotUnit
from knncensus.group import group_params


def test_canonical_triple_examples():
    gp7 = group_params(7, 2, 1)
    assert canonical_triple(gp7, 3, 45, 1).triple == (1, 3, 3)
    assert canonical_triple(gp7, 3, 6, 40).triple == (3, 5, 6)
    gp3 = group_params(3, 2, 1)
    assert canonical_triple(gp3, 1, 4, 4).triple == (1, 1, 1)
    assert canonical_triple(gp3, 1, 2, 6).triple == (0, 1, 2)
    with pytest.raises(AllDivisible):
        canonical_triple(gp3, 3, 3, 3)


def test_enumerate_classes_small_grids():
    gp = group_params(3, 2, 1)
    assert [c.triple for c in enumerate_classes(gp)] == [(0, 1, 2), (1, 1, 1), (2, 2, 2)]
    gp_fermat = group_params(3, 2, 2)
    assert [c.triple for c in enumerate_classes(gp_fermat)] == [(0, 0, 0)]
    gp7 = group_params(7, 2, 1)
    triples = {c.triple for c in enumerate_classes(gp7)}
    assert len(triples) == 11
    assert (1, 2, 4) in triples and (3, 5, 6) in triples


def test_galois_conjugation():
    gp = group_params(7, 2, 1)
    c = CurveClass(7, (1, 2, 4))
    assert galois_conjugate(gp, c, 1) == c
    assert galois_conjugate(gp, c, 3).triple == (3, 5, 6)
    assert galois_conjugate(gp, galois_conjugate(gp, c, 3), 5) == c  # 3*5 = 15 = 1 mod 7
    with pytest.raises(NotUnit):
        galois_conjugate(gp, c, 7)


def test_galois_orbits():
    gp7 = group_params(7, 2, 1)
    orbit = galois_orbit(gp7, CurveClass(7, (1, 2, 4)))
    assert [c.triple for c in orbit] == [(1, 2, 4), (3, 5, 6)]
    gp3 = group_params(3, 2, 1)
    orbit3 = galois_orbit(gp3, CurveClass(3, (1, 1, 1)))
    assert [c.triple for c in orbit3] == [(1, 1, 1), (2, 2, 2)]
    gpf = group_params(3, 2, 2)
    assert galois_orbit(gpf, CurveClass(1, (0, 0, 0))) == (CurveClass(1, (0, 0, 0)),)


def test_scalar_stabilizers():
    gp = group_params(7, 2, 1)
    assert scalar_stabilizer(gp, CurveClass(7, (1, 2, 4))) == [1, 2, 4]
    assert scalar_stabilizer(gp, CurveClass(7, (0, 1, 6))) == [1, 6]
    assert scalar_stabilizer(gp, CurveClass(7, (1, 1, 5))) == [1]


def test_orbit_stabilizer_product_over_m_grid():
    for p, e, f in [(3, 2, 1), (7, 2, 1), (3, 3, 1), (5, 3, 1), (3, 4, 1)]:
        gp = group_params(p, e, f)
        phi = unit_group_order(p, e - f)
        for c in enumerate_classes(gp):
            stab = scalar_stabilizer(gp, c)
            assert len(stab) in (1, 2, 3)
            assert len(galois_orbit(gp, c)) * len(stab) == phi
            if len(stab) == 3:
                assert p % 3 == 1


def test_field_of_definition_cases():
    gp7 = group_params(7, 2, 1)
    f124 = field_of_definition(gp7, CurveClass(7, (1, 2, 4)))
    assert (f124.kind, f124.degree) == ("IndexThree", 2)
    f016 = field_of_definition(gp7, CurveClass(7, (0, 1, 6)))
    assert (f016.kind, f016.degree) == ("MaximalReal", 3)
    gp3 = group_params(3, 2, 1)
    f012 = field_of_definition(gp3, CurveClass(3, (0, 1, 2)))
    assert (f012.kind, f012.degree, f012.description) == ("MaximalReal", 1, "Q")
    fermat = field_of_definition(group_params(3, 2, 2), CurveClass(1, (0, 0, 0)))
    assert (fermat.kind, fermat.degree, fermat.description) == ("Rational", 1, "Q")


def test_field_kinds_are_exclusive_and_exhaustive():
    kinds = {"Rational", "MaximalReal", "IndexThree", "FullCyclotomic"}
    for p, e, f in [(3, 2, 1), (3, 3, 1), (5, 2, 1), (7, 2, 1), (3, 2, 2)]:
        gp = group_params(p, e, f)
        for c in enumerate_classes(gp):
            fld = field_of_definition(gp, c)
            assert fld.kind in kinds
            assert fld.degree >= 1


def test_curve_aut_orders():
    gp7 = group_params(7, 2, 1)
    assert curve_aut_order(gp7, CurveClass(7, (1, 2, 4)))[0] == 2401
    assert curve_aut_order(gp7, CurveClass(7, (1, 1, 5)))[0] == 2 * 2401
    order, stab = curve_aut_order(group_params(3, 2, 2), CurveClass(1, (0, 0, 0)))
    assert order == 6 * 81
    assert len(stab) == 6


def test_representative_lift_properties():
    for p, e, f in [(3, 2, 1), (3, 3, 1), (7, 2, 1)]:
        gp = group_params(p, e, f)
        n = gp.pp.n
        for c in enumerate_classes(gp):
            u, v, w = representative_lift(gp, c)
            assert u % p != 0 and v % p != 0
            assert (u + v + w) % n == 0
            assert canonical_triple(gp, u, v, w) == c


def test_atlas_shape_and_determinism():
    gp = group_params(3, 2, 1)
    atlas = build_atlas(gp)
    assert isinstance(atlas, Atlas)
    assert atlas.to_json() == build_atlas(gp).to_json()
    data = atlas.to_dict()
    assert data["params"] == {"p": 3, "e": 2, "f": 1, "n": 9, "m": 3}
    assert [c["triple"] for c in data["classes"]] == [[0, 1, 2], [1, 1, 1], [2, 2, 2]]
    orbits = atlas.orbits()
    assert len(orbits) == 2
    for entry in atlas.entries:
        assert entry.genus == 28


def test_atlas_csv_rows():
    atlas = build_atlas(group_params(3, 2, 1))
    rows = atlas_csv_rows(atlas)
    assert rows[0][:6] == [3, 2, 1, 0, 1, 2]
    assert rows[1][8] == "1;1;1"
    assert all(len(row) == 11 for row in rows)


def test_lift_epi_is_normalized():
    gp = group_params(7, 2, 1)
    for c in enumerate_classes(gp):
        epi = lift_epi(gp, c)
        assert epi.is_normalized


def test_oracle_classify_matches_fibering_small():
    gp = group_params(3, 2, 1)
    blocks = oracle_classify(gp)
    assert len(blocks) == 3
    fibers = class_fibering(gp)
    assert {frozenset(b) for b in blocks} == {frozenset(v) for v in fibers.values()}


def test_oracle_bound():
    gp = group_params(7, 2, 1)
    with pytest.raises(BoundExceeded):
        oracle_classify(gp, bound=27)


def test_oracle_blocks_cross_checked_by_linking_search():
    # pairwise kernel equality through the independent linking search:
    # equal exactly on matching (u, v) residues mod m, and the oracle must
    # put kernel-equal tuples in one block
    from knncensus.epi import kernels_equal

    gp = group_params(3, 2, 1)
    m = gp.m
    blocks = oracle_classify(gp)
    block_of = {}
    for bi, block in enumerate(blocks):
        for epi in block:
            block_of[epi] = bi
    sample = [e for e in block_of if e.v < 5]
    for e1 in sample:
        for e2 in sample:
            same_kernel = kernels_equal(gp, e1, e2)
            assert same_kernel == (e1.u % m == e2.u % m and e1.v % m == e2.v % m)
            if same_kernel:
                assert block_of[e1] == block_of[e2]
