import random

import pytest

from knncensus.epi import (
    kernels_equal,
    normalize,
    normalized_epis,
    power_pair_epi,
    triality_rotate,
    triality_transpose,
    validate,
)
from knncensus.errors import (
    NeedsRotation,
    NotSurjective,
    SCongruence,
    SumCongruence,
)
from knncensus.group import Elt, group_params


def test_validate_accepts_reference_tuple():
    gp = group_params(3, 2, 1)
    epi = validate(gp, 1, 1, 7, 0, 1, -(4**7))
    assert (epi.u, epi.v, epi.w) == (1, 1, 7)
    assert epi.s_inf == 5


def test_validate_rejections_name_the_congruence():
    gp = group_params(3, 2, 1)
    with pytest.raises(SumCongruence):
        validate(gp, 1, 1, 1, 0, 1, 5)
    with pytest.raises(SCongruence):
        validate(gp, 1, 1, 7, 0, 1, 0)
    with pytest.raises(NotSurjective):
        validate(gp, 3, 6, 0, 0, 1, -gp.qp(0))


def test_normalize_is_idempotent_and_direct():
    gp = group_params(3, 2, 1)
    epi = validate(gp, 1, 1, 7, 0, 1, 5)
    assert normalize(gp, epi) == epi
    assert normalize(gp, epi).s_inf == (-(4**7)) % 9


def test_normalize_requires_coprime_exponents():
    gp = group_params(3, 2, 1)
    epi = validate(gp, 1, 3, 5, 0, 1, -gp.qp(5))
    rotated = triality_rotate(gp, epi)
    assert rotated.u == 3
    with pytest.raises(NeedsRotation):
        normalize(gp, rotated)


def test_normalize_preserves_the_kernel():
    gp = group_params(3, 2, 1)
    rng = random.Random(2)
    n = gp.pp.n
    produced = 0
    while produced < 8:
        u, v = rng.randrange(n), rng.randrange(n)
        s0, s1 = rng.randrange(n), rng.randrange(n)
        w = (-u - v) % n
        s_inf = (-(s0 * gp.qp(v + w) + s1 * gp.qp(w))) % n
        try:
            epi = validate(gp, u, v, w, s0, s1, s_inf)
        except (SumCongruence, SCongruence, NotSurjective):
            continue
        if u % 3 == 0 or v % 3 == 0:
            continue
        produced += 1
        assert kernels_equal(gp, epi, normalize(gp, epi))


def test_rotation_cycles_exponents_and_preserves_validity():
    gp = group_params(3, 2, 1)
    epi = validate(gp, 1, 1, 7, 0, 1, 5)
    r1 = triality_rotate(gp, epi)
    assert (r1.u, r1.v, r1.w) == (1, 7, 1)
    r3 = triality_rotate(gp, triality_rotate(gp, r1))
    assert (r3.u, r3.v, r3.w) == (epi.u, epi.v, epi.w)
    assert kernels_equal(gp, epi, r3)


def test_transpose_swaps_and_twists():
    gp = group_params(3, 2, 1)
    epi = validate(gp, 1, 1, 7, 0, 1, 5)
    t = triality_transpose(gp, epi)
    assert (t.u, t.v, t.w) == (1, 1, 7)
    # third image becomes g**w h**(s q**u)
    assert t.s_inf == (5 * gp.qp(1)) % 9
    t2 = triality_transpose(gp, t)
    assert kernels_equal(gp, epi, t2)


def test_triality_orbit_gives_all_permutations():
    gp = group_params(3, 2, 1)
    epi = validate(gp, 1, 2, 6, 0, 1, -gp.qp(6))
    seen = set()
    frontier = [epi]
    while frontier:
        cur = frontier.pop()
        key = (cur.u, cur.v, cur.w, cur.s0, cur.s1, cur.s_inf)
        if key in seen:
            continue
        seen.add(key)
        frontier.append(triality_rotate(gp, cur))
        frontier.append(triality_transpose(gp, cur))
    triples = {(u, v, w) for (u, v, w, *_ ) in seen}
    import itertools

    assert triples == set(itertools.permutations((1, 2, 6)))


def test_rotation_with_distinct_residues_changes_the_kernel():
    gp = group_params(3, 2, 1)
    epi = validate(gp, 1, 2, 6, 0, 1, -gp.qp(6))
    rotated = triality_rotate(gp, epi)
    assert (rotated.u % 3, rotated.v % 3) != (epi.u % 3, epi.v % 3)
    assert not kernels_equal(gp, epi, rotated)


def test_triality_moves_preserve_validity_everywhere():
    for params in [(3, 2, 1), (5, 2, 1)]:
        gp = group_params(*params)
        for epi in normalized_epis(gp):
            triality_rotate(gp, epi)
            triality_transpose(gp, epi)


def test_kernels_equal_is_an_equivalence_on_samples():
    gp = group_params(3, 2, 1)
    epis = list(normalized_epis(gp))[:6]
    for a in epis:
        assert kernels_equal(gp, a, a)
        for b in epis:
            assert kernels_equal(gp, a, b) == kernels_equal(gp, b, a)
    for a in epis:
        for b in epis:
            for c in epis:
                if kernels_equal(gp, a, b) and kernels_equal(gp, b, c):
                    assert kernels_equal(gp, a, c)


def test_normalized_epis_enumeration_shape():
    gp = group_params(3, 2, 1)
    epis = list(normalized_epis(gp))
    assert len(epis) == 54
    assert all(e.s0 == 0 and e.s1 == 1 for e in epis)
    assert all(e.u % 3 != 0 for e in epis)


def test_power_pair_epi_images():
    gp = group_params(3, 2, 1)
    epi = power_pair_epi(gp, 2, 1)
    x, y, _ = epi.images()
    assert x == Elt(2, 0)
    assert y == gp.power(Elt(1, 1), 1)
    with pytest.raises(NeedsRotation):
        power_pair_epi(gp, 3, 1)
