import random

import pytest

from knncensus.errors import BoundExceeded, ParameterError
from knncensus.group import (
    IDENTITY,
    Elt,
    GroupAut,
    apply_aut,
    brute_force_automorphisms,
    compose_auts,
    enumerate_auts,
    group_params,
    invert_aut,
    is_automorphism,
    linking_aut,
    power_sum_table,
)


def rewrite_mul(n, q, x, y):
    """Naive product by word rewriting with h g -> g h**q, then exponent counting."""
    word = ["g"] * x[0] + ["h"] * x[1] + ["g"] * y[0] + ["h"] * y[1]
    i = 0
    while i + 1 < len(word):
        if word[i] == "h" and word[i + 1] == "g":
            word[i : i + 2] = ["g"] + ["h"] * q
            i = max(i - 1, 0)
        else:
            i += 1
    return (word.count("g") % n, word.count("h") % n)


def test_product_law_matches_word_rewriting():
    gp = group_params(3, 2, 1)
    for xa in range(4):
        for xb in range(4):
            for ya in range(4):
                for yb in range(4):
                    got = gp.mul(Elt(xa, xb), Elt(ya, yb))
                    assert tuple(got) == rewrite_mul(9, 4, (xa, xb), (ya, yb))


def test_product_law_pinned_examples():
    gp = group_params(3, 2, 1)
    assert gp.mul(Elt(0, 1), Elt(1, 0)) == Elt(1, 4)
    assert gp.mul(Elt(0, 0), Elt(5, 7)) == Elt(5, 7)
    assert gp.power(Elt(1, 1), 3) == Elt(3, 3)
    assert gp.power(Elt(1, 1), 9) == IDENTITY
    assert gp.order(Elt(1, 1)) == 9


def test_group_axioms_on_random_triples():
    rng = random.Random(7)
    for p, e, f in [(3, 2, 1), (3, 3, 2), (5, 2, 1)]:
        gp = group_params(p, e, f)
        n = gp.pp.n
        for _ in range(200):
            x, y, z = (Elt(rng.randrange(n), rng.randrange(n)) for _ in range(3))
            assert gp.mul(gp.mul(x, y), z) == gp.mul(x, gp.mul(y, z))
            assert gp.mul(x, IDENTITY) == x
            assert gp.mul(IDENTITY, x) == x
            assert gp.mul(x, gp.inv(x)) == IDENTITY
            assert gp.mul(gp.inv(x), x) == IDENTITY


def test_every_element_has_exponent_n():
    for p, e, f in [(3, 2, 1), (3, 2, 2)]:
        gp = group_params(p, e, f)
        for x in gp.elements():
            assert gp.power(x, gp.pp.n) == IDENTITY


def test_h_generates_a_normal_subgroup():
    gp = group_params(3, 2, 1)
    h = Elt(0, 1)
    for x in gp.elements():
        conj = gp.mul(gp.mul(x, h), gp.inv(x))
        assert conj.a == 0


def test_h_power_m_is_central():
    for p, e, f in [(3, 2, 1), (5, 2, 1)]:
        gp = group_params(p, e, f)
        central = Elt(0, gp.m)
        for x in gp.elements():
            assert gp.mul(x, central) == gp.mul(central, x)


def test_order_of_generators():
    gp = group_params(3, 3, 1)
    assert gp.order(Elt(1, 0)) == 27
    assert gp.order(Elt(0, 1)) == 27
    assert gp.order(IDENTITY) == 1


def test_generating_pair_criterion():
    gp = group_params(3, 2, 1)
    g, h = Elt(1, 0), Elt(0, 1)
    assert gp.is_generating_pair(g, h)
    assert not gp.is_generating_pair(g, g)
    assert gp.is_generating_pair(Elt(1, 1), Elt(1, 2))


def test_generating_pair_forces_full_order():
    gp = group_params(3, 2, 1)
    n = gp.pp.n
    for x in gp.elements():
        for y in (Elt(1, 0), Elt(1, 1), Elt(2, 1)):
            if gp.is_generating_pair(x, y):
                assert gp.order(x) == n
                assert gp.order(y) == n
                assert gp.order(gp.mul(x, y)) == n


def test_is_automorphism_examples():
    gp = group_params(3, 2, 1)
    assert is_automorphism(gp, 1, 1, 0, 1)
    assert is_automorphism(gp, 1, 0, 0, 1)
    assert not is_automorphism(gp, 2, 0, 0, 1)


def test_enumerate_auts_counts_and_identity():
    gp = group_params(3, 2, 1)
    auts = list(enumerate_auts(gp))
    assert len(auts) == 486
    assert GroupAut(1, 0, 0, 1) in auts


def test_enumerate_auts_equals_brute_force_n9():
    for f in (1, 2):
        gp = group_params(3, 2, f)
        assert sorted(set(enumerate_auts(gp))) == brute_force_automorphisms(gp)


def test_enumeration_bound():
    gp = group_params(3, 2, 1)
    with pytest.raises(BoundExceeded):
        list(enumerate_auts(gp, bound=10))
    with pytest.raises(BoundExceeded):
        brute_force_automorphisms(gp, bound=10)


def test_apply_aut_is_a_homomorphism():
    gp = group_params(3, 2, 1)
    rng = random.Random(11)
    auts = list(enumerate_auts(gp))
    for _ in range(50):
        aut = rng.choice(auts)
        x = Elt(rng.randrange(9), rng.randrange(9))
        y = Elt(rng.randrange(9), rng.randrange(9))
        assert apply_aut(gp, aut, gp.mul(x, y)) == gp.mul(
            apply_aut(gp, aut, x), apply_aut(gp, aut, y)
        )


def test_apply_aut_examples():
    gp = group_params(3, 2, 1)
    ident = GroupAut(1, 0, 0, 1)
    for x in gp.elements():
        assert apply_aut(gp, ident, x) == x
    assert apply_aut(gp, GroupAut(1, 1, 0, 1), Elt(1, 0)) == Elt(1, 1)


def test_compose_and_invert_auts():
    gp = group_params(3, 2, 1)
    rng = random.Random(3)
    auts = list(enumerate_auts(gp))
    g, h = Elt(1, 0), Elt(0, 1)
    for _ in range(10):
        a, b = rng.choice(auts), rng.choice(auts)
        ab = compose_auts(gp, a, b)
        for x in (g, h, Elt(2, 5)):
            assert apply_aut(gp, ab, x) == apply_aut(gp, a, apply_aut(gp, b, x))
        inv = invert_aut(gp, a)
        assert compose_auts(gp, inv, a) == GroupAut(1, 0, 0, 1)


def test_linking_aut_examples():
    gp = group_params(3, 2, 1)
    g, gh = Elt(1, 0), Elt(1, 1)
    stab = linking_aut(gp, g, gh, g, gh)
    assert stab is not None
    assert apply_aut(gp, stab, g) == g
    assert linking_aut(gp, g, gh, Elt(2, 0), gh) is None


def test_linking_aut_agrees_with_plain_scan():
    gp = group_params(3, 2, 1)
    rng = random.Random(5)
    pairs = []
    while len(pairs) < 6:
        x = Elt(rng.randrange(9), rng.randrange(9))
        y = Elt(rng.randrange(9), rng.randrange(9))
        if gp.is_generating_pair(x, y):
            pairs.append((x, y))
    for x1, y1 in pairs:
        for x2, y2 in pairs:
            expected = None
            for aut in enumerate_auts(gp):
                if apply_aut(gp, aut, x1) == x2 and apply_aut(gp, aut, y1) == y2:
                    expected = aut
                    break
            assert linking_aut(gp, x1, y1, x2, y2) == expected


def test_family_sizes_and_relations_at_n27():
    # enumerate_auts re-verifies the conjugation relation on every member,
    # so materializing the family checks all of them at the oracle sizes
    expected = {(3, 3, 1): 9 * 27 * 18, (3, 3, 2): 81 * 27 * 18}
    for (p, e, f), count in expected.items():
        gp = group_params(p, e, f)
        assert sum(1 for _ in enumerate_auts(gp)) == count


def test_power_sum_table_matches_power():
    for p, e, f in [(3, 2, 1), (3, 3, 1), (3, 3, 2)]:
        gp = group_params(p, e, f)
        n = gp.pp.n
        sums = power_sum_table(gp)
        rng = random.Random(13)
        for _ in range(300):
            x = Elt(rng.randrange(n), rng.randrange(n))
            t = rng.randrange(n)
            fast = Elt(x.a * t % n, x.b * sums[x.a % gp.m][t] % n)
            assert fast == gp.power(x, t)


def test_f_out_of_range_rejected():
    with pytest.raises(ParameterError):
        group_params(3, 2, 3)
    with pytest.raises(ParameterError):
        group_params(3, 2, 0)
