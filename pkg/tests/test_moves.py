import pytest

from vconway.diagram import format_diagram, parse_diagram, relabeled, validate
from vconway.invariants import kink_factor, z_normalized, z_polynomial
from vconway.moves import (
    GeneratorConfig,
    KINK_TYPES,
    MoveError,
    MoveEvent,
    apply,
    enumerate_moves,
    random_diagram,
    random_walk,
)

R3_TRIPLE = "component: O1+ O2+\ncomponent: U1+ O3+\ncomponent: U2+ U3+"


# ---------------------------------------------------------------------------
# generator


def test_generator_deterministic():
    cfg = GeneratorConfig(5, 2, 1, seed=42)
    assert random_diagram(cfg) == random_diagram(cfg)
    other = random_diagram(GeneratorConfig(5, 2, 1, seed=43))
    assert other != random_diagram(cfg)


def test_generator_counts_and_validity():
    d = random_diagram(GeneratorConfig(4, 3, 2, seed=7))
    assert validate(d) == []
    assert d.n_classical() == 4
    assert len(d.double_ids()) == 2
    assert len(d.components) == 3


def test_generator_trivial_config():
    d = random_diagram(GeneratorConfig(0, 1, 0, seed=1))
    assert d.components == ((),)
    assert validate(d) == []


def test_generator_config_validation():
    with pytest.raises(ValueError):
        GeneratorConfig(-1, 1, 0, seed=0)
    with pytest.raises(ValueError):
        GeneratorConfig(1, 0, 0, seed=0)
    with pytest.raises(ValueError):
        GeneratorConfig(1, 1, -2, seed=0)


# ---------------------------------------------------------------------------
# single moves


def test_r1_round_trip(vtref):
    for gap in range(4):
        for over_first, sign in KINK_TYPES:
            kinked = apply(vtref, MoveEvent("R1_add", (0, gap, over_first, sign)))
            assert kinked.n_classical() == 3
            assert validate(kinked) == []
            back = apply(kinked, MoveEvent("R1_remove", (0, gap)))
            assert relabeled(back) == relabeled(vtref)


def test_r1_on_empty_component():
    e = parse_diagram("component:")
    kinked = apply(e, MoveEvent("R1_add", (0, 0, True, 1)))
    assert kinked.n_classical() == 1
    # both cyclic windows of the 2-token component are removal sites
    assert apply(kinked, MoveEvent("R1_remove", (0, 0))).components == ((),)
    assert apply(kinked, MoveEvent("R1_remove", (0, 1))).components == ((),)


def test_r1_kink_multiplies_z_by_table_factor(vtref):
    base = z_polynomial(vtref)
    for over_first, sign in KINK_TYPES:
        kinked = apply(vtref, MoveEvent("R1_add", (0, 2, over_first, sign)))
        assert z_polynomial(kinked) == kink_factor(over_first, sign) * base


@pytest.mark.parametrize(
    "site",
    [
        ((0, 1), (0, 3), "O", True, 1),
        ((0, 1), (0, 3), "O", False, -1),
        ((0, 0), (1, 0), "U", True, 1),
        ((0, 2), (1, 0), "U", False, -1),
    ],
)
def test_r2_round_trip(site):
    two = parse_diagram("component: O1+ O2+ U1+ U2+\ncomponent:")
    grown = apply(two, MoveEvent("R2_add", site))
    assert grown.n_classical() == 4
    assert validate(grown) == []
    removals = [m for m in enumerate_moves(grown) if m.kind == "R2_remove"]
    assert removals
    assert any(relabeled(apply(grown, m)) == relabeled(two) for m in removals)


def test_r2_same_gap_rejected():
    two = parse_diagram("component: O1+ O2+ U1+ U2+\ncomponent:")
    with pytest.raises(MoveError, match="inapplicable move"):
        apply(two, MoveEvent("R2_add", ((0, 1), (0, 1), "O", True, 1)))


def test_r3_sites_and_involution():
    d = parse_diagram(R3_TRIPLE)
    sites = [m for m in enumerate_moves(d) if m.kind == "R3"]
    assert sites
    z0 = z_normalized(d)
    for m in sites:
        moved = apply(d, m)
        assert validate(moved) == []
        assert moved.n_classical() == 3
        assert z_normalized(moved) == z0
        assert apply(moved, m) == d


def test_r3_negative_variant():
    d = parse_diagram("component: U1- U2-\ncomponent: O1- U3-\ncomponent: O2- O3-")
    sites = [m for m in enumerate_moves(d) if m.kind == "R3"]
    assert sites
    for m in sites:
        assert apply(apply(d, m), m) == d


def test_stale_sites_rejected(vtref):
    with pytest.raises(MoveError, match="inapplicable move"):
        apply(vtref, MoveEvent("R1_remove", (0, 0)))
    with pytest.raises(MoveError, match="inapplicable move"):
        apply(vtref, MoveEvent("R2_remove", ((0, 0), (0, 2))))
    with pytest.raises(MoveError, match="inapplicable move"):
        apply(vtref, MoveEvent("R3", ((0, 0), (0, 1), (0, 2), "L+")))
    with pytest.raises(MoveError, match="unknown kind"):
        apply(vtref, MoveEvent("R9", ()))
    with pytest.raises(MoveError):
        apply(vtref, MoveEvent("R1_add", (5, 0, True, 1)))


def test_enumerated_moves_all_apply():
    import random

    rng = random.Random(4)
    for seed in range(12):
        d = random_diagram(GeneratorConfig(2 + seed % 3, 1 + seed % 2, 0, seed=seed))
        moves = enumerate_moves(d)
        sample = rng.sample(moves, min(len(moves), 25))
        for m in sample:
            out = apply(d, m)
            assert validate(out) == []
            assert len(out.components) == len(d.components)


def test_enumerate_rejects_singular():
    d = parse_diagram("component: A1 B1")
    with pytest.raises(ValueError):
        enumerate_moves(d)
    with pytest.raises(ValueError):
        random_walk(d, 3, seed=0)


# ---------------------------------------------------------------------------
# walks


def test_walk_deterministic_and_valid():
    d0 = random_diagram(GeneratorConfig(3, 2, 0, seed=5))
    w1 = random_walk(d0, 40, seed=11)
    w2 = random_walk(d0, 40, seed=11)
    assert w1 == w2
    assert validate(w1) == []
    assert len(w1.components) == 2
    assert random_walk(d0, 40, seed=12) != w1


def test_walk_respects_crossing_cap():
    d0 = random_diagram(GeneratorConfig(2, 1, 0, seed=9))
    cur = d0
    import random

    rng = random.Random(0)
    for _ in range(30):
        cur = random_walk(cur, 1, seed=rng.randrange(1 << 30), max_crossings=5)
        # the escape hatch may overshoot by one kink when stuck, never more
        assert cur.n_classical() <= 6


def test_walk_preserves_normalized_z():
    import random

    rng = random.Random(44)
    for _ in range(60):
        k, c = rng.randint(1, 4), rng.randint(1, 2)
        d = random_diagram(GeneratorConfig(k, c, 0, seed=rng.randrange(1 << 30)))
        w = random_walk(d, 20, seed=rng.randrange(1 << 30))
        assert z_normalized(w) == z_normalized(d)


def test_walk_changes_raw_z_by_positive_x_power_only():
    import random

    from vconway.laurent import lowest_x_exponent

    rng = random.Random(45)
    seen_shift = False
    for _ in range(40):
        d = random_diagram(GeneratorConfig(rng.randint(1, 4), rng.randint(1, 2), 0,
                                           seed=rng.randrange(1 << 30)))
        z0 = z_polynomial(d)
        if z0.is_zero():
            continue
        w = random_walk(d, 15, seed=rng.randrange(1 << 30))
        z1 = z_polynomial(w)
        k = lowest_x_exponent(z1) - lowest_x_exponent(z0)
        assert z1 == z0.shifted(k, 0)
        if k != 0:
            seen_shift = True
    assert seen_shift
