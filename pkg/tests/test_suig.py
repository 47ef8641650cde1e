import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ringgather.ring import Direction, ObservedConfig, dihedral_group, parse_config
from ringgather.suig import (
    AlgorithmVariant,
    MoveSet,
    Rule,
    compute_moves,
    compute_suir_moves,
    decide_per_robot,
    secondary_moves,
    would_create_periodic,
)
from ringgather.symmetry import ne_roles, node_edge_axis

NEG, POS = Direction.NEG, Direction.POS
FIG2 = parse_config("n=21;occ=2,6,9,10,11,12,15,19")
FIG3 = parse_config("n=21;occ=1,6,9,10,11,12,15,19")


def test_move_main_fig2():
    m = compute_moves(FIG2)
    assert m.rule is Rule.MOVE_MAIN
    assert m.as_dict() == {2: NEG, 19: POS}


def test_move_same_after_main_crash():
    m = compute_moves(FIG3)
    assert m.rule is Rule.MOVE_SAME
    assert m.as_dict() == {i: NEG for i in FIG3.occupied}


def test_l2_and_gathered():
    assert compute_moves(parse_config("n=9;occ=0,1")).as_dict() == {0: POS, 1: NEG}
    assert compute_moves(parse_config("n=9;occ=0,1")).rule is Rule.MOVE_L_TWO
    m = compute_moves(parse_config("n=9;occ=4"))
    assert not m and m.rule is Rule.GATHERED


def test_would_create_periodic():
    assert not would_create_periodic(FIG2)
    assert would_create_periodic(parse_config("n=21;occ=2,6,8,13,15,19"))
    assert not would_create_periodic(parse_config("n=9;occ=0,2,7"))
    with pytest.raises(ValueError):
        would_create_periodic(FIG3)


def test_main_and_secondary_branch():
    m = compute_moves(parse_config("n=21;occ=2,6,8,13,15,19"))
    assert m.rule is Rule.MOVE_MAIN_SECONDARY
    assert m.get(2) is NEG and m.get(19) is POS
    assert len(m.orders) == 4


def test_main_order_wins_for_a_robot_in_both_roles():
    m = compute_moves(parse_config("n=9;occ=3,7,8"))
    assert m.rule is Rule.MOVE_MAIN_SECONDARY
    assert m.as_dict() == {7: NEG, 8: POS}


def test_secondary_branch_with_mains_next_to_target():
    m = compute_moves(parse_config("n=9;occ=1,3,6,8"))
    assert m.rule is Rule.MOVE_SECONDARY
    assert m.as_dict() == {3: NEG, 6: POS}


def test_seven_ring_four_robots_moves_mains():
    m = compute_moves(parse_config("n=7;occ=1,3,4,6"))
    assert m.rule is Rule.MOVE_MAIN
    assert m.as_dict() == {1: NEG, 6: POS}


def test_secondary_steps_away_when_inner_neighbour_taken():
    c = parse_config("n=33;occ=0,2,14,15,18,19,31")
    assert secondary_moves(c, ne_roles(c, node_edge_axis(c))) == {15: POS, 18: NEG}


def test_move_opposite_orders_potentially_crashed_robots():
    c = parse_config("n=25;occ=0,3,6,8,11,14,17,19,23")
    m = compute_moves(c)
    assert m.rule is Rule.MOVE_OPPOSITE
    assert m.as_dict() == {3: NEG, 19: POS}


def test_move_opposite_shared_robot_goes_to_nearer_target():
    # both quasi-axes name node 8; targets 6 and 2 lie 2 and 5 hops away
    m = compute_moves(parse_config("n=11;occ=2,5,6,8,10"))
    assert m.rule is Rule.MOVE_OPPOSITE
    assert m.as_dict() == {8: NEG}


def test_suir_rule():
    assert compute_suir_moves(parse_config("n=8;occ=0,2")).as_dict() == {0: POS, 2: NEG}
    assert compute_suir_moves(parse_config("n=8;occ=0,1")).as_dict() == {0: POS, 1: NEG}
    assert not compute_suir_moves(parse_config("n=8;occ=3"))
    with pytest.raises(ValueError):
        compute_suir_moves(parse_config("n=8;occ=0,4"))
    with pytest.raises(ValueError):
        compute_suir_moves(parse_config("n=9;occ=0,2"))
    with pytest.raises(ValueError):
        compute_suir_moves(parse_config("n=8;occ=0,2,4"))


def test_ring_rule_rejects_bad_rings():
    with pytest.raises(ValueError):
        compute_moves(parse_config("n=8;occ=0,2"))
    with pytest.raises(ValueError):
        compute_moves(parse_config("n=3;occ=0"))


def test_decide_per_robot():
    assert decide_per_robot(FIG2, 2) is NEG
    assert decide_per_robot(FIG2, 6) is Direction.STAY
    assert decide_per_robot(parse_config("n=9;occ=4"), 4) is Direction.STAY
    assert decide_per_robot(parse_config("n=9;occ=0,1"), 0) is POS
    assert decide_per_robot(parse_config("n=8;occ=0,2"), 2, AlgorithmVariant.SUIR_SHORTEST_PATH) is NEG
    with pytest.raises(ValueError):
        decide_per_robot(FIG2, 3)


def test_moveset_build_drops_stay():
    m = MoveSet.build({1: Direction.STAY, 2: POS}, Rule.MOVE_MAIN)
    assert m.orders == ((2, POS),)
    assert m.get(1) is Direction.STAY


@st.composite
def odd_configs(draw):
    n = draw(st.sampled_from([5, 7, 9, 11, 13, 15]))
    occ = draw(st.sets(st.integers(0, n - 1), min_size=1, max_size=n))
    return ObservedConfig(n, frozenset(occ))


@settings(max_examples=300, deadline=None)
@given(odd_configs())
def test_equivariance(c):
    base = compute_moves(c)
    assert {i for i, _ in base.orders} <= c.occupied
    for g in dihedral_group(c.n):
        image = compute_moves(g.apply(c))
        assert image.rule is base.rule
        assert image.as_dict() == g.apply_orders(base.as_dict())


@given(st.sampled_from([4, 6, 8, 10, 12]), st.data())
def test_suir_equivariance(n, data):
    a, b = data.draw(st.lists(st.integers(0, n - 1), min_size=2, max_size=2, unique=True))
    if (a - b) % n == n // 2:
        return
    c = ObservedConfig(n, frozenset({a, b}))
    base = compute_suir_moves(c)
    for g in dihedral_group(n):
        assert compute_suir_moves(g.apply(c)).as_dict() == g.apply_orders(base.as_dict())
