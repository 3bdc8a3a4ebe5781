import pytest

from yangbaxter import perms


def test_compose_applies_right_factor_first():
    p = (1, 2, 0)
    q = (0, 2, 1)
    assert perms.compose(p, q) == tuple(p[q[i]] for i in range(3))


def test_invert_round_trip():
    p = (2, 0, 3, 1)
    assert perms.compose(p, perms.invert(p)) == perms.identity(4)
    assert perms.compose(perms.invert(p), p) == perms.identity(4)


@pytest.mark.parametrize(
    "text,n,expected",
    [
        ("(12)", 4, (1, 0, 2, 3)),
        ("(1 2)(3 4)", 4, (1, 0, 3, 2)),
        ("(1324)", 4, (2, 3, 1, 0)),
        ("id", 3, (0, 1, 2)),
        ("(13872465)", 8, (2, 3, 7, 5, 0, 4, 1, 6)),
    ],
)
def test_from_cycles(text, n, expected):
    assert perms.from_cycles(text, n) == expected


def test_from_cycles_rejects_garbage():
    with pytest.raises(ValueError):
        perms.from_cycles("(12", 4)
    with pytest.raises(ValueError):
        perms.from_cycles("(15)", 4)
    with pytest.raises(ValueError):
        perms.from_cycles("(11)", 4)


def test_cycle_round_trip():
    p = perms.from_cycles("(1 3)(2 5 4)", 6)
    assert perms.from_cycles(perms.to_cycles(p), 6) == p


def test_cycle_type_counts_fixed_points():
    assert perms.cycle_type((1, 0, 2, 3)) == (1, 1, 2)
    assert perms.cycle_type((0, 1, 2)) == (1, 1, 1)


def test_full_cycle_detection():
    assert perms.is_full_cycle((1, 2, 3, 0))
    assert not perms.is_full_cycle((1, 0, 3, 2))
    assert perms.is_full_cycle((0,))


def test_all_perms_lex_order_identity_first():
    ps = perms.all_perms(3)
    assert len(ps) == 6
    assert ps[0] == (0, 1, 2)
    assert ps == sorted(ps)
