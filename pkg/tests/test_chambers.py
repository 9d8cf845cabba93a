import pytest

from twisted_hurwitz.chambers import (ChamberSignature, Wall, adjacent_pairs,
                                      chamber_sample, chamber_signature,
                                      iter_chamber_points, lattice_points,
                                      realized_chambers, wall_list)
from twisted_hurwitz.exceptions import (ChamberEmptyError,
                                        InvalidPartitionError, OnWallError)


def test_wall_list():
    assert wall_list(2, 2) == [Wall((0,), (0,)), Wall((0,), (1,))]
    assert wall_list(1, 3) == []
    assert len(wall_list(2, 3)) == 6


def test_wall_text():
    wall = Wall((0,), (0,))
    assert str(wall) == "I=1:J=1"
    assert Wall.parse("I=1:J=1", 2, 2) == wall
    # stored with the first part of mu in I
    assert Wall.parse("I=2:J=1", 2, 2) == Wall((0,), (1,))


@pytest.mark.parametrize("text", ["I=3:J=1", "I=1,2:J=1", "J=1", "I=x:J=1"])
def test_wall_parse_rejects(text):
    with pytest.raises(InvalidPartitionError):
        Wall.parse(text, 2, 2)


def test_wall_form():
    wall = Wall((0,), (0,))
    assert wall.form((3, 1), (2, 2)) == 1
    assert wall.complement(2, 2) == ((1,), (1,))


def test_chamber_signature():
    signature = chamber_signature((3, 1), (2, 2))
    assert signature.signs == (1, 1)
    assert str(signature) == "+,+"
    assert ChamberSignature.parse("+,+", 2, 2) == signature
    assert str(signature.crossed(Wall((0,), (0,)))) == "-,+"


def test_chamber_signature_on_wall():
    with pytest.raises(OnWallError):
        chamber_signature((2, 2), (2, 2))


def test_signature_parse_length():
    with pytest.raises(InvalidPartitionError):
        ChamberSignature.parse("+", 2, 2)


def test_lattice_points_order():
    points = list(lattice_points(1, 2, 3))
    assert points[:3] == [((2,), (1, 1)), ((3,), (1, 2)), ((3,), (2, 1))]
    assert all(sum(mu) == sum(nu) for mu, nu in points)


def test_first_point_of_a_chamber():
    signature = ChamberSignature(2, 2, (1, 1))
    assert next(iter_chamber_points(signature, 40)) == ((3, 1), (2, 2))


def test_chamber_sample():
    signature = ChamberSignature(2, 2, (1, 1))
    sample = chamber_sample(signature, 3, 40)
    assert len(sample) == 3
    assert all(chamber_signature(mu, nu) == signature for mu, nu in sample)
    with pytest.raises(ChamberEmptyError):
        chamber_sample(signature, 5, 3)


def test_realized_chambers():
    assert len(realized_chambers(2, 2, 10)) == 4
    assert realized_chambers(1, 2, 10) == [ChamberSignature(1, 2, ())]


def test_adjacent_pairs():
    wall = Wall((0,), (0,))
    pairs = adjacent_pairs(2, 2, wall, 10)
    assert len(pairs) == 2
    for positive, negative in pairs:
        assert positive.signs[0] == 1
        assert negative == positive.crossed(wall)
