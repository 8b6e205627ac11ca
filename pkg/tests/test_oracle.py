import pytest

from qdissect.etalang import evaluate, parse
from qdissect.oracle import (
    CUBIC,
    ORDINARY,
    ORDINARY_PARTITIONS,
    P33_SPEC,
    ColoredPartitionSpec,
    convolution_oracle,
    count_dp,
)
from qdissect.series import EXACT


def test_p33_small_values():
    assert count_dp(P33_SPEC, 8) == [1, 3, 9, 25, 60, 135, 296, 609, 1215]


def test_hand_counts():
    # n=1: three colored 1s; n=2: three colored 2s plus C(3+1, 2) = 6 multisets of 1+1
    c = count_dp(P33_SPEC, 2)
    assert c[1] == 3 and c[2] == 3 + 6


def test_ordinary_partitions():
    assert count_dp(ORDINARY, 19) == ORDINARY_PARTITIONS


def test_cubic_partitions():
    a = count_dp(CUBIC, 60)
    assert a[2] == 3
    assert all(a[3 * n + 2] % 3 == 0 for n in range(19))


def test_chan_cooper_pairs():
    c = count_dp(ColoredPartitionSpec(2, ((3, 2),)), 81)
    assert all(c[2 * n + 1] % 2 == 0 for n in range(40))


def test_convolution_tail():
    p3 = count_dp(ColoredPartitionSpec(3), 8)
    assert p3 == [1, 3, 9, 22, 51, 108, 221, 429, 810]
    assert convolution_oracle(8)[8] == 810 + 108 * 3 + 9 * 9 == 1215
    assert convolution_oracle(0) == [1]


def test_triple_agreement():
    dp = count_dp(P33_SPEC, 120)
    assert convolution_oracle(120) == dp
    assert evaluate(parse("f1^-3*f3^-3"), 120, EXACT).tolist() == dp


def test_strictly_increasing():
    c = count_dp(P33_SPEC, 120)
    assert all(c[n] < c[n + 1] for n in range(1, 120))


@pytest.mark.parametrize("bad", [(-1, ()), (1, ((0, 1),)), (1, ((2, -1),))])
def test_bad_spec(bad):
    with pytest.raises(ValueError):
        ColoredPartitionSpec(*bad)
