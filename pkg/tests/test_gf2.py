import itertools
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from kolab.gf2 import GAMMA, Gf2Matrix, SeededRng, collision_census, matvec, mix64, sample_matrix


def naive_census(n, k, b1, b2):
    count = total = 0
    for entries in itertools.product((0, 1), repeat=n * k):
        rows = [entries[i * n : (i + 1) * n] for i in range(k)]
        img1 = [sum(r[j] * int(b1[j]) for j in range(n)) % 2 for r in rows]
        img2 = [sum(r[j] * int(b2[j]) for j in range(n)) % 2 for r in rows]
        count += img1 == img2
        total += 1
    return count, total


def test_splitmix_reference_value():
    # first output of SplitMix64 from state 0
    assert mix64(GAMMA) == 0xE220A8397B1DCDAF


def test_sample_matrix_deterministic():
    a = sample_matrix(2, 3, SeededRng(42, 0))
    b = sample_matrix(2, 3, SeededRng(42, 0))
    assert a == b
    assert sample_matrix(2, 3, SeededRng(42, 1)) != a or sample_matrix(2, 3, SeededRng(43, 0)) != a


def test_substreams_independent_of_order():
    first = [sample_matrix(3, 5, SeededRng.substream(7, 3, i)) for i in range(5)]
    second = [sample_matrix(3, 5, SeededRng.substream(7, 3, i)) for i in reversed(range(5))]
    assert first == second[::-1]


def test_serialize_length():
    assert len(sample_matrix(3, 4, SeededRng(1)).serialize()) == 12


def test_single_entry_is_fair():
    draws = 10_000
    ones = sum(sample_matrix(1, 1, SeededRng.substream(5, i)).rows[0] for i in range(draws))
    assert abs(ones - draws / 2) <= 3 * math.sqrt(draws / 4)


def test_zero_dimension_rejected():
    with pytest.raises(ValueError):
        sample_matrix(0, 3, SeededRng(1))


def test_matvec_examples():
    assert matvec(Gf2Matrix.from_rows(["10", "11"]), "11") == "10"
    assert matvec(Gf2Matrix.from_rows(["10", "01"]), "01") == "01"
    A = sample_matrix(4, 6, SeededRng(9))
    assert matvec(A, "000000") == "0000"
    with pytest.raises(ValueError):
        matvec(A, "000")


@pytest.mark.parametrize(
    "n, k, b1, b2, expected",
    [(2, 1, "10", "01", (2, 4)), (2, 2, "10", "01", (4, 16)), (3, 2, "100", "010", (16, 64))],
)
def test_collision_census_examples(n, k, b1, b2, expected):
    assert naive_census(n, k, b1, b2) == expected
    assert collision_census(n, k, b1, b2) == expected


def test_collision_census_matches_naive_route():
    for b1, b2 in [("0110", "1011"), ("0001", "0000"), ("1111", "0101")]:
        for k in (1, 2):
            assert collision_census(4, k, b1, b2) == naive_census(4, k, b1, b2)


def test_collision_census_errors():
    with pytest.raises(ValueError):
        collision_census(2, 1, "10", "10")
    with pytest.raises(ValueError):
        collision_census(5, 4, "10000", "01000")


@st.composite
def matrix_and_vectors(draw):
    k = draw(st.integers(1, 8))
    n = draw(st.integers(1, 8))
    A = sample_matrix(k, n, SeededRng(draw(st.integers(0, 2**64 - 1))))
    vec = st.text(alphabet="01", min_size=n, max_size=n)
    return A, draw(vec), draw(vec)


def _xor(a, b):
    return "".join("1" if x != y else "0" for x, y in zip(a, b))


@given(matrix_and_vectors())
def test_matvec_linear(case):
    A, y1, y2 = case
    assert matvec(A, _xor(y1, y2)) == _xor(matvec(A, y1), matvec(A, y2))


@given(matrix_and_vectors())
def test_serialization_round_trip(case):
    A, _, _ = case
    assert Gf2Matrix.deserialize(A.serialize(), A.k, A.n) == A


def test_row_major_layout():
    A = Gf2Matrix.from_rows(["110", "001"])
    assert A.serialize() == "110001"
    assert matvec(A, "100") == "10"
