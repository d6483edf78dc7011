from concurrent.futures import ThreadPoolExecutor
from itertools import permutations, product

import pytest
from cachetools import LRUCache

from app.exceptions import ClosedFormInapplicableError, InvalidInputError
from app.services.kronecker_service import (
    KroneckerService,
    det_reduction,
    four_row_applicable,
    rw_four_row,
    rw_two_row,
)
from app.services.partitions import Partition, enumerate_partitions


def P(*parts: int) -> Partition:
    return Partition(parts)


def test_two_row_examples() -> None:
    assert rw_two_row(P(2, 2), P(2, 2), P(2, 2)) == 1
    assert rw_two_row(P(3, 1), P(2, 2), P(2, 2)) == 0
    for m in range(1, 8):
        assert rw_two_row(P(m), P(m), P(m)) == 1


def test_two_row_rejects_tall_shapes() -> None:
    with pytest.raises(ClosedFormInapplicableError):
        rw_two_row(P(2, 1, 1), P(2, 2), P(2, 2))
    with pytest.raises(InvalidInputError):
        rw_two_row(P(2), P(3), P(2))


def test_two_row_matches_oracle_up_to_eight(kronecker) -> None:
    for m in range(1, 9):
        shapes = enumerate_partitions(m, 2)
        for alpha in shapes:
            for beta in shapes:
                for gamma in shapes:
                    assert rw_two_row(alpha, beta, gamma) == kronecker.oracle(alpha, beta, gamma)


def test_four_row_examples(kronecker) -> None:
    assert rw_four_row(P(4, 4), P(4, 4), P(5, 1, 1, 1)) == 1
    assert kronecker.oracle(P(4, 4), P(4, 4), P(5, 1, 1, 1)) == 1
    with pytest.raises(ClosedFormInapplicableError):
        rw_four_row(P(4, 4), P(4, 4), P(4, 2, 1, 1))


def test_four_row_orders_two_row_arguments(kronecker) -> None:
    # (6,6) plays (k,h) here; the other assignment would give 1
    assert rw_four_row(P(7, 5), P(6, 6), P(9, 1, 1, 1)) == 0
    assert rw_four_row(P(6, 6), P(7, 5), P(9, 1, 1, 1)) == 0
    assert kronecker.oracle(P(7, 5), P(6, 6), P(9, 1, 1, 1)) == 0


def test_four_row_matches_oracle_in_domain(kronecker) -> None:
    checked = 0
    for m in range(4, 11):
        two_row = enumerate_partitions(m, 2)
        four_row = [p for p in enumerate_partitions(m, 4) if p.height == 4 and p[2] == p[3]]
        for first in two_row:
            for second in two_row:
                for dcaa in four_row:
                    if four_row_applicable(first, second, dcaa):
                        assert rw_four_row(first, second, dcaa) == kronecker.oracle(first, second, dcaa)
                        checked += 1
    assert checked > 0


def test_determinant_reduction_matches_oracle(kronecker) -> None:
    for m in (4, 6, 8, 9):
        two_row = enumerate_partitions(m, 2)
        four_row = [p for p in enumerate_partitions(m, 4) if p.height == 4 and p[2] == p[3]]
        for first in two_row:
            for second in two_row:
                for dcaa in four_row:
                    assert det_reduction(first, second, dcaa) == kronecker.oracle(first, second, dcaa)


def test_kronecker_examples(kronecker) -> None:
    result = kronecker.kronecker(P(2, 2), P(2, 2), P(2, 2))
    assert result.value == 1
    assert result.method == "two_row_closed_form"
    assert kronecker.kronecker(P(2, 1), P(2, 1), P(3)).value == 1
    assert kronecker.kronecker(P(4), P(2, 2), P(3, 1), method="oracle").value == 0
    assert kronecker.kronecker(P(2, 1, 1), P(2, 1, 1), P(2, 2)).method == "oracle"
    assert kronecker.kronecker(P(4, 4), P(4, 4), P(5, 1, 1, 1)).method == "four_row_closed_form"


def test_trivial_shape_is_the_identity(kronecker) -> None:
    shapes = enumerate_partitions(5)
    for beta in shapes:
        for gamma in shapes:
            assert kronecker.kronecker(P(5), beta, gamma).value == (1 if beta == gamma else 0)


def test_forced_methods(kronecker) -> None:
    assert kronecker.kronecker(P(3, 1), P(2, 2), P(2, 2), method="two-row").value == 0
    with pytest.raises(ClosedFormInapplicableError):
        kronecker.kronecker(P(2, 1, 1), P(2, 2), P(2, 2), method="two-row")
    with pytest.raises(ClosedFormInapplicableError):
        kronecker.kronecker(P(2, 2), P(2, 2), P(2, 2), method="four-row")
    with pytest.raises(InvalidInputError):
        kronecker.kronecker(P(2, 2), P(2, 2), P(2, 2), method="hive")
    with pytest.raises(InvalidInputError):
        kronecker.kronecker(P(2), P(3), P(2))


def test_verify_mode_cross_checks(characters) -> None:
    service = KroneckerService(characters, verify=True)
    result = service.kronecker(P(2, 2), P(2, 2), P(2, 2))
    assert result.value == 1
    assert result.cross_checked
    assert service.kronecker(P(4, 4), P(4, 4), P(5, 1, 1, 1)).cross_checked


def test_symmetry_under_permutation(kronecker) -> None:
    shapes = enumerate_partitions(5)
    for alpha in shapes:
        for beta in shapes:
            for gamma in shapes:
                values = {kronecker.kronecker(*order).value for order in permutations((alpha, beta, gamma))}
                assert len(values) == 1


def test_tensor_square_contains(kronecker) -> None:
    assert kronecker.tensor_square_contains(P(2, 2), P(2, 2))
    assert not kronecker.tensor_square_contains(P(2, 2), P(3, 1))
    assert kronecker.tensor_square_contains(P(3, 3), P(6))
    with pytest.raises(InvalidInputError):
        kronecker.tensor_square_contains(P(3, 1), P(4))


def test_parity_law_small(kronecker) -> None:
    for m in (4, 6, 8):
        delta = P(m // 2, m // 2)
        for rho in enumerate_partitions(m, 2):
            assert kronecker.tensor_square_contains(delta, rho) == (rho.row(1) % 2 == 0)


def test_oracle_cache_survives_threads(characters) -> None:
    service = KroneckerService(characters)
    service._oracle_values = LRUCache(maxsize=4)
    shapes = enumerate_partitions(6)
    triples = list(product(shapes, repeat=3))
    expected = [characters.inner_product_triple(*t) for t in triples]

    with ThreadPoolExecutor(max_workers=8) as pool:
        for _ in range(3):
            assert list(pool.map(lambda t: service.oracle(*t), triples)) == expected
