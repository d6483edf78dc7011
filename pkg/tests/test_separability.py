import pytest

from app.exceptions import InvalidInputError
from app.services.partitions import Partition
from app.services.separability_service import (
    diagonal_separating_family,
    diagonal_separating_module,
    separating_weight_levi,
    separating_weight_slk_in_sln,
)


def P(*parts: int) -> Partition:
    return Partition(parts)


def test_case_one_certificate(separability) -> None:
    cert = separability.find_separating_rho_n2(P(2), P(2))
    assert cert.case_tag == "case1"
    assert cert.m_used == 16
    assert cert.rho == (13, 3)
    assert cert.coeff_target >= 1
    assert cert.coeff_rect == 0


def test_case_one_keeps_argument_order(separability) -> None:
    cert = separability.find_separating_rho_n2(P(2), P(4))
    assert cert.lambda_ == (2,)
    assert cert.mu == (4,)
    assert cert.m_used == 24
    assert cert.rho == (21, 3)
    assert cert.coeff_target == 2


def test_case_two_certificate(separability) -> None:
    cert = separability.find_separating_rho_n2(P(2), P())
    assert cert.case_tag == "case2"
    assert cert.m_used == 8
    assert cert.rho == (7, 1)
    assert cert.coeff_target == 1
    assert cert.coeff_rect == 0


def test_case_two_with_empty_lambda(separability) -> None:
    cert = separability.find_separating_rho_n2(P(), P(2))
    assert cert.case_tag == "case2"
    assert cert.lambda_ == ()
    assert cert.rho == (7, 1)


def test_case_three_certificate(separability) -> None:
    cert = separability.find_separating_rho_n2(P(4), P())
    assert cert.case_tag == "case3"
    assert cert.m_used == 18
    assert cert.rho == (6, 5, 4, 3)
    assert cert.coeff_target == 1
    assert cert.coeff_rect == 0


@pytest.mark.parametrize(
    "lam, mu",
    [(P(1), P(1)), (P(2, 2), P()), (P(), P()), (P(3), P(1))],
)
def test_n2_preconditions(separability, lam, mu) -> None:
    with pytest.raises(InvalidInputError):
        separability.find_separating_rho_n2(lam, mu)


def test_nonzero_residue_certificates(separability) -> None:
    cert = separability.nonzero_mod_case(P(1), P(1), 2)
    assert cert.m_used == 3
    assert cert.rho == (3,)
    assert cert.coeff_target == 1
    assert cert.coeff_rect == 0
    assert cert.case_tag == "nonzero_mod_n"

    cert = separability.nonzero_mod_case(P(1), P(1), 3)
    assert cert.m_used == 4
    assert cert.coeff_target >= 1

    with pytest.raises(InvalidInputError):
        separability.nonzero_mod_case(P(2), P(2), 2)


def test_separate_dispatch(separability) -> None:
    assert separability.separate(P(2), P(), 2).case_tag == "case2"
    with pytest.raises(InvalidInputError):
        separability.separate(P(1), P(1), 2)
    assert separability.separate(P(1), P(1), 2, allow_nonzero_mod=True).case_tag == "nonzero_mod_n"
    with pytest.raises(InvalidInputError):
        separability.separate(P(3), P(), 3)
    with pytest.raises(InvalidInputError):
        separability.separate(P(2), P(1), 2, allow_nonzero_mod=True)


def test_slk_in_sln() -> None:
    assert separating_weight_slk_in_sln(P(1), 3, 4) == (1, 1)
    assert separating_weight_slk_in_sln(P(2, 2), 3, 4) == (2, 2)
    assert separating_weight_slk_in_sln(P(2), 4, 6) == (2, 1, 1)
    with pytest.raises(InvalidInputError):
        separating_weight_slk_in_sln(P(1), 2, 4)
    with pytest.raises(InvalidInputError):
        separating_weight_slk_in_sln(P(), 3, 4)


def test_levi_weights() -> None:
    assert separating_weight_levi(P(1, 1), P(), 3, 2) == (2, 1, 1)
    assert separating_weight_levi(P(1), P(1), 2, 2) == (2,)
    assert separating_weight_levi(P(1), P(1), 2, 2, r=1) == (3, 1)
    with pytest.raises(InvalidInputError):
        separating_weight_levi(P(), P(), 2, 2)
    with pytest.raises(InvalidInputError):
        separating_weight_levi(P(1, 1), P(), 2, 2)


def test_diagonal_constructions() -> None:
    assert diagonal_separating_module(P(2, 1)) == (P(2, 1), P())
    assert diagonal_separating_module(P(1)) == (P(1), P())
    with pytest.raises(InvalidInputError):
        diagonal_separating_module(P())
    assert diagonal_separating_family(P(1), P(1), 2) == (P(2), P(1))
    assert diagonal_separating_family(P(2, 1), P(1), 3) == (P(3, 1), P(1, 1))


@pytest.mark.slow
def test_case_three_for_row_of_eight(separability) -> None:
    cert = separability.find_separating_rho_n2(P(8), P())
    assert cert.case_tag == "case3"
    assert cert.m_used >= 32
    rho = cert.rho
    assert rho.height == 4
    assert (rho[0] - rho[1], rho[1] - rho[2], rho[2] - rho[3]) == (1, 3, 1)
    assert cert.coeff_target == 1
    assert cert.coeff_rect == 0
