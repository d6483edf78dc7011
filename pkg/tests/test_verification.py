import pytest

from app.exceptions import InvalidInputError
from app.services.partitions import Partition
from app.services.verification_service import VerificationService, run_check, ssyt_count


@pytest.fixture
def verification(kronecker, plethysm, obstruction, separability):
    return VerificationService(kronecker, plethysm, obstruction, separability, threads=1)


def test_run_check_caps_failures() -> None:
    result = run_check("demo", ((str(i), i % 2 == 0) for i in range(100)))
    assert result.checked == 100
    assert not result.passed
    assert len(result.failures) == 20
    assert result.failures[0] == "1"


def test_ssyt_count() -> None:
    assert ssyt_count(Partition((2, 1)), (1, 1, 1)) == 2
    assert ssyt_count(Partition((2, 2)), (2, 2)) == 1
    assert ssyt_count(Partition((3,)), (1, 2)) == 1


@pytest.mark.parametrize("suite", ["rw", "parity", "obstruct"])
def test_quick_suites_pass(verification, suite) -> None:
    (report,) = verification.run(suite)
    assert report.suite == suite
    assert report.passed, [check.failures for check in report.checks]


@pytest.mark.slow
@pytest.mark.parametrize("suite", ["fourrow", "plethysm", "branching", "symmetry", "psl2"])
def test_slow_suites_pass(verification, suite) -> None:
    (report,) = verification.run(suite)
    assert report.passed, [check.failures for check in report.checks]


def test_unknown_suite(verification) -> None:
    with pytest.raises(InvalidInputError):
        verification.run("everything")
