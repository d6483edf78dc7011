import pytest

from app.services.character_service import CharacterService
from app.services.kronecker_service import KroneckerService
from app.services.obstruction_service import ObstructionService
from app.services.plethysm_service import PlethysmService
from app.services.separability_service import SeparabilityService
from app.utils.helpers import set_verbose


@pytest.fixture(autouse=True)
def quiet():
    set_verbose(False)


@pytest.fixture
def cache_dir(tmp_path):
    return str(tmp_path / "cache")


@pytest.fixture
def characters(cache_dir):
    return CharacterService(cache_dir=cache_dir)


@pytest.fixture
def kronecker(characters):
    return KroneckerService(characters)


@pytest.fixture
def plethysm(cache_dir):
    return PlethysmService(cache_dir=cache_dir)


@pytest.fixture
def obstruction(kronecker, plethysm):
    return ObstructionService(kronecker, plethysm, threads=1)


@pytest.fixture
def separability(kronecker):
    return SeparabilityService(kronecker)
