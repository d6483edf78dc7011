"""
Candidate sweep for strong obstructions of the determinant orbit closure.

Each lambda |- m*d goes through three necessary filters:

* ambient: s_lambda occurs in Sym^d(Sym^m), the degree-d part of the
  coordinate ring of the m x m matrices;
* height: lambda has at most n^2 + 1 rows (permanent side);
* det: the GL_m x GL_m restriction of V_lambda has no det^d line, i.e. the
  Kronecker coefficient c_{(d^m),(d^m),lambda} vanishes.

Only the connected component GL_m x GL_m of the determinant stabilizer is
tested; the transpose component is not folded in.
"""

from typing import List, Optional

from app.exceptions import InvalidInputError, ResourceLimitError
from app.models import ObstructionCandidate
from app.services.character_service import CharacterService
from app.services.kronecker_service import KroneckerService
from app.services.partitions import Partition, enumerate_partitions
from app.services.plethysm_service import PlethysmService
from app.utils.helpers import parallel_map, progress, status
from config.settings import CACHE_DIR, MAX_N, MAX_ORACLE_N, PLETHYSM_CEILING, THREADS

STABILIZER_COMPONENT = "connected"

_worker: Optional["ObstructionService"] = None


def _init_worker(cache_dir: str, max_n: int, max_oracle_n: int, ceiling: int) -> None:
    global _worker
    _worker = ObstructionService.from_config(cache_dir, max_n, max_oracle_n, ceiling)


def _classify_task(task) -> ObstructionCandidate:
    lam, n, m, d = task
    return _worker.classify(Partition(lam), n, m, d)


class ObstructionService:
    def __init__(
        self,
        kronecker: KroneckerService,
        plethysm: PlethysmService,
        ceiling: int = PLETHYSM_CEILING,
        threads: int = THREADS,
    ):
        self.kronecker = kronecker
        self.plethysm = plethysm
        self.ceiling = ceiling
        self.threads = threads

    @classmethod
    def from_config(
        cls,
        cache_dir: str = CACHE_DIR,
        max_n: int = MAX_N,
        max_oracle_n: int = MAX_ORACLE_N,
        ceiling: int = PLETHYSM_CEILING,
        threads: int = THREADS,
    ) -> "ObstructionService":
        characters = CharacterService(cache_dir, max_n, max_oracle_n)
        return cls(KroneckerService(characters), PlethysmService(cache_dir, ceiling), ceiling, threads)

    def det_admissible_coefficient(self, lam: Partition, d: int, m: int) -> int:
        """c_{(d^m),(d^m),lambda}: copies of the det^d line in V_lambda restricted to GL_m x GL_m."""
        lam = Partition(lam)
        if lam.size != m * d:
            raise InvalidInputError(f"det_admissible_coefficient needs |lambda| = m*d = {m * d}, got {lam.size}")
        block = Partition([d] * m)
        return self.kronecker.kronecker(block, block, lam).value

    @staticmethod
    def perm_side_height_ok(lam: Partition, n: int, m: int, d: int) -> bool:
        lam = Partition(lam)
        if lam.size != m * d:
            raise InvalidInputError(f"perm_side_height_ok needs |lambda| = m*d = {m * d}, got {lam.size}")
        return lam.height <= n * n + 1

    def classify(self, lam: Partition, n: int, m: int, d: int) -> ObstructionCandidate:
        passes_ambient = self.plethysm.occurs_in_ambient(lam, d, m)
        passes_height = self.perm_side_height_ok(lam, n, m, d)
        det_coefficient = self.det_admissible_coefficient(lam, d, m)
        return ObstructionCandidate(
            lambda_=lam,
            d=d,
            m=m,
            n=n,
            passes_ambient=passes_ambient,
            passes_height=passes_height,
            det_coefficient=det_coefficient,
            is_candidate=passes_ambient and passes_height and det_coefficient == 0,
        )

    def strong_obstruction_candidates(
        self, n: int, m: int, d: int, emit_all: bool = False, threads: Optional[int] = None
    ) -> List[ObstructionCandidate]:
        """Classify every lambda |- m*d; returns the candidates (or every row with ``emit_all``)."""
        if n < 1 or m < 1 or d < 1:
            raise InvalidInputError(f"Obstruction sweep needs positive n, m, d, got n={n}, m={m}, d={d}")
        if m * d > self.ceiling:
            raise ResourceLimitError(f"Obstruction sweep limited to m*d <= {self.ceiling}, got m*d={m * d}")
        threads = self.threads if threads is None else threads

        # warm the plethysm cache so that workers read it from disk
        self.plethysm.plethysm_sym_sym(d, m)
        tasks = [(lam, n, m, d) for lam in enumerate_partitions(m * d)]
        status(f"🔄 Classifying {len(tasks)} partitions of {m * d} (n={n}, m={m}, d={d})...")

        if threads > 1:
            characters = self.kronecker.characters
            config = (self.plethysm.cache_dir, characters.max_n, characters.max_oracle_n, self.ceiling)
            rows = parallel_map(_classify_task, tasks, threads, _init_worker, config)
        else:
            rows = [self.classify(*task) for task in progress(tasks, desc="obstruct")]

        rows.sort(key=lambda row: row.lambda_, reverse=True)
        candidates = [row for row in rows if row.is_candidate]
        status(f"✅ {len(candidates)} candidate(s) among {len(rows)} partitions")
        return rows if emit_all else candidates
