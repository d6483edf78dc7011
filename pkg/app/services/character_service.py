import threading
from collections import Counter
from functools import lru_cache
from math import factorial, prod
from typing import Dict, Tuple

import numpy as np
from cachetools import LRUCache
from pydantic import ValidationError

from app.exceptions import InvalidInputError, ResourceLimitError, VerificationError
from app.models import CharacterTable
from app.services.partitions import Partition, enumerate_partitions
from app.utils.helpers import read_cache_entry, status, write_cache_entry
from config.settings import CACHE_DIR, MAX_N, MAX_ORACLE_N


def z_factor(mu: Partition) -> int:
    """z_mu = prod i^{m_i} m_i!, the centralizer order of cycle type mu."""
    return prod(part ** count * factorial(count) for part, count in Counter(mu).items())


def class_size(mu: Partition) -> int:
    return factorial(mu.size) // z_factor(mu)


@lru_cache(maxsize=None)
def conjugacy_classes(n: int) -> Tuple[Partition, ...]:
    """Cycle types of S_n, identity class (1^n) first."""
    return tuple(reversed(enumerate_partitions(n)))


# bounded: S_32 and S_34 rows visit millions of (shape, cycle) states
@lru_cache(maxsize=1 << 20)
def _murnaghan_nakayama(shape: Tuple[int, ...], cycle: Tuple[int, ...]) -> int:
    if not cycle:
        return 1 if not shape else 0
    strip = cycle[0]
    rest = cycle[1:]
    length = len(shape)
    # beta-set: removing a border strip of length r moves one bead r places down
    beta = [shape[i] + length - 1 - i for i in range(length)]
    occupied = set(beta)
    total = 0
    for i, bead in enumerate(beta):
        target = bead - strip
        if target < 0 or target in occupied:
            continue
        crossed = sum(1 for other in beta if target < other < bead)
        moved = sorted(beta[:i] + [target] + beta[i + 1:], reverse=True)
        parts = [moved[j] - (length - 1 - j) for j in range(length)]
        while parts and parts[-1] == 0:
            parts.pop()
        value = _murnaghan_nakayama(tuple(parts), rest)
        if value:
            total += -value if crossed % 2 else value
    return total


def mn_character(lam: Partition, mu: Partition) -> int:
    """chi_lambda on the class of cycle type mu (Murnaghan-Nakayama)."""
    if lam.size != mu.size:
        raise InvalidInputError(f"Character needs |lambda| = |mu|, got {lam.size} and {mu.size}")
    return _murnaghan_nakayama(tuple(lam), tuple(mu))


class CharacterService:
    def __init__(self, cache_dir: str = CACHE_DIR, max_n: int = MAX_N, max_oracle_n: int = MAX_ORACLE_N):
        self.cache_dir = cache_dir
        self.max_n = max_n
        self.max_oracle_n = max_oracle_n
        self.cache_hits = 0

        self._tables: Dict[int, CharacterTable] = {}
        self._rows = LRUCache(maxsize=4096)
        self._guard = threading.Lock()
        self._builders: Dict[int, threading.Lock] = {}

    def character_row(self, lam: Partition) -> Tuple[int, ...]:
        """chi_lambda on every class of S_|lambda|, in ``conjugacy_classes`` order."""
        lam = Partition(lam)
        if lam.size > self.max_oracle_n:
            raise ResourceLimitError(
                f"Character oracle limited to n <= {self.max_oracle_n}, got n={lam.size}"
            )
        with self._guard:
            row = self._rows.get(lam)
        if row is not None:
            self.cache_hits += 1
            return row
        row = tuple(_murnaghan_nakayama(tuple(lam), tuple(mu)) for mu in conjugacy_classes(lam.size))
        with self._guard:
            self._rows[lam] = row
        return row

    def inner_product_triple(self, alpha: Partition, beta: Partition, gamma: Partition) -> int:
        """<chi_alpha chi_beta chi_gamma, 1>: the Kronecker coefficient by the character oracle."""
        m = alpha.size
        if beta.size != m or gamma.size != m:
            raise InvalidInputError(
                f"Kronecker oracle needs equal sizes, got {alpha.size}, {beta.size}, {gamma.size}"
            )
        if m == 0:
            return 1
        rows = [self.character_row(p) for p in (alpha, beta, gamma)]
        total = 0
        for mu, a, b, c in zip(conjugacy_classes(m), *rows):
            if a and b and c:
                total += class_size(mu) * a * b * c
        value, remainder = divmod(total, factorial(m))
        if remainder or value < 0:
            raise VerificationError(
                f"Kronecker oracle produced a non-integral or negative value for {alpha}, {beta}, {gamma}"
            )
        return value

    def character_table(self, n: int) -> CharacterTable:
        if n < 1:
            raise InvalidInputError(f"Character table needs n >= 1, got {n}")
        if n > self.max_n:
            raise ResourceLimitError(f"Character table limited to n <= {self.max_n}, got n={n}")

        with self._guard:
            table = self._tables.get(n)
            builder = self._builders.setdefault(n, threading.Lock())
        if table is not None:
            self.cache_hits += 1
            return table

        # one builder per n; the others wait and pick up its result
        with builder:
            with self._guard:
                table = self._tables.get(n)
            if table is not None:
                self.cache_hits += 1
                return table

            table = self._load_table(n)
            if table is None:
                table = self._build_table(n)
                write_cache_entry(self.cache_dir, "chartable", str(n), table.model_dump(mode="json"))
            else:
                self.cache_hits += 1

            with self._guard:
                self._tables[n] = table
            return table

    def _load_table(self, n: int):
        payload = read_cache_entry(self.cache_dir, "chartable", str(n))
        if payload is None:
            return None
        try:
            table = CharacterTable.model_validate(payload)
        except (ValidationError, InvalidInputError) as e:
            status(f"⚠️ Cached character table for S_{n} failed validation ({e}), rebuilding")
            return None
        if table.n != n or sum(table.class_sizes) != factorial(n):
            status(f"⚠️ Cached character table for S_{n} is inconsistent, rebuilding")
            return None
        return table

    def _build_table(self, n: int) -> CharacterTable:
        status(f"🔄 Building character table for S_{n}...")
        irreducibles = enumerate_partitions(n)
        classes = list(conjugacy_classes(n))
        values = [list(self.character_row(lam)) for lam in irreducibles]
        table = CharacterTable(
            n=n,
            irreducibles=irreducibles,
            classes=classes,
            class_sizes=[class_size(mu) for mu in classes],
            values=values,
        )
        status(f"✅ Character table for S_{n} ready ({len(classes)} classes)")
        return table


def check_orthogonality(table: CharacterTable) -> bool:
    """Row and column orthogonality, exactly, on numpy object arrays."""
    values = table.as_array()
    sizes = np.array(table.class_sizes, dtype=object)
    order = factorial(table.n)
    k = len(table.classes)

    row_gram = (values * sizes).dot(values.T)
    expected_rows = np.identity(k, dtype=object) * order
    column_gram = values.T.dot(values)
    expected_columns = np.diag(np.array([order // size for size in table.class_sizes], dtype=object))
    return bool(np.array_equal(row_gram, expected_rows)) and bool(np.array_equal(column_gram, expected_columns))
