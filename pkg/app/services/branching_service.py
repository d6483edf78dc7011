from collections import Counter
from functools import lru_cache
from itertools import product
from typing import Dict, List, Sequence, Tuple

from app.exceptions import InvalidInputError
from app.models import BranchingEntry, BranchingResult
from app.services.partitions import Partition, contains, enumerate_partitions, is_rectangle, strip_columns


@lru_cache(maxsize=None)
def _lr_count(lam: Tuple[int, ...], mu: Tuple[int, ...], nu: Tuple[int, ...]) -> int:
    outer, inner = Partition(lam), Partition(mu)
    # reading order: rows top to bottom, each row right to left
    cells = [(i, j) for i in range(outer.height) for j in range(outer[i] - 1, inner.row(i) - 1, -1)]
    filling: Dict[Tuple[int, int], int] = {}
    counts = [0] * (len(nu) + 1)

    def place(index: int) -> int:
        if index == len(cells):
            return 1
        i, j = cells[index]
        upper = filling.get((i, j + 1), len(nu))
        lower = filling.get((i - 1, j), 0) + 1
        total = 0
        for x in range(lower, upper + 1):
            if counts[x] >= nu[x - 1]:
                continue
            if x > 1 and counts[x] >= counts[x - 1]:
                continue
            counts[x] += 1
            filling[(i, j)] = x
            total += place(index + 1)
            del filling[(i, j)]
            counts[x] -= 1
        return total

    return place(0)


def lr_coefficient(lam: Partition, mu: Partition, nu: Partition) -> int:
    """N^lambda_{mu,nu}: LR skew tableaux of shape lambda/mu and content nu."""
    lam, mu, nu = Partition(lam), Partition(mu), Partition(nu)
    if mu.size + nu.size != lam.size or not contains(lam, mu) or not contains(lam, nu):
        return 0
    if not nu:
        return 1
    return _lr_count(tuple(lam), tuple(mu), tuple(nu))


def _sorted_entries(multiplicities: Counter) -> List[BranchingEntry]:
    return [
        BranchingEntry(rho=shape, multiplicity=count)
        for shape, count in sorted(multiplicities.items(), reverse=True)
        if count > 0
    ]


def gl_branch(lam: Partition, from_rank: int, to_rank: int) -> BranchingResult:
    """One interlacing step GL_r -> GL_{r-1}: lambda_i >= mu_i >= lambda_{i+1}."""
    lam = Partition(lam)
    if to_rank != from_rank - 1 or to_rank < 0:
        raise InvalidInputError(f"gl_branch restricts one rank at a time, got {from_rank} -> {to_rank}")
    if lam.height > from_rank:
        raise InvalidInputError(f"gl_branch needs height(lambda) <= {from_rank}, got {lam}")
    ranges = [range(lam.row(i + 1), lam.row(i) + 1) for i in range(to_rank)]
    shapes = Counter(Partition(parts) for parts in product(*ranges))
    return BranchingResult(source=lam, kind="gl_branch", entries=_sorted_entries(shapes))


def gl_restrict(lam: Partition, from_rank: int, to_rank: int) -> BranchingResult:
    """Composition of ``gl_branch`` steps with multiplicities summed."""
    lam = Partition(lam)
    if to_rank < 0 or to_rank > from_rank:
        raise InvalidInputError(f"gl_restrict needs 0 <= to_rank <= from_rank, got {from_rank} -> {to_rank}")
    if lam.height > from_rank:
        raise InvalidInputError(f"gl_restrict needs height(lambda) <= {from_rank}, got {lam}")
    current = Counter({lam: 1})
    for rank in range(from_rank, to_rank, -1):
        step = Counter()
        for shape, count in current.items():
            for entry in gl_branch(shape, rank, rank - 1).entries:
                step[entry.rho] += count * entry.multiplicity
        current = step
    return BranchingResult(source=lam, kind="gl_restrict", entries=_sorted_entries(current))


@lru_cache(maxsize=None)
def _kostka(lam: Tuple[int, ...], weight: Tuple[int, ...]) -> int:
    if not weight:
        return 1 if not lam else 0
    rank = len(weight)
    if len(lam) > rank:
        return 0
    target = sum(lam) - weight[-1]
    total = 0
    for entry in gl_branch(Partition(lam), rank, rank - 1).entries:
        if entry.rho.size == target:
            total += _kostka(tuple(entry.rho), weight[:-1])
    return total


def kostka_number(lam: Partition, weight: Sequence[int]) -> int:
    """Multiplicity of the weight (a composition) in V_lambda: Gelfand-Tsetlin chains."""
    weight = tuple(int(w) for w in weight)
    if any(w < 0 for w in weight):
        raise InvalidInputError(f"Weights must be non-negative, got {weight}")
    lam = Partition(lam)
    if lam.size != sum(weight):
        return 0
    return _kostka(tuple(lam), weight)


def subdiagrams(lam: Partition, max_height: int) -> List[Partition]:
    """All rho contained in lambda with at most ``max_height`` rows, decreasing lex."""
    rows = min(lam.height, max_height)
    found: List[Partition] = []

    def extend(prefix: List[int]) -> None:
        if len(prefix) == rows:
            found.append(Partition(prefix))
            return
        i = len(prefix)
        upper = lam[i] if i == 0 else min(lam[i], prefix[-1])
        for part in range(upper, -1, -1):
            extend(prefix + [part])

    extend([])
    return found


def levi_restrict(lam: Partition, k: int, l: int) -> BranchingResult:
    """V_lambda(GL_{k+l}) restricted to GL_k x GL_l: pairs (rho, delta) with N^lambda_{rho,delta} > 0."""
    lam = Partition(lam)
    if k < 0 or l < 0:
        raise InvalidInputError(f"levi_restrict needs non-negative ranks, got k={k}, l={l}")
    if lam.height > k + l:
        raise InvalidInputError(f"levi_restrict needs height(lambda) <= {k + l}, got {lam}")
    entries = []
    for rho in subdiagrams(lam, k):
        for delta in enumerate_partitions(lam.size - rho.size, l):
            if not contains(lam, delta):
                continue
            multiplicity = lr_coefficient(lam, rho, delta)
            if multiplicity:
                entries.append(BranchingEntry(rho=rho, delta=delta, multiplicity=multiplicity))
    return BranchingResult(source=lam, kind="levi", entries=entries)


def _sl_trivial(shape: Partition, rank: int) -> bool:
    return not shape or is_rectangle(shape, rank)


def contains_trivial_levi(lam: Partition, k: int, l: int) -> bool:
    """Whether V_lambda(SL_{k+l}) contains the trivial SL_k x SL_l module."""
    return any(
        _sl_trivial(entry.rho, k) and _sl_trivial(entry.delta, l)
        for entry in levi_restrict(lam, k, l).entries
    )


def contains_sl_pair(lam: Partition, alpha: Partition, beta: Partition, k: int, l: int) -> bool:
    """Whether V_lambda(SL_{k+l}) contains V_alpha(SL_k) (x) V_beta(SL_l)."""
    alpha, beta = strip_columns(Partition(alpha), k), strip_columns(Partition(beta), l)
    return any(
        strip_columns(entry.rho, k) == alpha and strip_columns(entry.delta, l) == beta
        for entry in levi_restrict(lam, k, l).entries
    )
