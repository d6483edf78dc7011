"""
Schur expansion of the plethysm h_d o h_m, the GL-decomposition of Sym^d(Sym^m).

``plethysm_sym_sym`` works in power sums and reads off Schur coefficients with
characters. ``plethysm_by_weights`` is an independent brute-force path used to
check it.
"""

import threading
from collections import Counter, defaultdict
from fractions import Fraction
from itertools import combinations_with_replacement
from math import comb
from typing import Dict, List, Tuple

from pydantic import ValidationError

from app.exceptions import InvalidInputError, ResourceLimitError, VerificationError
from app.models import SchurExpansion, SchurTerm
from app.services.branching_service import kostka_number
from app.services.character_service import mn_character, z_factor
from app.services.partitions import Partition, enumerate_partitions
from app.utils.helpers import read_cache_entry, status, write_cache_entry
from config.settings import CACHE_DIR, PLETHYSM_CEILING

PowerSum = Dict[Tuple[int, ...], Fraction]


def _complete_in_power_sums(m: int) -> List[Tuple[Partition, Fraction]]:
    """h_m = sum over nu |- m of p_nu / z_nu."""
    return [(nu, Fraction(1, z_factor(nu))) for nu in enumerate_partitions(m)]


def _sym_sym_power_sums(d: int, m: int) -> PowerSum:
    """h_d o h_m in the power-sum basis, using p_a o p_nu = p_{a*nu}."""
    inner = _complete_in_power_sums(m)
    total: PowerSum = defaultdict(Fraction)
    for mu in enumerate_partitions(d):
        terms: PowerSum = {(): Fraction(1, z_factor(mu))}
        for a in mu:
            expanded: PowerSum = defaultdict(Fraction)
            for key, weight in terms.items():
                for nu, nu_weight in inner:
                    merged = tuple(sorted(key + tuple(a * part for part in nu), reverse=True))
                    expanded[merged] += weight * nu_weight
            terms = expanded
        for key, weight in terms.items():
            total[key] += weight
    return {key: weight for key, weight in total.items() if weight}


def ambient_dimension(d: int, m: int, rank: int) -> int:
    """dim Sym^d(Sym^m(C^rank))."""
    return comb(comb(rank + m - 1, m) + d - 1, d)


def plethysm_by_weights(d: int, m: int) -> SchurExpansion:
    """Brute force: weights of Sym^d(Sym^m(C^d)) stripped by leading terms."""
    if d < 1 or m < 1:
        raise InvalidInputError(f"Plethysm needs positive d and m, got d={d}, m={m}")
    rank = d
    monomials = []
    for chosen in combinations_with_replacement(range(rank), m):
        exponents = [0] * rank
        for variable in chosen:
            exponents[variable] += 1
        monomials.append(tuple(exponents))

    weights = Counter()
    for product_ in combinations_with_replacement(monomials, d):
        weight = tuple(sum(column) for column in zip(*product_))
        if all(weight[i] >= weight[i + 1] for i in range(rank - 1)):
            weights[Partition(weight)] += 1

    terms = []
    remaining = dict(weights)
    for shape in sorted(remaining, reverse=True):
        count = remaining[shape]
        if count < 0:
            raise VerificationError(f"Weight extraction went negative at {shape} for h_{d} o h_{m}")
        if count == 0:
            continue
        terms.append(SchurTerm(shape=shape, coefficient=count))
        for weight in remaining:
            if weight <= shape:
                remaining[weight] -= count * kostka_number(shape, weight.padded(rank))
    return SchurExpansion(degree=d * m, terms=terms)


class PlethysmService:
    def __init__(self, cache_dir: str = CACHE_DIR, ceiling: int = PLETHYSM_CEILING):
        self.cache_dir = cache_dir
        self.ceiling = ceiling
        self.cache_hits = 0
        self._expansions: Dict[Tuple[int, int], SchurExpansion] = {}
        self._lock = threading.Lock()

    def plethysm_sym_sym(self, d: int, m: int) -> SchurExpansion:
        if d < 1 or m < 1:
            raise InvalidInputError(f"Plethysm needs positive d and m, got d={d}, m={m}")
        if d * m > self.ceiling:
            raise ResourceLimitError(f"Plethysm limited to d*m <= {self.ceiling}, got d*m={d * m}")

        with self._lock:
            expansion = self._expansions.get((d, m))
            if expansion is not None:
                self.cache_hits += 1
                return expansion

            expansion = self._load(d, m)
            if expansion is None:
                expansion = self._compute(d, m)
                write_cache_entry(self.cache_dir, "plethysm", f"{d}-{m}", expansion.model_dump(mode="json"))
            else:
                self.cache_hits += 1
            self._expansions[(d, m)] = expansion
            return expansion

    def occurs_in_ambient(self, lam: Partition, d: int, m: int) -> bool:
        lam = Partition(lam)
        if lam.size != d * m:
            return False
        return self.plethysm_sym_sym(d, m).coefficient(lam) > 0

    def _load(self, d: int, m: int):
        payload = read_cache_entry(self.cache_dir, "plethysm", f"{d}-{m}")
        if payload is None:
            return None
        try:
            expansion = SchurExpansion.model_validate(payload)
        except (ValidationError, InvalidInputError) as e:
            status(f"⚠️ Cached plethysm h_{d} o h_{m} failed validation ({e}), recomputing")
            return None
        if expansion.degree != d * m or any(term.shape.size != d * m for term in expansion.terms):
            status(f"⚠️ Cached plethysm h_{d} o h_{m} has the wrong degree, recomputing")
            return None
        return expansion

    def _compute(self, d: int, m: int) -> SchurExpansion:
        status(f"🔄 Expanding h_{d} o h_{m} in Schur functions...")
        power_sums = _sym_sym_power_sums(d, m)
        terms = []
        # s_lambda never occurs in Sym^d(...) with more than d rows
        for shape in enumerate_partitions(d * m, d):
            value = sum(weight * mn_character(shape, Partition(cycle)) for cycle, weight in power_sums.items())
            if value.denominator != 1 or value < 0:
                raise VerificationError(
                    f"Plethysm extraction failed: coefficient {value} of s_{shape} in h_{d} o h_{m}"
                )
            if value:
                terms.append(SchurTerm(shape=shape, coefficient=int(value)))
        status(f"✅ h_{d} o h_{m} has {len(terms)} Schur terms")
        return SchurExpansion(degree=d * m, terms=terms)
