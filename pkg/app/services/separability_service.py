"""
Separability certificates.

For SL_2 x SL_2 inside SL_4 a certificate names m, the padded shapes
lambda(m), mu(m) and a shape rho |- m such that W_rho occurs in
W_lambda(m) (x) W_mu(m) but not in W_delta (x) W_delta, delta = (m/2, m/2).
Both coefficients are recomputed by the character oracle before a
certificate leaves this module.
"""

from typing import Iterator, Optional, Tuple

from app.exceptions import InvalidInputError, VerificationError
from app.models import SeparabilityCertificate
from app.services.branching_service import (
    contains_sl_pair,
    contains_trivial_levi,
    gl_restrict,
    lr_coefficient,
)
from app.services.kronecker_service import KroneckerService, det_reduction, rw_two_row
from app.services.partitions import (
    Partition,
    add_partitions,
    conjugate,
    enumerate_partitions,
    is_rectangle,
    pad_columns,
    sl_dual,
    strip_columns,
)
from app.utils.helpers import status
from config.settings import CERTIFICATE_RETRIES


def _row_size(p: Partition) -> int:
    return p.row(0)


def _staircase(k: int, j: int) -> Partition:
    return Partition((k + 1 + j, k + j, 1 + j, j))


def _four_row_region(m: int) -> Iterator[Partition]:
    """rho = (rho1, rho2, a, a) with a > 0 and rho2 - a odd, increasing a then rho2."""
    for a in range(1, m // 4 + 1):
        rho2 = a + 1
        while m - rho2 - 2 * a >= rho2:
            yield Partition((m - rho2 - 2 * a, rho2, a, a))
            rho2 += 2


class SeparabilityService:
    def __init__(self, kronecker: KroneckerService, retries: int = CERTIFICATE_RETRIES):
        self.kronecker = kronecker
        self.retries = retries

    def _certify(
        self,
        lam: Partition,
        mu: Partition,
        n: int,
        m: int,
        padded: Tuple[Partition, Partition],
        rho: Partition,
        case_tag: str,
    ) -> Optional[SeparabilityCertificate]:
        target = self.kronecker.oracle(padded[0], padded[1], rho)
        if target < 1:
            return None
        rect = 0
        if m % n == 0:
            delta = Partition([m // n] * n)
            rect = self.kronecker.oracle(delta, delta, rho)
        if rect != 0:
            return None
        return SeparabilityCertificate(
            lambda_=lam, mu=mu, n=n, m_used=m, rho=rho, coeff_target=target, coeff_rect=rect, case_tag=case_tag
        )

    def find_separating_rho_n2(self, lam: Partition, mu: Partition) -> SeparabilityCertificate:
        lam, mu = Partition(lam), Partition(mu)
        if lam.height > 1 or mu.height > 1:
            raise InvalidInputError(f"n=2 certificates need row shapes, got lambda={lam}, mu={mu}")
        if lam.size % 2 or mu.size % 2:
            raise InvalidInputError(f"n=2 certificates need even sizes, got |lambda|={lam.size}, |mu|={mu.size}")
        if not lam and not mu:
            raise InvalidInputError("n=2 certificates need a nontrivial pair (lambda, mu)")

        big, small = sorted((lam, mu), key=_row_size, reverse=True)
        if small:
            certificate = self._case_one(lam, mu, _row_size(big), _row_size(small))
        elif (_row_size(big) // 2) % 2:
            certificate = self._case_two(lam, mu, _row_size(big))
        else:
            certificate = self._case_three(lam, mu, _row_size(big))
        status(
            f"✅ Certificate {certificate.case_tag}: m={certificate.m_used}, rho={certificate.rho}, "
            f"target={certificate.coeff_target}"
        )
        return certificate

    def _case_one(self, lam: Partition, mu: Partition, big: int, small: int) -> SeparabilityCertificate:
        floor_m = 4 * (big + small)
        for attempt in range(self.retries + 1):
            m = floor_m + 2 * attempt
            padded = (pad_columns(lam, 2, m), pad_columns(mu, 2, m))
            low = (big + small) // 2
            low += 1 - low % 2
            for rho2 in range(low, m // 2 - big // 2 + 1, 2):
                rho = Partition((m - rho2, rho2))
                if rw_two_row(padded[0], padded[1], rho) < 1:
                    continue
                certificate = self._certify(lam, mu, 2, m, padded, rho, "case1")
                if certificate is not None:
                    return certificate
                raise VerificationError(f"Two-row formula picked rho={rho} at m={m} but the oracle re-check failed")
        raise VerificationError(f"No case1 certificate for lambda={lam}, mu={mu} within {self.retries} retries")

    def _case_two(self, lam: Partition, mu: Partition, big: int) -> SeparabilityCertificate:
        floor_m = 4 * big
        for attempt in range(self.retries + 1):
            m = floor_m + 2 * attempt
            padded = (pad_columns(lam, 2, m), pad_columns(mu, 2, m))
            rho = Partition((m - big // 2, big // 2))
            certificate = self._certify(lam, mu, 2, m, padded, rho, "case2")
            if certificate is not None:
                return certificate
        raise VerificationError(f"No case2 certificate for lambda={lam}, mu={mu} within {self.retries} retries")

    def _case_three(self, lam: Partition, mu: Partition, big: int) -> SeparabilityCertificate:
        floor_m = 4 * big
        k = big // 2

        # four-row shapes (rho1, rho2, a, a) with rho2 - a odd, prefiltered by the
        # two-row reduction of c_{lambda(m), delta, rho}
        m = floor_m
        padded = (pad_columns(lam, 2, m), pad_columns(mu, 2, m))
        delta = Partition((m // 2, m // 2))
        for rho in _four_row_region(m):
            if det_reduction(padded[0], padded[1], rho) < 1 or det_reduction(delta, delta, rho) != 0:
                continue
            certificate = self._certify(lam, mu, 2, m, padded, rho, "case3")
            if certificate is not None:
                return certificate

        # staircase (k+1+j, k+j, 1+j, j) at the first m = 2k+2+4j >= 4|lambda|
        first_j = -(-(floor_m - 2 * k - 2) // 4)
        for j in range(first_j, first_j + self.retries + 1):
            rho = _staircase(k, j)
            m = rho.size
            padded = (pad_columns(lam, 2, m), pad_columns(mu, 2, m))
            certificate = self._certify(lam, mu, 2, m, padded, rho, "case3")
            if certificate is not None:
                return certificate
        raise VerificationError(f"No case3 certificate for lambda={lam}, mu={mu} within {self.retries} retries")

    def nonzero_mod_case(self, lam: Partition, mu: Partition, n: int) -> SeparabilityCertificate:
        """|lambda| = |mu| != 0 (mod n): no rectangle of height n has size m, so any rho occurring will do."""
        lam, mu = Partition(lam), Partition(mu)
        if n < 2:
            raise InvalidInputError(f"nonzero_mod_case needs n >= 2, got n={n}")
        if lam.size % n != mu.size % n or lam.size % n == 0:
            raise InvalidInputError(
                f"nonzero_mod_case needs |lambda| = |mu| != 0 (mod {n}), got {lam.size} and {mu.size}"
            )
        if lam.height >= n or mu.height >= n:
            raise InvalidInputError(f"nonzero_mod_case needs heights below {n}, got {lam} and {mu}")

        m = max(n, lam.size, mu.size)
        m += (lam.size - m) % n
        for attempt in range(self.retries + 1):
            size = m + n * attempt
            padded = (pad_columns(lam, n, size), pad_columns(mu, n, size))
            for rho in enumerate_partitions(size):
                certificate = self._certify(lam, mu, n, size, padded, rho, "nonzero_mod_n")
                if certificate is not None:
                    return certificate
        raise VerificationError(f"No certificate for lambda={lam}, mu={mu}, n={n}")

    def separate(self, lam: Partition, mu: Partition, n: int, allow_nonzero_mod: bool = False) -> SeparabilityCertificate:
        lam, mu = Partition(lam), Partition(mu)
        if n < 2:
            raise InvalidInputError(f"separate needs n >= 2, got n={n}")
        if lam.size % n != mu.size % n:
            raise InvalidInputError(f"separate needs |lambda| = |mu| (mod {n}), got {lam.size} and {mu.size}")
        if lam.size % n:
            if not allow_nonzero_mod:
                raise InvalidInputError(
                    f"|lambda| = {lam.size} is not divisible by n={n}; pass --allow-nonzero-mod to use that case"
                )
            return self.nonzero_mod_case(lam, mu, n)
        if n != 2:
            raise InvalidInputError(f"Certificates with |lambda| = 0 (mod n) are only built for n=2, got n={n}")
        return self.find_separating_rho_n2(lam, mu)


def separating_weight_slk_in_sln(lam: Partition, k: int, n: int) -> Partition:
    """Highest weight mu such that V_mu(SL_n) contains V_lambda(SL_k) but no SL_k invariant."""
    lam = Partition(lam)
    if not 2 * k > n + 1 or k >= n:
        raise InvalidInputError(f"separating_weight_slk_in_sln needs (n+1)/2 < k < n, got k={k}, n={n}")
    if not lam or lam.height >= k:
        raise InvalidInputError(f"separating_weight_slk_in_sln needs a nontrivial lambda of height < {k}, got {lam}")

    h = lam.height
    mu = lam if h > n - k else Partition(tuple(lam) + (1,) * (n - k - h + 1))

    restricted = gl_restrict(mu, n, k).entries
    if any(not entry.rho or is_rectangle(entry.rho, k) for entry in restricted):
        raise VerificationError(f"V_{mu}(SL_{n}) restricted to SL_{k} contains the trivial module")
    if not any(strip_columns(entry.rho, k) == lam for entry in restricted):
        raise VerificationError(f"V_{mu}(SL_{n}) restricted to SL_{k} misses V_{lam}")
    return mu


def separating_weight_levi(alpha: Partition, beta: Partition, k: int, l: int, r: int = 0) -> Partition:
    """Highest weight lambda of SL_{k+l} containing V_alpha (x) V_beta of SL_k x SL_l but no invariant."""
    alpha, beta = Partition(alpha), Partition(beta)
    if k < 1 or l < 1 or r < 0:
        raise InvalidInputError(f"separating_weight_levi needs positive k, l and r >= 0, got k={k}, l={l}, r={r}")
    if alpha.height >= k or beta.height >= l:
        raise InvalidInputError(f"separating_weight_levi needs height(alpha) < {k}, height(beta) < {l}")
    if not alpha and not beta:
        raise InvalidInputError("separating_weight_levi needs a nontrivial pair (alpha, beta)")
    if k < l:
        return separating_weight_levi(beta, alpha, l, k, r)

    if not beta and is_rectangle(alpha, l):
        width = alpha[0]
        columns = [k] * r + [l + 1] + [l] * (width - 1) + [l - 1]
        lam = conjugate(Partition(columns))
    else:
        widened = Partition(alpha.row(i) + r for i in range(k)) if r else alpha
        lam = add_partitions(widened, beta)

    if contains_trivial_levi(lam, k, l):
        raise VerificationError(f"V_{lam}(SL_{k + l}) contains the trivial SL_{k} x SL_{l} module")
    if not contains_sl_pair(lam, alpha, beta, k, l):
        raise VerificationError(f"V_{lam}(SL_{k + l}) does not contain V_{alpha} (x) V_{beta}")
    return lam


def diagonal_separating_module(lam: Partition) -> Tuple[Partition, Partition]:
    """(lambda, trivial): an H x H module containing V_lambda diagonally and no diagonal invariant."""
    lam = Partition(lam)
    if not lam:
        raise InvalidInputError("diagonal_separating_module needs a nontrivial lambda")
    return lam, Partition()


def diagonal_separating_family(lam: Partition, beta: Partition, rank: int) -> Tuple[Partition, Partition]:
    """(lambda + beta, dual of beta) for H = SL_rank, checked for V_lambda and for non-admissibility."""
    lam, beta = Partition(lam), Partition(beta)
    if lam.height > rank or beta.height > rank:
        raise InvalidInputError(f"diagonal_separating_family needs heights <= {rank}, got {lam} and {beta}")
    if not strip_columns(lam, rank):
        raise InvalidInputError(f"diagonal_separating_family needs lambda nontrivial for SL_{rank}, got {lam}")

    delta = add_partitions(lam, beta)
    rho = sl_dual(beta, rank)
    if lr_coefficient(delta, lam, beta) < 1:
        raise VerificationError(f"V_{lam} does not occur in V_{lam} (x) V_{beta}")
    if rho == sl_dual(delta, rank):
        raise VerificationError(f"V_{delta} (x) V_{rho} carries a diagonal invariant")
    return delta, rho
