"""
Kronecker coefficients c_{alpha,beta,gamma}.

Two closed forms are available for shapes with few rows; everything else goes
through the character oracle of ``CharacterService``. In verify mode every
closed-form value is re-computed by the oracle before it is returned.
"""

import threading
from typing import Optional, Sequence, Tuple

from cachetools import LRUCache

from app.exceptions import ClosedFormInapplicableError, InvalidInputError, VerificationError
from app.models import KroneckerResult
from app.services.character_service import CharacterService
from app.services.partitions import Partition, is_rectangle

METHODS = ("auto", "oracle", "two_row", "four_row")


def _range_count(lower: int, upper: int) -> int:
    return max(0, upper - lower + 1)


def _check_sizes(shapes: Sequence[Partition]) -> int:
    m = shapes[0].size
    if any(p.size != m for p in shapes):
        sizes = ", ".join(str(p.size) for p in shapes)
        raise InvalidInputError(f"Kronecker coefficient needs equal sizes, got {sizes}")
    return m


def rw_two_row(r_l: Partition, k_h: Partition, d_c: Partition) -> int:
    """(1 + w - v) [w >= v] for three shapes with at most two rows."""
    shapes = (Partition(r_l), Partition(k_h), Partition(d_c))
    if any(p.height > 2 for p in shapes):
        raise ClosedFormInapplicableError(
            f"Two-row formula needs shapes of height <= 2, got {', '.join(map(str, shapes))}"
        )
    m = _check_sizes(shapes)
    # Kronecker symmetry: only the sorted second rows matter
    l, h, c = sorted(p.row(1) for p in shapes)
    w = (l + h - c) // 2
    v = max(0, -((m - l - h - c) // 2))
    return 1 + w - v if w >= v else 0


def four_row_applicable(k_h: Partition, m_l: Partition, dcaa: Partition) -> bool:
    if k_h.height > 2 or m_l.height > 2:
        return False
    if dcaa.height != 4 or dcaa[2] != dcaa[3]:
        return False
    if k_h.row(1) < m_l.row(1):
        k_h, m_l = m_l, k_h
    h, c = k_h.row(1), dcaa[1]
    return (h + 2) // 2 <= h - c


def rw_four_row(k_h: Partition, m_l: Partition, dcaa: Partition) -> int:
    """Closed form for c_{(k,h),(m,l),(d,c,a,a)} with a > 0 and ceil((h+1)/2) <= h - c.

    The two two-row arguments are ordered so that h >= l.
    """
    k_h, m_l, dcaa = Partition(k_h), Partition(m_l), Partition(dcaa)
    size = _check_sizes((k_h, m_l, dcaa))
    if k_h.height > 2 or m_l.height > 2:
        raise ClosedFormInapplicableError(f"Four-row formula needs two two-row shapes, got {k_h} and {m_l}")
    if dcaa.height != 4 or dcaa[2] != dcaa[3]:
        raise ClosedFormInapplicableError(f"Four-row formula needs a shape (d,c,a,a) with a > 0, got {dcaa}")
    if k_h.row(1) < m_l.row(1):
        k_h, m_l = m_l, k_h

    h, l = k_h.row(1), m_l.row(1)
    _, c, a, _ = dcaa
    if (h + 2) // 2 > h - c:
        raise ClosedFormInapplicableError(
            f"Four-row formula needs ceil((h+1)/2) <= h-c, got h={h}, c={c}"
        )

    first = _range_count(h - c, min(l, (l - a + h - c) // 2))
    second = _range_count(
        max(a, l + h + a - size - 1),
        min(l, (h - 1) // 2, (l + h + a + c - size - 1) // 2),
    )
    value = first - second
    if value < 0:
        raise VerificationError(f"Four-row formula went negative on {k_h}, {m_l}, {dcaa}")
    return value


def det_reduction(alpha: Partition, beta: Partition, rho: Partition) -> int:
    """c_{alpha,beta,(r1,r2,a,a)} through V_rho(GL_4) = det^a (x) V_{(r1-a,r2-a)}.

    det of GL_4 restricts to det^2 (x) det^2 on GL_2 x GL_2, so both two-row
    shapes lose a 2a x 2 block.
    """
    alpha, beta, rho = Partition(alpha), Partition(beta), Partition(rho)
    _check_sizes((alpha, beta, rho))
    if alpha.height > 2 or beta.height > 2 or rho.height != 4 or rho[2] != rho[3]:
        raise ClosedFormInapplicableError(
            f"Determinant reduction needs two two-row shapes and (d,c,a,a), got {alpha}, {beta}, {rho}"
        )
    a = rho[3]
    if alpha.row(1) < 2 * a or beta.row(1) < 2 * a:
        return 0
    shift = 2 * a
    return rw_two_row(
        Partition((alpha[0] - shift, alpha[1] - shift)),
        Partition((beta[0] - shift, beta[1] - shift)),
        Partition((rho[0] - a, rho[1] - a)),
    )


def four_row_roles(shapes: Sequence[Partition]) -> Optional[Tuple[Partition, Partition, Partition]]:
    """Assign (k,h), (m,l), (d,c,a,a) roles when the four-row formula applies."""
    for i, candidate in enumerate(shapes):
        others = [p for j, p in enumerate(shapes) if j != i]
        if four_row_applicable(others[0], others[1], candidate):
            first, second = sorted(others, key=lambda p: p.row(1), reverse=True)
            return first, second, candidate
    return None


class KroneckerService:
    def __init__(self, characters: CharacterService, verify: bool = False):
        self.characters = characters
        self.verify = verify
        self.cache_hits = 0
        self._oracle_values = LRUCache(maxsize=65536)
        self._guard = threading.Lock()

    def oracle(self, alpha: Partition, beta: Partition, gamma: Partition) -> int:
        key = tuple(sorted((Partition(alpha), Partition(beta), Partition(gamma))))
        with self._guard:
            value = self._oracle_values.get(key)
        if value is not None:
            self.cache_hits += 1
            return value
        value = self.characters.inner_product_triple(*key)
        with self._guard:
            self._oracle_values[key] = value
        return value

    def kronecker(self, alpha: Partition, beta: Partition, gamma: Partition, method: str = "auto") -> KroneckerResult:
        method = method.replace("-", "_")
        if method not in METHODS:
            raise InvalidInputError(f"Unknown Kronecker method '{method}', expected one of {', '.join(METHODS)}")
        shapes = (Partition(alpha), Partition(beta), Partition(gamma))
        _check_sizes(shapes)

        if method == "oracle":
            return KroneckerResult(value=self.oracle(*shapes), method="oracle")

        if method in ("auto", "two_row") and all(p.height <= 2 for p in shapes):
            value, tag = rw_two_row(*shapes), "two_row_closed_form"
        elif method == "two_row":
            raise ClosedFormInapplicableError(
                f"Two-row formula needs shapes of height <= 2, got {', '.join(map(str, shapes))}"
            )
        elif method in ("auto", "four_row") and (roles := four_row_roles(shapes)) is not None:
            value, tag = rw_four_row(*roles), "four_row_closed_form"
        elif method == "four_row":
            raise ClosedFormInapplicableError(
                f"Four-row formula does not apply to {', '.join(map(str, shapes))}"
            )
        else:
            return KroneckerResult(value=self.oracle(*shapes), method="oracle")

        if not self.verify:
            return KroneckerResult(value=value, method=tag)
        expected = self.oracle(*shapes)
        if expected != value:
            raise VerificationError(
                f"Closed form {tag} gave {value} but the character oracle gives {expected} "
                f"for {', '.join(map(str, shapes))}"
            )
        return KroneckerResult(value=value, method=tag, cross_checked=True)

    def tensor_square_contains(self, delta: Partition, rho: Partition) -> bool:
        """Whether W_rho occurs in W_delta (x) W_delta for a two-row rectangle delta."""
        delta, rho = Partition(delta), Partition(rho)
        if delta.size != rho.size:
            raise InvalidInputError(f"tensor_square_contains needs |delta| = |rho|, got {delta.size} and {rho.size}")
        if not is_rectangle(delta, 2):
            raise InvalidInputError(f"tensor_square_contains needs a rectangle of height 2, got {delta}")
        return self.kronecker(delta, delta, rho).value > 0
