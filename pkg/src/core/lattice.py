"""Index algebra for lattices of Banach and Hilbert spaces.

LpIndex is the point (1/p, 1/q) of the unit square standing for L^(p,q);
ScaleIndex is the rung k of a Hilbert scale H_k. Both carry the order
(containment), the involution (conjugate dual) and meet/join. Nothing here
touches vectors.
"""
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
import math

from .errors import DomainError

MAX_DENOMINATOR = 10**6

HALF = Fraction(1, 2)


def as_fraction(x) -> Fraction:
    """Exact coordinate from an int, float, str or Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    return Fraction(float(x)).limit_denominator(MAX_DENOMINATOR)


def inverse_exponent(p) -> Fraction:
    """1/p with p = ∞ mapped to 0."""
    if isinstance(p, str) and p.strip().lower() in ('inf', 'infinity', '∞'):
        return Fraction(0)
    if isinstance(p, float) and math.isinf(p):
        return Fraction(0)
    p = as_fraction(p)
    if p < 1:
        raise DomainError(f"exponent {p} outside [1, ∞]")
    return 1 / p


def exponent_label(inv: Fraction) -> str:
    if inv == 0:
        return "∞"
    p = 1 / inv
    return str(p.numerator) if p.denominator == 1 else f"{float(p):.4g}"


@dataclass(frozen=True, order=False)
class LpIndex:
    inv_p: Fraction
    inv_q: Fraction

    def __post_init__(self):
        object.__setattr__(self, 'inv_p', as_fraction(self.inv_p))
        object.__setattr__(self, 'inv_q', as_fraction(self.inv_q))
        for value in (self.inv_p, self.inv_q):
            if not 0 <= value <= 1:
                raise DomainError(f"index coordinate {value} outside [0, 1]")

    @classmethod
    def from_exponents(cls, p, q=None) -> "LpIndex":
        """L^(p,q) from exponents; q defaults to p (a diagonal point)."""
        inv_p = inverse_exponent(p)
        inv_q = inv_p if q is None else inverse_exponent(q)
        return cls(inv_p, inv_q)

    @property
    def on_diagonal(self) -> bool:
        return self.inv_p == self.inv_q

    def leq(self, other: "LpIndex") -> bool:
        """Containment: left of and above (or equal to) other."""
        return self.inv_p <= other.inv_p and self.inv_q >= other.inv_q

    def involution(self) -> "LpIndex":
        return LpIndex(1 - self.inv_p, 1 - self.inv_q)

    def meet(self, other: "LpIndex") -> "LpIndex":
        return LpIndex(min(self.inv_p, other.inv_p), max(self.inv_q, other.inv_q))

    def join(self, other: "LpIndex") -> "LpIndex":
        return LpIndex(max(self.inv_p, other.inv_p), min(self.inv_q, other.inv_q))

    def render(self) -> str:
        p, q = exponent_label(self.inv_p), exponent_label(self.inv_q)
        return f"L^{p}" if self.on_diagonal else f"L^({p},{q})"

    def describe(self) -> str:
        """Set form: intersection above the diagonal, sum below it."""
        p, q = exponent_label(self.inv_p), exponent_label(self.inv_q)
        if self.on_diagonal:
            return f"L^{p}"
        if self.inv_q > self.inv_p:
            return f"L^{p} ∩ L^{q}"
        return f"L^{p} + L^{q}"

    def __str__(self):
        return self.render()


@dataclass(frozen=True)
class ScaleIndex:
    k: int

    def leq(self, other: "ScaleIndex") -> bool:
        # higher k is the smaller space
        return self.k >= other.k

    def involution(self) -> "ScaleIndex":
        return ScaleIndex(-self.k)

    def meet(self, other: "ScaleIndex") -> "ScaleIndex":
        return ScaleIndex(max(self.k, other.k))

    def join(self, other: "ScaleIndex") -> "ScaleIndex":
        return ScaleIndex(min(self.k, other.k))

    def render(self) -> str:
        return f"H_{self.k}"

    def __str__(self):
        return self.render()


CENTER = LpIndex(HALF, HALF)
SCALE_CENTER = ScaleIndex(0)
SMALLEST = LpIndex(0, 1)   # L^∞ ∩ L^1
LARGEST = LpIndex(1, 0)    # L^1 + L^∞


def _check_same_kind(a, b):
    if type(a) is not type(b):
        raise DomainError(f"cannot compare {type(a).__name__} with {type(b).__name__}")


def leq(a, b) -> bool:
    _check_same_kind(a, b)
    return a.leq(b)


def involution(a):
    return a.involution()


def meet(a, b):
    _check_same_kind(a, b)
    return a.meet(b)


def join(a, b):
    _check_same_kind(a, b)
    return a.join(b)


def center_of(a):
    """Self-dual index of the lattice a belongs to."""
    return SCALE_CENTER if isinstance(a, ScaleIndex) else CENTER


def comparable(a, b) -> bool:
    return leq(a, b) or leq(b, a)


def quadrant(a: LpIndex) -> str:
    """Position relative to L² in the unit square (p axis to the right, q axis up)."""
    dx = a.inv_p - HALF
    dy = a.inv_q - HALF
    if dx == 0 and dy == 0:
        return "center"
    if a.on_diagonal:
        return "diagonal"
    if a.inv_p + a.inv_q == 1:
        return "anti-diagonal"
    if dx > 0 and dy > 0:
        return "first"
    if dx < 0 and dy > 0:
        return "second"
    if dx < 0 and dy < 0:
        return "third"
    if dx > 0 and dy < 0:
        return "fourth"
    return "axis"


def admissible_triplet_point(a: LpIndex) -> bool:
    """True when L^(a) ⊂ L² ⊂ L^(ā) is a triplet: 2 ≤ p < ∞ and 1 < q ≤ 2."""
    return 0 < a.inv_p <= HALF <= a.inv_q < 1


def diagonal_chain(exponents) -> list[LpIndex]:
    """The chain L^q ∩ L^q̄ ⊂ L² ⊂ L^q + L^q̄ through the center, smallest first."""
    points = []
    for q in exponents:
        t = inverse_exponent(q)
        points.append(LpIndex(t, 1 - t))
        points.append(LpIndex(1 - t, t))
    return sorted(set(points), key=lambda idx: idx.inv_p)


def horizontal_chain(exponents) -> list[LpIndex]:
    """Points L^(p,2), ordered by containment."""
    return sorted({LpIndex(inverse_exponent(p), HALF) for p in exponents},
                  key=lambda idx: idx.inv_p)


def vertical_chain(exponents) -> list[LpIndex]:
    """Points L^(2,q), ordered by containment."""
    return sorted({LpIndex(HALF, inverse_exponent(q)) for q in exponents},
                  key=lambda idx: -idx.inv_q)


def is_chain(indices) -> bool:
    return all(comparable(a, b) for a, b in combinations(list(indices), 2))


def one_round(indices) -> set:
    """indices together with every pairwise meet and join."""
    points = set(indices)
    for a, b in combinations(list(points), 2):
        points.add(meet(a, b))
        points.add(join(a, b))
    return points


def closure(indices, max_rounds: int = 64) -> set:
    """Smallest superset closed under meet and join."""
    points = set(indices)
    for _ in range(max_rounds):
        grown = one_round(points)
        if grown == points:
            return points
        points = grown
    raise DomainError("meet/join closure did not stabilize")


def involution_closure(indices) -> set:
    points = set(indices)
    return points | {involution(a) for a in points}
