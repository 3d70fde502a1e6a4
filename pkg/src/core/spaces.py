"""Computable Banach-space norms over a finite measure space.

Descriptors: Lp, WeightedL2, Projective (norm on an intersection) and
Inductive (infimum over decompositions, norm on a sum). Every descriptor is
an absolute, monotone norm, so norms are evaluated on magnitudes |v| and
optimal decompositions are phase-aligned with v.

Projective and Inductive carry a `combine` flavour. "sum" is the classic
‖·‖_a + ‖·‖_b (resp. inf ‖g‖_a + ‖h‖_b); "max" uses the maximum. The exact
conjugate of a sum-projective norm is the max-inductive norm of the duals
(and vice versa), which is what dual_descriptor returns.
"""
import numpy as np

from ..config import INDUCTIVE_MAX_ITER, INDUCTIVE_WARM_ITER, INDUCTIVE_REL_TOL
from .errors import DimensionError, DomainError
from .lattice import LpIndex, HALF, exponent_label, inverse_exponent, as_fraction
from .measure import FiniteMeasureSpace, field_values, pair
from .optimize import minimize_convex

COMBINES = ('sum', 'max')


def conjugate_combine(combine: str) -> str:
    return 'max' if combine == 'sum' else 'sum'


class SpaceDescriptor:
    """Base class: a norm on the fields of one measure space."""

    space: FiniteMeasureSpace

    def magnitude_norm(self, s: np.ndarray) -> float:
        """Norm of a nonnegative real vector of magnitudes."""
        raise NotImplementedError

    def subgradient(self, s: np.ndarray) -> np.ndarray:
        """A subgradient of magnitude_norm at s, valid on the nonnegative orthant."""
        raise NotImplementedError

    def dual(self) -> "SpaceDescriptor":
        raise NotImplementedError

    def describe(self) -> str:
        raise NotImplementedError

    def __str__(self):
        return self.describe()

    def __repr__(self):
        return f"{type(self).__name__}({self.describe()})"


class Lp(SpaceDescriptor):
    """L^p(X, μ), 1 ≤ p ≤ ∞; the exponent is stored exactly as 1/p."""

    def __init__(self, space: FiniteMeasureSpace, p=2):
        self.space = space
        self.inv_p = inverse_exponent(p)

    @classmethod
    def from_inverse(cls, space: FiniteMeasureSpace, inv_p) -> "Lp":
        desc = cls.__new__(cls)
        desc.space = space
        desc.inv_p = as_fraction(inv_p)
        if not 0 <= desc.inv_p <= 1:
            raise DomainError(f"1/p = {desc.inv_p} outside [0, 1]")
        return desc

    @property
    def p(self) -> float:
        return np.inf if self.inv_p == 0 else float(1 / self.inv_p)

    @property
    def is_hilbert(self) -> bool:
        return self.inv_p == HALF

    def magnitude_norm(self, s):
        s = np.asarray(s, dtype=float)
        if self.inv_p == 0:
            return float(np.max(s))
        top = float(np.max(s))
        if top == 0:
            return 0.0
        p = self.p
        # scaled to avoid overflow for large p
        return top * float(np.sum((s / top) ** p * self.space.weights)) ** (1.0 / p)

    def subgradient(self, s):
        s = np.asarray(s, dtype=float)
        if self.inv_p == 0:
            g = np.zeros_like(s)
            g[int(np.argmax(s))] = 1.0
            return g
        if self.inv_p == 1:
            return self.space.weights.copy()
        n = self.magnitude_norm(s)
        if n == 0:
            return np.zeros_like(s)
        return self.space.weights * (s / n) ** (self.p - 1.0)

    def dual(self):
        return Lp.from_inverse(self.space, 1 - self.inv_p)

    def describe(self):
        return f"L^{exponent_label(self.inv_p)}"

    def __eq__(self, other):
        return (isinstance(other, Lp) and self.inv_p == other.inv_p
                and self.space == other.space)

    def __hash__(self):
        return hash(('Lp', self.inv_p, self.space))


class WeightedL2(SpaceDescriptor):
    """ℓ²_m: ‖v‖ = (Σ |m_x v_x|² μ_x)^{1/2}."""

    def __init__(self, space: FiniteMeasureSpace, m):
        m = np.asarray(m, dtype=float).ravel()
        if len(m) != space.size:
            raise DimensionError(f"{len(m)} weights on a space of {space.size} points")
        if not np.all(np.isfinite(m)) or np.any(m <= 0):
            raise DomainError("WeightedL2 weights must be finite and strictly positive")
        m.flags.writeable = False
        self.space = space
        self.m = m

    is_hilbert = True

    def magnitude_norm(self, s):
        s = np.asarray(s, dtype=float)
        return float(np.sqrt(np.sum((self.m * s) ** 2 * self.space.weights)))

    def subgradient(self, s):
        s = np.asarray(s, dtype=float)
        n = self.magnitude_norm(s)
        if n == 0:
            return np.zeros_like(s)
        return self.m ** 2 * self.space.weights * s / n

    def dual(self):
        return WeightedL2(self.space, 1.0 / self.m)

    def describe(self):
        return f"ℓ²_m(m ∈ [{self.m.min():.3g}, {self.m.max():.3g}])"

    def __eq__(self, other):
        return (isinstance(other, WeightedL2) and self.space == other.space
                and np.allclose(self.m, other.m, rtol=1e-12, atol=0.0))

    __hash__ = None


class _Combination(SpaceDescriptor):
    def __init__(self, a: SpaceDescriptor, b: SpaceDescriptor, combine: str = 'sum'):
        if combine not in COMBINES:
            raise DomainError(f"combine must be one of {COMBINES}, got {combine!r}")
        if a.space != b.space:
            raise DimensionError("combined descriptors must share one measure space")
        self.a = a
        self.b = b
        self.combine = combine
        self.space = a.space

    def __eq__(self, other):
        if type(other) is not type(self) or other.combine != self.combine:
            return False
        return ((self.a == other.a and self.b == other.b)
                or (self.a == other.b and self.b == other.a))

    __hash__ = None


class Projective(_Combination):
    """Norm on V_a ∩ V_b: ‖v‖_a + ‖v‖_b, or their maximum."""

    def magnitude_norm(self, s):
        na, nb = self.a.magnitude_norm(s), self.b.magnitude_norm(s)
        return na + nb if self.combine == 'sum' else max(na, nb)

    def subgradient(self, s):
        if self.combine == 'sum':
            return self.a.subgradient(s) + self.b.subgradient(s)
        if self.a.magnitude_norm(s) >= self.b.magnitude_norm(s):
            return self.a.subgradient(s)
        return self.b.subgradient(s)

    def dual(self):
        return Inductive(self.a.dual(), self.b.dual(), conjugate_combine(self.combine))

    def describe(self):
        tag = "" if self.combine == 'sum' else "[max]"
        return f"({self.a.describe()} ∩ {self.b.describe()}){tag}"


class Inductive(_Combination):
    """Norm on V_a + V_b: inf over v = g + h of ‖g‖_a + ‖h‖_b, or of the maximum."""

    def magnitude_norm(self, s):
        _, _, value, _ = _magnitude_split(self.a, self.b, np.asarray(s, dtype=float), self.combine)
        return value

    def subgradient(self, s):
        s = np.asarray(s, dtype=float)
        g, h, _, _ = _magnitude_split(self.a, self.b, s, self.combine)
        if self.combine == 'max' and self.b.magnitude_norm(h) > self.a.magnitude_norm(g):
            return self.b.subgradient(h)
        return self.a.subgradient(g)

    def dual(self):
        return Projective(self.a.dual(), self.b.dual(), conjugate_combine(self.combine))

    def describe(self):
        tag = "" if self.combine == 'sum' else "[max]"
        return f"({self.a.describe()} + {self.b.describe()}){tag}"


def norm(desc: SpaceDescriptor, v) -> float:
    """Norm of a field (or array) v under desc."""
    values = field_values(desc.space, v)
    return desc.magnitude_norm(np.abs(values))


def _magnitude_split(a, b, s_abs, combine='sum', max_iter=INDUCTIVE_MAX_ITER,
                     warm_iter=INDUCTIVE_WARM_ITER, rel_tol=INDUCTIVE_REL_TOL):
    """Optimal split of magnitudes s_abs = s + (s_abs - s), 0 ≤ s ≤ s_abs."""
    zeros = np.zeros_like(s_abs)
    if not np.any(s_abs > 0):
        return zeros, zeros.copy(), 0.0, {'iterations': 0, 'gap': 0.0, 'converged': True}

    def objective(s):
        r = np.maximum(s_abs - s, 0.0)
        fa, fb = a.magnitude_norm(s), b.magnitude_norm(r)
        if combine == 'sum':
            return fa + fb, a.subgradient(s) - b.subgradient(r)
        if fa >= fb:
            return fa, a.subgradient(s)
        return fb, -b.subgradient(r)

    s, value, stats = minimize_convex(
        objective, zeros, s_abs, x0=s_abs / 2, seed_points=(zeros, s_abs),
        warm_iter=warm_iter, max_iter=max_iter, rel_tol=rel_tol)
    return s, np.maximum(s_abs - s, 0.0), value, stats


def inductive_split(a: SpaceDescriptor, b: SpaceDescriptor, v, combine: str = 'sum', **solver):
    """
    Best decomposition v = g + h for the inductive norm of V_a + V_b.

    Returns:
        Tuple of (g, h, value, stats_dict)
    """
    if a.space != b.space:
        raise DimensionError("inductive norm needs descriptors on one measure space")
    values = field_values(a.space, v)
    magnitude = np.abs(values)
    phase = np.ones_like(values)
    nonzero = magnitude > 0
    phase[nonzero] = values[nonzero] / magnitude[nonzero]
    s, _, value, stats = _magnitude_split(a, b, magnitude, combine, **solver)
    g = phase * s
    return g, values - g, value, stats


def inductive_norm(a: SpaceDescriptor, b: SpaceDescriptor, v, combine: str = 'sum', **solver) -> float:
    """inf over v = g + h of ‖g‖_a + ‖h‖_b (or the maximum for combine="max")."""
    _, _, value, _ = inductive_split(a, b, v, combine, **solver)
    return value


def dual_descriptor(desc: SpaceDescriptor) -> SpaceDescriptor:
    return desc.dual()


def dual_norm(desc: SpaceDescriptor, v) -> float:
    """sup over norm(desc, ξ) ≤ 1 of |pair(ξ, v)|."""
    values = field_values(desc.space, v)
    magnitude = np.abs(values)
    if isinstance(desc, (Lp, WeightedL2)):
        return desc.dual().magnitude_norm(magnitude)
    if isinstance(desc, Inductive):
        # unit ball is conv(B_a ∪ B_b) for sum, B_a + B_b for max
        da, db = dual_norm(desc.a, values), dual_norm(desc.b, values)
        return max(da, db) if desc.combine == 'sum' else da + db
    return _support_by_slice(desc, magnitude)


def _support_by_slice(desc: SpaceDescriptor, magnitude: np.ndarray) -> float:
    """1 / min{norm(s) : s ≥ 0, Σ s_x |v_x| μ_x = 1}."""
    c = magnitude * desc.space.weights
    active = c > 0
    if not np.any(active):
        return 0.0
    n = desc.space.size
    idx = np.flatnonzero(active)
    c_active = c[idx]

    def embed(t):
        s = np.zeros(n)
        s[idx] = t
        return s

    def objective(t):
        s = embed(t)
        return desc.magnitude_norm(s), desc.subgradient(s)[idx]

    upper = 1.0 / c_active
    vertices = [np.where(np.arange(len(idx)) == i, upper[i], 0.0) for i in range(len(idx))]
    centre = np.full(len(idx), 1.0 / np.sum(c_active))
    _, value, _ = minimize_convex(objective, np.zeros(len(idx)), upper,
                                  eq=(c_active, 1.0), seed_points=vertices + [centre])
    return 1.0 / value if value > 0 else np.inf


def holder_bound_check(p_desc: SpaceDescriptor, v, w, tol: float = 1e-9) -> bool:
    """|pair(v, w)| ≤ ‖v‖_p ‖w‖_p̄ (plus roundoff)."""
    lhs = abs(pair(p_desc.space, v, w))
    rhs = norm(p_desc, v) * norm(dual_descriptor(p_desc), w)
    return lhs <= rhs * (1 + tol) + tol


def realize_lp_index(space: FiniteMeasureSpace, index: LpIndex, combine: str = 'sum') -> SpaceDescriptor:
    """
    Descriptor for L^(p,q): Lp on the diagonal, Projective above it
    (L^p ∩ L^q) and Inductive below it (L^p + L^q). The inductive side takes
    the conjugate flavour so realizations of dual indices are dual descriptors.
    """
    a = Lp.from_inverse(space, index.inv_p)
    if index.on_diagonal:
        return a
    b = Lp.from_inverse(space, index.inv_q)
    if index.inv_q > index.inv_p:
        return Projective(a, b, combine)
    return Inductive(a, b, conjugate_combine(combine))


def l1_linf_threshold(space: FiniteMeasureSpace, v) -> float:
    """
    L¹ + L^∞ inductive norm by scanning thresholds: h = clip(v, t) costs
    Σ (|v_x| - t)_+ μ_x + t, a convex piecewise-linear function of t.
    """
    magnitude = np.abs(field_values(space, v))
    candidates = np.concatenate(([0.0], magnitude))
    costs = [float(np.sum(np.maximum(magnitude - t, 0.0) * space.weights) + t)
             for t in candidates]
    return min(costs)


# Containment bounds

INTERPOLATION_CONSTANT = 2.0


def interpolation_constant(a_idx: LpIndex, b_idx: LpIndex) -> float | None:
    """
    C with ‖v‖_b ≤ C ‖v‖_a for every measure, when L^(a) ⊂ L^(b) in the lattice
    order, for descriptors built by realize_lp_index. None when not comparable.
    """
    return INTERPOLATION_CONSTANT if a_idx.leq(b_idx) else None


def finite_measure_constant(space: FiniteMeasureSpace, r, s) -> float:
    """C = M^{1/r - 1/s} with ‖v‖_r ≤ C ‖v‖_s for r ≤ s on total mass M."""
    inv_r, inv_s = inverse_exponent(r), inverse_exponent(s)
    if inv_r < inv_s:
        raise DomainError("finite-measure containment needs r ≤ s")
    return float(space.total_mass() ** float(inv_r - inv_s))


def containment_constant(space: FiniteMeasureSpace, a_idx: LpIndex, b_idx: LpIndex) -> float | None:
    """Best available C with ‖v‖_b ≤ C ‖v‖_a, or None if no bound is known."""
    constant = interpolation_constant(a_idx, b_idx)
    if constant is not None:
        return constant
    if a_idx.on_diagonal and b_idx.on_diagonal and a_idx.inv_p <= b_idx.inv_p:
        return finite_measure_constant(space, _exponent(b_idx.inv_p), _exponent(a_idx.inv_p))
    return None


def _exponent(inv):
    return np.inf if inv == 0 else 1 / inv
