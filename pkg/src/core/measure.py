"""Finite measure spaces and the weighted sesquilinear pairing"""
import numpy as np

from .errors import DimensionError, DomainError


class FiniteMeasureSpace:
    """Atomic measure: N labelled points with strictly positive weights μ_x."""

    def __init__(self, labels, weights):
        weights = np.asarray(weights, dtype=float).ravel()
        labels = [str(label) for label in labels]
        if len(weights) == 0:
            raise DomainError("a measure space needs at least one point")
        if len(labels) != len(weights):
            raise DimensionError(f"{len(labels)} labels for {len(weights)} weights")
        if not np.all(np.isfinite(weights)) or np.any(weights <= 0):
            raise DomainError("measure weights must be finite and strictly positive")
        weights.flags.writeable = False
        self.labels = tuple(labels)
        self.weights = weights

    @classmethod
    def counting(cls, n: int, start: int = 0) -> "FiniteMeasureSpace":
        """Counting measure on the points start, ..., start + n - 1."""
        return cls([str(i) for i in range(start, start + n)], np.ones(n))

    @classmethod
    def uniform(cls, n: int, total: float = 1.0) -> "FiniteMeasureSpace":
        return cls([str(i) for i in range(n)], np.full(n, total / n))

    @property
    def size(self) -> int:
        return len(self.weights)

    def __len__(self):
        return self.size

    def total_mass(self) -> float:
        return float(np.sum(self.weights))

    def __eq__(self, other):
        if not isinstance(other, FiniteMeasureSpace):
            return NotImplemented
        return self.labels == other.labels and np.array_equal(self.weights, other.weights)

    def __hash__(self):
        return hash((self.labels, self.weights.tobytes()))

    def __repr__(self):
        return f"FiniteMeasureSpace(N={self.size}, mass={self.total_mass():.6g})"


class ScalarField:
    """Complex function on the points of a measure space."""

    def __init__(self, space: FiniteMeasureSpace, values):
        values = np.asarray(values, dtype=complex).ravel()
        if len(values) != space.size:
            raise DimensionError(f"field of length {len(values)} on a space of {space.size} points")
        self.space = space
        self.values = values

    def __array__(self, dtype=None, copy=None):
        return self.values if dtype is None else self.values.astype(dtype)

    def __len__(self):
        return len(self.values)

    def __add__(self, other):
        return ScalarField(self.space, self.values + field_values(self.space, other))

    def __sub__(self, other):
        return ScalarField(self.space, self.values - field_values(self.space, other))

    def __mul__(self, scalar):
        return ScalarField(self.space, self.values * scalar)

    __rmul__ = __mul__

    def __repr__(self):
        return f"ScalarField(N={len(self.values)})"


def field_values(space: FiniteMeasureSpace, v) -> np.ndarray:
    """Values of v as a complex array on space, checking the length."""
    if isinstance(v, ScalarField):
        if v.space is not space and v.space != space:
            raise DimensionError("field lives on a different measure space")
        return v.values
    values = np.asarray(v, dtype=complex).ravel()
    if len(values) != space.size:
        raise DimensionError(f"field of length {len(values)} on a space of {space.size} points")
    return values


def pair(space: FiniteMeasureSpace, xi, eta) -> complex:
    """⟨⟨ξ, η⟩⟩ = Σ_x ξ(x)·conj(η(x))·μ_x"""
    x = field_values(space, xi)
    y = field_values(space, eta)
    return complex(np.sum(x * np.conj(y) * space.weights))


def total_mass(space: FiniteMeasureSpace) -> float:
    return space.total_mass()
