"""Pip-space operators over an indexed family of spaces.

All spaces of a family share one coordinate system, so an operator is one
matrix plus the set j(A) of index pairs (q, p) for which it maps V_q
continuously into V_p. On families with a truncation sweep, continuity is
decided by the growth of the operator norm across the sweep.
"""
from concurrent.futures import ThreadPoolExecutor
from itertools import product

import numpy as np
from scipy.optimize import minimize

from ..config import DEFAULT_SEED, GROWTH_FACTOR, NORM_PROBES, NORM_POLISH_STARTS
from .errors import DimensionError, DomainError, UndefinedProductError
from .lattice import ScaleIndex, CENTER, SCALE_CENTER, involution, leq
from .measure import FiniteMeasureSpace
from .spaces import (
    SpaceDescriptor, Lp, WeightedL2, dual_descriptor, dual_norm, norm, realize_lp_index
)


def index_key(index):
    """Deterministic order: smallest space first."""
    if isinstance(index, ScaleIndex):
        return (-index.k,)
    return (index.inv_p, -index.inv_q)


class IndexedSpaceFamily:
    """
    Finite set of lattice indices closed under involution, with a map
    index -> SpaceDescriptor at a given truncation size n.
    """

    def __init__(self, indices, realize, size: int, sweep_sizes=None, name: str = ''):
        indices = set(indices)
        if not indices:
            raise DomainError("an indexed family needs at least one index")
        kinds = {type(index) for index in indices}
        if len(kinds) != 1:
            raise DomainError("indices of one family must be of one kind")
        center = SCALE_CENTER if kinds == {ScaleIndex} else CENTER
        if center not in indices:
            raise DomainError(f"family must contain the self-dual index {center}")
        missing = [index for index in indices if involution(index) not in indices]
        if missing:
            raise DomainError(f"family not closed under involution: {', '.join(map(str, missing))}")

        self.indices = tuple(sorted(indices, key=index_key))
        self.center = center
        self._realize = realize
        self.size = size
        self.sweep_sizes = tuple(sweep_sizes) if sweep_sizes else None
        self.name = name
        self._check_duality()

    def realize(self, index, n: int | None = None) -> SpaceDescriptor:
        if index not in self.indices:
            raise DomainError(f"{index} is not an index of this family")
        return self._realize(index, self.size if n is None else n)

    def space(self, n: int | None = None) -> FiniteMeasureSpace:
        return self.realize(self.center, n).space

    def _check_duality(self):
        for index in self.indices:
            if self.realize(involution(index)) != dual_descriptor(self.realize(index)):
                raise DomainError(f"realize({involution(index)}) is not the dual of realize({index})")

    def __repr__(self):
        return f"IndexedSpaceFamily({self.name or 'unnamed'}, {len(self.indices)} indices, N={self.size})"


def scale_family(generator, ks, size: int, sweep_sizes=None, name: str = 'scale') -> IndexedSpaceFamily:
    """Family {H_k} with H_k = ℓ²_{a^k} on counting measure; generator(n) gives a_1..a_n."""
    indices = {ScaleIndex(int(k)) for k in ks} | {ScaleIndex(-int(k)) for k in ks} | {SCALE_CENTER}

    def realize(index, n):
        a = np.asarray(generator(n), dtype=float)
        return WeightedL2(FiniteMeasureSpace.counting(n, start=1), a ** index.k)

    return IndexedSpaceFamily(indices, realize, size, sweep_sizes, name)


def lp_family(space: FiniteMeasureSpace, indices, combine: str = 'sum', name: str = 'lp') -> IndexedSpaceFamily:
    """Family of L^(p,q) spaces over one fixed measure space."""
    points = set(indices) | {CENTER}
    points |= {involution(index) for index in points}

    def realize(index, n):
        if n != space.size:
            raise DimensionError("an L^(p,q) family over a fixed space has no truncation sweep")
        return realize_lp_index(space, index, combine)

    return IndexedSpaceFamily(points, realize, space.size, None, name)


def hilbert_family(d: int) -> IndexedSpaceFamily:
    """The single central space ℂ^d (counting measure, L²)."""
    return IndexedSpaceFamily(
        {CENTER}, lambda index, n: Lp(FiniteMeasureSpace.counting(n), 2), d, None, 'hilbert')


# === operator norms ===

def _hilbert_weights(desc: SpaceDescriptor) -> np.ndarray | None:
    """w with ‖v‖ = ‖w·v‖₂ for L²-type descriptors, else None."""
    if isinstance(desc, WeightedL2):
        return desc.m * np.sqrt(desc.space.weights)
    if isinstance(desc, Lp) and desc.is_hilbert:
        return np.sqrt(desc.space.weights)
    return None


def operator_norm_certificate(matrix, source: SpaceDescriptor, target: SpaceDescriptor,
                              probes: int = NORM_PROBES, seed: int = DEFAULT_SEED,
                              polish: bool = True) -> tuple[float, dict]:
    """
    sup over norm(source, v) = 1 of norm(target, A v).

    Closed forms cover L²-type → L²-type (singular values), L¹ sources
    (extreme points) and L^∞ targets (row dual norms). Anything else is
    estimated from random probes and a local polish, which yields a lower bound.

    Returns:
        Tuple of (norm, stats_dict) with stats 'method' and 'exact'
    """
    A = np.asarray(matrix, dtype=complex)
    if A.shape != (target.space.size, source.space.size):
        raise DimensionError(f"matrix of shape {A.shape} between spaces of sizes "
                             f"{source.space.size} and {target.space.size}")
    if not np.any(A):
        return 0.0, {'method': 'zero', 'exact': True}

    w_source, w_target = _hilbert_weights(source), _hilbert_weights(target)
    if w_source is not None and w_target is not None:
        weighted = (w_target[:, None] * A) / w_source[None, :]
        return float(np.linalg.norm(weighted, 2)), {'method': 'svd', 'exact': True}

    if isinstance(source, Lp) and source.inv_p == 1:
        mu = source.space.weights
        value = max(norm(target, A[:, i]) / mu[i] for i in range(A.shape[1]))
        return float(value), {'method': 'extreme-points', 'exact': True}

    if isinstance(target, Lp) and target.inv_p == 0:
        mu = source.space.weights
        value = max(dual_norm(source, np.conj(A[j, :]) / mu) for j in range(A.shape[0]))
        return float(value), {'method': 'row-duals', 'exact': True}

    return _search_norm(A, source, target, probes, seed, polish)


def _search_norm(A, source, target, probes, seed, polish):
    rng = np.random.default_rng(seed)
    n = A.shape[1]

    def ratio(v):
        denominator = norm(source, v)
        return 0.0 if denominator == 0 else norm(target, A @ v) / denominator

    def as_complex(x):
        return x[:n] + 1j * x[n:]

    candidates = [np.eye(n, dtype=complex)[i] for i in range(n)]
    candidates += [rng.standard_normal(n) + 1j * rng.standard_normal(n) for _ in range(probes)]
    scored = sorted(((ratio(v), i) for i, v in enumerate(candidates)), reverse=True)
    best = scored[0][0]
    evaluations = len(candidates)

    if polish:
        for _, i in scored[:NORM_POLISH_STARTS]:
            v = candidates[i]
            x0 = np.concatenate([v.real, v.imag])
            res = minimize(lambda x: -ratio(as_complex(x)), x0, method='Powell',
                           options={'maxfev': 200 * n, 'xtol': 1e-6, 'ftol': 1e-9})
            evaluations += int(res.nfev)
            best = max(best, -float(res.fun))

    return float(best), {'method': 'search', 'exact': False, 'evaluations': evaluations}


def operator_norm(matrix, source: SpaceDescriptor, target: SpaceDescriptor, **kwargs) -> float:
    value, _ = operator_norm_certificate(matrix, source, target, **kwargs)
    return value


# === operators ===

class PipOperator:
    """
    One matrix with its continuity pairs j(A).

    Args:
        family: IndexedSpaceFamily the operator acts on
        matrix: N×N matrix at the family's base size (taken from generator if omitted)
        generator: n -> matrix at truncation size n, needed for sweep-based j(A)
        jset: explicit continuity pairs; computed on first access otherwise
    """

    def __init__(self, family: IndexedSpaceFamily, matrix=None, generator=None,
                 jset=None, name: str = '', jobs: int = 1):
        if matrix is None:
            if generator is None:
                raise DomainError("a PipOperator needs a matrix or a generator")
            matrix = generator(family.size)
        matrix = np.array(matrix, dtype=complex)
        if matrix.shape != (family.size, family.size):
            raise DimensionError(f"matrix of shape {matrix.shape} on a family of size {family.size}")
        matrix.flags.writeable = False
        self.family = family
        self.matrix = matrix
        self.generator = generator
        self.name = name
        self.jobs = jobs
        self.continuity_norms = {}
        self._jset = frozenset(complete_jset(family, jset)) if jset is not None else None
        self._adjoint = None

    @property
    def jset(self) -> frozenset:
        if self._jset is None:
            self._jset = frozenset(compute_jset(self, jobs=self.jobs))
        return self._jset

    @property
    def dset(self) -> tuple:
        return tuple(sorted({q for q, _ in self.jset}, key=index_key))

    @property
    def iset(self) -> tuple:
        return tuple(sorted({p for _, p in self.jset}, key=index_key))

    def sorted_jset(self) -> list:
        return sorted(self.jset, key=lambda pair: (index_key(pair[0]), index_key(pair[1])))

    def __repr__(self):
        return f"PipOperator({self.name or 'A'}, |j(A)| = {len(self.jset)})"


def complete_jset(family: IndexedSpaceFamily, pairs) -> set:
    """Add the pairs implied by embeddings: (q', p') with q' ≤ q and p ≤ p'."""
    pairs = set(pairs)
    completed = set(pairs)
    for q, p in pairs:
        for q2, p2 in product(family.indices, repeat=2):
            if leq(q2, q) and leq(p, p2):
                completed.add((q2, p2))
    return completed


def _sweep_bounded(norms) -> bool:
    first, top = norms[0], max(norms)
    if first == 0:
        return top == 0
    return top <= GROWTH_FACTOR * first


def compute_jset(A: PipOperator, jobs: int = 1) -> set:
    """
    All pairs (q, p) for which A maps V_q continuously into V_p. Without a
    sweep every pair qualifies; with one, a pair is admitted when its norm
    stays within GROWTH_FACTOR of its first value across the sweep.
    """
    family = A.family
    pairs = list(product(family.indices, repeat=2))
    if family.sweep_sizes is None or A.generator is None:
        return set(pairs)

    matrices = {n: A.generator(n) for n in family.sweep_sizes}

    def sweep(pair):
        q, p = pair
        return [operator_norm(matrices[n], family.realize(q, n), family.realize(p, n))
                for n in family.sweep_sizes]

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            tables = list(pool.map(sweep, pairs))
    else:
        tables = [sweep(pair) for pair in pairs]

    admitted = set()
    for pair, norms in zip(pairs, tables):
        A.continuity_norms[pair] = norms
        if _sweep_bounded(norms):
            admitted.add(pair)
    return complete_jset(family, admitted)


def weighted_adjoint(matrix, weights) -> np.ndarray:
    """M⁻¹ A* M with M = diag(μ): the adjoint for the μ-weighted pairing."""
    mu = np.asarray(weights, dtype=float)
    return (np.conj(np.asarray(matrix, dtype=complex)).T * mu[None, :]) / mu[:, None]


def adjoint(A: PipOperator) -> PipOperator:
    """A^×, with j(A^×) = {(p̄, q̄) : (q, p) ∈ j(A)} and (A^×)^× = A."""
    if A._adjoint is not None:
        return A._adjoint
    family = A.family
    generator = None
    if A.generator is not None:
        def generator(n, _g=A.generator):
            return weighted_adjoint(_g(n), family.space(n).weights)
    jset = {(involution(p), involution(q)) for q, p in A.jset}
    B = PipOperator(family, weighted_adjoint(A.matrix, family.space().weights),
                    generator=generator, jset=jset,
                    name=f"{A.name or 'A'}^×", jobs=A.jobs)
    B._adjoint = A
    A._adjoint = B
    return B


def factorizations(B: PipOperator, A: PipOperator) -> tuple:
    """Middle indices r ∈ i(A) ∩ d(B) through which B·A factors."""
    return tuple(sorted(set(A.iset) & set(B.dset), key=index_key))


def multiply(B: PipOperator, A: PipOperator, through=None) -> PipOperator:
    """
    B·A, defined iff i(A) ∩ d(B) is nonempty. The matrix does not depend on
    the middle index; `through` only checks that the requested one is valid.

    Raises:
        UndefinedProductError: no factorization exists
    """
    if B.family is not A.family:
        raise DimensionError("operators act on different families")
    middle = factorizations(B, A)
    if not middle:
        raise UndefinedProductError(A.iset, B.dset)
    if through is not None and through not in middle:
        raise UndefinedProductError(A.iset, B.dset)

    generator = None
    if A.generator is not None and B.generator is not None:
        def generator(n, _a=A.generator, _b=B.generator):
            return _b(n) @ _a(n)
    jset = {(q, p) for q, r in A.jset for r2, p in B.jset if r == r2}
    return PipOperator(A.family, B.matrix @ A.matrix, generator=generator, jset=jset,
                       name=f"{B.name or 'B'}·{A.name or 'A'}", jobs=A.jobs)


def is_symmetric(A: PipOperator, tol: float = 1e-12) -> bool:
    """A^× = A as matrices, and j(A) symmetric under (q, p) -> (p̄, q̄)."""
    scale = max(1.0, float(np.max(np.abs(A.matrix))))
    same = np.allclose(adjoint(A).matrix, A.matrix, rtol=0.0, atol=tol * scale)
    return bool(same) and all((involution(p), involution(q)) in A.jset for q, p in A.jset)
