"""Exceptions raised by the pipframe core"""


class DimensionError(ValueError):
    """Vector, field or matrix sizes do not match."""


class DomainError(ValueError):
    """Input outside the domain of an operation (zero weight, complex min/max, bad index)."""


class PreconditionError(ValueError):
    """A documented precondition was not established by the caller."""


class ConfigError(ValueError):
    """Scenario configuration problem, located by file, line and key."""

    def __init__(self, message: str, path: str | None = None,
                 line: int | None = None, key: str | None = None):
        self.path = path
        self.line = line
        self.key = key
        where = []
        if path:
            where.append(str(path))
        if line is not None:
            where.append(f"line {line}")
        if key:
            where.append(f"key '{key}'")
        prefix = ", ".join(where)
        super().__init__(f"{prefix}: {message}" if prefix else message)


class ConvergenceError(RuntimeError):
    """The minimizer ran out of budget; best_bound is the best value seen."""

    def __init__(self, message: str, best_bound: float, lower_bound: float | None = None):
        self.best_bound = best_bound
        self.lower_bound = lower_bound
        super().__init__(f"{message} (best bound {best_bound:.6g})")


class NotInvertibleError(RuntimeError):
    """Resolution operator or kernel matrix is not in GL."""

    def __init__(self, message: str, sigma_min: float):
        self.sigma_min = sigma_min
        super().__init__(f"{message} (smallest singular value {sigma_min:.3e})")


class UndefinedProductError(ValueError):
    """i(A) and d(B) do not meet, so B·A has no factorization."""

    def __init__(self, iset, dset):
        self.iset = tuple(iset)
        self.dset = tuple(dset)
        super().__init__(
            f"product undefined: i(A) = {{{', '.join(map(str, self.iset))}}} "
            f"and d(B) = {{{', '.join(map(str, self.dset))}}} are disjoint")
