class Pac4SacError(Exception):
    pass


class ContractError(Pac4SacError):
    pass


class DimensionError(Pac4SacError, ValueError):
    def __init__(
        self,
        message: str,
        left_shape: tuple[int, ...] | None = None,
        right_shape: tuple[int, ...] | None = None,
    ) -> None:
        if left_shape is not None or right_shape is not None:
            message = f"{message}: {left_shape} vs {right_shape}"
        super().__init__(message)
        self.left_shape = left_shape
        self.right_shape = right_shape


class DomainError(Pac4SacError, ValueError):
    pass


class ConvergenceError(Pac4SacError):
    def __init__(self, message: str, iterations: int, residual: float) -> None:
        super().__init__(f"{message} (iterations={iterations}, residual={residual:.3e})")
        self.iterations = iterations
        self.residual = residual


class DegenerateChainError(ConvergenceError):
    pass


class SampleSizeError(Pac4SacError, ValueError):
    def __init__(self, n: int, minimum_n: int) -> None:
        super().__init__(
            f"Bound undefined for N={n}: the denominator is non-positive, need N >= {minimum_n}"
        )
        self.n = n
        self.minimum_n = minimum_n


class ConfigError(Pac4SacError, ValueError):
    pass


class UsageError(ConfigError):
    pass
