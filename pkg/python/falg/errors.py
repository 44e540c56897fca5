"""falg — Error hierarchy shared by the engine and the CLI.

Every engine error is a ValueError subclass so callers that only know the
"bad input" convention keep working. The CLI maps FalgError to exit code 2.
"""


class FalgError(ValueError):
    """Base class for all engine errors."""


class ExpressionSyntaxError(FalgError):
    def __init__(self, message: str, text: str, position: int):
        self.text = text
        self.position = position
        pointer = " " * position + "^"
        super().__init__(f"{message} at position {position}\n  {text}\n  {pointer}")


class UnknownSymbolError(FalgError):
    def __init__(self, name: str, known):
        self.name = name
        super().__init__(f"unknown symbol '{name}' (chart has: {', '.join(known)})")


class ScalarDivisionError(FalgError, ZeroDivisionError):
    """Division by the zero Scalar."""


class ChartMismatchError(FalgError):
    """Operands live over different charts."""


class TensorTypeError(FalgError):
    """Tensor type (r,s) or slot count does not fit the operation."""


class FlavorMismatchError(FalgError):
    """Sections of different free algebroids (bundle, flavor or depth) were combined."""


class DepthOverflowError(FalgError):
    def __init__(self, left, right, depth_bound: int, rendered: str = ""):
        self.left = left
        self.right = right
        self.depth_bound = depth_bound
        super().__init__(
            f"bracket {rendered or (left, right)} exceeds truncation depth {depth_bound}"
        )


class MorphismError(FalgError):
    """An anchored morphism violates its anchor or connection invariant."""


class IdentityViolation(FalgError):
    """An asserted identity (postcondition) failed."""


class SpecError(FalgError):
    def __init__(self, location: str, message: str):
        self.location = location
        super().__init__(f"{location}: {message}")


class GeneratorIndexError(FalgError):
    def __init__(self, index: int, count: int):
        self.index = index
        self.count = count
        super().__init__(f"generator index {index} outside 1..{count}")
