"""falg — Command ABC for the CLI front end."""

import abc
from dataclasses import dataclass, field
from typing import List, Optional

from algebra.brackets import LIE
from report import Report


@dataclass(frozen=True)
class Options:
    depth: Optional[int] = None
    tensor: Optional[str] = None
    target: Optional[str] = None
    flavor: Optional[str] = None
    arguments: List[str] = field(default_factory=list)


class Command(abc.ABC):
    """One CLI command. ``run`` returns a Report; failed identities are report content."""

    name: str = ""
    needs_spec: bool = True
    default_flavor: str = LIE

    @abc.abstractmethod
    def run(self, spec, options: Options) -> Report:
        """Execute against a loaded ProblemSpec (None when needs_spec is False)."""

    def depth(self, spec, options: Options) -> int:
        if options.depth is not None:
            return options.depth
        return spec.depth

    def flavor(self, options: Options) -> str:
        return options.flavor or self.default_flavor

    def new_report(self, spec) -> Report:
        return Report(self.name, spec.path.name if spec is not None else "")

    @staticmethod
    def free_algebroid(spec, flavor: str, depth: int, connection=None):
        from geometry.free_algebroid import FreeAlgebroid
        return FreeAlgebroid(spec.bundle, connection or spec.default_connection, flavor, depth)

    @staticmethod
    def connection_prefix(spec, name: str) -> str:
        return f"{name}: " if len(spec.connections) > 1 else ""
