"""falg — dims m D [flavor]: graded dimensions of the free bracket algebra."""

from errors import FalgError
from algebra.brackets import check_flavor, graded_dimension
from commands.base import Command, Options
from report import Report


class DimsCommand(Command):
    name = "dims"
    needs_spec = False

    def run(self, spec, options: Options) -> Report:
        args = list(options.arguments)
        if len(args) not in (2, 3):
            raise FalgError("usage: dims m D [almost|lie]")
        try:
            m, depth = int(args[0]), int(args[1])
        except ValueError:
            raise FalgError(f"dims expects integers, got {args[0]!r} {args[1]!r}") from None
        flavor = args[2] if len(args) == 3 else self.flavor(options)
        check_flavor(flavor)
        if m < 1 or depth < 1:
            raise FalgError("dims needs m >= 1 and D >= 1")
        report = Report(self.name, checks=False, header=False)
        report.table.extend(f"degree {d}: {graded_dimension(m, d, flavor)}" for d in range(1, depth + 1))
        return report
