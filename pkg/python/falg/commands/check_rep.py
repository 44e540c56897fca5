"""falg — check-rep [--tensor NAME]: E-curvature of tensors on monomial pairs of FR."""

from commands.base import Command, Options
from report import Report


class CheckRepCommand(Command):
    name = "check-rep"

    def run(self, spec, options: Options) -> Report:
        depth = self.depth(spec, options)
        names = [options.tensor] if options.tensor else list(spec.tensors)
        tensors = [(f" {name}", spec.tensor(name).tensor) for name in names]
        report = self.new_report(spec)
        for name, connection in spec.connections.items():
            free = self.free_algebroid(spec, self.flavor(options), depth, connection)
            report.add_check(free.check_representation(tensors, depth),
                             prefix=self.connection_prefix(spec, name))
        return report
