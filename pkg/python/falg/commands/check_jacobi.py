"""falg — check-jacobi: covariant constancy of the Jacobiator on frame triples."""

from algebra.brackets import ALMOST
from commands.base import Command, Options
from report import Report


class CheckJacobiCommand(Command):
    name = "check-jacobi"
    default_flavor = ALMOST

    def run(self, spec, options: Options) -> Report:
        depth = self.depth(spec, options)
        report = self.new_report(spec)
        for name, connection in spec.connections.items():
            free = self.free_algebroid(spec, self.flavor(options), depth, connection)
            report.add_check(free.check_jacobiator_covariant_constancy(depth),
                             prefix=self.connection_prefix(spec, name))
        return report
