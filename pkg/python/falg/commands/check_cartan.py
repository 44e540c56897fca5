"""falg — check-cartan: S over monomial pairs of FR, and on every target algebroid."""

from commands.base import Command, Options
from report import Report


class CheckCartanCommand(Command):
    name = "check-cartan"

    def run(self, spec, options: Options) -> Report:
        depth = self.depth(spec, options)
        report = self.new_report(spec)
        for name, connection in spec.connections.items():
            free = self.free_algebroid(spec, self.flavor(options), depth, connection)
            report.add_check(free.check_cartan(depth), prefix=self.connection_prefix(spec, name))
        for name, target in spec.targets.items():
            report.add_check(target.check_cartan(), prefix=f"{name}: ")
        return report
