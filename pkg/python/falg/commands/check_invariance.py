"""falg — check-invariance --tensor NAME: FR-connection of a tensor on every monomial up to D."""

from errors import FalgError
from algebra.brackets import LIE
from commands.base import Command, Options
from report import Report


class CheckInvarianceCommand(Command):
    name = "check-invariance"

    def run(self, spec, options: Options) -> Report:
        if not options.tensor:
            raise FalgError("check-invariance needs --tensor NAME")
        entry = spec.tensor(options.tensor)
        depth = self.depth(spec, options)
        free = self.free_algebroid(spec, LIE, depth)
        check = free.check_invariance(entry.tensor, spec.slot_connections(options.tensor), depth)
        report = self.new_report(spec)
        report.add_check(check)
        return report
