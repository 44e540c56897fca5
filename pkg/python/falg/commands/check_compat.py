"""falg — check-compat --tensor NAME [--target NAME]: E-connection of a tensor on the frame."""

from errors import FalgError
from geometry.anchored_bundle import check_compatibility
from commands.base import Command, Options
from report import Report


class CheckCompatCommand(Command):
    name = "check-compat"

    def run(self, spec, options: Options) -> Report:
        if not options.tensor:
            raise FalgError("check-compat needs --tensor NAME")
        entry = spec.tensor(options.tensor)
        if options.target:
            bundle, connection = spec.target(options.target).as_anchored_bundle()
            connections = [connection] * entry.tensor.slots
            where = f"{options.target}: "
        else:
            bundle, connections = spec.bundle, spec.slot_connections(options.tensor)
            where = ""
        result = check_compatibility(bundle, connections, entry.tensor)
        report = self.new_report(spec)
        for a, residual in enumerate(result.residuals):
            report.add_outcome(f"{where}E-nabla_e{a + 1} {options.tensor}", residual.is_zero, residual.render())
        return report
