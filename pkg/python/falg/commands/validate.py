"""falg — validate: problem-spec well-formedness plus algebroid axioms on every target."""

import logging

from errors import MorphismError
from commands.base import Command, Options
from report import Report

logger = logging.getLogger("falg.cmd.validate")


class ValidateCommand(Command):
    name = "validate"

    def run(self, spec, options: Options) -> Report:
        report = self.new_report(spec)
        report.table.append(
            f"chart ({', '.join(spec.chart.coordinates)})"
            + (f" generators ({', '.join(spec.chart.generators)})" if spec.chart.generators else ""))
        report.table.append(f"bundle rank {spec.bundle.rank}, "
                            f"{len(spec.connections)} connection(s), depth {spec.depth}")
        for name, target in spec.targets.items():
            report.add_check(target.check_lie_algebroid_axioms(), prefix=f"{name}: ")
        for name, morphism in spec.morphisms.items():
            try:
                morphism.validate()
                report.add_outcome(f"{name}: anchor and connection preserved", True)
            except MorphismError as e:
                logger.warning("morphism %s rejected: %s", name, e)
                report.add_outcome(f"{name}: anchor and connection preserved", False, str(e))
        return report
