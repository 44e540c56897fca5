"""falg — expand: every canonical monomial up to D with its anchor."""

from commands.base import Command, Options
from report import Report


class ExpandCommand(Command):
    name = "expand"

    def run(self, spec, options: Options) -> Report:
        depth = self.depth(spec, options)
        free = self.free_algebroid(spec, self.flavor(options), depth)
        anchors, rank = free.anchor_distribution(depth)
        report = self.new_report(spec)
        report.checks = False
        for tree, vector in anchors:
            report.table.append(f"{free.render_key(tree)}: {vector.render()}")
        report.table.append(f"generic rank: {rank}")
        return report
