"""falg — morphism --target NAME: the universal morphism out of FR on every monomial up to D."""

import logging

from errors import FalgError, IdentityViolation
from algebra import brackets
from algebra.brackets import LIE
from geometry.algebroid import sweep_pairs
from geometry.lie_algebroid import extend_morphism
from commands.base import Command, Options
from report import Report

logger = logging.getLogger("falg.cmd.morphism")


class MorphismCommand(Command):
    name = "morphism"

    def run(self, spec, options: Options) -> Report:
        name, phi = self._select(spec, options.target)
        depth = self.depth(spec, options)
        connection_name = next(n for n, c in spec.connections.items() if c is phi.connection)
        free = self.free_algebroid(spec, LIE, depth, spec.connections[connection_name])
        phi.validate()

        report = self.new_report(spec)
        monomials = free.monomials(depth)
        for tree in monomials:
            label = free.render_key(tree)
            try:
                image = extend_morphism(phi, free.basis_section(tree))
            except IdentityViolation as e:
                logger.warning("%s: postcondition failed on %s", name, label)
                report.add_outcome(f"{name}~({label}) postconditions", False, str(e))
                continue
            report.table.append(f"{name}~({label}) = {image.render()}")
            report.add_outcome(f"{name}~({label}) postconditions", True)
        for u, v in sweep_pairs(monomials, brackets.degree, depth):
            su, sv = free.basis_section(u), free.basis_section(v)
            lhs = phi.map_section(free.bracket(su, sv))
            rhs = phi.target.bracket(phi.map_section(su), phi.map_section(sv))
            difference = lhs - rhs
            report.add_outcome(f"{name}~[{free.render_key(u)},{free.render_key(v)}] - "
                               f"[{name}~{free.render_key(u)},{name}~{free.render_key(v)}]",
                               difference.is_zero, difference.render())
        return report

    @staticmethod
    def _select(spec, target):
        candidates = [(n, m) for n, m in spec.morphisms.items() if target is None or m.target.name == target]
        if not candidates:
            raise FalgError(f"no morphism into target {target!r}" if target else "spec declares no morphism")
        if len(candidates) > 1 and target is None:
            raise FalgError("several morphisms declared; choose one with --target")
        return candidates[0]
