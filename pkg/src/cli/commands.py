"""
Command-line surface: pbasis, snf, gb, build, verify and type-formula.
Reports are JSON on stdout (or -o); diagnostics go to stderr.
"""

import json
import logging
import sys
from functools import wraps
from typing import Any, Callable, Dict, Optional

import click

from ..models.dedekind import ModuleSpec
from ..models.lattice import TermOrder
from ..models.presentation import Presentation, canonical_digest
from ..utils.errors import AbstError, InputParseError
from ..utils.logging import LoggerSetup, app_logger, timing_decorator
from ..utils.validators import ModuleSpecValidator, PermutationValidator, PresentationValidator
from ..services.pbasis_service import shape_violation

EXIT_MISMATCH = 1


def _load_json(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as handle:
            return json.load(handle)
    except (OSError, json.JSONDecodeError) as e:
        raise InputParseError(f"cannot read {path}: {e}")


def load_presentation(path: str) -> Presentation:
    presentation, error = PresentationValidator.validate(_load_json(path))
    if error:
        raise InputParseError(f"{path}: {error}")
    return presentation


def load_module_spec(path: str) -> ModuleSpec:
    spec, error = ModuleSpecValidator.validate(_load_json(path))
    if error:
        raise InputParseError(f"{path}: {error}")
    return spec


def handle_errors(func: Callable) -> Callable:
    """Map toolkit errors to their exit codes."""
    @wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except AbstError as e:
            app_logger.error(f"{type(e).__name__}: {e}")
            click.echo(f"error: {e}", err=True)
            sys.exit(e.exit_code)
    return wrapper


class StructureCLI:
    """Click command group over the application services."""

    def __init__(self, factory):
        self.factory = factory
        self.group = self._create_group()
        self._register_commands()

    def _create_group(self) -> click.Group:
        cli_config = self.factory.config_manager.cli

        @click.group(name="abst")
        @click.option('--log-level', default=cli_config.log_level, show_default=True,
                      type=click.Choice(['DEBUG', 'INFO', 'WARNING', 'ERROR'], case_sensitive=False),
                      help='Logging level for stderr diagnostics.')
        def group(log_level: str):
            """Abelian p-group structure via binomial Groebner bases."""
            LoggerSetup.set_level(getattr(logging, log_level.upper()))

        return group

    def emit(self, payload: Dict[str, Any], output: Optional[str]) -> None:
        """Write a report to -o or stdout."""
        text = json.dumps(payload, indent=self.factory.config_manager.cli.json_indent)
        if output:
            with open(output, "w", encoding="utf-8") as handle:
                handle.write(text + "\n")
            app_logger.info(f"Report written to {output}")
        else:
            click.echo(text)

    @staticmethod
    def _precedence(perm: Optional[str], presentation: Presentation):
        precedence, error = PermutationValidator.validate(perm, presentation.size)
        if error:
            raise InputParseError(error)
        return precedence

    def _register_commands(self):
        """Register all commands."""
        input_option = click.option('-i', '--input', 'input_path', required=True,
                                    type=click.Path(dir_okay=False), help='Input JSON file.')
        output_option = click.option('-o', '--output', type=click.Path(dir_okay=False),
                                     default=None, help='Write the report here instead of stdout.')
        perm_option = click.option('--perm', default=None,
                                   help='Force the variable order: 1-based indices, smallest first.')
        cap_option = click.option('--cap', type=int, default=None,
                                  help='Cap on k when searching the order p^k of a generator.')

        @self.group.command('pbasis')
        @input_option
        @output_option
        @click.option('--gb', 'include_gb', is_flag=True, help='Include the Groebner basis listing.')
        @perm_option
        @cap_option
        @handle_errors
        @timing_decorator(app_logger)
        def pbasis(input_path, output, include_gb, perm, cap):
            """p-basis, generator orders and type of a finite p-group."""
            presentation = load_presentation(input_path)
            service = self.factory.structure_service(cap)
            report = service.pbasis_report(presentation, self._precedence(perm, presentation), include_gb)
            self.emit(report.to_dict(), output)

        @self.group.command('snf')
        @input_option
        @output_option
        @handle_errors
        def snf(input_path, output):
            """Smith normal form, elementary divisors and free rank."""
            presentation = load_presentation(input_path)
            report = self.factory.structure_service().snf_report(presentation)
            self.emit(report.to_dict(), output)

        @self.group.command('gb')
        @input_option
        @output_option
        @perm_option
        @cap_option
        @handle_errors
        def gb(input_path, output, perm, cap):
            """Reduced Groebner basis under a forced or searched order."""
            presentation = load_presentation(input_path)
            pbasis_service = self.factory.structure_service(cap).pbasis
            binomials, _ = pbasis_service.ideal_generators(presentation)
            orders = pbasis_service.generator_orders(presentation, binomials)
            precedence = self._precedence(perm, presentation)
            if precedence is None:
                order, basis = pbasis_service.find_pbasis_permutation(presentation, binomials, orders)
            else:
                order = TermOrder.from_precedence(precedence)
                basis = pbasis_service.engine.buchberger_reduced(binomials, order)
            violation = shape_violation(basis, orders, presentation.prime)
            self.emit({
                'command': 'gb',
                'input_digest': presentation.digest(),
                'groebner_basis': basis.to_dict(),
                'pbasis_shape': violation is None,
                'shape_violation': violation.reason if violation else None,
            }, output)

        @self.group.command('build')
        @input_option
        @output_option
        @handle_errors
        def build(input_path, output):
            """Presentation of a building block or cycle module spec."""
            spec = load_module_spec(input_path)
            dedekind = self.factory.dedekind_service()
            if spec.is_finite:
                self.emit(dedekind.build(spec).to_dict(), output)
                return
            finite_spec, resolution = dedekind.resolve_infinite_lengths(spec)
            if finite_spec is None:
                presentation = Presentation(spec.prime, resolution.free_basis, (), {'spec': spec.to_dict()})
            else:
                presentation = dedekind.build(finite_spec)
            self.emit(presentation.to_dict(), output)
            sidecar = resolution.to_dict()
            if output:
                self.emit(sidecar, f"{output}.infinite.json")
            else:
                click.echo(json.dumps(sidecar), err=True)

        @self.group.command('verify')
        @input_option
        @output_option
        @perm_option
        @cap_option
        @handle_errors
        def verify(input_path, output, perm, cap):
            """Exit 0 iff the p-basis pipeline and the SNF oracle agree."""
            presentation = load_presentation(input_path)
            report = self.factory.structure_service(cap).verify(presentation, self._precedence(perm, presentation))
            self.emit(report.to_dict(), output)
            if not report.agreement:
                sys.exit(EXIT_MISMATCH)

        @self.group.command('type-formula')
        @input_option
        @output_option
        @cap_option
        @handle_errors
        def type_formula(input_path, output, cap):
            """Type of a finite cycle module by formula and by direct computation."""
            document = _load_json(input_path)
            spec = load_module_spec(input_path)
            result = self.factory.dedekind_service(cap).formula(spec)
            payload = {'command': 'type-formula', 'input_digest': canonical_digest(document)}
            payload.update(result.to_dict())
            self.emit(payload, output)
            if not result.agreement:
                sys.exit(EXIT_MISMATCH)
