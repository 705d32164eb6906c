"""
Application factory for the abelian structure toolkit.
Wires configuration, services and the command group together.
"""

from typing import Optional

import click

from .cli.commands import StructureCLI
from .config.settings import ConfigManager
from .services.dedekind_service import DedekindService
from .services.groebner_service import GroebnerEngine
from .services.pbasis_service import PBasisService
from .services.snf_service import SNFOracle
from .services.structure_service import StructureService
from .utils.logging import LoggerSetup, app_logger


class ApplicationFactory:
    """Factory for creating configured services and the CLI."""

    def __init__(self, config_file: Optional[str] = None,
                 pbasis_service: Optional[PBasisService] = None):
        """
        Initialize application factory.

        Args:
            config_file: Optional path to an env file
            pbasis_service: Replaces the p-basis pipeline (test hook)
        """
        self.config_manager = ConfigManager(config_file)
        self.oracle = SNFOracle()
        self._pbasis_override = pbasis_service
        self.cli = None

    def pbasis_service(self, cap: Optional[int] = None) -> PBasisService:
        """p-basis pipeline, with --cap applied to the element-order search."""
        if self._pbasis_override is not None:
            return self._pbasis_override
        engine_config = self.config_manager.engine.with_order_cap(cap)
        return PBasisService(engine_config, GroebnerEngine(engine_config), self.oracle)

    def structure_service(self, cap: Optional[int] = None) -> StructureService:
        return StructureService(self.pbasis_service(cap), self.oracle)

    def dedekind_service(self, cap: Optional[int] = None) -> DedekindService:
        return DedekindService(self.config_manager.dedekind, self.pbasis_service(cap))

    def create_cli(self) -> click.Group:
        """
        Create the command group.

        Returns:
            Configured click group
        """
        # Validate configuration first
        self.config_manager.validate()
        LoggerSetup.set_level(self.config_manager.cli.level)

        self.cli = StructureCLI(self)
        app_logger.debug("Command group created")
        return self.cli.group


def create_cli(config_file: Optional[str] = None) -> click.Group:
    """
    Create the command group using the factory pattern.

    Args:
        config_file: Optional path to an env file

    Returns:
        Configured click group
    """
    factory = ApplicationFactory(config_file)
    return factory.create_cli()
