"""
Report assembly for the command surface, including the concurrent
pipeline-versus-oracle verification.
"""

from concurrent.futures import ThreadPoolExecutor
from typing import Optional, Sequence

from ..models.presentation import Presentation
from ..models.report import StructureReport
from ..utils.logging import app_logger, pipeline_logger
from .pbasis_service import PBasisService
from .snf_service import SNFOracle


class StructureService:
    """Runs the p-basis pipeline and the SNF oracle on presentations."""

    def __init__(self, pbasis: Optional[PBasisService] = None, oracle: Optional[SNFOracle] = None):
        self.pbasis = pbasis or PBasisService()
        self.oracle = oracle or self.pbasis.oracle

    def pbasis_report(self, presentation: Presentation, precedence: Optional[Sequence[int]] = None,
                      include_gb: bool = False) -> StructureReport:
        structure = self.pbasis.compute_structure(presentation, precedence)
        app_logger.info(f"Type {structure.group_type.as_tuple()} for {presentation.size} generators")
        return StructureReport("pbasis", presentation.digest(), structure=structure, include_gb=include_gb)

    def snf_report(self, presentation: Presentation) -> StructureReport:
        return StructureReport("snf", presentation.digest(),
                               snf=self.oracle.snf(presentation),
                               snf_type=self.oracle.mixed_type(presentation))

    def verify(self, presentation: Presentation, precedence: Optional[Sequence[int]] = None) -> StructureReport:
        """Pipeline and oracle side by side; the report's agreement flag holds the verdict."""
        with ThreadPoolExecutor(max_workers=2) as executor:
            structure_future = executor.submit(self.pbasis.compute_structure, presentation, precedence)
            snf_future = executor.submit(self.oracle.snf, presentation)
            structure = structure_future.result()
            snf = snf_future.result()

        report = StructureReport("verify", presentation.digest(), structure=structure, snf=snf,
                                 snf_type=self.oracle.mixed_type(presentation))
        detail = None
        if not report.agreement:
            detail = f"pipeline {structure.group_type.as_tuple()} vs oracle {report.snf_type.to_dict()}"
        pipeline_logger.log_agreement(bool(report.agreement), detail)
        return report
