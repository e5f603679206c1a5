import logging
import time
from typing import Callable, List, Optional, Sequence, Tuple

from .reports import BoundReport, ReportSink

logger = logging.getLogger(__name__)

Certificate = Callable[[], List[BoundReport]]


class CertificateEngine:
    """Runs named certificates and forwards their reports to the sinks."""

    def __init__(self, sinks: Optional[List[ReportSink]] = None):
        self.sinks = sinks or []

    def run(self, certificates: Sequence[Tuple[str, Certificate]]) -> List[BoundReport]:
        """
        Runs each certificate in order and returns all reports in that order.

        A ResourceLimit raised by a certificate propagates to the caller.
        """
        collected: List[BoundReport] = []
        for name, certificate in certificates:
            start_time = time.perf_counter()

            # 1. Evaluate
            reports = certificate()

            # 2. Emit
            for report in reports:
                for sink in self.sinks:
                    sink.emit(report)

            duration_ms = (time.perf_counter() - start_time) * 1000
            failed = sum(1 for r in reports if not r.verified)
            logger.info("Certificate %s: %d reports, %d failed, %.1f ms", name, len(reports), failed, duration_ms)
            collected.extend(reports)
        return collected

    @staticmethod
    def all_verified(reports: Sequence[BoundReport]) -> bool:
        return all(r.verified for r in reports)
