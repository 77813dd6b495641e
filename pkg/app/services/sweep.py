"""Exhaustive verification over all small compositions"""

import os
import time
from concurrent.futures import Executor, ProcessPoolExecutor
from typing import Dict, List, Optional

from loguru import logger
from pydantic import BaseModel, Field

from app.config import settings
from app.models.tableau import Composition, compositions_of
from app.models.verification import CheckStatus, VerificationSummary
from app.services.verification import verification_service


class SweepViolation(BaseModel):
    composition: List[int]
    check: str
    clause: Optional[str] = None
    details: Dict = Field(default_factory=dict)


class SweepSummary(BaseModel):
    max_n: int
    compositions: int
    per_n: Dict[int, int]
    checks_passed: Dict[str, int]
    rank_certificates: int
    investigate: List[SweepViolation] = Field(default_factory=list)
    violations: List[SweepViolation] = Field(default_factory=list)
    wall_time: Optional[float] = None

    @property
    def passed(self) -> bool:
        return not self.violations


def _verify_one(parts: List[int], rank: bool) -> VerificationSummary:
    composition = Composition.of(*parts)
    return verification_service.run_suite(composition, rank=rank and composition.n <= settings.rank_max_n)


class SweepService:
    def sweep(
        self,
        max_n: int,
        rank: bool = True,
        workers: Optional[int] = None,
        executor: Optional[Executor] = None,
    ) -> SweepSummary:
        """
        Run the suite on every composition of every m <= max_n

        Args:
            max_n: Largest n to enumerate
            rank: Include rank certificates (only for n <= rank_max_n)
            workers: Process count, 1 runs in-process
            executor: Executor to use instead of a fresh process pool

        Returns:
            Aggregate counts with violations in enumeration order
        """
        if not 1 <= max_n <= settings.sweep_max_n:
            raise ValueError(f"max_n must lie in [1, {settings.sweep_max_n}], got {max_n}")
        if workers is not None and workers < 1:
            raise ValueError(f"workers must be at least 1, got {workers}")
        workers = workers or settings.sweep_workers or os.cpu_count() or 1
        jobs = [list(c.parts) for m in range(1, max_n + 1) for c in compositions_of(m)]
        logger.info(f"Sweeping {len(jobs)} compositions up to n={max_n} on {workers} worker(s)")

        start = time.perf_counter()
        if executor is None and workers == 1:
            results = [_verify_one(parts, rank) for parts in jobs]
        else:
            pool = executor or ProcessPoolExecutor(max_workers=workers)
            try:
                results = list(pool.map(_verify_one, jobs, [rank] * len(jobs), chunksize=16))
            finally:
                if executor is None:
                    pool.shutdown()
        elapsed = time.perf_counter() - start

        summary = SweepSummary(
            max_n=max_n,
            compositions=len(jobs),
            per_n={m: 2 ** (m - 1) for m in range(1, max_n + 1)},
            checks_passed={},
            rank_certificates=0,
            wall_time=round(elapsed, 3),
        )
        for result in results:
            for check in result.checks:
                if check.status == CheckStatus.PASS:
                    summary.checks_passed[check.name] = summary.checks_passed.get(check.name, 0) + 1
                    if check.name == "rank":
                        summary.rank_certificates += 1
                elif check.status in (CheckStatus.FAIL, CheckStatus.INVESTIGATE):
                    entry = SweepViolation(
                        composition=result.composition,
                        check=check.name,
                        clause=check.clause,
                        details=check.details,
                    )
                    if check.status == CheckStatus.FAIL:
                        summary.violations.append(entry)
                    else:
                        summary.investigate.append(entry)
        logger.info(
            f"Sweep done: {summary.compositions} compositions, "
            f"{len(summary.violations)} violations, {elapsed:.2f}s"
        )
        return summary


# Singleton instance
sweep_service = SweepService()
