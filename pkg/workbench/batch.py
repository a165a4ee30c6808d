# workbench/batch.py
"""
Batch verification. Instances fan out to a process pool behind an asyncio
semaphore; every worker owns one instance end to end and returns a plain
dict. The merge into a ReportBundle happens on the event loop, in input
order, so the bundle does not depend on completion order.
"""
import asyncio
import time
from concurrent.futures import Executor, ProcessPoolExecutor
from dataclasses import dataclass
from datetime import datetime, timezone
from typing import Any, Dict, List, Optional, Sequence, Tuple

import structlog

from adversary.harness import adversary_run
from boundlab.audit import theorem1_audit
from boundlab.worst_case import UPPER_BOUND
from infrastructure.errors import BoundViolationError, LabError
from infrastructure.settings import get_settings
from routing.local import ChewLocalRouter, GreedyRouter
from triangulation.delaunay import build_delaunay
from triangulation.point_set import PointSet
from workbench.config import ExperimentConfig, FileSource, GeneratorSource, RandomSource
from workbench.formats import read_point_set
from workbench.generators import build_instance, build_pair, random_corpus

logger = structlog.get_logger(__name__)


@dataclass(frozen=True)
class InstanceJob:
    name: str
    coordinates: Tuple[Tuple[float, float], ...]
    labels: Tuple[str, ...]
    pairs: Any
    seed: int
    lemmas: bool

    @classmethod
    def from_point_set(cls, name: str, ps: PointSet, pairs: Any, seed: int, lemmas: bool) -> "InstanceJob":
        return cls(name, tuple((p.x, p.y) for p in ps.points), ps.labels, pairs, seed, lemmas)


def verify_instance(job: InstanceJob) -> Dict[str, Any]:
    """Worker body: triangulate, certify, audit. Runs in a child process."""
    ps = PointSet.from_coordinates(job.coordinates, job.labels)
    tri = build_delaunay(ps, seed=job.seed)
    tri.check_certificate()
    result = theorem1_audit(tri, pairs=job.pairs, seed=job.seed, lemmas=job.lemmas)
    out = result.to_dict()
    out["name"] = job.name
    out["n"] = tri.n
    out["bundles"] = result.bundles
    return out


async def verify_batch(
    jobs: Sequence[InstanceJob],
    max_workers: Optional[int] = None,
    max_concurrent: Optional[int] = None,
    executor: Optional[Executor] = None,
) -> List[Dict[str, Any]]:
    settings = get_settings()
    semaphore = asyncio.Semaphore(max_concurrent or settings.max_concurrent)
    loop = asyncio.get_running_loop()
    own = executor is None
    pool = executor or ProcessPoolExecutor(max_workers=max_workers or settings.max_workers)

    async def run(job: InstanceJob) -> Dict[str, Any]:
        async with semaphore:
            try:
                return await loop.run_in_executor(pool, verify_instance, job)
            except LabError as e:
                logger.error(f"verification of {job.name} failed: {e}")
                raise

    try:
        results = await asyncio.gather(*(run(job) for job in jobs))
    finally:
        if own:
            pool.shutdown()
    logger.info(f"verified {len(results)} instances")
    return list(results)


def _jobs(config: ExperimentConfig) -> List[InstanceJob]:
    lemmas = "lemmas" in config.checks
    pairs = config.pairs.selection()
    source = config.source
    if isinstance(source, RandomSource):
        lo, hi = source.sizes()
        sets = random_corpus(source.distribution, lo, hi, source.trials, config.seed)
        return [InstanceJob.from_point_set(f"random-{i}", ps, pairs, config.seed, lemmas) for i, ps in enumerate(sets)]
    if isinstance(source, FileSource):
        return [InstanceJob.from_point_set(str(p), read_point_set(p), pairs, config.seed, lemmas) for p in source.paths]
    raise TypeError(f"{type(source).__name__} is not a batch source")


def _verify_generator(config: ExperimentConfig, source: GeneratorSource) -> List[Dict[str, Any]]:
    """Lower-bound instances: the Chew construction is audited on its own pair, the twins go through the harness"""
    params = dict(source.params)
    if source.name == "chew-lower":
        instance = build_instance("chew-lower", **params)
        result = theorem1_audit(instance.triangulation, pairs=[(instance.s, instance.t)], lemmas="lemmas" in config.checks)
        return [{**result.to_dict(), "name": "chew-lower", "n": instance.triangulation.n, "bundles": result.bundles}]

    router = ChewLocalRouter() if source.name == "l2-lower" else GreedyRouter("linf")
    pair = build_pair(source.name, **params)
    verdict = adversary_run(router, pair)
    return [
        {
            "name": source.name,
            "n": pair[0].triangulation.n,
            "adversary": verdict.to_dict(),
            "bounds": pair[0].bounds(),
            "violations": [],
            "bundles": [],
        }
    ]


def run_verify(config: ExperimentConfig, executor: Optional[Executor] = None) -> Dict[str, Any]:
    """
    Build the ReportBundle for a config. Raises BoundViolationError, carrying
    the bundle, when any instance reports a violation.
    """
    started = datetime.now(timezone.utc)
    clock = time.perf_counter()
    if isinstance(config.source, GeneratorSource):
        instances = _verify_generator(config, config.source)
    else:
        instances = asyncio.run(verify_batch(_jobs(config), executor=executor))

    bundles = [b for inst in instances for b in inst.pop("bundles", [])]
    worst = [inst["worst_arc"]["ratio"] for inst in instances if inst.get("worst_arc")]
    violations = sum(len(inst.get("violations", [])) for inst in instances)
    report = {
        "config": config.echo(),
        "instances": instances,
        "summary": {
            "instances": len(instances),
            "pairs_checked": sum(inst.get("pairs_checked", 0) for inst in instances),
            "worst_arc_ratio": max(worst) if worst else None,
            "bound": UPPER_BOUND,
            "violations": violations,
        },
        "counterexamples": bundles,
        "runtime": {
            "started": started.isoformat(),
            "elapsed_seconds": time.perf_counter() - clock,
        },
    }
    logger.info(f"verify: {len(instances)} instances, {violations} violations")
    if violations:
        raise BoundViolationError(f"{violations} violations across {len(instances)} instances", bundle=report)
    return report
