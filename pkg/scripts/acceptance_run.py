# scripts/acceptance_run.py
"""
Acceptance run - bulk upper-bound audit plus every reproduction target
Writes acceptance_results_<timestamp>.json into the lab output directory
"""
import asyncio
import os
import sys
import time
from datetime import datetime
from typing import Any, Dict

# Add project root to path
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from infrastructure.logging_setup import configure_logging
from infrastructure.settings import get_settings
from workbench.batch import InstanceJob, verify_batch
from workbench.formats import write_json
from workbench.generators import random_corpus
from workbench.reports import TARGETS, all_passed, reproduce

BULK_SETS = 200
BULK_PAIRS_PER_SET = 50
BULK_SIZES = (4, 200)


async def bulk_audit(seed: int) -> Dict[str, Any]:
    print("\n1️⃣ Upper bound on random sets")
    print("-" * 40)
    jobs = [
        InstanceJob.from_point_set(f"{dist}-{i}", ps, BULK_PAIRS_PER_SET, seed, lemmas=True)
        for dist in ("uniform", "cluster")
        for i, ps in enumerate(random_corpus(dist, *BULK_SIZES, BULK_SETS // 2, seed))
    ]
    results = await verify_batch(jobs)
    pairs = sum(r["pairs_checked"] for r in results)
    violations = sum(r["violation_count"] for r in results)
    worst = max(r["worst_arc"]["ratio"] for r in results if r["worst_arc"])
    print(f"✅ {len(results)} sets, {pairs} pairs checked")
    print(f"   📈 worst arc ratio {worst:.8f}")
    print(f"   {'✅' if violations == 0 else '❌'} violations: {violations}")
    return {"sets": len(results), "pairs_checked": pairs, "worst_arc_ratio": worst, "violations": violations}


def reproduce_all() -> Dict[str, Any]:
    print("\n2️⃣ Reproduction targets")
    print("-" * 40)
    out: Dict[str, Any] = {}
    for target in TARGETS:
        started = time.perf_counter()
        try:
            frame = reproduce(target, with_reference=False)
        except Exception as e:
            print(f"❌ {target} failed: {e}")
            out[target] = {"passed": False, "error": str(e)}
            continue
        passed = all_passed(frame)
        print(f"{'✅' if passed else '❌'} {target} ({time.perf_counter() - started:.1f}s)")
        for row in frame.itertuples():
            print(f"   {row.quantity}: {row.computed:.6f} (target {row.target:.6f}, {row.mode})")
        out[target] = {"passed": passed, "rows": frame.astype(object).where(frame.notna(), None).to_dict(orient="records")}
    return out


async def run_acceptance() -> Dict[str, Any]:
    settings = get_settings()
    configure_logging(settings.log_level, settings.log_json)
    print("🚀 Chew routing lab acceptance run")
    print("=" * 60)

    summary = {
        "bulk": await bulk_audit(settings.seed),
        "reproduce": reproduce_all(),
        "completion_time": datetime.now().isoformat(),
    }
    summary["passed"] = summary["bulk"]["violations"] == 0 and all(r["passed"] for r in summary["reproduce"].values())

    timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
    results_file = write_json(summary, settings.output_dir / f"acceptance_results_{timestamp}.json")
    print("\n" + "=" * 60)
    print(f"{'🎉 ACCEPTANCE PASSED' if summary['passed'] else '❌ ACCEPTANCE FAILED'}")
    print(f"📁 Results saved to: {results_file}")
    return summary


if __name__ == "__main__":
    try:
        results = asyncio.run(run_acceptance())
    except Exception as e:
        print(f"\n❌ Acceptance run failed: {e}")
        sys.exit(1)
    sys.exit(0 if results["passed"] else 2)
