# workbench/test_batch.py
from concurrent.futures import ThreadPoolExecutor

import pytest

from boundlab.worst_case import UPPER_BOUND
from infrastructure.errors import BoundViolationError
from workbench.batch import InstanceJob, run_verify, verify_batch, verify_instance
from workbench.config import build_config
from workbench.formats import dumps, write_point_set
from workbench.generators import random_corpus, random_point_set


def _jobs(count: int, n: int = 12):
    return [
        InstanceJob.from_point_set(f"set-{i}", ps, "all", seed=0, lemmas=True)
        for i, ps in enumerate(random_corpus("uniform", n, n, count, seed=11))
    ]


def test_worker_audits_one_instance():
    out = verify_instance(_jobs(1)[0])
    assert out["name"] == "set-0"
    assert out["n"] == 12
    assert out["pairs_checked"] == 12 * 11
    assert out["violation_count"] == 0
    assert out["worst_arc"]["ratio"] <= UPPER_BOUND


@pytest.mark.asyncio
async def test_batch_keeps_input_order():
    jobs = _jobs(6)
    with ThreadPoolExecutor(max_workers=3) as pool:
        results = await verify_batch(jobs, max_concurrent=2, executor=pool)
    assert [r["name"] for r in results] == [job.name for job in jobs]


@pytest.mark.asyncio
async def test_batch_in_processes():
    results = await verify_batch(_jobs(2, n=8), max_workers=2, max_concurrent=2)
    assert all(r["violation_count"] == 0 for r in results)


def test_same_config_same_report(tmp_path):
    config = build_config(seed=5, source={"kind": "random", "n": 10, "n_max": 20, "trials": 3}, output_dir=str(tmp_path))
    with ThreadPoolExecutor(max_workers=2) as pool:
        first = run_verify(config, executor=pool)
        second = run_verify(config, executor=pool)
    first.pop("runtime"), second.pop("runtime")
    assert dumps(first) == dumps(second)
    assert first["summary"]["instances"] == 3
    assert first["summary"]["worst_arc_ratio"] <= UPPER_BOUND
    assert first["config"]["seed"] == 5


def test_file_source(tmp_path):
    paths = [write_point_set(random_point_set("random-cluster", 15, seed=s), tmp_path / f"{s}.points") for s in (1, 2)]
    config = build_config(source={"kind": "file", "paths": [str(p) for p in paths]}, pairs={"mode": "sampled", "count": 30})
    with ThreadPoolExecutor(max_workers=2) as pool:
        report = run_verify(config, executor=pool)
    assert report["summary"]["pairs_checked"] == 60
    assert [inst["name"] for inst in report["instances"]] == [str(p) for p in paths]


def test_violation_carries_the_report(monkeypatch):
    monkeypatch.setattr("boundlab.audit.UPPER_BOUND", 1.0)
    config = build_config(seed=1, source={"kind": "random", "n": 8}, pairs={"mode": "sampled", "count": 10})
    with ThreadPoolExecutor(max_workers=1) as pool:
        with pytest.raises(BoundViolationError) as info:
            run_verify(config, executor=pool)
    assert info.value.exit_code == 2
    assert info.value.bundle["summary"]["violations"] > 0
    assert info.value.bundle["counterexamples"][0]["points"]


def test_chew_lower_generator_source():
    config = build_config(source={"kind": "generator", "name": "chew-lower", "params": {"j": 40, "k": 40}})
    report = run_verify(config)
    assert report["summary"]["pairs_checked"] == 1
    assert report["summary"]["worst_arc_ratio"] > 5.70


def test_linf_generator_source():
    config = build_config(
        source={"kind": "generator", "name": "linf-lower", "params": {"epsilon": 1e-3, "density": 20}}
    )
    report = run_verify(config)
    (instance,) = report["instances"]
    assert instance["adversary"]["router"] == "greedy-linf"
    assert instance["adversary"]["routing_ratio"] >= 2.69
