# workbench/generators.py
"""
Instance generation for every kind the CLI knows: seeded random sets and the
three lower-bound constructions.
"""
from typing import Any, Callable, Dict, List, Tuple, Union

import numpy as np
import structlog

from adversary.chew_lower import ChewLowerInstance, gen_chew_lower
from adversary.l2_lower import L2LowerInstance, gen_l2_lower
from adversary.linf_lower import LinfLowerInstance, gen_linf_lower
from infrastructure.errors import ParameterOutOfRangeError, UnknownKindError
from triangulation.point_set import PointSet

logger = structlog.get_logger(__name__)

MIN_SEPARATION = 1e-6
MAX_RESAMPLES = 100
CLUSTER_SPREAD = 0.05

Instance = Union[ChewLowerInstance, L2LowerInstance, LinfLowerInstance]


def _min_separation(xy: np.ndarray) -> float:
    diff = xy[:, None, :] - xy[None, :, :]
    d2 = np.einsum("ijk,ijk->ij", diff, diff)
    np.fill_diagonal(d2, np.inf)
    return float(np.sqrt(d2.min()))


def _uniform(rng: np.random.Generator, n: int) -> np.ndarray:
    return rng.random((n, 2))


def _cluster(rng: np.random.Generator, n: int, clusters: int = 0) -> np.ndarray:
    k = clusters or max(1, int(rng.integers(2, 6)))
    centres = rng.random((k, 2))
    which = rng.integers(0, k, size=n)
    return centres[which] + rng.normal(0.0, CLUSTER_SPREAD, size=(n, 2))


_SAMPLERS: Dict[str, Callable[..., np.ndarray]] = {
    "random-uniform": _uniform,
    "random-cluster": _cluster,
}


def random_point_set(kind: str, n: int, seed: int, **params: Any) -> PointSet:
    """
    n random points; sets closer than MIN_SEPARATION are resampled whole,
    never nudged.
    """
    if kind not in _SAMPLERS:
        raise UnknownKindError(f"unknown random kind {kind!r}, expected one of {sorted(_SAMPLERS)}")
    if n < 3:
        raise ParameterOutOfRangeError(f"a random instance needs at least 3 points, got {n}")

    rng = np.random.default_rng(seed)
    for attempt in range(MAX_RESAMPLES):
        xy = _SAMPLERS[kind](rng, n, **params)
        if _min_separation(xy) >= MIN_SEPARATION:
            break
        logger.warning(f"{kind} n={n} seed={seed}: points closer than {MIN_SEPARATION}, resampling ({attempt + 1})")
    else:
        raise ParameterOutOfRangeError(f"could not draw {n} separated points in {MAX_RESAMPLES} attempts")

    metadata = {"generator": kind, "n": n, "seed": seed, "resamples": attempt, **params}
    return PointSet.from_coordinates(xy.tolist(), metadata=metadata)


def random_corpus(distribution: str, n: int, n_max: int, trials: int, seed: int) -> List[PointSet]:
    """Trial i draws its size and points from the stream seeded by (seed, i)"""
    kind = f"random-{distribution}"
    out = []
    for i in range(trials):
        size = n if n_max <= n else int(np.random.default_rng([seed, i, 0]).integers(n, n_max + 1))
        sub_seed = int(np.random.default_rng([seed, i]).integers(0, 2**63))
        out.append(random_point_set(kind, size, sub_seed))
    return out


_BUILDERS: Dict[str, Callable[..., Instance]] = {
    "chew-lower": gen_chew_lower,
    "l2-lower": gen_l2_lower,
    "linf-lower": gen_linf_lower,
}

KINDS = tuple(sorted(_SAMPLERS)) + tuple(sorted(_BUILDERS))


def build_instance(kind: str, **params: Any) -> Instance:
    if kind not in _BUILDERS:
        raise UnknownKindError(f"unknown generator {kind!r}, expected one of {sorted(_BUILDERS)}")
    try:
        return _BUILDERS[kind](**params)
    except TypeError as e:
        raise ParameterOutOfRangeError(f"bad parameters for {kind}: {e}") from e


def build_pair(kind: str, **params: Any) -> Tuple[Instance, Instance]:
    """Original and mirrored twin of a k-local lower-bound instance"""
    if kind not in ("l2-lower", "linf-lower"):
        raise UnknownKindError(f"{kind} has no mirrored twin")
    params.pop("mirrored", None)
    return build_instance(kind, mirrored=False, **params), build_instance(kind, mirrored=True, **params)


def generate(kind: str, seed: int = 0, n: int = 50, **params: Any) -> List[PointSet]:
    """
    Point sets for `generate`: one for random kinds and chew-lower, the
    original and its twin for l2-lower and linf-lower when mirrored is set.
    """
    if kind in _SAMPLERS:
        return [random_point_set(kind, n, seed, **params)]
    if kind in ("chew-lower", "l2-lower"):
        params.setdefault("seed", seed)
    if kind in ("l2-lower", "linf-lower") and params.get("mirrored"):
        return [instance.point_set for instance in build_pair(kind, **params)]
    return [build_instance(kind, **params).point_set]
