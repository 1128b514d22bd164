from __future__ import annotations

import os
import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session", autouse=True)
def _isolated_cache(tmp_path_factory):
    """Every run starts cold: caches go to a fresh directory, never the user's."""
    path = tmp_path_factory.mktemp("hitf2-cache")
    old = os.environ.get("HITF2_CACHE_DIR")
    os.environ["HITF2_CACHE_DIR"] = str(path)
    yield path
    if old is None:
        os.environ.pop("HITF2_CACHE_DIR", None)
    else:
        os.environ["HITF2_CACHE_DIR"] = old


@pytest.fixture(scope="session")
def big_basis(_isolated_cache):
    """The 62,500-column stratum of weight (4,4,4,2,2,1) in five variables (a few minutes, once)."""
    import resource
    import time

    from hitf2.hitproblem import admissible_basis_weight, clear_memo

    clear_memo()
    t0 = time.perf_counter()
    basis = admissible_basis_weight(5, (4, 4, 4, 2, 2, 1))
    basis.build_seconds = time.perf_counter() - t0
    basis.peak_rss = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss * 1024
    return basis
