import functools
import os

import pytest
from hypothesis import HealthCheck, settings

from starlab.rings import build_ring
from starlab.spectext import parse_element, parse_ring_spec

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

# small rings covering every constructor; used by exhaustive invariant tests
SMALL_SPECS = [
    "Z(2)", "Z(4)", "Z(6)", "Z(8)", "Z(9)", "Z(12)", "GF(2,2)", "GF(2,2)@frob(1)", "GF(3,2)@frob(1)",
    "Quot(Z(3),x^2+1,-x)", "M(2,Z(2))", "M(2,Z(3))", "P(Z(2),Z(3))", "P(GF(3,1),GF(3,1))@swap(1,0)",
    "GR(C(2),Z(2))", "GR(C(2),Z(3))", "GR(C(3),Z(2))", "GR(D(3),Z(2))", "Corner(M(2,Z(3)),[[1,0],[0,0]])",
    "Sub(M(2,Z(2)),[[1,1],[0,1]])", "P(M(2,Z(2)),Z(3))",
]


@functools.lru_cache(maxsize=None)
def ring(spec: str):
    return build_ring(parse_ring_spec(spec))


def el(r, text: str) -> int:
    return parse_element(r, text)


@pytest.fixture(scope="session")
def cache_dir(tmp_path_factory):
    return tmp_path_factory.mktemp("srl-cache")


@pytest.fixture(scope="session", autouse=True)
def _isolated_cache(cache_dir):
    # keep test runs out of the user's cache
    old = os.environ.get("SRL_CACHE_DIR")
    os.environ["SRL_CACHE_DIR"] = str(cache_dir)
    yield
    if old is None:
        os.environ.pop("SRL_CACHE_DIR", None)
    else:
        os.environ["SRL_CACHE_DIR"] = old


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in range(1, 11):
        if n in results:
            ok, detail = results[n]
            terminalreporter.write_line(f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
        else:
            terminalreporter.write_line(f"criterion {n:>2}: not run")
