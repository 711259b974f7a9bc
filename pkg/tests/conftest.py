import random

import pytest
from hypothesis import HealthCheck, settings

from frobgb.poly import PolyRing

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture
def xyz3():
    return PolyRing(3, ("x", "y", "z"))


@pytest.fixture
def xyz2():
    return PolyRing(2, ("x", "y", "z"))


def random_poly(rng: random.Random, ring: PolyRing, max_deg=4, max_terms=4):
    """Random polynomial of total degree <= max_deg (may come out zero)."""
    terms = []
    for _ in range(rng.randint(1, max_terms)):
        budget = rng.randint(0, max_deg)
        exps = [0] * ring.n
        for _ in range(budget):
            exps[rng.randrange(ring.n)] += 1
        terms.append((rng.randrange(ring.p), exps))
    return ring.from_terms(terms)


def random_ideal_gens(rng: random.Random, ring: PolyRing, count=3, max_deg=4):
    gens = []
    while len(gens) < count:
        f = random_poly(rng, ring, max_deg)
        if f:
            gens.append(f)
    return gens


# acceptance bookkeeping: one PASS/FAIL line per criterion at the end of the run

_criteria: dict = {}


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("criterion")
        if m:
            item.user_properties.append(("criterion", tuple(m.args)))


def pytest_runtest_logreport(report):
    for key, value in report.user_properties:
        if key != "criterion":
            continue
        entry = _criteria.setdefault(value, [0, 0])
        if report.when == "call" or report.failed:
            entry[0 if report.passed else 1] += 1


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for (n, title), (ok, bad) in sorted(_criteria.items()):
        verdict = "PASS" if bad == 0 and ok else "FAIL"
        detail = f"{ok} passed" + (f", {bad} failed" if bad else "")
        terminalreporter.write_line(f"criterion {n} ({title}): {verdict}  [{detail}]")
