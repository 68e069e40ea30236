import random

import pytest

from plane_cremona.catalog import normal_form_map
from plane_cremona.classify import UnsupportedCase
from plane_cremona.cremona import compose, resolve_base_points
from plane_cremona.exact_algebra import AlgebraError, ProjAut, ProjPoint
from plane_cremona.lengths import height_at, ordinary_involution, transport_point


def random_aut(rng: random.Random, size: int = 4) -> ProjAut:
    while True:
        rows = [[rng.randint(-size, size) for _ in range(3)] for _ in range(3)]
        try:
            return ProjAut.of(rows)
        except AlgebraError:
            continue


def height_samples(seed, count):
    """(h_phi(p), h_{phi o rho}(rho-bar(p))) for base points p of catalog maps."""
    rng = random.Random(seed)
    out, skipped = [], 0
    while len(out) < count:
        n = rng.randint(1, 25)
        m = normal_form_map(n)
        tree = resolve_base_points(m, find_line=False)
        pool = [p.base for p in tree.points if p.is_proper]
        rng.shuffle(pool)
        P = pool[:rng.randint(0, min(3, len(pool)))]
        while len(P) < 3:
            c = [rng.randint(-3, 3) for _ in range(3)]
            if any(c) and ProjPoint.of(c) not in P:
                P.append(ProjPoint.of(c))
        try:
            rho, _ = ordinary_involution(P)
        except Exception:
            continue
        p = rng.choice(tree.points)
        try:
            q = transport_point(p, P)
        except UnsupportedCase:
            skipped += 1
            continue
        except ValueError:
            continue
        out.append((height_at(m, p), height_at(compose(m, rho), q)))
    return out, skipped


@pytest.fixture
def rng():
    return random.Random(20240611)


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        terminalreporter.write_line(results[n])
