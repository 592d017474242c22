import random

import pytest

from supercartan.catalog import load_bundled
from supercartan.matrix_core import validate

# one line per acceptance criterion, filled in by test_acceptance
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


S3_4 = [[2, -1, -2], [-1, 1, -1], [-2, -1, 2]]
H3_4 = [[2, -2, -1], [-2, 2, -1], [-2, -2, 2]]
S3_6 = [[2, -1, -1], [-2, 1, -1], [-2, -1, 2]]
S3_35 = [[2, -2, -1], [-1, 1, -1], [-2, -2, 2]]
S3_46 = [[1, -1, -1], [-1, 1, -1], [-1, -1, 1]]
H3_93 = [[2, -2, -2], [-2, 2, -2], [-2, -2, 2]]
H3_98 = [[2, -2, 0], [-2, 2, -2], [0, -1, 2]]
H3_113 = [[2, -2, 0], [-2, 2, -2], [0, -2, 2]]
NS3_1 = [[2, -1, -1], [-1, 1, -1], [-2, -1, 2]]


@pytest.fixture(scope="session")
def sym_catalog():
    return load_bundled("sym")


@pytest.fixture(scope="session")
def nonsym_catalog():
    return load_bundled("nonsym")


@pytest.fixture(scope="session")
def catalog_h_classes(sym_catalog, nonsym_catalog):
    """One representative H per class, with the S matrices paired with it."""
    from supercartan.catalog import group_by_h

    out = []
    for entries in (sym_catalog, nonsym_catalog):
        for members in group_by_h(entries).values():
            out.append((members[0].h, [m.s for m in members]))
    return out


def random_gcm(rng: random.Random, n: int, edge_p: float = 0.45, max_entry: int = 4):
    """Random even matrix; entries skewed toward -1 so finite/affine cases show up."""
    weights = [6, 3, 1, 1][:max_entry]
    rows = [[2] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < edge_p:
                a = -rng.choices(range(1, max_entry + 1), weights)[0]
                b = -rng.choices(range(1, max_entry + 1), weights)[0]
            else:
                a = b = 0
            rows[i][j], rows[j][i] = a, b
    return validate(rows)


def random_super(rng: random.Random, n: int, **kw):
    M = random_gcm(rng, n, **kw)
    rows = M.rows()
    for i in range(n):
        if rng.random() < 0.4:
            rows[i][i] = 1
    return validate(rows)
