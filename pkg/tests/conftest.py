from importlib import resources

import numpy as np
import pytest

from cogmap import ConceptNet, parse_matrix


def _load(name):
    return parse_matrix(resources.files("cogmap").joinpath("data", name).read_text())


@pytest.fixture(scope="session")
def four_node_net():
    """Four-node example net (labels alpha, 1, 2, beta), all weights 1."""
    return _load("four_node.csv")


@pytest.fixture(scope="session")
def nine_net():
    """Nine-node fuel-consumption cognitive map."""
    return _load("nine_node.csv")


def random_net(rng, n, p=0.3, low=-2.0, high=2.0):
    mask = (rng.random((n, n)) < p) & ~np.eye(n, dtype=bool)
    W = np.where(mask, rng.uniform(low, high, (n, n)), 0.0)
    labels = [f"v{i}" for i in range(n)]
    edges = {(labels[i], labels[j]): float(W[i, j]) for i in range(n) for j in range(n) if mask[i, j]}
    return ConceptNet(labels, edges)


def random_ensemble(seed=20240601, count=200, n_max=8, p=0.3):
    rng = np.random.default_rng(seed)
    return [random_net(rng, int(rng.integers(2, n_max + 1)), p) for _ in range(count)]


@pytest.fixture(scope="session")
def ensemble():
    return random_ensemble()


_ACCEPTANCE = {}


def record_criterion(key, title, passed, detail=""):
    _ACCEPTANCE[key] = (title, passed, detail)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_ACCEPTANCE, key=lambda k: (len(k), k)):
        title, passed, detail = _ACCEPTANCE[key]
        status = "PASS" if passed else "FAIL"
        line = f"[{status}] {key}. {title}"
        if detail:
            line += f" -- {detail}"
        terminalreporter.write_line(line)


def printed_tol(printed: str) -> float:
    """Half a unit in the last printed digit (inclusive edge, plus float slack)."""
    decimals = len(printed.split(".")[1]) if "." in printed else 0
    return 0.5 * 10.0**-decimals + 1e-12


def matches_printed(value, printed: str) -> bool:
    return abs(value - float(printed)) <= printed_tol(printed)
