import pytest

from twisted_hurwitz.combinatorics import partitions_of
from twisted_hurwitz.tropical import graph_contributions


def correspondence_inputs():
    "Every (g, mu, nu) with n <= 4 and 1 <= b <= 4"
    inputs = []
    for n in range(1, 5):
        for mu in partitions_of(n):
            for nu in partitions_of(n):
                for g in range(0, 4):
                    b = g - 1 + len(mu) + len(nu)
                    if 1 <= b <= 4:
                        inputs.append((g, mu.parts, nu.parts))
    return inputs


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "slow: exhaustive runs taking from seconds to minutes"
    )


@pytest.fixture(scope="session")
def flagship_contributions():
    "Weighted covers of type (1, (4), (2,2))"
    return graph_contributions(1, (4,), (2, 2), prune_zero=True)


@pytest.fixture
def no_config(tmp_path, monkeypatch):
    "Run from an empty folder so that no ./config.json is picked up"
    monkeypatch.chdir(tmp_path)
    monkeypatch.delenv("TWISTED_HURWITZ_CONFIG", raising=False)
    for variable in ["TWISTED_HURWITZ_MAX_POINTS", "TWISTED_HURWITZ_MAX_BRANCH",
                     "TWISTED_HURWITZ_WORKERS"]:
        monkeypatch.delenv(variable, raising=False)
    return tmp_path
