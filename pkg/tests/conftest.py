import os

import pytest
from hypothesis import HealthCheck, settings

from icat.corpus import corpus_paths, load, mutant_paths

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", deadline=None, max_examples=400,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(scope="session")
def corpus_docs():
    return {p.name: load(p) for p in corpus_paths()}


@pytest.fixture(scope="session")
def corpus_enriched(corpus_docs):
    out = []
    for doc in corpus_docs.values():
        out += [doc.get(n) for n in doc.names("enriched")]
    return out


@pytest.fixture(scope="session")
def mutant_docs():
    return {p.stem: load(p) for p in mutant_paths()}


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
