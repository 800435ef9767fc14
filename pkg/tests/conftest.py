import pytest

from tamreg import _pykernels, kernels

ACCEPTANCE_LINES = []


@pytest.fixture(params=["compiled", "python"])
def backend(request, monkeypatch):
    """Run a test once per kernel backend."""
    if request.param == "compiled":
        if kernels.BACKEND != "cython":
            pytest.skip("compiled kernels not built")
    else:
        monkeypatch.setattr(kernels, "levenshtein", _pykernels.levenshtein)
        monkeypatch.setattr(kernels, "char_ngram_counts", _pykernels.char_ngram_counts)
    return request.param


@pytest.fixture(scope="session")
def synthetic():
    from tamreg.evalharness import synthetic_parallel_corpus

    return synthetic_parallel_corpus()


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    setattr(item, f"rep_{rep.when}", rep)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
