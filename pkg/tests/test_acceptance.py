import pytest

from superkac.reproduce import CRITERIA, run

from conftest import ACCEPTANCE_LINES


@pytest.fixture(scope="module")
def results():
    out = run(None, properties=True)
    return {r.number: r for r in out}


def test_every_criterion_reported(results):
    assert sorted(results) == sorted(c[0] for c in CRITERIA)


@pytest.mark.parametrize("number", [c[0] for c in CRITERIA])
def test_criterion(results, number):
    r = results[number]
    print(r.line())
    ACCEPTANCE_LINES.append(r.line())
    assert r.passed, r.line()
