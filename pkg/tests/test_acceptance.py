"""The acceptance criteria, one test each, at their stated runtimes."""
import pytest

from cyclicsf import acceptance


@pytest.mark.parametrize("number", [c[0] for c in acceptance.CRITERIA],
                         ids=[f"{c[0]:02d}-{c[1].replace(' ', '-')}" for c in acceptance.CRITERIA])
def test_criterion(number, capsys):
    res = acceptance.run_criterion(number)
    with capsys.disabled():
        print("\n" + res.line())
    assert res.seconds <= res.limit, res.line()
    assert res.passed, res.line()
