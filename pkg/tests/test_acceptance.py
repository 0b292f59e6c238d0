"""One test per acceptance criterion; each prints a PASS/FAIL line.

Tolerances live in tenspec.acceptance next to each check: transported eigenpair
residual 1e-8, fiber orbit containment 1e-6 relative, fiber residual 1e-8, the
(1,6) fiber under 300 s, the bincubic identities under 1 s and 1000 Hurwitz
lines per binary degree.
"""

import pytest

from tenspec.acceptance import CRITERIA, run_criterion

# The expected form of the second displayed bincubic identity has the opposite sign
# on its a2^2 t^2 term from what exact expansion gives; see the decisions ledger.
KNOWN_FAILURES = {5: "displayed a2^2 t^2 coefficient differs in sign from exact expansion"}


def _params():
    for k in sorted(CRITERIA):
        marks = [pytest.mark.xfail(strict=True, reason=KNOWN_FAILURES[k])] if k in KNOWN_FAILURES else []
        yield pytest.param(k, marks=marks, id="criterion_%02d" % k)


@pytest.mark.parametrize("number", list(_params()))
def test_criterion(number, capsys):
    result = run_criterion(number)
    with capsys.disabled():
        print("\n" + result.line())
        if not result.passed:
            print("    details: %s" % str(result.details)[:800])
    assert result.passed, result.details
