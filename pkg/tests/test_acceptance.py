"""The acceptance gate: every criterion runs at its stated scale and
prints one pass/fail line."""

from mu2forge.suite_runner import run_acceptance


def test_acceptance():
    results = run_acceptance(seed=20240, generated=1000)
    failed = []
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"{status} criterion {r.number}: {r.name} :: {r.detail}")
        if not r.passed:
            failed.append(r.number)
    assert not failed, f"failing criteria: {failed}"
