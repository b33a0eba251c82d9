"""End-to-end acceptance suite.

Each check lives in magicwit.verify so the CLI's `verify` subcommand and
this module exercise exactly the same assertions, with all tolerances and
runtime limits pinned inside the checks.  Run with -v to get one pass/fail
line per check.
"""

import pytest

from magicwit import verify


@pytest.mark.parametrize("check", verify.CHECKS, ids=lambda c: c.name)
def test_acceptance(check):
    detail = check.fn()
    assert detail
    print(f"[{check.name}] {detail}")


def test_every_check_is_registered_once():
    names = [c.name for c in verify.CHECKS]
    assert len(names) == len(set(names))
    assert len(names) == 13
    quick = [c.name for c in verify.CHECKS if c.quick]
    assert "orbit-counts" in quick and "cglmp-table" not in quick


def test_fault_injection_is_caught(monkeypatch):
    # Corrupting a pipeline ingredient must flip its check to a failure
    # (and with it the verify exit code) rather than pass silently.
    from magicwit import graphs

    real = graphs.enumerate_classes

    def corrupted(n, d, budget=graphs.DEFAULT_ENUM_BUDGET):
        cat = real(n, d, budget)
        return graphs.OrbitCatalog(
            n=cat.n,
            d=cat.d,
            representatives=cat.representatives[:-1],
            orbit_sizes=cat.orbit_sizes[:-1],
        )

    monkeypatch.setattr(verify.graphs, "enumerate_classes", corrupted)
    check = next(c for c in verify.CHECKS if c.name == "orbit-counts")
    result = check.run()
    assert not result.ok
    assert "expected" in result.detail
