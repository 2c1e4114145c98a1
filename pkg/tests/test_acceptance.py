"""The ten acceptance criteria, one pass/fail line each.

Run directly with ``python3 tests/test_acceptance.py`` or through pytest.
"""

import sys

import pytest

from artifact.acceptance import CRITERIA, run_all


@pytest.mark.parametrize("num", [c[0] for c in CRITERIA], ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(num, capsys):
    [(n, name, ok, detail, secs)] = list(run_all({num}))
    with capsys.disabled():
        print(f"\n[{'PASS' if ok else 'FAIL'}] {n} {name}: {detail} ({secs:.2f}s)")
    assert ok, detail


if __name__ == "__main__":
    failed = 0
    for n, name, ok, detail, secs in run_all():
        print(f"[{'PASS' if ok else 'FAIL'}] {n} {name}: {detail} ({secs:.2f}s)")
        failed += not ok
    sys.exit(1 if failed else 0)
