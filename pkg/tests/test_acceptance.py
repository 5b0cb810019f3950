"""Acceptance criteria 1-12.

Every criterion prints one line, ``ACCEPTANCE <n> PASS|FAIL <title> (<seconds>)``,
and the lines are repeated in the pytest terminal summary.
"""

from __future__ import annotations

import os
import subprocess
import sys
import time
from pathlib import Path

import pytest

import acceptance_cases as cases
from modrep.corpus import group_file_text

HERE = Path(__file__).resolve().parent
RESULTS: dict[int, str] = {}
EMITTED: dict[int, str] = {}


def _report(n: int, ok: bool, elapsed: float, detail: str = "") -> None:
    line = f"ACCEPTANCE {n:>2} {'PASS' if ok else 'FAIL'} {cases.TITLES[n]} ({elapsed:.1f}s)"
    if detail:
        line += f": {detail}"
    RESULTS[n] = line
    print(line)


@pytest.mark.parametrize("n", range(1, 12))
def test_criterion(n):
    start = time.perf_counter()
    try:
        document, checks = cases.CRITERIA[n](0)
        EMITTED[n] = cases.emit(document)
    except Exception as exc:
        _report(n, False, time.perf_counter() - start, f"{type(exc).__name__}: {exc}")
        raise
    elapsed = time.perf_counter() - start
    failed = [name for name, ok in checks.items() if not ok]
    slow = elapsed >= cases.LIMITS[n]
    detail = "; ".join(failed[:3]) + (f" (+{len(failed) - 3} more)" if len(failed) > 3 else "")
    if slow:
        detail = (detail + "; " if detail else "") + f"limit {cases.LIMITS[n]}s exceeded"
    _report(n, not failed and not slow, elapsed, detail)
    assert checks, "criterion produced no checks"
    assert not failed, failed
    assert not slow, f"{elapsed:.1f}s >= {cases.LIMITS[n]}s"


# criterion 12: rerun in fresh interpreters and through the command line


CLI_RUNS = [
    ("chartable", "S3", "5", []),
    ("decomp", "S4", "2", []),
    ("gendecomp", "A5", "5", []),
    ("blocks", "S3", "5", []),
    ("simples", "A4", "2", []),
    ("cohomology", "C4", "2", []),
    ("deform", "C2", "2", []),
    ("tame-report", "SL(2,7)", "2", []),
    ("tame-report", "PGL(2,7)", "2", []),
]


def _python(args: list[str], cwd: Path, env: dict) -> bytes:
    proc = subprocess.run([sys.executable, *args], cwd=cwd, env=env, capture_output=True, check=False)
    if proc.returncode != 0:
        raise RuntimeError(proc.stderr.decode(errors="replace")[-2000:])
    return proc.stdout


def test_criterion_12_determinism(tmp_path):
    start = time.perf_counter()
    mismatches = []
    try:
        for n in range(1, 12):
            if n not in EMITTED:
                EMITTED[n] = cases.emitted(n, 0)
        env = dict(os.environ, PYTHONHASHSEED="random", MODREP_WORKSPACE=str(tmp_path / "ws"))
        fresh = _python([str(HERE / "acceptance_cases.py"), *map(str, range(1, 12))], HERE, env).decode().split("\0")
        for n, text in zip(range(1, 12), fresh):
            if text != EMITTED[n]:
                mismatches.append(f"criterion {n} document")
        for command, group, p, extra in CLI_RUNS:
            path = tmp_path / f"{group.replace('(', '').replace(')', '').replace(',', '_')}.grp"
            path.write_text(group_file_text(group))
            argv = ["-m", "modrep.cli", command, "--group", str(path), "--p", p, "--seed", "0", "--no-cache", *extra]
            first, second = (_python(argv, tmp_path, env) for _ in range(2))
            if first != second or not first:
                mismatches.append(f"{command} {group}")
    except Exception as exc:
        _report(12, False, time.perf_counter() - start, f"{type(exc).__name__}: {exc}")
        raise
    _report(12, not mismatches, time.perf_counter() - start, ", ".join(mismatches))
    assert not mismatches, mismatches
