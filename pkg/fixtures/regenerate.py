"""Rewrite fixtures/expected/*.out from the current build.

Run from the repository root: python3 fixtures/regenerate.py
"""

from __future__ import annotations

import contextlib
import io
import json
import os
import sys
from pathlib import Path

from lambdastar.cli import run

HERE = Path(__file__).resolve().parent


def capture(argv: list[str]) -> tuple[int, str]:
    buf = io.StringIO()
    cwd = os.getcwd()
    os.chdir(HERE)
    try:
        with contextlib.redirect_stdout(buf):
            code = run(argv)
    finally:
        os.chdir(cwd)
    return code, buf.getvalue()


def main() -> int:
    scenarios = json.loads((HERE / "scenarios.json").read_text())
    status = 0
    for sc in scenarios:
        code, out = capture(sc["argv"])
        (HERE / "expected" / f"{sc['name']}.out").write_text(out)
        flag = "" if code == sc["exit"] else f"  (exit {code}, expected {sc['exit']})"
        print(f"{sc['name']}: exit {code}{flag}")
        status |= code != sc["exit"]
    return status


if __name__ == "__main__":
    sys.exit(main())
