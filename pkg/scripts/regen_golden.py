"""Rewrite tests/golden from the cases in tests/golden_cases.py.

Each case produces ``<name>.json`` (the exact stdout) and an entry in
``exit_codes.json``.  Review the diff before committing.
"""

from __future__ import annotations

import contextlib
import io
import json
import os
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "tests"))

from golden_cases import CASES  # noqa: E402

from dendro.cli import run  # noqa: E402


def capture(argv: list[str]) -> tuple[int, str]:
    out, err = io.StringIO(), io.StringIO()
    cwd = os.getcwd()
    os.chdir(ROOT / "tests" / "fixtures")
    try:
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            code = run(argv)
    finally:
        os.chdir(cwd)
    return code, out.getvalue()


def main() -> None:
    gold = ROOT / "tests" / "golden"
    gold.mkdir(exist_ok=True)
    codes = {}
    for name, argv in CASES.items():
        code, text = capture(argv)
        (gold / f"{name}.json").write_text(text)
        codes[name] = code
    (gold / "exit_codes.json").write_text(json.dumps(codes, sort_keys=True, indent=2) + "\n")
    print(f"wrote {len(CASES)} golden files")


if __name__ == "__main__":
    main()
