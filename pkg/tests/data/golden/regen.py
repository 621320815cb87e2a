"""Rewrite expected.json from cases.txt. Review the diff before committing."""

import contextlib
import io
import json
import shlex
from pathlib import Path

from windinv.cli import main

HERE = Path(__file__).parent
DATA = HERE.parent


def run_case(line: str):
    argv = [str(DATA / a[1:]) if a.startswith("@") else a for a in shlex.split(line)]
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = main(argv)
    return code, json.loads(buf.getvalue())


if __name__ == "__main__":
    out = []
    for line in (HERE / "cases.txt").read_text().splitlines():
        code, payload = run_case(line)
        out.append({"args": line, "exit": code, "output": payload})
    (HERE / "expected.json").write_text(json.dumps(out, indent=1) + "\n")
