"""Small utilities shared by the test modules."""

from __future__ import annotations

import contextlib
import io
import subprocess
import sys

from mirrordde.cli import main


def run_cli(*argv: str) -> tuple[int, str, str]:
    """Run the CLI entry point in-process; returns (exit code, stdout, stderr)."""
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = main(list(argv))
    return code, out.getvalue(), err.getvalue()


def run_cli_bytes(*argv: str) -> tuple[int, bytes, bytes]:
    """Run the CLI in a subprocess and return raw stdout/stderr bytes."""
    proc = subprocess.run(
        [sys.executable, "-m", "mirrordde", *argv],
        capture_output=True,
    )
    return proc.returncode, proc.stdout, proc.stderr
