"""Rewrite tests/fixtures/cli/*.out from the matching *.cmd files.

Run after an intentional output change, then review the diff.
"""

import shlex
from pathlib import Path

from torplane.cli import run

FIXTURES = Path(__file__).parent / "fixtures" / "cli"


def main():
    for cmd in sorted(FIXTURES.glob("*.cmd")):
        code, text = run(shlex.split(cmd.read_text()))
        cmd.with_suffix(".out").write_text(f"exit: {code}\n{text}")


if __name__ == "__main__":
    main()
