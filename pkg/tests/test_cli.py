import shlex
import subprocess
import sys
from pathlib import Path

import pytest

from torplane.cli import main, run

FIXTURES = Path(__file__).parent / "fixtures" / "cli"
CASES = sorted(p.stem for p in FIXTURES.glob("*.cmd"))


def argv_of(name):
    return shlex.split((FIXTURES / f"{name}.cmd").read_text())


@pytest.mark.parametrize("name", CASES)
def test_fixture(name):
    code, text = run(argv_of(name))
    assert f"exit: {code}\n{text}" == (FIXTURES / f"{name}.out").read_text()


def parse_structured(text):
    lines = text.splitlines()
    assert lines[0] == "schema: 1" and lines[1].startswith("command: ")
    return dict(line.split(": ", 1) for line in lines[2:])


def split_top(text):
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        elif depth == 0 and text.startswith(", ", i):
            parts.append(text[start:i])
            start = i + 2
    return parts + [text[start:]]


def normalize_plain(value, structured_value):
    """Read a plain value back into the structured spelling."""
    if value in ("yes", "no"):
        return "true" if value == "yes" else "false"
    if structured_value.startswith("[") and not structured_value.startswith("[["):
        return "[]" if value == "-" else "[" + ", ".join(split_top(value)) + "]"
    if structured_value.startswith("[["):
        return "[" + value + "]"
    return value


@pytest.mark.parametrize("name", CASES)
def test_plain_carries_same_content(name):
    argv = argv_of(name)
    code_s, structured = run(argv)
    code_p, plain = run(["--format", "plain", *argv])
    assert code_s == code_p
    fields = parse_structured(structured)
    plain_lines = plain.splitlines()
    assert len(plain_lines) == len(fields)
    for (key, value), line in zip(fields.items(), plain_lines):
        pkey, pval = line.split(" = ", 1)
        assert pkey == key.replace("_", " ")
        assert normalize_plain(pval, value) == value


def test_input_record(tmp_path):
    rec = tmp_path / "embed.txt"
    rec.write_text("command: toric embed\nd: 5\ne: 4\na: 2\nb: 3\n")
    code, text = run(["--input", str(rec)])
    assert code == 0
    assert parse_structured(text)["exponents"] == "[15, 5, 10, 15, 20, 10]"
    rec.write_text("phi: TriPlus(-1,1,t^2)\nphi: TriPlus(1,1,0)\n")
    code, text = run(["jonq", "conjugate", "--input", str(rec)])
    assert code == 0 and parse_structured(text)["verified"] == "true"


def test_batch(tmp_path, capsys):
    batch = tmp_path / "jobs.txt"
    batch.write_text("toric iso --d1 7 --e1 2 --d2 7 --e2 4\n\n# skipped\ntoric info --d 4 --e 2\n")
    assert main(["--batch", str(batch)]) == 3
    out = capsys.readouterr().out
    assert out.count("schema: 1") == 2
    assert "isomorphic: true" in out and "error: BadParameters" in out


def test_missing_file():
    code, text = run(["--input", "/nonexistent/record"])
    assert code == 2 and "error: ParseError" in text


def test_exit_codes():
    assert run(["curve", "ams", "--u", "t^2", "--v", "t^3"])[0] == 0
    assert run(["curve", "ams", "--u", "t^2"])[0] == 2
    assert run(["curve", "ams", "--u", "1", "--v", "2"])[0] == 3
    assert run(["nonsense"])[0] == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "torplane", "aut", "factor", "--u", "x+y^2", "--v", "y"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert "factor.1.kind: TriPlus" in proc.stdout


def test_deterministic():
    argv = argv_of("group_closure_q8")
    assert run(argv) == run(argv)
