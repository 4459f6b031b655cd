"""Regenerate tests/golden/ (run from the repository root after an intended output change)."""

from pathlib import Path

from golden_cases import CASES
from gtrees.cli import run

HERE = Path(__file__).parent / "golden"

if __name__ == "__main__":
    HERE.mkdir(exist_ok=True)
    for fname, argv in CASES.items():
        text, status = run(argv)
        (HERE / fname).write_text(f"# exit {status}\n{text}", encoding="utf-8")
        print(fname, status)
