"""One line per acceptance criterion, printed in the terminal summary."""

from __future__ import annotations

LINES: dict[int, str] = {}


def record(criterion: int, ok: bool, detail: str) -> str:
    line = f"criterion {criterion:>2}: {'PASS' if ok else 'FAIL'} : {detail}"
    LINES[criterion] = line
    print(line)
    return line
