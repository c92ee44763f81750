"""Collects one status line per acceptance criterion for the terminal summary."""

LINES: dict[int, str] = {}


def record(number: int, passed: bool, detail: str) -> str:
    line = f"criterion {number}: {'PASS' if passed else 'FAIL'} - {detail}"
    LINES[number] = line
    print(line)
    return line
