"""Shared store for acceptance-criterion outcomes, printed at session end."""

RESULTS: dict = {}


def record(number: int, ok: bool, detail: str) -> None:
    RESULTS[number] = (ok, detail)
    print(f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}", flush=True)
