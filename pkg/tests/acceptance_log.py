"""Shared record of acceptance outcomes, printed at the end of the session."""

RESULTS: dict[int, tuple[bool, str]] = {}


def record(number: int, title: str, ok: bool) -> None:
    RESULTS[number] = (ok, title)
    print(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {title}")
