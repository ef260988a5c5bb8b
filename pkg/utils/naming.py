import re

_DIGITS = re.compile(r"(\d+)")


def natural_key(name: str) -> tuple:
    """Sort key ordering "P2" before "P10" and "A1" before "Abar1"."""
    parts = _DIGITS.split(name)
    return tuple(int(part) if i % 2 else part for i, part in enumerate(parts))


def natural_sorted(names):
    return sorted(names, key=natural_key)
