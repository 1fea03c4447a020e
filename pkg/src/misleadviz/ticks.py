"""Nice-number tick ladders with exact decimal labels."""

from __future__ import annotations

import math
from decimal import Decimal

LADDER = (Decimal(1), Decimal(2), Decimal("2.5"), Decimal(5))


def ladder_steps(start_exp: int, stop_exp: int):
    for e in range(start_exp, stop_exp + 1):
        scale = Decimal(10) ** e
        for m in LADDER:
            yield m * scale


def nice_step(span: float, max_intervals: int) -> Decimal:
    """Smallest ladder step that covers ``span`` with at most ``max_intervals`` steps."""
    if max_intervals < 1:
        raise ValueError("max_intervals must be >= 1")
    if span <= 0:
        span = 1.0
    base = math.floor(math.log10(span / max_intervals)) - 1
    for step in ladder_steps(base, base + 3):
        if math.ceil(span / float(step) - 1e-9) <= max_intervals:
            return step
    raise AssertionError("ladder exhausted")  # pragma: no cover


def step_multiples(lo: float, hi: float, step: Decimal) -> list[Decimal]:
    """All multiples of step from floor(lo/step) to ceil(hi/step), at least two."""
    s = float(step)
    k_lo = math.floor(lo / s + 1e-9)
    k_hi = math.ceil(hi / s - 1e-9)
    if k_hi <= k_lo:
        k_hi = k_lo + 1
    return [step * k for k in range(k_lo, k_hi + 1)]


def nice_ticks(lo: float, hi: float, max_intervals: int = 5) -> list[Decimal]:
    """Ticks spanning [lo, hi] with a ladder step; lo is typically 0."""
    step = nice_step(hi - lo, max_intervals)
    ticks = step_multiples(lo, hi, step)
    while len(ticks) - 1 > max_intervals + 1:
        step = _next_step(step)
        ticks = step_multiples(lo, hi, step)
    return ticks


def _next_step(step: Decimal) -> Decimal:
    exp = math.floor(math.log10(float(step)))
    for s in ladder_steps(exp, exp + 1):
        if s > step:
            return s
    raise AssertionError("ladder exhausted")  # pragma: no cover


def decimals_for(step: Decimal) -> int:
    exp = step.normalize().as_tuple().exponent
    return max(0, -int(exp))


def format_tick(value: Decimal, decimals: int, percent: bool = False) -> str:
    q = value.quantize(Decimal(1).scaleb(-decimals)) if decimals else value.quantize(Decimal(1))
    if q == 0:
        q = abs(q)
    text = f"{q:,f}"
    return text + "%" if percent else text


def format_ticks(values: list[Decimal], percent: bool = False) -> list[str]:
    if len(values) >= 2:
        decimals = max(decimals_for(abs(b - a)) for a, b in zip(values, values[1:]) if b != a)
        decimals = max(decimals, max(decimals_for(v) if v else 0 for v in values))
    else:
        decimals = decimals_for(values[0]) if values and values[0] else 0
    return [format_tick(v, decimals, percent) for v in values]
