"""Single-pass compensated summation over streamed values in constant memory."""

from collections.abc import Iterable


class CompensatedSum:
    """Second-order Kahan-Babuska (Klein) running sum.

    Holds three floats of state, so strip contributions can be summed as they
    are generated. Values are folded in the order they are added.

    Example:
        >>> acc = CompensatedSum()
        >>> for value in (1e16, 1.0, -1e16):
        ...     acc += value
        >>> acc.value
        1.0
    """

    __slots__ = ("_c", "_cc", "_s")

    def __init__(self) -> None:
        self._s = 0.0
        self._c = 0.0
        self._cc = 0.0

    @property
    def value(self) -> float:
        return self._s + (self._c + self._cc)

    def add(self, x: float) -> None:
        s = self._s
        t = s + x
        c = (s - t) + x if abs(s) >= abs(x) else (x - t) + s
        self._s = t
        cs = self._c
        t = cs + c
        cc = (cs - t) + c if abs(cs) >= abs(c) else (c - t) + cs
        self._c = t
        self._cc += cc

    def __iadd__(self, x: float) -> "CompensatedSum":
        self.add(x)
        return self

    def __float__(self) -> float:
        return self.value

    def __repr__(self) -> str:
        return f"CompensatedSum({self.value!r})"


def compensated_sum(values: Iterable[float]) -> float:
    """Sum ``values`` in iteration order with a CompensatedSum."""
    acc = CompensatedSum()
    for v in values:
        acc.add(v)
    return acc.value
