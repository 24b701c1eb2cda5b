"""Exact dyadic generators for nonnegative real numbers.

A generator is a function xi from stages to naturals together with a
modulus hint; the represented value is the limit of xi(x) / 2^x.  The
modulus hint promises that from stage hint(k) on, the dyadic
approximations stay within 2^-k of each other:

    for all x >= hint(k) and all p >= 0:
        2^k * |2^p * xi(x) - xi(x + p)| < 2^(x + p)

All arithmetic is exact integer arithmetic; no floating point is used.
Comparisons are bounded searches for witnesses: eq_at and lt_at answer
True only when the approximation streams exhibit positive evidence
within the configured horizon, and False otherwise.  False never means
"provably not"; it means no witness was found at this precision.
check_modulus is the opposite way around: it tests the universally
quantified modulus promise on a finite range, so a False is a genuine
counterexample while True only covers the range inspected.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Callable, Union


class InsufficientHorizon(Exception):
    """A modulus hint points beyond the stages the horizon allows."""


@dataclass(frozen=True)
class Precision:
    """Search bounds for witnessed comparisons.

    k is the number of binary digits of agreement or separation demanded,
    horizon the length of the stage windows inspected: stages 0 through
    2 * horizon are computed and a witness must hold on horizon + 1
    consecutive stages.
    """

    k: int = 24
    horizon: int = 96

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError("precision k must be at least 1")
        if self.horizon < 1:
            raise ValueError("horizon must be at least 1")


class RealGen:
    """A real number given by dyadic approximants and a modulus hint.

    at(x) is the stage-x numerator: the value is approximated by
    at(x) / 2^x.  hint(k) is a stage from which approximations are
    promised to vary by less than 2^-k (see the module docstring for the
    exact inequality).  Stage values are memoized, so repeated bounded
    comparisons over the same generator cost one pass.
    """

    __slots__ = ("_approx", "_hint", "name", "_memo", "_hint_memo")

    def __init__(self, approx: Callable[[int], int],
                 hint: Callable[[int], int], name: str = "") -> None:
        self._approx = approx
        self._hint = hint
        self.name = name
        self._memo: dict[int, int] = {}
        self._hint_memo: dict[int, int] = {}

    def at(self, x: int) -> int:
        if not isinstance(x, int) or x < 0:
            raise ValueError(f"stage must be a nonnegative integer, got {x!r}")
        got = self._memo.get(x)
        if got is None:
            got = self._approx(x)
            if not isinstance(got, int) or got < 0:
                raise ValueError(
                    f"approximant of {self.name or 'generator'} at stage {x} "
                    f"is not a natural: {got!r}"
                )
            self._memo[x] = got
        return got

    def hint(self, k: int) -> int:
        if not isinstance(k, int) or k < 0:
            raise ValueError(f"precision must be a nonnegative integer, got {k!r}")
        got = self._hint_memo.get(k)
        if got is None:
            got = self._hint(k)
            if not isinstance(got, int) or got < 0:
                raise ValueError(
                    f"modulus hint of {self.name or 'generator'} at precision "
                    f"{k} is not a natural: {got!r}"
                )
            self._hint_memo[k] = got
        return got

    def __repr__(self) -> str:
        return f"RealGen({self.name or '?'})"


def from_nat(n: int) -> RealGen:
    """The natural number n as a generator: stage value n * 2^x, exact."""
    if n < 0:
        raise ValueError("from_nat takes a natural number")
    return RealGen(lambda x: n << x, lambda k: 0, name=str(n))


def from_unit_fraction(q: int) -> RealGen:
    """The rational 1/q for q >= 1: stage value floor(2^x / q)."""
    if q < 1:
        raise ValueError("from_unit_fraction takes a positive denominator")
    return RealGen(lambda x: (1 << x) // q, lambda k: k + 2, name=f"1/{q}")


def add(a: RealGen, b: RealGen) -> RealGen:
    """Pointwise sum; each summand is asked for one extra digit."""
    return RealGen(
        lambda x: a.at(x) + b.at(x),
        lambda k: max(a.hint(k + 1), b.hint(k + 1)),
        name=f"({a.name}+{b.name})",
    )


def mul(a: RealGen, b: RealGen) -> RealGen:
    """Product with stage value floor(a(x) * b(x) / 2^x).

    The modulus hint first bounds both factors: for any stage past
    hint(1) the approximation a.at(h) >> h floors the value, so that
    bound plus 2 strictly dominates every later approximation.  The sum
    of the two bounds dictates how many extra digits of the factors are
    needed, and stages are additionally kept at k + 2 or later so the
    floor error of the product approximant stays below the demanded
    tolerance.
    """

    def hint(k: int) -> int:
        ha, hb = a.hint(1), b.hint(1)
        bound_a = (a.at(ha) >> ha) + 2
        bound_b = (b.at(hb) >> hb) + 2
        shift = (bound_a + bound_b).bit_length()
        finer = k + 1 + shift
        return max(a.hint(finer), b.hint(finer), ha, hb, k + 2)

    return RealGen(
        lambda x: (a.at(x) * b.at(x)) >> x,
        hint,
        name=f"({a.name}*{b.name})",
    )


def nat_scalar(n: int, g: RealGen) -> RealGen:
    """n times g with the exact stage value n * g.at(x).

    Pointwise this equals mul(from_nat(n), g): the product approximant
    floor(n * 2^x * g.at(x) / 2^x) suffers no floor loss.  The direct
    form just needs the cheaper hint g.hint(k + bits of n).
    """
    if n < 0:
        raise ValueError("nat_scalar takes a natural scale")
    return RealGen(
        lambda x: n * g.at(x),
        lambda k: g.hint(k + n.bit_length()),
        name=f"({n}*{g.name})",
    )


_INF = float("inf")
_Level = Union[int, float]


def _window_ok(levels: list[_Level], width: int, want_min: bool,
               bound: int) -> bool:
    """Is there a window of `width` consecutive levels whose min (or max)
    clears `bound`?  Monotone deque, one pass."""
    dq: deque[int] = deque()
    for i, level in enumerate(levels):
        while dq and (
            (levels[dq[-1]] >= level) if want_min else (levels[dq[-1]] <= level)
        ):
            dq.pop()
        dq.append(i)
        if dq[0] <= i - width:
            dq.popleft()
        if i >= width - 1:
            best = levels[dq[0]]
            if (best >= bound) if want_min else (best <= bound):
                return True
    return False


def eq_at(a: RealGen, b: RealGen, prec: Precision) -> bool:
    """Bounded witness that a and b denote the same real.

    Stage i agrees to level kmax(i) = i - bits(|a.at(i) - b.at(i)|), all
    levels if the difference is zero.  The witness demanded is a run of
    horizon + 1 consecutive stages within 0 .. 2 * horizon that all agree
    to at least prec.k digits.  True means such a run exists; False means
    none was found, which refutes nothing.
    """
    top = 2 * prec.horizon
    levels: list[_Level] = []
    for i in range(top + 1):
        d = abs(a.at(i) - b.at(i))
        levels.append(_INF if d == 0 else i - d.bit_length())
    return _window_ok(levels, prec.horizon + 1, want_min=True, bound=prec.k)


def lt_at(a: RealGen, b: RealGen, prec: Precision) -> bool:
    """Bounded witness that a is strictly below b.

    Stage i separates the two at level t(i), the least k with
    b.at(i) - a.at(i) >= 2^(i - k); stages where b does not exceed a
    separate at no level.  The witness demanded is a run of horizon + 1
    consecutive stages that all separate at level prec.k or better.
    True means a < b was witnessed with margin 2^-prec.k; False only
    means no witness within the horizon.
    """
    top = 2 * prec.horizon
    levels: list[_Level] = []
    for i in range(top + 1):
        d = b.at(i) - a.at(i)
        levels.append(_INF if d <= 0 else max(0, i - d.bit_length() + 1))
    return _window_ok(levels, prec.horizon + 1, want_min=False, bound=prec.k)


def apart_at(a: RealGen, b: RealGen, prec: Precision) -> bool:
    """Bounded witness that a and b are apart (one exceeds the other)."""
    return lt_at(a, b, prec) or lt_at(b, a, prec)


def check_modulus(g: RealGen, prec: Precision) -> bool:
    """Test g's modulus promise for every precision up to prec.k.

    For each k the promised stage x = g.hint(k) must fall within the
    horizon (else InsufficientHorizon is raised) and the displacement
    inequality 2^k * |2^p * g.at(x) - g.at(x+p)| < 2^(x+p) must hold for
    every p up to the horizon.  False reports a genuine counterexample
    to the promise; True covers only the range inspected.
    """
    for k in range(prec.k + 1):
        x = g.hint(k)
        if x > prec.horizon:
            raise InsufficientHorizon(
                f"{g.name or 'generator'}: hint({k}) = {x} exceeds "
                f"horizon {prec.horizon}"
            )
        base = g.at(x)
        for p in range(prec.horizon + 1):
            if (abs((base << p) - g.at(x + p)) << k) >= (1 << (x + p)):
                return False
    return True
