"""Encoding of a finished choice-sequence run as a quotient of reals.

A run that stabilized at moment m with value k is turned into the pair
of generators u ~ 1/m and v ~ 1/(m * k), both of which report 0 before
stage m (the approximations carry no information until the run has
fired).  Membership of a natural n in the encoded species is the
relation n * v = u, which holds exactly for n = k, so a stabilized run
encodes the singleton species {k}.

A run that never fired is encoded as the degenerate pair u = v = 0.
The quotient relation n * 0 = 0 holds for every n, so read classically
a silent run encodes the full species; bounded checks confirm every
candidate against that pair.

quotient_status decides membership the way everything else in the
package does: by bounded witness search.  Confirmed and excluded both
rest on a found witness; undetermined means the precision or horizon
was too small to produce one, not that the answer is unknown in
principle.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

from .kripke import RunResult
from .reals import Precision, RealGen, eq_at, from_nat, lt_at, nat_scalar


class MembershipStatus(enum.Enum):
    CONFIRMED = "confirmed"
    EXCLUDED = "excluded"
    UNDETERMINED = "undetermined"


@dataclass(frozen=True)
class SpeciesEncoding:
    """Pair of generators whose quotient codes a species of naturals.

    stabilized is the (moment, value) pair of the run that produced the
    encoding, or None for a silent run (the full species).
    """

    u: RealGen
    v: RealGen
    stabilized: Optional[tuple[int, int]]

    @property
    def kind(self) -> str:
        return "full" if self.stabilized is None else "singleton"

    @property
    def member_value(self) -> Optional[int]:
        """The single member for a singleton encoding, None for full."""
        return None if self.stabilized is None else self.stabilized[1]


def _cutover_unit_fraction(denom: int, start: int, name: str) -> RealGen:
    """Generator for 1/denom that reports 0 before stage start.

    From stage start on this is the usual unit fraction approximant, so
    a modulus hint of k + 2 works once it is also pushed past start.
    """
    return RealGen(
        lambda x: 0 if x < start else (1 << x) // denom,
        lambda k: max(k + 2, start),
        name=name,
    )


def encode_stabilized(moment: int, value: int) -> SpeciesEncoding:
    """Encoding of the singleton species {value} from a run that fired
    at the given moment."""
    if moment < 1:
        raise ValueError("runs fire at moment 1 or later")
    if value < 1:
        raise ValueError("stabilized values are positive")
    u = _cutover_unit_fraction(moment, moment, f"u[m={moment}]")
    v = _cutover_unit_fraction(moment * value, moment,
                               f"v[m={moment},k={value}]")
    return SpeciesEncoding(u, v, (moment, value))


def encode_silent() -> SpeciesEncoding:
    """Encoding of a run that never fired: the degenerate pair (0, 0)."""
    return SpeciesEncoding(from_nat(0), from_nat(0), None)


def encode_run(run: RunResult) -> SpeciesEncoding:
    if run.stabilized is None:
        return encode_silent()
    moment, value = run.stabilized
    return encode_stabilized(moment, value)


def quotient_status(enc: SpeciesEncoding, n: int,
                    prec: Precision) -> MembershipStatus:
    """Bounded membership check of n against the encoded species.

    Confirmed when n * v = u is witnessed, excluded when the two sides
    are witnessed apart, undetermined when neither search succeeds
    within the precision.

    A horizon shorter than the encoding's cutover moment is reported
    undetermined outright: every window it could inspect fits inside the
    silent prefix where both generators are still 0, which would let the
    prefix itself pass as an equality witness for any candidate.  Longer
    windows necessarily reach informative stages, so this cannot happen
    once the horizon clears the cutover.
    """
    if n < 0:
        raise ValueError("candidates are nonnegative")
    if enc.stabilized is not None and prec.horizon < enc.stabilized[0]:
        return MembershipStatus.UNDETERMINED
    scaled = nat_scalar(n, enc.v)
    if eq_at(scaled, enc.u, prec):
        return MembershipStatus.CONFIRMED
    if lt_at(scaled, enc.u, prec) or lt_at(enc.u, scaled, prec):
        return MembershipStatus.EXCLUDED
    return MembershipStatus.UNDETERMINED


def adaptive_precision(enc: SpeciesEncoding, k: int = 16) -> Precision:
    """Precision whose horizon clears the encoding's silent stages.

    The generators of an encoding that fired at moment m report 0 before
    stage m, so witness windows must start at stage m or later; a
    horizon of m + 48 leaves room for them.
    """
    start = 0 if enc.stabilized is None else enc.stabilized[0]
    return Precision(k=k, horizon=start + 48)


def membership_profile(enc: SpeciesEncoding, n_max: int,
                       prec: Precision) -> dict[int, MembershipStatus]:
    """quotient_status for every candidate 0..n_max."""
    return {n: quotient_status(enc, n, prec) for n in range(n_max + 1)}
