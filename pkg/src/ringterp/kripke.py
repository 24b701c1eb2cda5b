"""Simulation of a proof-event-driven choice sequence.

The simulator follows the creative-subject picture: a binary evidence
stream alpha codes a species A of naturals (k belongs to A when some
stage p has alpha(pair(p, k)) = 1), and a second sequence beta starts at
zero and may jump, once, to a member of A.  Jumping is allowed only
after an external schedule says the tracked statement has been proved;
from that moment on the subject repeatedly draws a candidate k at
random, checks the evidence available so far (stages p up to the
current moment), and locks beta onto the first candidate that checks
out.  If the schedule never proves the statement, or proves its
negation instead, beta stays zero forever.

The evidence streams used here are eventually periodic (a finite prefix
followed by a repeating pattern), which makes membership and totality
of A genuinely decidable: pair(p, k) modulo the pattern length is
periodic in each argument with period twice the pattern length, so a
finite scan settles the existential.

check_conjuncts classifies a finished run against the five clauses that
the jump discipline is meant to satisfy, reporting each as holds,
violated, vacuous, or undetermined (the horizon was too short to tell).
Traces serialize a run to text; parsing a trace re-runs the simulation
from the recorded parameters and refuses to accept a trace that does
not match the re-run, so a trace doubles as an integrity check.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from typing import Iterable, Optional

from .pairing import pair


class TraceError(ValueError):
    """A run trace is malformed or inconsistent with its own parameters."""


# ---------------------------------------------------------------------------
# Evidence streams


@dataclass(frozen=True)
class ChoiceSeq:
    """Eventually periodic binary stream: prefix bits, then a repeating
    default pattern."""

    prefix: tuple[int, ...]
    default: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.default:
            raise ValueError("default pattern must be nonempty")
        for bit in self.prefix + self.default:
            if bit not in (0, 1):
                raise ValueError(f"stream bits must be 0 or 1, got {bit!r}")

    @classmethod
    def zero(cls) -> "ChoiceSeq":
        return cls((), (0,))

    @classmethod
    def one(cls) -> "ChoiceSeq":
        return cls((), (1,))

    @classmethod
    def total(cls) -> "ChoiceSeq":
        """Stream coding the full species: every candidate is a member,
        witnessed at every stage."""
        return cls.one()

    @classmethod
    def from_members(cls, members: Iterable[tuple[int, int]]) -> "ChoiceSeq":
        """Stream coding a finite species from (candidate, witness stage)
        pairs: alpha(pair(p, k)) = 1 exactly for the listed (k, p)."""
        pairs = list(members)
        seen: set[int] = set()
        positions: list[int] = []
        for k, p in pairs:
            if k < 1:
                raise ValueError(f"candidates must be positive, got {k}")
            if p < 0:
                raise ValueError(f"witness stages are nonnegative, got {p}")
            if k in seen:
                raise ValueError(f"duplicate candidate {k}")
            seen.add(k)
            positions.append(pair(p, k))
        if not positions:
            return cls.zero()
        prefix = [0] * (max(positions) + 1)
        for pos in positions:
            prefix[pos] = 1
        return cls(tuple(prefix), (0,))

    def at(self, i: int) -> int:
        if i < 0:
            raise ValueError("stream index must be nonnegative")
        if i < len(self.prefix):
            return self.prefix[i]
        return self.default[(i - len(self.prefix)) % len(self.default)]

    def is_member(self, k: int) -> bool:
        """Does some stage p witness k, i.e. alpha(pair(p, k)) = 1?

        Past the prefix the stream has period L = len(default), and
        pair(p, k) mod L is periodic in p with period 2L, so scanning p
        until pair(p, k) clears the prefix and then 2L further stages
        decides the existential.
        """
        if k < 0:
            raise ValueError("candidates are nonnegative")
        period = 2 * len(self.default)
        p = 0
        while pair(p, k) < len(self.prefix):
            p += 1
        for q in range(p + period):
            if self.at(pair(q, k)) == 1:
                return True
        return False

    def first_witness(self, k: int) -> Optional[int]:
        """Least witnessing stage for k, or None when k is not a member."""
        if not self.is_member(k):
            return None
        p = 0
        while self.at(pair(p, k)) != 1:
            p += 1
        return p

    def is_total(self) -> bool:
        """Is every positive candidate a member?

        For k large enough that pair(0, k) clears the prefix, membership
        of k depends only on the repeating pattern and is periodic in k
        with period 2 * len(default); a finite scan decides totality.
        """
        period = 2 * len(self.default)
        k0 = 1
        while pair(0, k0) < len(self.prefix):
            k0 += 1
        return all(self.is_member(k) for k in range(1, k0 + period))

    def canonical_spec(self) -> str:
        prefix = "".join(str(b) for b in self.prefix)
        default = "".join(str(b) for b in self.default)
        return f"prefix:{prefix};default:{default}"


def _parse_bits(text: str, what: str) -> tuple[int, ...]:
    if not all(c in "01" for c in text):
        raise ValueError(f"{what} must be a string of 0s and 1s, got {text!r}")
    return tuple(int(c) for c in text)


def parse_alpha_spec(spec: str) -> ChoiceSeq:
    """Evidence stream from its textual form.

    Accepted: "zero", "one", "total", "members:k[@p],..." (witness stage
    p defaults to 0), and the canonical "prefix:<bits>;default:<bits>".
    """
    spec = spec.strip()
    if spec == "zero":
        return ChoiceSeq.zero()
    if spec in ("one", "total"):
        return ChoiceSeq.one()
    if spec.startswith("members:"):
        body = spec[len("members:"):]
        members: list[tuple[int, int]] = []
        for part in body.split(","):
            part = part.strip()
            if not part:
                raise ValueError(f"empty member in {spec!r}")
            k_text, _, p_text = part.partition("@")
            try:
                k = int(k_text)
                p = int(p_text) if p_text else 0
            except ValueError:
                raise ValueError(f"bad member {part!r} in {spec!r}") from None
            members.append((k, p))
        return ChoiceSeq.from_members(members)
    if spec.startswith("prefix:"):
        body = spec[len("prefix:"):]
        prefix_text, sep, rest = body.partition(";")
        if not sep or not rest.startswith("default:"):
            raise ValueError(
                f"expected prefix:<bits>;default:<bits>, got {spec!r}"
            )
        default_text = rest[len("default:"):]
        return ChoiceSeq(
            _parse_bits(prefix_text, "prefix"),
            _parse_bits(default_text, "default"),
        )
    raise ValueError(f"unrecognized evidence stream spec {spec!r}")


# ---------------------------------------------------------------------------
# Schedules


class ScheduleKind(enum.Enum):
    NEVER = "never"
    PHI_PROVED = "phi"
    NOT_PHI_PROVED = "notphi"


@dataclass(frozen=True)
class Schedule:
    """When, if ever, the tracked statement or its negation gets proved."""

    kind: ScheduleKind
    moment: Optional[int] = None

    def __post_init__(self) -> None:
        if self.kind is ScheduleKind.NEVER:
            if self.moment is not None:
                raise ValueError("a never schedule has no moment")
        else:
            if self.moment is None or self.moment < 0:
                raise ValueError("proof moments are nonnegative integers")

    @classmethod
    def never(cls) -> "Schedule":
        return cls(ScheduleKind.NEVER)

    @classmethod
    def phi_proved(cls, t: int) -> "Schedule":
        return cls(ScheduleKind.PHI_PROVED, t)

    @classmethod
    def not_phi_proved(cls, t: int) -> "Schedule":
        return cls(ScheduleKind.NOT_PHI_PROVED, t)

    def canonical_spec(self) -> str:
        if self.kind is ScheduleKind.NEVER:
            return "never"
        return f"{self.kind.value}:{self.moment}"


def parse_schedule_spec(spec: str) -> Schedule:
    """Schedule from "never", "phi:<t>" or "notphi:<t>"."""
    spec = spec.strip()
    if spec == "never":
        return Schedule.never()
    head, sep, t_text = spec.partition(":")
    if sep and head in ("phi", "notphi"):
        try:
            t = int(t_text)
        except ValueError:
            raise ValueError(f"bad proof moment in {spec!r}") from None
        if head == "phi":
            return Schedule.phi_proved(t)
        return Schedule.not_phi_proved(t)
    raise ValueError(f"unrecognized schedule spec {spec!r}")


# ---------------------------------------------------------------------------
# Simulation


@dataclass(frozen=True)
class Draw:
    moment: int
    candidate: int
    witnessed: bool


@dataclass(frozen=True)
class RunResult:
    alpha: ChoiceSeq
    schedule: Schedule
    horizon: int
    seed: int
    beta: tuple[int, ...]
    draws: tuple[Draw, ...]
    stabilized: Optional[tuple[int, int]]

    @property
    def fired(self) -> bool:
        return self.stabilized is not None


def simulate(alpha: ChoiceSeq, schedule: Schedule, horizon: int,
             seed: int) -> RunResult:
    """Run the choice sequence for moments 0 through horizon.

    Before the scheduled proof moment (and on schedules that never prove
    the statement) beta is zero.  From moment max(t, 1) on, one candidate
    k in 1..n is drawn per moment n; the draw succeeds when some stage
    p <= n already witnesses k, and beta then stays at k forever.  Draws
    are deterministic in the seed.
    """
    if horizon < 1:
        raise ValueError("horizon must be at least 1")
    rng = random.Random(seed)
    beta: list[int] = []
    draws: list[Draw] = []
    stabilized: Optional[tuple[int, int]] = None
    drawing = schedule.kind is ScheduleKind.PHI_PROVED
    start = max(schedule.moment, 1) if drawing else None
    for n in range(horizon + 1):
        if stabilized is not None:
            beta.append(stabilized[1])
            continue
        if drawing and n >= start:
            k = rng.randint(1, n)
            witnessed = any(alpha.at(pair(p, k)) == 1 for p in range(n + 1))
            draws.append(Draw(n, k, witnessed))
            if witnessed:
                stabilized = (n, k)
                beta.append(k)
                continue
        beta.append(0)
    return RunResult(alpha, schedule, horizon, seed, tuple(beta),
                     tuple(draws), stabilized)


def run_total(schedule: Schedule, horizon: int, seed: int) -> RunResult:
    """Run against the full species, where every draw finds its witness.

    On a schedule proving the statement at t this stabilizes at exactly
    max(t, 1), the first moment a draw is permitted.
    """
    return simulate(ChoiceSeq.total(), schedule, horizon, seed)


# ---------------------------------------------------------------------------
# Conjunct checking


class ConjunctStatus(enum.Enum):
    HOLDS = "holds"
    VIOLATED = "violated"
    VACUOUS = "vacuous"
    UNDETERMINED = "undetermined"


_SEVERITY = {
    ConjunctStatus.VIOLATED: 3,
    ConjunctStatus.UNDETERMINED: 2,
    ConjunctStatus.HOLDS: 1,
    ConjunctStatus.VACUOUS: 0,
}


def _combine(statuses: Iterable[ConjunctStatus]) -> ConjunctStatus:
    worst = ConjunctStatus.VACUOUS
    for s in statuses:
        if _SEVERITY[s] > _SEVERITY[worst]:
            worst = s
    return worst


@dataclass(frozen=True)
class ConjunctReport:
    c1: ConjunctStatus
    c2: ConjunctStatus
    c3: ConjunctStatus
    c4: ConjunctStatus
    c5: ConjunctStatus

    @property
    def aggregate(self) -> ConjunctStatus:
        return _combine([self.c1, self.c2, self.c3, self.c4, self.c5])

    def as_dict(self) -> dict[str, str]:
        out = {f"C{i}": s.value for i, s in enumerate(
            [self.c1, self.c2, self.c3, self.c4, self.c5], start=1)}
        out["aggregate"] = self.aggregate.value
        return out


def check_conjuncts(run: RunResult) -> ConjunctReport:
    """Classify a finished run against the five clauses of the jump
    discipline.

    C1 (a jump is sound): if beta fired, the statement had been proved
        by the firing moment; a silent run satisfies it vacuously.
    C2 (silence under a total species refutes): if every candidate is a
        member and beta never fired, the statement must be refutable.
        Holds when the schedule proved the negation; with a proof still
        scheduled or never arriving, a bounded run cannot tell.
    C3 (the proof event is not undecided forever): for each candidate it
        is absurd that the statement is neither provable nor refutable.
        Settled schedules settle it; on a never schedule the horizon
        cannot.
    C4 (members get acknowledged): each member of the species is
        eventually drawn and confirmed or the proof event resolves the
        obligation; per-member verdicts are combined.
    C5 (the sequence stabilizes): once beta is nonzero it keeps that
        value ever after.
    """
    kind = run.schedule.kind
    decided = kind is not ScheduleKind.NEVER

    if run.fired:
        moment = run.stabilized[0]
        if kind is ScheduleKind.PHI_PROVED and run.schedule.moment <= moment:
            c1 = ConjunctStatus.HOLDS
        else:
            c1 = ConjunctStatus.VIOLATED
    else:
        c1 = ConjunctStatus.VACUOUS

    if not run.alpha.is_total() or run.fired:
        c2 = ConjunctStatus.VACUOUS
    elif kind is ScheduleKind.NOT_PHI_PROVED:
        c2 = ConjunctStatus.HOLDS
    else:
        c2 = ConjunctStatus.UNDETERMINED

    c3 = ConjunctStatus.HOLDS if decided else ConjunctStatus.UNDETERMINED

    per_member: list[ConjunctStatus] = []
    for k in range(1, run.horizon + 1):
        if not run.alpha.is_member(k):
            per_member.append(ConjunctStatus.VACUOUS)
        elif run.fired or decided:
            per_member.append(ConjunctStatus.HOLDS)
        else:
            per_member.append(ConjunctStatus.UNDETERMINED)
    c4 = _combine(per_member)

    c5 = ConjunctStatus.HOLDS
    locked: Optional[int] = None
    for value in run.beta:
        if locked is None:
            if value != 0:
                locked = value
        elif value != locked:
            c5 = ConjunctStatus.VIOLATED
            break

    return ConjunctReport(c1, c2, c3, c4, c5)


# ---------------------------------------------------------------------------
# Traces


TRACE_HEADER = "# ringterp run-trace v1"


def format_trace(run: RunResult) -> str:
    """Serialize a run, its conjunct report and its parameters."""
    report = check_conjuncts(run)
    lines = [TRACE_HEADER, "# moments"]
    draw_at = {d.moment: d for d in run.draws}
    for n, value in enumerate(run.beta):
        d = draw_at.get(n)
        if d is None:
            lines.append(f"{n} {value} - -")
        else:
            lines.append(
                f"{n} {value} {d.candidate} {'yes' if d.witnessed else 'no'}"
            )
    lines.append("# conjuncts")
    for key, status in report.as_dict().items():
        lines.append(f"{key}={status}")
    lines.append("# summary")
    lines.append(f"horizon={run.horizon}")
    lines.append(f"seed={run.seed}")
    lines.append(f"alpha={run.alpha.canonical_spec()}")
    lines.append(f"schedule={run.schedule.canonical_spec()}")
    if run.stabilized is None:
        lines.append("stabilized=none")
    else:
        lines.append(f"stabilized={run.stabilized[0]}:{run.stabilized[1]}")
    return "\n".join(lines) + "\n"


def _normalize(text: str) -> list[str]:
    lines = [line.rstrip() for line in text.splitlines()]
    for i, line in enumerate(lines):
        if line.startswith("# manifest"):
            lines = lines[:i]
            break
    while lines and not lines[-1]:
        lines.pop()
    return lines


def parse_trace(text: str) -> RunResult:
    """Re-run the simulation a trace describes and verify the trace.

    The recorded parameters (alpha, schedule, horizon, seed) fully
    determine the run, so the moment lines and conjunct lines carry no
    extra information; they are compared against the re-run and any
    disagreement raises TraceError.
    """
    lines = _normalize(text)
    if not lines or lines[0] != TRACE_HEADER:
        raise TraceError(f"missing trace header {TRACE_HEADER!r}")
    summary: dict[str, str] = {}
    try:
        at = lines.index("# summary")
    except ValueError:
        raise TraceError("missing # summary section") from None
    for line in lines[at + 1:]:
        key, sep, value = line.partition("=")
        if not sep:
            raise TraceError(f"bad summary line {line!r}")
        summary[key] = value
    for key in ("horizon", "seed", "alpha", "schedule", "stabilized"):
        if key not in summary:
            raise TraceError(f"summary is missing {key!r}")
    try:
        horizon = int(summary["horizon"])
        seed = int(summary["seed"])
        alpha = parse_alpha_spec(summary["alpha"])
        schedule = parse_schedule_spec(summary["schedule"])
    except ValueError as exc:
        raise TraceError(f"bad summary value: {exc}") from None
    run = simulate(alpha, schedule, horizon, seed)
    expected = _normalize(format_trace(run))
    if lines != expected:
        for got, want in zip(lines, expected):
            if got != want:
                raise TraceError(
                    f"trace does not match its own parameters: "
                    f"got {got!r}, expected {want!r}"
                )
        raise TraceError(
            f"trace does not match its own parameters: "
            f"{len(lines)} lines recorded, {len(expected)} expected"
        )
    return run
