"""Tour of the run-to-quotient encoding.

A run that stabilized at moment m with value k becomes a pair of reals
u ~ 1/m and v ~ 1/(m*k); membership of n in the coded species is the
ring relation n * v = u, which singles out exactly n = k.

Run with: python demos/04_species_quotients.py
"""

from ringterp import (
    adaptive_precision, encode_run, membership_profile, parse_schedule_spec,
    quotient_status, run_total, simulate,
)
from ringterp.kripke import ChoiceSeq, Schedule


def main() -> None:
    print("== encoding a fired run ==")
    run = run_total(Schedule.phi_proved(4), horizon=30, seed=5)
    enc = encode_run(run)
    moment, value = enc.stabilized
    print(f"run stabilized at moment {moment} with value {value}")
    print(f"u approximates 1/{moment}, v approximates 1/{moment * value}; "
          "both report 0 before the firing moment:")
    for x in (0, moment - 1, moment, moment + 4):
        print(f"  stage {x:2}: u = {enc.u.at(x):4}, v = {enc.v.at(x):4}")

    print()
    print("== membership by bounded witness search ==")
    prec = adaptive_precision(enc, k=16)
    for n, status in membership_profile(enc, 8, prec).items():
        print(f"  {n} * v = u: {status.value}")

    print()
    print("== a silent run codes the full species ==")
    silent = simulate(ChoiceSeq.zero(), parse_schedule_spec("never"),
                      horizon=20, seed=1)
    degenerate = encode_run(silent)
    prec = adaptive_precision(degenerate, k=16)
    print("kind:", degenerate.kind)
    print("7 confirmed:", quotient_status(degenerate, 7, prec).value)

    print()
    print("== short horizons abstain instead of guessing ==")
    from ringterp import Precision, encode_stabilized
    late = encode_stabilized(30, 2)
    tight = Precision(k=16, horizon=8)
    print("cutover at 30, horizon 8:",
          quotient_status(late, 2, tight).value)


if __name__ == "__main__":
    main()
