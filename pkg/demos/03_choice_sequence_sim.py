"""Tour of the proof-event choice sequence simulator.

A run tracks a statement whose proof may arrive at a scheduled moment.
Until then the published sequence beta is 0; afterwards one candidate
per moment is drawn and checked against the evidence stream, and the
first confirmed candidate is published forever.

Run with: python demos/03_choice_sequence_sim.py
"""

from ringterp import (
    check_conjuncts, format_trace, parse_alpha_spec, parse_schedule_spec,
    run_total, simulate,
)


def main() -> None:
    alpha = parse_alpha_spec("members:2,5@3")
    schedule = parse_schedule_spec("phi:4")

    print("== a run that fires ==")
    run = simulate(alpha, schedule, horizon=14, seed=11)
    print(format_trace(run), end="")

    print()
    print("== the five-clause discipline ==")
    for clause, status in check_conjuncts(run).as_dict().items():
        print(f"  {clause}: {status}")

    print()
    print("== schedules control everything ==")
    silent = simulate(alpha, parse_schedule_spec("never"), horizon=40, seed=11)
    print("never schedule, beta stays zero:", set(silent.beta) == {0})

    refuted = simulate(alpha, parse_schedule_spec("notphi:2"), horizon=40,
                       seed=11)
    print("refutation schedule, beta stays zero:", set(refuted.beta) == {0})

    print()
    print("== against the full species, firing is immediate ==")
    for t in (1, 3, 7):
        total = run_total(parse_schedule_spec(f"phi:{t}"), horizon=30, seed=5)
        moment, value = total.stabilized
        print(f"  proof at {t}: stabilized at moment {moment} "
              f"with value {value}")


if __name__ == "__main__":
    main()
