"""Tour of the dyadic real generators and bounded comparisons.

Run with: python demos/02_dyadic_reals.py
"""

from ringterp import (
    Precision, add, check_modulus, eq_at, from_nat, from_unit_fraction, lt_at,
    mul, nat_scalar,
)


def main() -> None:
    print("== generators approximate from below by dyadics ==")
    third = from_unit_fraction(3)
    print("stage approximants of 1/3 (value = at(x) / 2^x):")
    for x in range(0, 13, 3):
        approx = third.at(x)
        print(f"  stage {x:2}: {approx:5} / 2^{x} = {approx / (1 << x):.6f}")

    print()
    print("== arithmetic is exact integer bookkeeping ==")
    five_sixths = add(from_unit_fraction(2), from_unit_fraction(3))
    target = nat_scalar(5, from_unit_fraction(6))
    prec = Precision(k=16, horizon=64)
    print("1/2 + 1/3 = 5/6 witnessed:", eq_at(five_sixths, target, prec))

    half = mul(nat_scalar(2, from_unit_fraction(3)),
               nat_scalar(3, from_unit_fraction(4)))
    print("(2/3) * (3/4) = 1/2 witnessed:",
          eq_at(half, from_unit_fraction(2), prec))

    print()
    print("== comparisons search for witnesses, never guess ==")
    print("1/3 < 1/2 witnessed:",
          lt_at(from_unit_fraction(3), from_unit_fraction(2), prec))
    print("1/2 < 1/3 witnessed:",
          lt_at(from_unit_fraction(2), from_unit_fraction(3), prec))
    tiny = Precision(k=30, horizon=4)
    same = add(from_unit_fraction(6), from_unit_fraction(6))
    print("1/3 = 1/6 + 1/6 at horizon 4:", eq_at(third, same, tiny),
          "(no witness found, nothing refuted)")
    print("1/3 = 1/6 + 1/6 at horizon 64:",
          eq_at(third, same, Precision(k=8, horizon=64)))

    print()
    print("== modulus promises are auditable ==")
    product = mul(add(from_nat(2), from_unit_fraction(7)),
                  from_unit_fraction(5))
    print("(2 + 1/7) * 1/5 honors its hints:",
          check_modulus(product, Precision(k=20, horizon=64)))


if __name__ == "__main__":
    main()
