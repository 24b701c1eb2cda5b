"""Tour of the formula toolkit: parsing, printing, scope management.

Run with: python demos/01_formula_toolkit.py
"""

from ringterp import (
    Language, NatConst, Sort, Var, alpha_equal, free_vars, normalize_apart,
    substitute,
)
from ringterp.sexpr import format_formula, parse_formula


def show(title: str, text: str) -> None:
    print(f"{title:<28} {text}")


def main() -> None:
    print("== two-sorted source formulas ==")
    f = parse_formula(
        "(forall (n Nat) (exists (X0 Species) "
        "(imp (in n X0) (in (succ n) X0))))",
        Language.SOURCE,
    )
    show("parsed and reprinted:", format_formula(f, Language.SOURCE))

    open_formula = parse_formula("(and (< m n) (apart m 0))", Language.SOURCE)
    fv = free_vars(open_formula)
    show("free variables:", " ".join(sorted(fv.nat)))

    print()
    print("== substitution is capture avoiding ==")
    g = parse_formula("(exists (m Nat) (< m n))", Language.SOURCE)
    show("before:", format_formula(g, Language.SOURCE))
    replaced = substitute(g, "n", Sort.NAT, Var("m", Sort.NAT))
    show("after n := m:", format_formula(replaced, Language.SOURCE))

    h = substitute(g, "n", Sort.NAT, NatConst(7))
    show("after n := 7:", format_formula(h, Language.SOURCE))

    print()
    print("== alpha equivalence ==")
    a = parse_formula("(exists (p Nat) (= p 0))", Language.SOURCE)
    b = parse_formula("(exists (q Nat) (= q 0))", Language.SOURCE)
    show("renamed binders equal:", str(alpha_equal(a, b)))

    print()
    print("== apartness as a defined notion ==")
    apart = parse_formula("(apart n 3)", Language.SOURCE)
    show("as written:", format_formula(apart, Language.SOURCE))
    show("unfolded:", format_formula(normalize_apart(apart), Language.SOURCE))


if __name__ == "__main__":
    main()
