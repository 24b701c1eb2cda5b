"""Tour of the full pipeline: translate, build a structure, evaluate.

The translation weakens every atom by a sentinel disjunction in a fixed
free real variable y.  Forcing all sentinel atoms false makes the
translation collapse to the classical reading of the source formula;
forcing them true absorbs everything.

Run with: python demos/05_translation_pipeline.py
"""

from ringterp import (
    Expansion, FiniteStructure, Language, TranslationConfig,
    encode_stabilized, eval_formula, translate,
)
from ringterp.sexpr import format_formula, parse_formula


def main() -> None:
    source_text = ("(exists (n Nat) (and (in n (sconst 1)) "
                   "(forall (X0 Species) (imp (in n X0) (in n X0)))))")
    f = parse_formula(source_text, Language.SOURCE)

    print("== translation ==")
    print("source:", source_text)
    macro = translate(f)
    print("macro: ", format_formula(macro, Language.TARGET))
    full = translate(f, config=TranslationConfig(expansion=Expansion.FULL))
    print("full mode expands to", format_formula(full, Language.TARGET).count(
        "(forall"), "universal real quantifiers")

    print()
    print("== evaluation over a finite structure ==")
    plain = FiniteStructure(
        nat_domain=(0, 1, 2, 3),
        species={1: encode_stabilized(2, 1), 2: encode_stabilized(3, 2)},
    )
    absorbing = FiniteStructure(
        nat_domain=(0, 1, 2, 3),
        species={1: encode_stabilized(2, 1), 2: encode_stabilized(3, 2)},
        sentinel_true=True,
    )

    source_value = eval_formula(f, plain, Language.SOURCE)
    print("source evaluation:", source_value)
    collapsed = eval_formula(macro, plain, Language.TARGET)
    print("translated, sentinel false (collapse):", collapsed)
    absorbed = eval_formula(macro, absorbing, Language.TARGET)
    print("translated, sentinel true (absorption):", absorbed)

    print()
    print("== the collapse holds across a random corpus ==")
    from ringterp.corpus import collapse_structure, corpus_formulas
    st = collapse_structure()
    agree = 0
    formulas = corpus_formulas(count=40)
    for g in formulas:
        s = eval_formula(g, st, Language.SOURCE)
        t = eval_formula(translate(g), st, Language.TARGET)
        agree += s == t
    print(f"agreement on {agree}/{len(formulas)} random closed formulas")


if __name__ == "__main__":
    main()
