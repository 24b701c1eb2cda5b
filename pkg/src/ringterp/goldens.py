"""Frozen canonical prints of the translation's fixed formulas.

These strings are hand transcriptions, not the output of the printer;
tests and the selftest compare generated output against them so that a
drifting printer or a drifting formula builder cannot hide each other.
"""

SENTINEL = "(or (= y 0) (apart y 0))"

TAU_BOTTOM = SENTINEL

MEMBERSHIP_AS_WRITTEN = (
    "(imp (not (= (* x u1) v1)) (or (= y 0) (apart y 0)))"
)

MEMBERSHIP_NORMALIZED = (
    "(imp (not (= (* x v1) u1)) (or (= y 0) (apart y 0)))"
)

NAT_CORE = (
    "(and (not (< x 1)) (and (imp (or (not (= v u)) (not (= (* x v) u))) "
    "(or (= y 0) (apart y 0))) (forall (w Real) (imp (imp (not (= (* w v) u)) "
    "(or (= y 0) (apart y 0))) (and (imp (< w 1) (or (= y 0) (apart y 0))) "
    "(imp (< 1 w) (exists (w1 Real) (imp (or (apart w w1) "
    "(not (= (* w1 v) (+ u v)))) (or (= y 0) (apart y 0))))))))))"
)

NAT_PREDICATE = (
    "(forall (y Real) (exists (u Real) (exists (v Real) " + NAT_CORE + ")))"
)
