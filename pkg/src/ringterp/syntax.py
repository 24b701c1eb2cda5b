"""Formula and term ASTs shared by the two languages of the toolkit.

The source language is first-order arithmetic over the naturals extended
with species (set) variables and constants: terms are built from numerals,
nat-sorted variables, +, *, succ and a pairing function, and formulas add
membership (n in X) and species equality to the usual connectives and
quantifiers.  The target language is the elementary language of ordered
rings: all variables range over reals, the constants 0 and 1 (and numerals
as sums of 1) are available, and species disappear in favour of pairs of
real variables or constants.  Defined quantifiers (existsN, forallN,
existsR, forallR) are target-side macro nodes that a full expansion
rewrites into plain real quantifiers.

All nodes are immutable dataclasses compared structurally.  Negation is
not a node: (not f) is sugar for (imp f (bot)).  Apartness is kept as a
node of its own but is definitionally equal to (or (< a b) (< b a));
normalize_apart performs that unfolding.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Union


class Sort(enum.Enum):
    NAT = "Nat"
    SPECIES = "Species"
    REAL = "Real"


class Language(enum.Enum):
    SOURCE = "source"
    TARGET = "target"

    @property
    def term_sort(self) -> Sort:
        """Sort of every term variable of the language."""
        return Sort.NAT if self is Language.SOURCE else Sort.REAL


class SortError(ValueError):
    """A term or formula breaks the sorting rules of its language."""


_SPECIES_BINDER = re.compile(r"^X(\d+)$")


def species_binder_index(name: str) -> int:
    """Index i of a species binder written X<i>; raises SortError otherwise."""
    m = _SPECIES_BINDER.match(name)
    if m is None:
        raise SortError(f"species binder must look like X0, X1, ...: got {name!r}")
    return int(m.group(1))


def species_binder_name(index: int) -> str:
    return f"X{index}"


# ---------------------------------------------------------------------------
# Terms


class Term:
    __slots__ = ()


@dataclass(frozen=True)
class Var(Term):
    name: str
    sort: Sort


@dataclass(frozen=True)
class NatConst(Term):
    """Numeral; read as a natural in the source and as its dyadic embedding
    in the target."""

    value: int

    def __post_init__(self) -> None:
        if self.value < 0:
            raise ValueError(f"numerals are nonnegative, got {self.value}")


@dataclass(frozen=True)
class RealConst(Term):
    """Named real constant of the target language."""

    name: str


@dataclass(frozen=True)
class Add(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Mul(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Pair(Term):
    """Cantor pairing applied to two nat terms (source language only)."""

    left: Term
    right: Term


@dataclass(frozen=True)
class Succ(Term):
    arg: Term


ZERO = NatConst(0)
ONE = NatConst(1)


# ---------------------------------------------------------------------------
# Species references


class SpeciesRef:
    __slots__ = ()


@dataclass(frozen=True)
class SpeciesVar(SpeciesRef):
    index: int

    def __post_init__(self) -> None:
        if self.index < 0:
            raise ValueError("species indices are nonnegative")


@dataclass(frozen=True)
class SpeciesConst(SpeciesRef):
    index: int

    def __post_init__(self) -> None:
        if self.index < 0:
            raise ValueError("species indices are nonnegative")


# ---------------------------------------------------------------------------
# Formulas


class Formula:
    __slots__ = ()


@dataclass(frozen=True)
class Bottom(Formula):
    pass


BOT = Bottom()


@dataclass(frozen=True)
class Eq(Formula):
    left: Term
    right: Term


@dataclass(frozen=True)
class Lt(Formula):
    left: Term
    right: Term


@dataclass(frozen=True)
class Apart(Formula):
    """Apartness; definitionally (or (< a b) (< b a))."""

    left: Term
    right: Term


@dataclass(frozen=True)
class In(Formula):
    element: Term
    species: SpeciesRef


@dataclass(frozen=True)
class SpeciesEq(Formula):
    left: SpeciesRef
    right: SpeciesRef


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


class QuantKind(enum.Enum):
    EXISTS_NAT = "existsN"
    FORALL_NAT = "forallN"
    EXISTS_REAL = "existsR"
    FORALL_REAL = "forallR"


@dataclass(frozen=True)
class Exists(Formula):
    var: str
    sort: Sort
    body: Formula


@dataclass(frozen=True)
class Forall(Formula):
    var: str
    sort: Sort
    body: Formula


@dataclass(frozen=True)
class DefinedQuant(Formula):
    """Macro quantifier of the target language.

    existsN/forallN relativize a real variable to the naturals, existsR and
    forallR are the real quantifiers themselves; expansion replaces all four
    with plain Exists/Forall over Real.
    """

    kind: QuantKind
    var: str
    body: Formula


def neg(f: Formula) -> Formula:
    """Negation as implication into absurdity."""
    return Implies(f, BOT)


# ---------------------------------------------------------------------------
# Well-sortedness


def term_sort(t: Term, language: Language) -> Sort:
    """Sort of t in the given language; raises SortError when t is illegal."""
    ambient = language.term_sort
    if isinstance(t, Var):
        if t.sort is not ambient:
            raise SortError(
                f"variable {t.name!r} has sort {t.sort.value}, "
                f"but {language.value} terms have sort {ambient.value}"
            )
        return ambient
    if isinstance(t, NatConst):
        return ambient
    if isinstance(t, RealConst):
        if language is not Language.TARGET:
            raise SortError(f"real constant {t.name!r} is target-language only")
        return Sort.REAL
    if isinstance(t, (Add, Mul)):
        term_sort(t.left, language)
        term_sort(t.right, language)
        return ambient
    if isinstance(t, Pair):
        if language is not Language.SOURCE:
            raise SortError("pairing is a source-language operation")
        term_sort(t.left, language)
        term_sort(t.right, language)
        return Sort.NAT
    if isinstance(t, Succ):
        if language is not Language.SOURCE:
            raise SortError("succ is a source-language operation")
        term_sort(t.arg, language)
        return Sort.NAT
    raise SortError(f"not a term: {t!r}")


def check_formula(f: Formula, language: Language) -> None:
    """Raise SortError unless f is a well-sorted formula of the language."""
    src = language is Language.SOURCE
    if isinstance(f, Bottom):
        return
    if isinstance(f, (Eq, Lt, Apart)):
        term_sort(f.left, language)
        term_sort(f.right, language)
        return
    if isinstance(f, In):
        if not src:
            raise SortError("membership atoms are source-language only")
        term_sort(f.element, language)
        if not isinstance(f.species, SpeciesRef):
            raise SortError(f"not a species reference: {f.species!r}")
        return
    if isinstance(f, SpeciesEq):
        if not src:
            raise SortError("species equality is source-language only")
        for ref in (f.left, f.right):
            if not isinstance(ref, SpeciesRef):
                raise SortError(f"not a species reference: {ref!r}")
        return
    if isinstance(f, (And, Or, Implies)):
        check_formula(f.left, language)
        check_formula(f.right, language)
        return
    if isinstance(f, (Exists, Forall)):
        if src:
            if f.sort is Sort.SPECIES:
                species_binder_index(f.var)
            elif f.sort is not Sort.NAT:
                raise SortError(
                    f"source quantifiers bind Nat or Species, got {f.sort.value}"
                )
        elif f.sort is not Sort.REAL:
            raise SortError(f"target quantifiers bind Real, got {f.sort.value}")
        check_formula(f.body, language)
        return
    if isinstance(f, DefinedQuant):
        if src:
            raise SortError("defined quantifiers belong to the target language")
        check_formula(f.body, language)
        return
    raise SortError(f"not a formula: {f!r}")


def infer_term_sort(t: Term) -> Optional[Sort]:
    """Sort a term commits to, or None when only numerals occur."""
    if isinstance(t, Var):
        return t.sort
    if isinstance(t, NatConst):
        return None
    if isinstance(t, RealConst):
        return Sort.REAL
    if isinstance(t, (Pair, Succ)):
        return Sort.NAT
    if isinstance(t, (Add, Mul)):
        lo = infer_term_sort(t.left)
        hi = infer_term_sort(t.right)
        if lo is not None and hi is not None and lo is not hi:
            raise SortError(f"mixed-sort term: {t!r}")
        return lo or hi
    raise SortError(f"not a term: {t!r}")


# ---------------------------------------------------------------------------
# Variable bookkeeping


@dataclass(frozen=True)
class FreeVars:
    nat: frozenset[str]
    species: frozenset[int]
    real: frozenset[str]


def term_var_names(t: Term) -> frozenset[str]:
    out: set[str] = set()

    def walk(t: Term) -> None:
        if isinstance(t, Var):
            out.add(t.name)
        elif isinstance(t, (Add, Mul, Pair)):
            walk(t.left)
            walk(t.right)
        elif isinstance(t, Succ):
            walk(t.arg)

    walk(t)
    return frozenset(out)


def free_vars(f: Formula) -> FreeVars:
    nat: set[str] = set()
    species: set[int] = set()
    real: set[str] = set()

    def add_term(t: Term, bound: frozenset[str]) -> None:
        if isinstance(t, Var):
            if t.name not in bound:
                (nat if t.sort is Sort.NAT else real).add(t.name)
        elif isinstance(t, (Add, Mul, Pair)):
            add_term(t.left, bound)
            add_term(t.right, bound)
        elif isinstance(t, Succ):
            add_term(t.arg, bound)

    def add_ref(ref: SpeciesRef, bound_species: frozenset[int]) -> None:
        if isinstance(ref, SpeciesVar) and ref.index not in bound_species:
            species.add(ref.index)

    def walk(f: Formula, bound: frozenset[str], bspec: frozenset[int]) -> None:
        if isinstance(f, Bottom):
            return
        if isinstance(f, (Eq, Lt, Apart)):
            add_term(f.left, bound)
            add_term(f.right, bound)
        elif isinstance(f, In):
            add_term(f.element, bound)
            add_ref(f.species, bspec)
        elif isinstance(f, SpeciesEq):
            add_ref(f.left, bspec)
            add_ref(f.right, bspec)
        elif isinstance(f, (And, Or, Implies)):
            walk(f.left, bound, bspec)
            walk(f.right, bound, bspec)
        elif isinstance(f, (Exists, Forall)):
            if f.sort is Sort.SPECIES:
                walk(f.body, bound, bspec | {species_binder_index(f.var)})
            else:
                walk(f.body, bound | {f.var}, bspec)
        elif isinstance(f, DefinedQuant):
            walk(f.body, bound | {f.var}, bspec)
        else:
            raise SortError(f"not a formula: {f!r}")

    walk(f, frozenset(), frozenset())
    return FreeVars(frozenset(nat), frozenset(species), frozenset(real))


def is_closed(f: Formula) -> bool:
    fv = free_vars(f)
    return not (fv.nat or fv.species or fv.real)


def _collect(f: Formula, on_term: Callable[[Term], None],
             on_ref: Callable[[SpeciesRef], None],
             on_binder: Callable[[str, Sort], None]) -> None:
    """Visit every term, species reference and binder of f."""
    if isinstance(f, (Eq, Lt, Apart)):
        on_term(f.left)
        on_term(f.right)
    elif isinstance(f, In):
        on_term(f.element)
        on_ref(f.species)
    elif isinstance(f, SpeciesEq):
        on_ref(f.left)
        on_ref(f.right)
    elif isinstance(f, (And, Or, Implies)):
        _collect(f.left, on_term, on_ref, on_binder)
        _collect(f.right, on_term, on_ref, on_binder)
    elif isinstance(f, (Exists, Forall)):
        on_binder(f.var, f.sort)
        _collect(f.body, on_term, on_ref, on_binder)
    elif isinstance(f, DefinedQuant):
        on_binder(f.var, Sort.REAL)
        _collect(f.body, on_term, on_ref, on_binder)


def all_var_names(f: Formula) -> frozenset[str]:
    """Every term-variable name occurring in f, free or bound, plus all
    non-species binder names."""
    names: set[str] = set()

    def on_term(t: Term) -> None:
        names.update(term_var_names(t))

    def on_binder(var: str, sort: Sort) -> None:
        if sort is not Sort.SPECIES:
            names.add(var)

    _collect(f, on_term, lambda ref: None, on_binder)
    return frozenset(names)


def species_indices(f: Formula) -> tuple[frozenset[int], frozenset[int]]:
    """(variable indices, constant indices) mentioned anywhere in f,
    including bound species variables."""
    var_idx: set[int] = set()
    const_idx: set[int] = set()

    def on_ref(ref: SpeciesRef) -> None:
        if isinstance(ref, SpeciesVar):
            var_idx.add(ref.index)
        else:
            const_idx.add(ref.index)

    def on_binder(var: str, sort: Sort) -> None:
        if sort is Sort.SPECIES:
            var_idx.add(species_binder_index(var))

    _collect(f, lambda t: None, on_ref, on_binder)
    return frozenset(var_idx), frozenset(const_idx)


def real_constants(f: Formula) -> frozenset[str]:
    names: set[str] = set()

    def on_term(t: Term) -> None:
        if isinstance(t, RealConst):
            names.add(t.name)
        elif isinstance(t, (Add, Mul, Pair)):
            on_term(t.left)
            on_term(t.right)
        elif isinstance(t, Succ):
            on_term(t.arg)

    _collect(f, on_term, lambda ref: None, lambda v, s: None)
    return frozenset(names)


def fresh_name(base: str, forbidden: Iterable[str]) -> str:
    """base when unused, else base_1, base_2, ... (deterministic)."""
    taken = set(forbidden)
    if base not in taken:
        return base
    i = 1
    while f"{base}_{i}" in taken:
        i += 1
    return f"{base}_{i}"


# ---------------------------------------------------------------------------
# Substitution


def substitute_term(t: Term, name: str, replacement: Term) -> Term:
    if isinstance(t, Var):
        return replacement if t.name == name else t
    if isinstance(t, Add):
        return Add(substitute_term(t.left, name, replacement),
                   substitute_term(t.right, name, replacement))
    if isinstance(t, Mul):
        return Mul(substitute_term(t.left, name, replacement),
                   substitute_term(t.right, name, replacement))
    if isinstance(t, Pair):
        return Pair(substitute_term(t.left, name, replacement),
                    substitute_term(t.right, name, replacement))
    if isinstance(t, Succ):
        return Succ(substitute_term(t.arg, name, replacement))
    return t


def substitute(f: Formula, name: str, sort: Sort, replacement: Term) -> Formula:
    """Capture-avoiding substitution of replacement for the free variable
    (name, sort); clashing binders are renamed with a counter suffix."""
    rsort = infer_term_sort(replacement)
    if rsort is not None and rsort is not sort:
        raise SortError(
            f"cannot substitute a {rsort.value} term for the "
            f"{sort.value} variable {name!r}"
        )
    repl_names = term_var_names(replacement)

    def sub_t(t: Term) -> Term:
        return substitute_term(t, name, replacement)

    def walk(f: Formula) -> Formula:
        if isinstance(f, Bottom):
            return f
        if isinstance(f, Eq):
            return Eq(sub_t(f.left), sub_t(f.right))
        if isinstance(f, Lt):
            return Lt(sub_t(f.left), sub_t(f.right))
        if isinstance(f, Apart):
            return Apart(sub_t(f.left), sub_t(f.right))
        if isinstance(f, In):
            return In(sub_t(f.element), f.species)
        if isinstance(f, SpeciesEq):
            return f
        if isinstance(f, And):
            return And(walk(f.left), walk(f.right))
        if isinstance(f, Or):
            return Or(walk(f.left), walk(f.right))
        if isinstance(f, Implies):
            return Implies(walk(f.left), walk(f.right))
        if isinstance(f, (Exists, Forall, DefinedQuant)):
            binder_sort = Sort.REAL if isinstance(f, DefinedQuant) else f.sort
            if binder_sort is Sort.SPECIES:
                return _rebuild_quant(f, f.var, walk(f.body))
            if f.var == name:
                return f
            if f.var in repl_names:
                forbidden = repl_names | all_var_names(f.body) | {name}
                new = fresh_name(f.var, forbidden)
                body = substitute(f.body, f.var, binder_sort, Var(new, binder_sort))
                return _rebuild_quant(f, new, walk(body))
            return _rebuild_quant(f, f.var, walk(f.body))
        raise SortError(f"not a formula: {f!r}")

    return walk(f)


def _rebuild_quant(f: Formula, var: str, body: Formula) -> Formula:
    if isinstance(f, Exists):
        return Exists(var, f.sort, body)
    if isinstance(f, Forall):
        return Forall(var, f.sort, body)
    assert isinstance(f, DefinedQuant)
    return DefinedQuant(f.kind, var, body)


# ---------------------------------------------------------------------------
# Normalization and comparison


def normalize_apart(f: Formula) -> Formula:
    """Unfold every apartness atom into its definition (or (< a b) (< b a))."""
    if isinstance(f, Apart):
        return Or(Lt(f.left, f.right), Lt(f.right, f.left))
    if isinstance(f, And):
        return And(normalize_apart(f.left), normalize_apart(f.right))
    if isinstance(f, Or):
        return Or(normalize_apart(f.left), normalize_apart(f.right))
    if isinstance(f, Implies):
        return Implies(normalize_apart(f.left), normalize_apart(f.right))
    if isinstance(f, Exists):
        return Exists(f.var, f.sort, normalize_apart(f.body))
    if isinstance(f, Forall):
        return Forall(f.var, f.sort, normalize_apart(f.body))
    if isinstance(f, DefinedQuant):
        return DefinedQuant(f.kind, f.var, normalize_apart(f.body))
    return f


def contains_defined_quant(f: Formula, kinds: Optional[frozenset] = None) -> bool:
    if isinstance(f, DefinedQuant):
        if kinds is None or f.kind in kinds:
            return True
        return contains_defined_quant(f.body, kinds)
    if isinstance(f, (And, Or, Implies)):
        return (contains_defined_quant(f.left, kinds)
                or contains_defined_quant(f.right, kinds))
    if isinstance(f, (Exists, Forall)):
        return contains_defined_quant(f.body, kinds)
    return False


def alpha_equal(f: Formula, g: Formula) -> bool:
    """Structural equality up to renaming of bound variables."""

    def terms(a: Term, b: Term, ma: dict, mb: dict) -> bool:
        if type(a) is not type(b):
            return False
        if isinstance(a, Var):
            ka, kb = ma.get(a.name), mb.get(b.name)
            if ka is None and kb is None:
                return a.name == b.name and a.sort is b.sort
            return ka is not None and ka == kb and a.sort is b.sort
        if isinstance(a, NatConst):
            return a.value == b.value
        if isinstance(a, RealConst):
            return a.name == b.name
        if isinstance(a, Succ):
            return terms(a.arg, b.arg, ma, mb)
        return terms(a.left, b.left, ma, mb) and terms(a.right, b.right, ma, mb)

    def refs(a: SpeciesRef, b: SpeciesRef, sa: dict, sb: dict) -> bool:
        if type(a) is not type(b):
            return False
        if isinstance(a, SpeciesVar):
            ka, kb = sa.get(a.index), sb.get(b.index)
            if ka is None and kb is None:
                return a.index == b.index
            return ka is not None and ka == kb
        return a.index == b.index

    def walk(f: Formula, g: Formula, ma: dict, mb: dict,
             sa: dict, sb: dict, depth: int) -> bool:
        if type(f) is not type(g):
            return False
        if isinstance(f, Bottom):
            return True
        if isinstance(f, (Eq, Lt, Apart)):
            return (terms(f.left, g.left, ma, mb)
                    and terms(f.right, g.right, ma, mb))
        if isinstance(f, In):
            return (terms(f.element, g.element, ma, mb)
                    and refs(f.species, g.species, sa, sb))
        if isinstance(f, SpeciesEq):
            return (refs(f.left, g.left, sa, sb)
                    and refs(f.right, g.right, sa, sb))
        if isinstance(f, (And, Or, Implies)):
            return (walk(f.left, g.left, ma, mb, sa, sb, depth)
                    and walk(f.right, g.right, ma, mb, sa, sb, depth))
        if isinstance(f, (Exists, Forall)):
            if f.sort is not g.sort:
                return False
            if f.sort is Sort.SPECIES:
                sa2 = {**sa, species_binder_index(f.var): depth}
                sb2 = {**sb, species_binder_index(g.var): depth}
                return walk(f.body, g.body, ma, mb, sa2, sb2, depth + 1)
            ma2 = {**ma, f.var: depth}
            mb2 = {**mb, g.var: depth}
            return walk(f.body, g.body, ma2, mb2, sa, sb, depth + 1)
        if isinstance(f, DefinedQuant):
            if f.kind is not g.kind:
                return False
            ma2 = {**ma, f.var: depth}
            mb2 = {**mb, g.var: depth}
            return walk(f.body, g.body, ma2, mb2, sa, sb, depth + 1)
        return False

    return walk(f, g, {}, {}, {}, {}, 0)
