"""Dual-context pattern typing and expression typing.

Patterns are typed against two contexts: one for the variables usable on a
successful match (even negation depth) and one for the temporarily
deactivated variables (odd depth); negation swaps them.  Built-in booleans,
pairs and binary sums illustrate the rules; user programs declare nominal
data types instead.

Typing is an optional phase: wellformedness and compilation never consult
types.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Optional, Union

from .semantics import ECase, ECtor, EVar
from .syntax import Absurd, And, Ctor, CtorName, Neg, Or, Pattern, Var, Wild


@dataclass(frozen=True)
class Bool:
    pass


@dataclass(frozen=True)
class Pair:
    left: "Type"
    right: "Type"


@dataclass(frozen=True)
class Sum:
    left: "Type"
    right: "Type"


@dataclass(frozen=True)
class Named:
    name: str


Type = Union[Bool, Pair, Sum, Named]

TRUE = CtorName("True", 0)
FALSE = CtorName("False", 0)
PAIR = CtorName("Pair", 2)
INL = CtorName("Inl", 1)
INR = CtorName("Inr", 1)


class DeclError(ValueError):
    pass


@dataclass
class DataDecls:
    """Signature table: type name -> ordered constructors with argument
    types.  Constructor names must be unique across declarations."""

    types: dict = field(default_factory=dict)  # name -> tuple[(CtorName, tuple[Type])]

    def __post_init__(self):
        seen = {}
        for type_name, ctors in self.types.items():
            for ctor, arg_types in ctors:
                if len(arg_types) != ctor.arity:
                    raise DeclError(
                        f"constructor {ctor.name} declared with "
                        f"{len(arg_types)} argument types but arity {ctor.arity}"
                    )
                if ctor in seen:
                    raise DeclError(
                        f"constructor {ctor.name}/{ctor.arity} declared in both "
                        f"{seen[ctor]} and {type_name}"
                    )
                seen[ctor] = type_name
        self._owner = seen

    def declare(self, type_name: str, ctors) -> None:
        self.types[type_name] = tuple(ctors)
        self.__post_init__()

    def has_type(self, name: str) -> bool:
        return name in self.types

    def ctors_of(self, type_name: str):
        if type_name not in self.types:
            raise DeclError(f"unknown type {type_name}")
        return self.types[type_name]

    def ctor_names(self, type_name: str):
        return tuple(c for c, _ in self.ctors_of(type_name))

    def owner(self, ctor: CtorName) -> Optional[str]:
        return self._owner.get(ctor)

    def owner_of_all(self, ctors) -> Optional[str]:
        """The unique type declaring every given constructor, if any."""
        owners = {self._owner.get(c) for c in ctors}
        if len(owners) == 1 and None not in owners:
            return owners.pop()
        return None

    def arg_types(self, ctor: CtorName):
        owner = self.owner(ctor)
        if owner is None:
            raise DeclError(f"undeclared constructor {ctor.name}/{ctor.arity}")
        for c, arg_types in self.types[owner]:
            if c == ctor:
                return arg_types
        raise AssertionError


def signature_of(tau: Type, decls: Optional[DataDecls]):
    """Constructors of a type with their argument types."""
    if isinstance(tau, Bool):
        return ((TRUE, ()), (FALSE, ()))
    if isinstance(tau, Pair):
        return ((PAIR, (tau.left, tau.right)),)
    if isinstance(tau, Sum):
        return ((INL, (tau.left,)), (INR, (tau.right,)))
    if isinstance(tau, Named):
        if decls is None:
            raise DeclError(f"no declarations supplied for type {tau.name}")
        return decls.ctors_of(tau.name)
    raise TypeError(f"not a type: {tau!r}")


# --- results -----------------------------------------------------------------


@dataclass(frozen=True)
class Typed:
    gamma: tuple  # of (name, Type), even-negation binders
    delta: tuple  # of (name, Type), odd-negation binders


@dataclass(frozen=True)
class Ok:
    type: Type


@dataclass(frozen=True)
class Ill:
    message: str


def _same_multiset(a, b) -> bool:
    return Counter(a) == Counter(b)


# --- pattern typing -----------------------------------------------------------


def type_pattern(p: Pattern, tau: Type, decls: Optional[DataDecls] = None):
    """Synthesize the dual binder contexts of a pattern at a type, or
    explain why it has none."""
    if isinstance(p, Var):
        return Typed(((p.name, tau),), ())
    if isinstance(p, (Wild, Absurd)):
        return Typed((), ())
    if isinstance(p, Neg):
        r = type_pattern(p.sub, tau, decls)
        if isinstance(r, Ill):
            return r
        return Typed(r.delta, r.gamma)
    if isinstance(p, And):
        r1 = type_pattern(p.left, tau, decls)
        r2 = type_pattern(p.right, tau, decls)
        for r in (r1, r2):
            if isinstance(r, Ill):
                return r
        if not _same_multiset(r1.delta, r2.delta):
            return Ill(
                f"conjuncts bind different negated variables: "
                f"{r1.delta} vs {r2.delta}"
            )
        return Typed(r1.gamma + r2.gamma, r1.delta)
    if isinstance(p, Or):
        r1 = type_pattern(p.left, tau, decls)
        r2 = type_pattern(p.right, tau, decls)
        for r in (r1, r2):
            if isinstance(r, Ill):
                return r
        if not _same_multiset(r1.gamma, r2.gamma):
            return Ill(
                f"disjuncts bind different variables: {r1.gamma} vs {r2.gamma}"
            )
        return Typed(r1.gamma, r1.delta + r2.delta)
    if isinstance(p, Ctor):
        try:
            sig = signature_of(tau, decls)
        except DeclError as err:
            return Ill(str(err))
        for ctor, arg_types in sig:
            if ctor == p.ctor:
                gamma: tuple = ()
                delta: tuple = ()
                for sub, sub_tau in zip(p.args, arg_types):
                    r = type_pattern(sub, sub_tau, decls)
                    if isinstance(r, Ill):
                        return r
                    gamma += r.gamma
                    delta += r.delta
                return Typed(gamma, delta)
        return Ill(
            f"constructor {p.ctor.name}/{p.ctor.arity} does not belong to "
            f"type {format_type(tau)}"
        )
    raise TypeError(f"not a pattern: {p!r}")


# --- expression typing ----------------------------------------------------------


def type_expr(ctx, e, decls: Optional[DataDecls] = None):
    """Synthesize the type of an expression under a context, or explain the
    first failing premise."""
    if isinstance(e, EVar):
        for name, tau in reversed(ctx):
            if name == e.name:
                return Ok(tau)
        return Ill(f"unbound variable {e.name}")
    if isinstance(e, ECtor):
        # Declared constructors take precedence over the built-in ones, so
        # programs may declare their own True and False.
        if decls is not None and decls.owner(e.ctor) is not None:
            owner = decls.owner(e.ctor)
            expected = decls.arg_types(e.ctor)
            for a, want in zip(e.args, expected):
                r = type_expr(ctx, a, decls)
                if isinstance(r, Ill):
                    return r
                if r.type != want:
                    return Ill(
                        f"argument of {e.ctor.name} has type "
                        f"{format_type(r.type)}, expected {format_type(want)}"
                    )
            return Ok(Named(owner))
        if e.ctor == TRUE or e.ctor == FALSE:
            return Ok(Bool())
        if e.ctor == PAIR:
            parts = [type_expr(ctx, a, decls) for a in e.args]
            for r in parts:
                if isinstance(r, Ill):
                    return r
            return Ok(Pair(parts[0].type, parts[1].type))
        if e.ctor in (INL, INR):
            # The other sum component is not determined by the term; the
            # syntax-directed rules cannot synthesize it.
            return Ill(
                f"cannot infer the full sum type of {e.ctor.name}; "
                f"use a declared data type"
            )
        return Ill(f"undeclared constructor {e.ctor.name}/{e.ctor.arity}")
    if isinstance(e, ECase):
        scrut = type_expr(ctx, e.scrutinee, decls)
        if isinstance(scrut, Ill):
            return scrut
        result: Optional[Type] = None
        for c in e.clauses:
            r = type_pattern(c.pattern, scrut.type, decls)
            if isinstance(r, Ill):
                return r
            # The odd-negation context plays no role in the clause body;
            # it is synthesized per clause and discarded.
            rhs = type_expr(ctx + r.gamma, c.rhs, decls)
            if isinstance(rhs, Ill):
                return rhs
            if result is None:
                result = rhs.type
            elif rhs.type != result:
                return Ill(
                    f"clause result type {format_type(rhs.type)} differs "
                    f"from {format_type(result)}"
                )
        dflt = type_expr(ctx, e.default_rhs, decls)
        if isinstance(dflt, Ill):
            return dflt
        if result is not None and dflt.type != result:
            return Ill(
                f"default result type {format_type(dflt.type)} differs "
                f"from {format_type(result)}"
            )
        return Ok(dflt.type if result is None else result)
    raise TypeError(f"not an expression: {e!r}")


def format_type(tau: Type) -> str:
    if isinstance(tau, Bool):
        return "Bool"
    if isinstance(tau, Pair):
        return f"({format_type(tau.left)} * {format_type(tau.right)})"
    if isinstance(tau, Sum):
        return f"({format_type(tau.left)} + {format_type(tau.right)})"
    if isinstance(tau, Named):
        return tau.name
    raise TypeError(f"not a type: {tau!r}")
