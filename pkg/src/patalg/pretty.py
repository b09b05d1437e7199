"""Text rendering for patterns, values, expressions, normal forms, clause
matrices and decision trees.

Pattern connectives print at their surface precedence (! above & above |),
with binary operators treated as left-associative, so right-nested chains
keep their grouping parentheses.  Normalized disjunctive forms print in the
``||{ {x} & Sa, ... }`` notation.
"""

from __future__ import annotations

import json

from .compiler import ClauseMatrix, DecisionTree, Leaf
from .normalize import Ndnf, NegConj, PosConj, UnsatConj
from .semantics import ECase, ECtor, EVar
from .syntax import Absurd, And, Ctor, Neg, Or, Pattern, Value, Var, Wild

_OR, _AND, _NEG, _ATOM = 0, 1, 2, 3


def format_pattern(p: Pattern, _level: int = _OR) -> str:
    if isinstance(p, Var):
        s, level = p.name, _ATOM
    elif isinstance(p, Wild):
        s, level = "_", _ATOM
    elif isinstance(p, Absurd):
        s, level = "#", _ATOM
    elif isinstance(p, Ctor):
        if p.args:
            inner = ", ".join(format_pattern(a, _OR) for a in p.args)
            s = f"{p.ctor.name}({inner})"
        else:
            s = p.ctor.name
        level = _ATOM
    elif isinstance(p, Neg):
        s, level = f"!{format_pattern(p.sub, _NEG)}", _NEG
    elif isinstance(p, And):
        s = f"{format_pattern(p.left, _AND)} & {format_pattern(p.right, _AND + 1)}"
        level = _AND
    elif isinstance(p, Or):
        s = f"{format_pattern(p.left, _OR)} | {format_pattern(p.right, _OR + 1)}"
        level = _OR
    else:
        raise TypeError(f"not a pattern: {p!r}")
    return f"({s})" if level < _level else s


def format_value(v: Value) -> str:
    if v.args:
        return f"{v.ctor.name}({', '.join(format_value(a) for a in v.args)})"
    return v.ctor.name


def format_subst(s) -> str:
    return "[" + ", ".join(f"{m.var} -> {format_value(m.value)}" for m in s) + "]"


def format_expr(e) -> str:
    if isinstance(e, EVar):
        return e.name
    if isinstance(e, ECtor):
        if e.args:
            return f"{e.ctor.name}({', '.join(format_expr(a) for a in e.args)})"
        return e.ctor.name
    if isinstance(e, ECase):
        clauses = "".join(
            f"{format_pattern(c.pattern)} => {format_expr(c.rhs)}, "
            for c in e.clauses
        )
        return (
            f"case {format_expr(e.scrutinee)} of "
            f"{{ {clauses}default => {format_expr(e.default_rhs)} }}"
        )
    # Surface-language extension nodes (definition calls).
    name = getattr(e, "name", None)
    args = getattr(e, "args", None)
    if name is not None and args is not None:
        return f"{name}({', '.join(format_expr(a) for a in args)})"
    raise TypeError(f"not an expression: {e!r}")


# --- normal forms -------------------------------------------------------------


def _format_var_set(vars_) -> str:
    return "{" + ", ".join(sorted(vars_)) + "}"


def format_nconjunct(k) -> str:
    if isinstance(k, PosConj):
        if k.args:
            inner = ", ".join(format_nconjunct(a) for a in k.args)
            rhs = f"{k.ctor.name}({inner})"
        else:
            rhs = k.ctor.name
    elif isinstance(k, NegConj):
        names = sorted(k.banned, key=lambda c: (c.name, c.arity))
        rhs = "!{" + ", ".join(c.name for c in names) + "}"
    elif isinstance(k, UnsatConj):
        rhs = "#"
    else:
        raise TypeError(f"not a normalized conjunct: {k!r}")
    return f"{_format_var_set(k.vars)} & {rhs}"


def format_ndnf(d: Ndnf) -> str:
    if not d.conjuncts:
        return "||{}"
    return "||{ " + ", ".join(format_nconjunct(k) for k in d.conjuncts) + " }"


def format_dnf(conjuncts) -> str:
    """Disjunctive normal form, conjuncts still in pattern syntax."""
    if not conjuncts:
        return "||{}"
    return "||{ " + ", ".join(format_pattern(k) for k in conjuncts) + " }"


# --- programs -------------------------------------------------------------------


def format_program(prog) -> str:
    """Surface syntax of a whole program; parsing it back yields the same
    program up to whitespace."""
    from .typecheck import format_type

    lines = []
    for type_name, ctors in prog.decls.types.items():
        rendered = []
        for ctor, arg_types in ctors:
            if arg_types:
                rendered.append(
                    f"{ctor.name}({', '.join(format_type(t) for t in arg_types)})"
                )
            else:
                rendered.append(ctor.name)
        lines.append(f"data {type_name} = {' | '.join(rendered)};")
    for d in prog.defs:
        params = ", ".join(
            name if ann is None else f"{name}: {format_type(ann)}"
            for name, ann in d.params
        )
        lines.append(f"def {d.name}({params}) := {format_expr(d.body)};")
    if prog.main is not None:
        lines.append(f"main := {format_expr(prog.main)};")
    return "\n".join(lines) + "\n"


# --- matrices and trees ---------------------------------------------------------


def format_matrix(m: ClauseMatrix) -> str:
    scruts = ", ".join(format_expr(s) for s in m.scrutinees)
    lines = [f"case {scruts} of ["]
    for row in m.rows:
        cells = "  ".join(format_ndnf(c) for c in row.cells)
        sep = "  " if cells else ""
        lines.append(f"  {cells}{sep}=> {format_expr(row.rhs)}")
    lines.append(f"  default => {format_expr(m.default_rhs)}")
    lines.append("]")
    return "\n".join(lines)


def format_tree(t: DecisionTree, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(t, Leaf):
        return f"{pad}leaf {format_expr(t.rhs)}"
    lines = [f"{pad}switch {format_expr(t.scrutinee)} {{"]
    for arm in t.arms:
        head = arm.ctor.name
        if arm.binders:
            head += "(" + ", ".join(arm.binders) + ")"
        lines.append(f"{pad}  {head} =>")
        lines.append(format_tree(arm.subtree, indent + 2))
    lines.append(f"{pad}  default =>")
    lines.append(format_tree(t.default_arm, indent + 2))
    lines.append(f"{pad}}}")
    return "\n".join(lines)


def tree_to_obj(t: DecisionTree):
    """Machine form with stable field order: switch nodes carry `switch`,
    `arms` (each with `ctor`, `binders`, `tree`) and `default`; leaves carry
    `leaf`."""
    if isinstance(t, Leaf):
        return {"leaf": format_expr(t.rhs)}
    return {
        "switch": format_expr(t.scrutinee),
        "arms": [
            {
                "ctor": a.ctor.name,
                "binders": list(a.binders),
                "tree": tree_to_obj(a.subtree),
            }
            for a in t.arms
        ],
        "default": tree_to_obj(t.default_arm),
    }


def tree_to_json(t: DecisionTree) -> str:
    return json.dumps(tree_to_obj(t), indent=2)
