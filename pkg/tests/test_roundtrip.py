"""Program printing and reparsing."""

from patalg.parser import parse
from patalg.pretty import format_program


SOURCES = [
    "data Day = Mo | Tu | We | Th | Fr | Sa | Su;\n"
    "data Msg = OnWeekend(Day) | AlmostWeekend;\n"
    "def describe(x) := case x of { y & (Sa | Su) => OnWeekend(y),"
    " default => AlmostWeekend };\n"
    "main := describe(Sa);\n",
    "data B = T | F;\n"
    "def neg(x: B) := case x of { T => F, !T => T, default => T };\n"
    "def both(x) := neg(neg(x));\n",
    "data C = A | K(C);\n"
    "def deep(x) := case x of { K(K(a)) => a, # => A, default => x };\n",
]


def test_parse_print_parse_is_identity():
    for source in SOURCES:
        prog = parse(source)
        printed = format_program(prog)
        again = parse(printed)
        assert again.decls.types == prog.decls.types
        assert again.defs == prog.defs
        assert again.main == prog.main
        # Printing is a fixpoint.
        assert format_program(again) == printed
