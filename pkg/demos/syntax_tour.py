"""Parsing, printing and the structural operations on formulas."""

from twosorted import parse_formula, parse_term, to_text
from twosorted.syntax import NumVar, congruent, free_vars, is_free_for, substitute, superscript_w

x, y, w = NumVar("x"), NumVar("y"), NumVar("w")

# The concrete syntax accepts <, <= and <-> as sugar; the printer puts it back.
f = parse_formula("forall x. x < y -> exists z. z * z <= y + x")
print(to_text(f))
print(free_vars(f))

# Substitution renames a binder only when it would capture.
print(to_text(substitute(f, y, parse_term("x + 1"))))
print(is_free_for(parse_term("x"), y, f))   # x would be captured under forall x

# Congruence ignores bound-variable names.
print(congruent(f, parse_formula("forall u. u < y -> exists v. v * v <= y + u")))

# t^w: replace the i-th variable by the i-th component of a code w.
print(to_text(superscript_w(parse_term("x * y + x"), w, [x, y])))
