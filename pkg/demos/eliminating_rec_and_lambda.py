"""The rec-less and lambda-less translations and their semantic checks."""

from twosorted import check_lambda_equiv, check_rec_equiv, lambda_eliminate, parse_formula, rec_eliminate, to_text
from twosorted.syntax import NumVar

x = NumVar("x")

f = parse_formula("rec(x; lam w. expof(w, 0) + 2; 3) = x + 6")
g = rec_eliminate(f)
print(to_text(g))
print([check_rec_equiv(f, asg={x: n}) for n in range(4)])

# lambda-abstracts become fresh function variables with a defining clause.
h = parse_formula("(lam z. z * z)(x) = x + x")
print(to_text(lambda_eliminate(h)))
print([check_lambda_equiv(h, asg={x: n}) for n in range(4)])

# Rec-free formulas pass through unchanged.
plain = parse_formula("forall y. y + 0 = y")
print(rec_eliminate(plain) == plain)
