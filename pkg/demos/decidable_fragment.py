"""Bounded formulas: classification, truth, characteristic terms and witnesses."""

from twosorted import char_term, choice_witness, classify, least_witness, parse_formula, to_text, truth
from twosorted.decidable import cfd_witness
from twosorted.kernel import eval_term
from twosorted.syntax import NumVar

x, y = NumVar("x"), NumVar("y")

prime = parse_formula("1 < x & forall d. d < x -> (1 < d -> ~(d | x))")
print(classify(prime))
print([n for n in range(20) if truth(prime, asg={x: n})])

# The characteristic term is 0 exactly on the primes and never exceeds 1.
q = char_term(prime).q
print(to_text(q)[:80], "...")
print([eval_term(q, asg={x: n}) for n in range(12)])

# Least witness by unbounded search up to a cap.
print(least_witness(parse_formula("x <= y * y"), y, asg={x: 50}, cap=100))

# A choice table: for each x below the bound, the least y with x < y * y.
print(choice_witness(parse_formula("x < y * y"), x, y, domain_bound=8, cap=10))

# A 0/1 characteristic table for evenness.
print(cfd_witness(parse_formula("exists y. y < x' & y + y = x"), x, domain_bound=8))
