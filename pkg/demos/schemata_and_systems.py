"""Schema instances, side conditions, system descriptors and definitional extension."""

from twosorted import SchemaId, get_system, instantiate, match, parse_formula, parse_term, to_text
from twosorted.errors import SchemaError
from twosorted.kernel import eval_term
from twosorted.schemas import define_prim_rec, expand_defined, formula_in_language, system_table

ind = instantiate(SchemaId.IND, {"A": parse_formula("x + 0 = x"), "x": parse_term("x")})
print(to_text(ind))
print(to_text(match(ind, SchemaId.IND).pieces["A"]))

# A side condition failure names the condition.
try:
    instantiate("CFd", {"B": parse_formula("beta(x) = 0"), "x": parse_term("x")})
except SchemaError as exc:
    print("rejected:", exc)

# Systems differ in language: BIM has neither rec nor lambda.
bim, el = get_system("BIM"), get_system("EL")
f = parse_formula("(lam x. x)(0) = 0")
print(formula_in_language(f, bim), formula_in_language(f, el))

# Define ff(x, 0) = x and ff(x, v') = u + x, where u stands for ff(x, v).
el2, rule = define_prim_rec(el, "ff", parse_term("x"), parse_term("u + x"))
app = parse_term("ff(2, 3)", table=el2.signature())
print(eval_term(app, table=system_table(el2)))
flat = expand_defined(app, [rule])
print(to_text(flat), "=", eval_term(flat))
