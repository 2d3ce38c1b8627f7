"""Constants, sequence codes and the rec operator, evaluated on big integers."""

from twosorted import eval_functor, eval_term, parse_functor, parse_term
from twosorted.kernel import check_defining_axiom, codec

# A handful of the built-in constants.
for text in ["rm(17, 5)", "quot(17, 5)", "exp(2, 10)", "fact(6)", "expof(72, 1)", "J(3, 4)"]:
    print(text, "=", eval_term(parse_term(text)))

# Prime-power codes: 2^5 * 3^6 * 5^7.
code = codec.encode_seq([5, 6, 7])
print(code, codec.decode_seq(code, 3), codec.seq_len(code))
print(codec.concat(codec.encode_seq([1, 2]), codec.encode_seq([3])) == codec.encode_seq([1, 2, 3]))

# rec(t; u; s) feeds the step functor the code of (previous value, counter).
print(eval_term(parse_term("rec(5; lam w. expof(w,0) + expof(w,1); 3)")))

# The course of values of the same recursion, as a single code.
step = eval_functor(parse_functor("lam w. expof(w,0) + expof(w,1)"))
cov = codec.course_of_values(5, step, 3)
print(codec.decode_seq(cov, 4))

# Defining equations can be checked pointwise.
print(check_defining_axiom("rm", (7, 3)), check_defining_axiom("exp", (3, 4)))
