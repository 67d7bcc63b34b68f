"""Walk through the evaluation and reduction layers.

Evaluates a handful of double zeta values, character-twisted variants and
Witten sums to 40 digits, then shows their exact closed forms where the
reduction tables reach.
"""
from mpmath import mp

from mzv import EvalContext, char_dzeta_num, dzeta_num, witten_num
from mzv.corpus import parse_expr
from mzv.verify import reduce_ast

ctx = EvalContext(prec=40)

print("numeric layer (40 digits, guaranteed absolute error <= 1e-40)")
with mp.workdps(50):
    for label, value in [
        ("zeta(2,1)          ", dzeta_num(2, 1, ctx)),
        ("zeta(3,2)          ", dzeta_num(3, 2, ctx)),
        ("zeta(2bar,1)       ", char_dzeta_num("2b", "1", 2, 1, ctx)),
        ("zeta(2,1bar)       ", char_dzeta_num("1", "2b", 2, 1, ctx)),
        ("zeta(2bar,2bar)    ", char_dzeta_num("2b", "2b", 2, 2, ctx)),
        ("W(1,1,1)           ", witten_num(1, 1, 1, ctx)),
        ("W(2,1,1)           ", witten_num(2, 1, 1, ctx)),
    ]:
        print(f"  {label} = {mp.nstr(value, 40)}")

print()
print("symbolic layer (exact rational combinations of pi, log2, odd zetas, Li4(1/2))")
for text in [
    "dz(2,1)",
    "dz(3,2)",
    "dz(2,3)",
    "zeta(6)",
    "W(1,1,4)",
    "cs(2b,1;2,2)",
    "sum(j=2..6, 2^j*dz(j,7-j))",
]:
    expr = reduce_ast(parse_expr(text), {})
    print(f"  {text:28} = {expr.render()}")
