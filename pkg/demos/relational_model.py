"""Weighted relations over multisets compute the same things as power series.

A relation R : !A x B -> S is read off as one series per element of B.
Composition, differentiation and the least fixpoint are computed on the
multiset side and compared with the series side.
"""

from semifix import Context, EquationSystem, kleene_fixpoint
from semifix.differential import derivative
from semifix.relmodel import (
    WeightedRelation,
    cokleisli_compose,
    rel_derivative,
    rel_fixpoint,
    relation_of_series,
    series_of_relation,
)

ctx = Context("nat", ("x",), 4)
p = ctx.parse("1 + x + 2*x^2")
q = ctx.parse("x + x^3")

r, s = relation_of_series([p]), relation_of_series([q])
composed = series_of_relation(cokleisli_compose(r, s), ("x",))[0]
print("q after p, relationally:", composed)
print("q(p(x)) by substitution: ", q.substitute({"x": p}))

d = rel_derivative(relation_of_series([q]))
print("D[q] relationally:", series_of_relation(d, ("x", "a_x"))[0])
print("D[q] symbolically:", derivative(q))

# B = z + z*B^2 as weights on ([z], B) and ([z, B, B], B)
tree = WeightedRelation("nat", 2, 1, 9, {((1, 0), 0): 1, ((1, 2), 0): 1})
fix = series_of_relation(rel_fixpoint(tree, 1), ("z",))[0]
sys = EquationSystem.from_text("nat", ("z",), ("B",), ["z + z*B^2"], 9)
print("fixpoint relationally:", fix)
print("fixpoint by Kleene:   ", kleene_fixpoint(sys).solution[0])
