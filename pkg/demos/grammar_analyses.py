"""One grammar, three semirings.

The same productions are read as counting equations over the naturals
(how many parse trees per word length), as reachability over the Booleans
(which lengths occur at all) and as min-plus equations with every terminal
costing one (the length of a shortest word).
"""

from semifix import kleene_fixpoint
from semifix.problems import read_grammar

TEXT = """\
# dangling else: i S | i S e S | o
S -> i S | i S e S | o
"""

g = read_grammar(TEXT)
D = 10

counts = kleene_fixpoint(g.system(semiring="nat", degree=D)).solution[0]
print("parse trees per length:", [counts.coefficient((n,)) for n in range(D + 1)])

lengths = kleene_fixpoint(g.system(semiring="bool", degree=D)).solution[0]
print("lengths with a word:   ", [n for n in range(D + 1) if lengths.coefficient((n,))])

costs = g.unit_costs()
shortest = kleene_fixpoint(costs.system(semiring="tropical", degree=0)).solution[0]
print("shortest word length:  ", shortest.constant_term())

# per-terminal costs: with o at 5 the cheapest word is still o, since i o costs 6
weighted = read_grammar(TEXT + "marker none\nweights\ni 1\ne 1\no 5\nend\n")
cheapest = kleene_fixpoint(weighted.system(semiring="tropical", degree=0)).solution[0]
print("cheapest word, o costs 5:", cheapest.constant_term())
