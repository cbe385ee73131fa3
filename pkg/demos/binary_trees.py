"""Kleene iteration against Newton iteration on B = z + z*B^2.

Kleene gains two correct coefficients per round, Newton doubles the number
of correct coefficients per step.  The table prints how far each approximant
is from the least solution, as the first degree where they still differ.
"""

from semifix import EquationSystem, kleene_fixpoint, newton_solve
from semifix.differential import tuple_distance

D = 31

sys = EquationSystem.from_text("nat", ("z",), ("B",), ["z + z*B^2"], D)
kleene = kleene_fixpoint(sys)
newton = newton_solve(sys)
y = kleene.solution

print(f"B = z + z*B^2 modulo z^{D + 1}")
print(f"least solution: {y[0]}")
print()
print(f"{'step':>4}  {'kleene':>8}  {'newton':>8}")
rows = max(len(kleene.iterates), len(newton.approximants))
for n in range(rows):
    k = str(tuple_distance(kleene.iterates[n], y)) if n < len(kleene.iterates) else ""
    w = str(newton.distances[n]) if n < len(newton.distances) else ""
    print(f"{n:>4}  {k:>8}  {w:>8}")
print()
print(f"kleene stabilized after {kleene.iterations} iterations, newton after {newton.iterations} steps")
print("quadratic rate holds at every step:", all(newton.rate_check))
