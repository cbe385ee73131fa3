"""Matrix star as reachability, shortest paths and path counting.

M* is the least solution of S = I + M S.  Over the Booleans it is the
reflexive-transitive closure, over min-plus it is all-pairs shortest paths
and over the naturals it counts paths (infinite once a cycle is reachable).
The star is computed by block elimination; repetition computes the same
matrix as a least fixpoint, and the two are compared.
"""

from semifix.fixpoint import SemiringMatrix, repetition
from semifix.semiring import INF

edges = [(0, 1, 4), (1, 2, 1), (0, 2, 7), (2, 3, 2), (3, 1, 3)]
n = 4


def matrix(sr, weight):
    from semifix.semiring import get_semiring

    zero = get_semiring(sr).zero
    rows = [[zero] * n for _ in range(n)]
    for i, j, w in edges:
        rows[i][j] = weight(w)
    return SemiringMatrix.from_values(sr, rows)


def show(title, m):
    print(title)
    for row in m.values():
        print("   ", " ".join(f"{'inf' if v == INF else v!s:>5}" for v in row))


reach = matrix("bool", lambda w: True)
show("reachability", reach.star())

dist = matrix("tropical", lambda w: w)
show("shortest paths", dist.star())
print("    block elimination == repetition:", dist.star() == repetition(dist))

dag = SemiringMatrix.from_values("nat", [[0, 1, 1, 0], [0, 0, 1, 1], [0, 0, 0, 1], [0, 0, 0, 0]])
show("path counts in a DAG", dag.star())
show("path counts with the cycle 1 -> 2 -> 3 -> 1", matrix("nat", lambda w: 1).star())
