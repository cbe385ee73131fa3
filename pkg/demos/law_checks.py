"""Seeded law checks as a library call.

Each suite returns reports; a failure records the generated inputs and both
sides of the law.  Same seed, same cases, same text.
"""

from semifix.laws import SUITES, run_suite

for name in SUITES:
    reports = run_suite(name, 7, 20, "nat", 3)
    failed = sum(not r.passed for r in reports)
    print(f"{name:>10}: {len(reports)} laws, {failed} failed")

print()
for r in run_suite("monus", 7, 200, "tropical", 0):
    print(r)
