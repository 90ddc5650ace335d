"""Brute-force Hall products on P1 over F_2 and F_3 against the shuffle-side coefficients."""

from hallshuffle.oracle_p1 import compare, hecke_check

for q in (2, 3):
    for d1, d2 in ((0, 0), (1, -1), (2, 1)):
        diffs = compare(q, d1, d2, 4)
        print(f"q={q} O({d1})*O({d2}): {'agree' if not diffs else diffs}")
    res = hecke_check(q, 0)
    print(f"q={q} Hecke action on O(0) matches eigenvalue: {res['matches_eigenvalue']}")
