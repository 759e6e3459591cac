"""Local invariants decide whether a lattice sits in a unimodular lattice of given rank.

A one-dimensional lattice <k> lies in Z^m exactly when k is a sum of m
squares, so the first table below can be read against familiar number theory.
"""

from intlattice.embedding import embed_unimodular_feasible, rank12_exception_determinants
from intlattice.local import INFINITY, local_invariant, relevant_primes


def main() -> None:
    print(" k   m=1 m=2 m=3")
    for k in range(1, 16):
        marks = ["yes" if embed_unimodular_feasible([[k]], m).feasible else " - " for m in (1, 2, 3)]
        print(f"{k:2}   " + " ".join(marks))

    g = [[3, 2, 0], [2, 3, 0], [0, 0, 3]]
    print("\nLocal invariants of", g)
    for p in [INFINITY] + relevant_primes(15):
        inv = local_invariant(g, p)
        print(f"  {str(p):>8}: dim {inv.dim}, det class {inv.det_class}, Hasse {inv.hasse:+d}")
    for m in range(3, 7):
        v = embed_unimodular_feasible(g, m)
        print(f"  rank {m}: {'feasible' if v.feasible else 'infeasible'} ({v.rule})")

    print("\nRank-12 determinants up to 27 not covered by the determinant test for rank 14:",
          sorted(rank12_exception_determinants()))


if __name__ == "__main__":
    main()
