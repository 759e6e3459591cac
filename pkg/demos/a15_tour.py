"""A walk through A15+ and the four rank-12 lattices cut out of it.

Run with ``python demos/a15_tour.py``.  Everything printed is computed here,
in exact arithmetic, from the construction of A15+ as A15 plus one glue vector.
"""

from intlattice.a15 import GENERATORS, build_A15_plus, classify_norm3_triples, generated, named_lattices
from intlattice.lattice import coset_profile, dual, parity
from intlattice.shortvec import kissing_number, minimum, vectors_up_to


def main() -> None:
    big = build_A15_plus()
    sv = vectors_up_to(big, 3)
    print("A15+ has rank", big.rank, "and determinant", big.det, f"({parity(big)})")
    print("  vectors of norm 2:", len(sv.with_norm(2)), " vectors of norm 3:", len(sv.with_norm(3)))

    # Three norm-3 vectors with this Gram matrix sit inside A15+ in two essentially different ways.
    for gram in ([[3, 2, 0], [2, 3, 0], [0, 0, 3]], [[3, 2, 2], [2, 3, 2], [2, 2, 3]]):
        orbits = classify_norm3_triples(gram)
        print(f"\nGram {gram}: {len(orbits)} orbits under coordinate permutations and sign")
        for o in orbits:
            sets = ", ".join(("+" if s > 0 else "-") + "t" + "".join(f"{i}," for i in i4).rstrip(",") for s, i4 in o.representative)
            print(f"  {sets}  (triple intersection size {o.invariant_tag[0]})")

    print("\nOrthogonal complements of the four rank-3 sublattices:")
    lats = named_lattices()
    for name in GENERATORS:
        lat = lats[name]
        print(f"  {name:5} rank {lat.rank}, det {lat.det}, dual minimum {minimum(dual(lat))}")

    print("\nKissing numbers separate the two determinant-15 lattices:",
          kissing_number(lats["N"]), "vs", kissing_number(lats["N'"]))

    prof = coset_profile(generated("N"))
    print("\nNonzero cosets of <a,b,c> in its dual, by minimal norm:")
    for e in prof.entries:
        print(f"  {str(e.minimal_norm):>6}  x{e.multiplicity}")


if __name__ == "__main__":
    main()
