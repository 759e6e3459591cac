"""When does sqrt(s) L fit inside some Z^n?

The decision reduces to finding nonnegative integer weights on short dual
vectors.  Small lattices succeed quickly; the rank-12 complements in A15+ fail,
and a separate pair argument explains why.
"""

from intlattice.a15 import GENERATORS, SUPPORT_SETS, build_A15_plus, generated, named_lattices
from intlattice.eutactic import decide_s_integrable, is_eutactic_star, refute_2_integrability
from intlattice.lattice import from_gram, standard_lattice


def show_certificate(label, lat, s):
    res = decide_s_integrable(lat, s)
    print(f"{label}, s = {s}: {res.status} after {res.nodes} search nodes")
    if res.certificate is not None:
        for vec, mult in res.certificate.entries:
            print(f"    {mult} x {[str(x) for x in vec]}")
        ok = is_eutactic_star(res.certificate.expanded(), lat.basis, s, lat.form)
        print("    weights reproduce s times the Gram matrix:", ok)


def main() -> None:
    show_certificate("Z^3", standard_lattice(3), 2)
    show_certificate("<2>", from_gram([[2]]), 2)
    show_certificate("A2", from_gram([[2, -1], [-1, 2]]), 1)

    big = build_A15_plus()
    lats = named_lattices()
    print()
    for name in GENERATORS:
        res = decide_s_integrable(lats[name], 2)
        cert = refute_2_integrability(big, generated(name), SUPPORT_SETS[name])
        print(f"{name:5} search: {res.status:15} ({res.nodes} nodes)   "
              f"pair argument on coordinates {SUPPORT_SETS[name][0]}..16: {cert.mode}, "
              f"{cert.pairs_checked} pairs")


if __name__ == "__main__":
    main()
