"""End-to-end checks of the A15+ construction and its four rank-12 complements.

Each check recomputes a quantity from scratch and compares it with a fixed
expected value; :func:`run_checks` returns one :class:`Claim` per comparison.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import ratmat as rm
from .a15 import (
    GENERATORS,
    SUPPORT_SETS,
    build_A15_plus,
    canonical_family,
    classify_norm3_triples,
    generated,
    minimality_report,
    named_lattices,
    norm3_family,
    project_to_complement,
    root,
)
from .embedding import rank12_exception_determinants
from .eutactic import NOT_INTEGRABLE, decide_s_integrable, projector, refute_2_integrability
from .lattice import Lattice, coset_profile, dual, index, is_primitive, parity
from .shortvec import kissing_number, minimum, vectors_up_to

F = Fraction

GRAM_15 = ((3, 2, 0), (2, 3, 0), (0, 0, 3))
GRAM_7 = ((3, 2, 2), (2, 3, 2), (2, 2, 3))

# projections of e_i - e_16, as (denominator, numerators) with expected norm
PROJECTIONS = {
    "N": {
        1: (60, (27, -13, -13, -1, -1, -9, -9, -9, 11, 11, 11, 11, 11, 11, 11, -49), F(19, 15)),
        2: (10, (-3, 7, -3, -1, -1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, -9), F(8, 5)),
        4: (20, (-3, -3, -3, 9, 9, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, -19), F(7, 5)),
        5: (20, (-3, -3, -3, 9, 9, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, -19), F(7, 5)),
        6: (12, (-3, 1, 1, 1, 1, 9, -3, -3, 1, 1, 1, 1, 1, 1, 1, -11), F(5, 3)),
        9: (1, (0,) * 8 + (1,) + (0,) * 6 + (-1,), F(2)),
    },
    "N'": {
        1: (10, (7, -3, -3, -1, -1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, -9), F(8, 5)),
        4: (15, (-1, -1, -1, 3, 3, -3, -3, 2, 2, 2, 2, 2, 2, 2, 2, -13), F(16, 15)),
        5: (15, (-1, -1, -1, 3, 3, -3, -3, 2, 2, 2, 2, 2, 2, 2, 2, -13), F(16, 15)),
        6: (12, (1, 1, 1, -3, -3, 9, -3, 1, 1, 1, 1, 1, 1, 1, 1, -11), F(5, 3)),
        8: (1, (0,) * 7 + (1,) + (0,) * 7 + (-1,), F(2)),
    },
}

# blocks whose internal roots make up the norm-2 vectors of N and N'
ROOT_BLOCKS = {
    "N": ({1}, {2, 3}, {4}, {5}, {6, 7, 8}, set(range(9, 17))),
    "N'": ({1, 2, 3}, {4}, {5}, {6, 7}, set(range(8, 17))),
}


@dataclass(frozen=True)
class Claim:
    claim: str
    expected: object
    computed: object
    status: str  # "PASS" or "FAIL"


def _claim(name: str, expected, computed) -> Claim:
    return Claim(name, expected, computed, "PASS" if expected == computed else "FAIL")


def _roots_in_blocks(blocks) -> set:
    return {root(i, j) for b in blocks for i in b for j in b if i != j}


def _structure(big: Lattice) -> list[Claim]:
    sv = vectors_up_to(big, 3)
    return [
        _claim("A15+ determinant", F(1), big.det),
        _claim("A15+ rank", 15, big.rank),
        _claim("A15+ parity", "odd", parity(big)),
        _claim("A15+ minimum", F(2), minimum(big)),
        _claim("A15+ norm-2 vectors", 240, len(sv.with_norm(2))),
        _claim("A15+ norm-3 vectors", 3640, len(sv.with_norm(3))),
    ]


def _classification() -> list[Claim]:
    out = []
    for label, gram, names in (("(3,2,0;2,3,0;0,0,3)", GRAM_15, ("N", "N'")), ("(3,2,2;2,3,2;2,2,3)", GRAM_7, ("N''", "N'''"))):
        orbits = classify_norm3_triples(gram)
        out.append(_claim(f"orbits of norm-3 triples with Gram {label}", 2, len(orbits)))
        expected = sorted(canonical_family(norm3_family(generated(n))) for n in names)
        computed = sorted(o.family for o in orbits)
        out.append(_claim(f"orbit representatives for {label} match " + ", ".join(names), True, expected == computed))
    return out


def _complements(big: Lattice, lats: dict[str, Lattice]) -> list[Claim]:
    out = []
    for name, det in (("N", 15), ("N'", 15), ("N''", 7), ("N'''", 7)):
        out.append(_claim(f"rank of {name}", 12, lats[name].rank))
        out.append(_claim(f"determinant of {name}", F(det), lats[name].det))
        out.append(_claim(f"generating sublattice of {name} is primitive", True, is_primitive(big, generated(name))))
    return out


def _coset_data(big: Lattice, lats: dict[str, Lattice]) -> list[Claim]:
    m = Lattice.from_generators(GENERATORS["N"])
    prof = coset_profile(m)
    expected = {F(1, 3): 2, F(2, 5): 2, F(3, 5): 2, F(11, 15): 4, F(14, 15): 4}
    out = [
        _claim("coset minimal norms of <a,b,c> in its dual", expected, prof.norms()),
        _claim("index of <a,b,c> in its dual", 15, index(dual(m), m)),
    ]
    roots = vectors_up_to(big, 2).with_norm(2)
    for name, lat in lats.items():
        dmin = minimum(dual(lat))
        bound = F(16, 15) if name in ("N", "N'") else F(1)
        out.append(_claim(f"dual minimum of {name} exceeds 1 and is at least {bound}", True, dmin > 1 and dmin >= bound))
        rho = projector(lat)
        images = {rho(r) for r in roots}
        short = vectors_up_to(dual(lat), 2).vectors
        out.append(_claim(f"dual vectors of {name} with norm <= 2 are projected roots", True, all(w in images for w in short)))
    return out


def _projections(big: Lattice, lats: dict[str, Lattice]) -> list[Claim]:
    out = []
    for name, table in PROJECTIONS.items():
        for i, (den, nums, nrm) in table.items():
            p = project_to_complement(big, lats[name], root(i, 16))
            expected = tuple(F(x, den) for x in nums)
            out.append(_claim(f"projection of e_{i} - e_16 onto {name}", expected, p))
            out.append(_claim(f"norm of projected e_{i} - e_16 in {name}", nrm, rm.dot(p, p)))
    return out


def _integrability(big: Lattice, lats: dict[str, Lattice], budget: int) -> list[Claim]:
    out = []
    for name in GENERATORS:
        cert = refute_2_integrability(big, generated(name), SUPPORT_SETS[name])
        out.append(_claim(f"pair obstruction proves {name} non-2-integrable", "all-pairs-violate", cert.mode))
    for name in ("N''", "N'''"):
        res = decide_s_integrable(lats[name], 2, budget)
        out.append(_claim(f"integer search on {name} at scale 2", NOT_INTEGRABLE, res.status))
    return out


def _kissing(lats: dict[str, Lattice]) -> list[Claim]:
    k1, k2 = kissing_number(lats["N"]), kissing_number(lats["N'"])
    out = [
        _claim("kissing number of N", 64, k1),
        _claim("kissing number of N'", 80, k2),
        _claim("N and N' are distinguished by kissing number", True, k1 != k2),
    ]
    for name, blocks in ROOT_BLOCKS.items():
        found = set(vectors_up_to(lats[name], 2).with_norm(2))
        out.append(_claim(f"norm-2 vectors of {name} are the roots inside its blocks", True, found == _roots_in_blocks(blocks)))
    return out


def _minimality(lats: dict[str, Lattice]) -> list[Claim]:
    out = []
    a7 = sorted(_roots_in_blocks([set(range(9, 17))]))
    for name in ("N", "N'"):
        rep = minimality_report(lats[name])
        out.append(_claim(f"minimality criterion holds for {name}", True, rep.holds))
        out.append(_claim(f"irreducible witness in {name} has rank at least 7", True, rep.witness_rank >= 7))
        contains = rm.rank(list(rep.witness) + a7) == rep.witness_rank
        out.append(_claim(f"witness in {name} contains the roots on coordinates 9..16", True, contains))
    return out


def _embedding() -> list[Claim]:
    return [_claim("rank-12 determinants up to 27 not forced into rank 14", {7, 15, 18, 23, 25}, rank12_exception_determinants())]


def run_checks(budget: int = 10**8) -> list[Claim]:
    big = build_A15_plus()
    lats = named_lattices()
    claims: list[Claim] = []
    claims += _structure(big)
    claims += _classification()
    claims += _complements(big, lats)
    claims += _coset_data(big, lats)
    claims += _projections(big, lats)
    claims += _integrability(big, lats, budget)
    claims += _kissing(lats)
    claims += _minimality(lats)
    claims += _embedding()
    return claims
