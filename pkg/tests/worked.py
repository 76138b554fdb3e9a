"""Worked toy data: the three-patient hospital trajectories, their named
common subsequences, and the two small formal contexts."""

from pathlib import Path

from seqlat.alphabet import ITEMSET, TAXONOMY, AlphabetSchema, FieldSpec, Taxonomy
from seqlat.sequence import Pattern, maximal_antichain

DATA = Path(__file__).parent / "data"

HOSPITALS = Taxonomy.from_parents(
    "hospital", {"CH": "*", "CL": "*", "H1": "CH", "H2": "CH", "H3": "CL", "H4": "CL"}, "*"
)
SCHEMA = AlphabetSchema((FieldSpec("hospital", TAXONOMY, HOSPITALS, "H"), FieldSpec("proc", ITEMSET, None, "P")))
ITEMS = {"proc": ("a", "b", "c", "d")}


def E(hospital: str, procs: str = ""):
    return (hospital, frozenset(procs))


def S(*elements):
    return tuple(elements)


P1 = S(E("H1", "a"), E("H1", "cd"), E("H1", "ab"), E("H1", "d"))
P2 = S(E("H2", "cd"), E("H3", "bd"), E("H3", "ad"))
P3 = S(E("H4", "cd"), E("H4", "b"), E("H4", "a"), E("H4", "ad"))
RECORDS = [("p1", P1), ("p2", P2), ("p3", P3)]

SS = {
    1: S(E("CH", "cd"), E("H1", "b"), E("*", "d")),
    2: S(E("CH", "cd"), E("*", "b"), E("*", "d")),
    3: S(E("CH"), E("*", "d"), E("*", "a")),
    4: S(E("*", "cd"), E("*", "b")),
    5: S(E("*", "a")),
    6: S(E("*", "cd"), E("CL", "b"), E("CL", "a")),
    7: S(E("CL", "d"), E("CL")),
    8: S(E("CL"), E("CL", "ad")),
    9: S(E("CH", "cd")),
    10: S(E("CL", "b"), E("CL", "a")),
    11: S(E("*", "cd"), E("*", "b")),
    12: S(E("*", "a"), E("*", "d")),
}


def pat(*seqs) -> Pattern:
    return maximal_antichain(SCHEMA, seqs)


def ss(*ids) -> Pattern:
    return pat(*(SS[i] for i in ids))


# Cross tables
TABLE1 = (
    ["g1", "g2", "g3", "g4"],
    ["m1", "m2", "m3", "m4"],
    frozenset({("g1", "m1"), ("g1", "m4"), ("g2", "m3"), ("g2", "m4"), ("g3", "m2"), ("g4", "m3"), ("g4", "m4")}),
)
TABLE2 = (
    ["g1", "g2", "g3", "g4", "g5"],
    ["m1", "m2", "m3", "m4", "m5", "m6"],
    frozenset({("g1", "m1"), ("g2", "m2"), ("g3", "m3"), ("g4", "m4"), ("g5", "m5"),
               ("g1", "m6"), ("g2", "m6"), ("g3", "m6"), ("g4", "m6")}),
)
