"""Published counts the census and catalog runs are compared against.

Kept in one place so a disagreeing enumeration shows up as a diff against
these numbers.  Ranks 3 through 10.
"""

RANKS = range(3, 11)

# symmetrizable
SYM_HYPERBOLIC = 142
SYM_SUPERIZABLE = 66
SYM_SUPER = 97
SYM_MULTI = 18

# non-symmetrizable
NONSYM_HYPERBOLIC = 96
NONSYM_SUPERIZABLE = 30
NONSYM_SUPER = 36
NONSYM_MULTI = 3

TOTAL_HYPERBOLIC = SYM_HYPERBOLIC + NONSYM_HYPERBOLIC

# hyperbolic algebras with several superizations, by the names used in the tables
SYM_MULTIPLICITIES = {
    "H3_27": 2,
    "H3_87": 2,
    "H3_93": 3,
    "H3_98": 3,
    "H3_108": 3,
    "H3_113": 5,
    "H3_115": 3,
    "H3_117": 3,
    "H3_120": 3,
    "H3_123": 2,
    "H4_5": 3,
    "H4_16": 3,
    "H4_24": 2,
    "H4_44": 2,
    "H4_45": 2,
    "H4_46": 3,
    "H5_22": 3,
    "H6_9": 2,
}

NONSYM_MULTIPLICITIES = {"NH3_25": 3, "NH3_29": 3, "NH3_85": 3}

CENSUS = {
    "sym": {
        "hyperbolic": SYM_HYPERBOLIC,
        "superizable_hyperbolic": SYM_SUPERIZABLE,
        "super_almost_affine": SYM_SUPER,
        "multi_superization": SYM_MULTI,
    },
    "nonsym": {
        "hyperbolic": NONSYM_HYPERBOLIC,
        "superizable_hyperbolic": NONSYM_SUPERIZABLE,
        "super_almost_affine": NONSYM_SUPER,
        "multi_superization": NONSYM_MULTI,
    },
}
