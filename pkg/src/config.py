DEFAULTS = dict(
    type="A1",
    lattice="P",
    trunc=4,
    window=4,
    ell=3,
    maxdeg=6,
    seed=20240611,
    sample_size=50,
)

LIMITS = {
    "maxdeg":    (1, 6),
    "hopf":      (0, 3),
    "cross":     (0, 2),
    "gram":      (0, 3),
    "frobenius": (0, 4),
    "trunc":     (0, 8),
    "window":    (1, 8),
    "ell":       (1, 11),
}

# Cartan matrix rows, symmetrizers and the default reduced word of w0.
CARTAN = {
    "A1": dict(A=((2,),), d=(1,), word=(1,)),
    "A2": dict(A=((2, -1), (-1, 2)), d=(1, 1), word=(1, 2, 1)),
    "B2": dict(A=((2, -2), (-1, 2)), d=(1, 2), word=(1, 2, 1, 2)),
}

# phi is given row-major in fundamental-weight coordinates.
PRESETS = {
    "A1": {
        "Default":   dict(lattice="P", phi=None),
        "Root":      dict(lattice="Q", phi=None),
    },
    "A2": {
        "Default":   dict(lattice="P", phi=None),
        "Root":      dict(lattice="Q", phi=None),
        "Twisted":   dict(lattice="P", phi=(("2", "4"), ("-4", "-2"))),
    },
    "B2": {
        "Default":   dict(lattice="Q", phi=None),
        "Weight":    dict(lattice="P", phi=None),
    },
}

# check suites runnable from the command line, in execution order
SUITES = ("hopf", "pairing", "duality", "umbral", "appendix", "frobenius", "classical", "oracle")
