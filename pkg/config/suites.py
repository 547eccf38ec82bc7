"""
Suite Configuration
Defines the verification suites, the command that runs each one and the
statement it exercises.
"""

SUITES = [
    # Elliptic curve engine
    {
        "name": "theta oddness",
        "command": "theta-check",
        "category": "Theta functions",
        "anchor": "theta(-z) = -theta(z); theta is an odd section with a simple zero at 0",
    },
    {
        "name": "theta quasi-periodicity",
        "command": "theta-check",
        "category": "Theta functions",
        "anchor": "theta(z+1)/theta(z) and theta(z+tau) e^{2 pi i z}/theta(z) are constant",
    },
    {
        "name": "f normalization",
        "command": "theta-check",
        "category": "Theta functions",
        "anchor": "f(0) = 0, f'(0) = 1, poles at a and b",
    },
    {
        "name": "sn placement",
        "command": "theta-check",
        "category": "Theta functions",
        "anchor": "sn: zeros at 0 and 1/2, poles at tau/2 and (1+tau)/2",
    },

    # Hecke operators
    {
        "name": "X relations",
        "command": "hecke-verify",
        "category": "Hecke operators",
        "anchor": "X_alpha^2 = 0, delta_w X_alpha delta_w^-1 = X_w(alpha), delta_alpha X_alpha = X_alpha",
    },
    {
        "name": "twisted Leibniz",
        "command": "hecke-verify",
        "category": "Hecke operators",
        "anchor": "X_alpha sigma - s_alpha(sigma) X_alpha = Dem_alpha(sigma)",
    },
    {
        "name": "algebra laws",
        "command": "hecke-verify",
        "category": "Hecke operators",
        "anchor": "(ab)c = a(bc) and act(h1 h2) = act(h1) act(h2) on test sections",
    },
    {
        "name": "membership R1/R2/R3",
        "command": "hecke-verify",
        "category": "Hecke operators",
        "anchor": "simple poles along D^alpha, opposite residues, vanishing on D^(alpha,gamma)",
    },
    {
        "name": "triangularity",
        "command": "hecke-verify",
        "category": "Hecke operators",
        "anchor": "T_(I_w) Bruhat-triangular with leading coefficient F_(I_w); free of rank |W|",
    },
    {
        "name": "pushforward",
        "command": "hecke-verify",
        "category": "Hecke operators",
        "anchor": "rank-one push-pull equals Dem_alpha; symmetrization residues cancel",
    },

    # Quiver Hecke algebras
    {
        "name": "KLR relations",
        "command": "klr-verify",
        "category": "Quiver Hecke",
        "anchor": "faithful polynomial representation of the KLR algebra",
    },
    {
        "name": "phi transport",
        "command": "klr-verify",
        "category": "Quiver Hecke",
        "anchor": "phi intertwines the completed KLR algebra with the completed Hecke algebra",
    },

    # Parameters
    {
        "name": "multisegment count",
        "command": "params",
        "category": "Parameters",
        "anchor": "irreducible parameters at non-torsion t correspond to multisegments",
    },
]


def get_suites_by_category():
    """Group suites by category."""
    categories = {}
    for suite in SUITES:
        cat = suite.get("category", "Other")
        if cat not in categories:
            categories[cat] = []
        categories[cat].append(suite)
    return categories


def get_suite_names():
    """Get list of all suite names."""
    return [s["name"] for s in SUITES]
