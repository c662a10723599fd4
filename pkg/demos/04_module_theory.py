"""Graded modules over the polynomial ring: the five reference modules.

Hilbert functions with certified closed forms, Tor against the residue
field from the exterior-algebra complex, and the depth = dimension test.
The free module is the only one that is Cohen-Macaulay of maximal
dimension, which is exactly the freeness criterion the cohomology side
uses to decide formality.
"""

from foliacoh.module_theory import (
    GradedModulePresentation,
    depth_dim_cm,
    freeness_test,
    hilbert,
    koszul_tor,
    localized_rank,
)

MODULES = {
    "free S over r=2": GradedModulePresentation.free(2, (0,), window=10),
    "residue field over r=2": GradedModulePresentation.residue_field(2, window=10),
    "S/(u) over r=1": GradedModulePresentation.quotient_by_monomials(1, [(1,)], window=10),
    "S/(u1) (+) S over r=2": GradedModulePresentation.quotient_by_monomials(
        2, [(1, 0)], window=10
    ).direct_sum(GradedModulePresentation.free(2, (0,), window=10)),
    "S/(u^2) over r=1": GradedModulePresentation.quotient_by_monomials(1, [(2,)], window=10),
}

for name, pres in MODULES.items():
    h = hilbert(pres)
    tor = koszul_tor(pres)
    fr = freeness_test(pres)
    lr = localized_rank(pres)
    dd = depth_dim_cm(pres)
    print(f"-- {name}")
    print(f"   hilbert: {h.coefficients}")
    if h.certified:
        print(f"   closed form: {h.closed_form}")
    print(f"   Tor dims (i, degree) -> dim: {dict(sorted(tor.dims.items()))}")
    print(f"   free: {fr.free} (generator degrees {fr.ranks})")
    print(f"   rank over the fraction field: {lr.rank}")
    print(f"   depth {dd.depth}, Krull dim {dd.krull_dim}, Cohen-Macaulay: {dd.cohen_macaulay}")
