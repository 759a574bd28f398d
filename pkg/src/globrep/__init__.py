"""Finitely generated global representations over finite group families.

Exact rational linear algebra, representations as functors on a table of
groups and surjections, Kan extensions along subfamilies, Serre tensor ideal
membership with checkable certificates, and spectra of prime ideals.
"""

from .exactla import Matrix, Subspace
from .family import GroupFamily, build_family, cyclic_p, elementary_abelian, abelian_p, custom
from .rep import Rep, RepMorphism, OutRep, chi, e_rep, gamma_rep, representable, support, tensor, dsum, unit
from .serre import IdealSpec, member, decompose_chi, gamma_certificate, serre_plus_member, symbolic_member
from .spectrum import spc, spc_n_stable, enumerate_serre_ideals
from .symbolic import Named, parse_named

__all__ = [
    "Matrix", "Subspace", "GroupFamily", "build_family", "cyclic_p", "elementary_abelian", "abelian_p",
    "custom", "Rep", "RepMorphism", "OutRep", "chi", "e_rep", "gamma_rep", "representable", "support",
    "tensor", "dsum", "unit", "IdealSpec", "member", "decompose_chi", "gamma_certificate",
    "serre_plus_member", "symbolic_member", "spc", "spc_n_stable", "enumerate_serre_ideals", "Named",
    "parse_named",
]
