"""Exact integral cusp embeddings of flat-manifold (Bieberbach) groups.

Given a lattice-adapted presentation of the fundamental group of a flat
n-manifold, this package constructs -- in exact rational arithmetic -- an
integral matrix representation preserving a rational quadratic form of
signature (n+1, 1) and stabilizing a lightlike vector, verifies every claim
the construction makes, and produces congruence witnesses separating elements
from the translation subgroups T_p of the cusp stabilizer.

>>> import flatcusp
>>> spec = flatcusp.catalog_lookup("hantsche-wendt")
>>> emb = flatcusp.embed(spec)
>>> emb.matrix("a")[3]
[1, 1, -1, 1, -3]
>>> flatcusp.separate(emb, "b", 2)["witness"]["modulus"]
3
"""

from flatcusp._core import (
    Embedding,
    GroupSpec,
    GroupParseError,
    GroupValidationError,
    InconsistentSystemError,
    catalog_list,
    catalog_lookup,
    check_group_axioms,
    check_torsion_free,
    demo_theorem_closure,
    embed,
    load_report,
    parse_group_file,
    report_json,
    separate,
    solve_translation_parts,
    verify,
)

__all__ = [
    "Embedding",
    "GroupSpec",
    "GroupParseError",
    "GroupValidationError",
    "InconsistentSystemError",
    "catalog_list",
    "catalog_lookup",
    "check_group_axioms",
    "check_torsion_free",
    "demo_theorem_closure",
    "embed",
    "load_report",
    "parse_group_file",
    "report_json",
    "separate",
    "solve_translation_parts",
    "verify",
]

__version__ = "0.1.0"
