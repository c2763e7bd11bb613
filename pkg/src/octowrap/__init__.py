"""Exact Cayley-Dickson arithmetic, smashed products, skew products of
free groups, and a discrete holonomy harness, with seeded property suites."""

from .cayley import (
    CDNumber, associator, basis_mul, cd_components, cd_conj, cd_inverse, cd_join, cd_mul, cd_norm_sq,
    cd_reconstruct, cd_split, eval_tree, format_cd, parse_cd, sign_table,
)
from .groups import Q8Model, Q8ModSignModel, UnitCDModel, FreeGroupModel, CyclicModel, model_from_name
from .report import VerificationReport, emit_report
from .skew import SkewElement, Verdict, skew_equal, skew_inv, skew_mul, skew_commutator
from .smash import (
    QuotientSpec, SmashElement, TwistedElement, smash_inverse, smash_mul, twisted_conj, twisted_mul,
    twisted_quotient,
)
from .suites import SuiteSpec, run_suite
from .words import FreeWord, parse_word, word_inv, word_mul
from .wraps import (
    Connection, DiscreteWrap, HolonomyData, Mesh, basepoint_shift, bunch_decompose, cover_lift,
    abelianized_holonomy, holonomy, iterated_pairing, retract_push, transport, wrap_concat,
)

__version__ = "0.1.0"
