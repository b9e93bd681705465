"""Finite, certified computations around homogeneous structures and their
automorphism groups: bounded amalgamation checks, lazily materialized
limits, partial automorphisms, conjugation witnesses and a flow catalogue."""

from .autos import (
    AutoError, AutoHandle, PartialAuto, backforth_extend, betweenness, canonical_auto, preserves_parts,
    seeded_auto,
)
from .catalog import CatalogEntry, EvidenceRecord, get_entry, list_entries, part_action_quotient, run_evidence
from .fraisse import (
    Amalgam, AmalgamInstance, ClassSpec, amalgamate, check_ap, check_chain_condition, check_hp, check_jep,
    get_class, verify_amalgam,
)
from .kernels import BACKEND
from .limits import (
    BudgetExceeded, ExtensionRequest, LimitError, LimitHandle, LimitSpec, Unsatisfiable, s2_arc,
)
from .relstruct import FinStructure, Signature, are_isomorphic, canonical_key, enumerate_embeddings, validate
from .reports import PropertyReport
from .witnesses import (
    ConjugationWord, WitnessError, WitnessReport, WordBoundExceeded, conjugate_order_preserving,
    disjoint_copy, factor_via_conjugates, order_transport, s2_conjugate_parts, s2_monotone_copy,
    s2_part_split,
)

__version__ = "0.1.0"
