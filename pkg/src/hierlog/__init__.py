"""Indexed provability logics: syntax, proof kernels, search, translations."""

from .formulas import (
    BOT,
    TOP,
    And,
    Atom,
    Bot,
    Box,
    Formula,
    IllTyped,
    Imp,
    Not,
    Or,
    Top,
    atoms,
    from_json,
    max_index,
    neg,
    render,
    to_json,
    validate_modal,
    validate_modal_untyped,
    validate_prop,
    validate_prop_untyped,
)
from .parser import (
    ParseError,
    parse_modal,
    parse_modal_untyped,
    parse_prop,
    parse_prop_untyped,
)
from .translate import (
    MissingAtomName,
    ShapeMismatch,
    Witness,
    WArrow,
    WLeaf,
    WSplit,
    apply_witness,
    bhk_unfold,
    canonical_witness,
    forgetful_f,
    godel_b,
    godel_b_untyped,
    witness_of,
)
from .hilbert import (
    BadLine,
    Line,
    NotSubset,
    SYSTEMS,
    check_derives,
    check_hilbert,
    check_tautology,
    conj,
    instantiate_axiom,
)
from .natded import (
    BadNode,
    NDProof,
    check_nd,
    erase_indices,
    hyp,
    open_hypotheses,
)
from .schemas import (
    contradiction_via_top,
    detachment_via_top,
    loeb_core,
    loeb_via_top,
    reindex_proof,
    rewitness_proof,
)
from .sequents import (
    BadSequentNode,
    CALCULI,
    Sequent,
    SProof,
    check_sequent_proof,
    parse_sequent,
    render_sequent,
)
from .search import (
    DEFAULT_BUDGET,
    Decision,
    SearchOutcome,
    decide_modal,
    prove_sequent,
    strong_disjunction_check,
)
from .oracle import OracleOutcome, oracle_exhaustive, oracle_stabilized
from .decide import (
    COUNTERPART,
    PropertyViolation,
    SplitResult,
    decide_prop,
    split_disjunction,
)
from .corpus import (
    CorpusEntry,
    CorpusReport,
    entry_from_json,
    load_corpus,
    run_corpus,
)

__version__ = "0.1.0"
