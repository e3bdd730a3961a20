"""Strategic first-order term rewriting.

Terms and labeled rules, proof terms certifying multi-step rewrites,
strategy combinators with explicit failure, and bounded exploration of the
derivation trees an intensional strategy generates.
"""

from .ars import (
    AbstractStrategy,
    Derivation,
    DerivationSet,
    Extension,
    IntensionalStrategy,
    TracedObject,
    all_steps,
    apply_abstract,
    bounded,
    derivation_to_json,
    extension,
    innermost,
    is_prefix_closed,
    memoryless,
    normal_forms_under,
    print_derivation,
    rightmost_innermost,
    traced,
)
from .errors import (
    AmbiguousIdent,
    ArityError,
    ComposeError,
    FuelExhausted,
    InvalidPosition,
    ParseError,
    StepMismatch,
    TermstratError,
    UnboundSVar,
    UnknownLabel,
    UnknownSymbol,
)
from .proofs import (
    Cong,
    Embed,
    ProofTerm,
    Repl,
    Sequent,
    Trans,
    apply_proof_set,
    check,
    cong,
    from_derivation,
    infer,
    parse_proof,
    print_proof,
    to_derivation,
)
from .rules import (
    RewriteStep,
    Rule,
    RuleSet,
    StepLabel,
    all_redexes,
    apply_step,
    rewrite_at,
)
from .strategies import (
    STK,
    EvalResult,
    Fail,
    First,
    Id,
    IfTE,
    Mu,
    Not,
    Occurs,
    Repeat,
    RuleRef,
    Seq,
    StrategyExpr,
    SVar,
    Stk,
    Try,
    Value,
    check_invariant,
    eval_strategy,
    forbidden_strategy,
    invariant_strategy,
    parse_strategy,
    print_strategy,
)
from .terms import (
    App,
    Position,
    ROOT,
    Signature,
    Substitution,
    Symbol,
    Term,
    Var,
    apply_subst,
    match,
    parse_term,
    positions,
    print_term,
    replace_at,
    subterm_at,
    subterms,
    variables,
)
from .theory import Theory, load_theory

__all__ = [
    "AbstractStrategy",
    "AmbiguousIdent",
    "App",
    "ArityError",
    "ComposeError",
    "Cong",
    "Derivation",
    "DerivationSet",
    "Embed",
    "EvalResult",
    "Extension",
    "Fail",
    "First",
    "FuelExhausted",
    "Id",
    "IfTE",
    "IntensionalStrategy",
    "InvalidPosition",
    "Mu",
    "Not",
    "Occurs",
    "ParseError",
    "Position",
    "ProofTerm",
    "ROOT",
    "Repeat",
    "Repl",
    "RewriteStep",
    "Rule",
    "RuleRef",
    "RuleSet",
    "STK",
    "SVar",
    "Seq",
    "Sequent",
    "Signature",
    "StepLabel",
    "StepMismatch",
    "Stk",
    "StrategyExpr",
    "Substitution",
    "Symbol",
    "Term",
    "TermstratError",
    "Theory",
    "TracedObject",
    "Trans",
    "Try",
    "UnboundSVar",
    "UnknownLabel",
    "UnknownSymbol",
    "Value",
    "Var",
    "all_redexes",
    "all_steps",
    "apply_abstract",
    "apply_proof_set",
    "apply_step",
    "apply_subst",
    "bounded",
    "check",
    "check_invariant",
    "cong",
    "derivation_to_json",
    "eval_strategy",
    "extension",
    "forbidden_strategy",
    "from_derivation",
    "infer",
    "innermost",
    "invariant_strategy",
    "is_prefix_closed",
    "load_theory",
    "match",
    "memoryless",
    "normal_forms_under",
    "parse_proof",
    "parse_strategy",
    "parse_term",
    "positions",
    "print_derivation",
    "print_proof",
    "print_strategy",
    "print_term",
    "replace_at",
    "rewrite_at",
    "rightmost_innermost",
    "subterm_at",
    "subterms",
    "to_derivation",
    "traced",
    "variables",
]
