"""Default-logic arguments: extensions, argument calculus, relations and argument maps."""

from ._kernels import BACKEND
from .argmap import (
    DEFAULT_POLICY, ArgumentMap, Arc, InstantiatedMap, KnowledgeBase, LabelPolicy, MapMismatch,
    MissingTranslation, Node, NonAtomicTranslation, TranslationTable, args_membership,
    compare_instantiations, instantiation_space_size, normal_exhaustive,
    premise_atomic_assignment, translate_map, validate_labels,
)
from .argument import (
    ArgumentProfile, ClaimNotSingular, DefaultArgument, PremiseNotSingular, claim_justifications,
    consequence, consequence_equivalent, explicitly_equivalent, implicitly_equivalent,
    intrinsically_equivalent, more_implicit_than, new_argument, premise_justifications, profile,
    support, support_equivalent,
)
from .defaults import (
    DefaultRule, DefaultTheory, EnumerationLimitExceeded, Extension, NotAnExtension, NotSingular,
    RuleSchema, all_extensions, classify_rule, ex, ground_schema, is_extension, is_singular,
    justification_consistency_condition, minimal_generating_defaults, parse_rule, parse_schema,
    reiter_closure, singular_subtheory,
)
from .formula import (
    BOTTOM, TOP, And, Atom, Formula, FormulaSyntaxError, Iff, Implies, Not, Or, atoms_of, conj,
    disj, entails, evaluate, is_consistent, is_tautology, neg, parse_formula, satisfiable,
    shared_nontrivial_consequence, theories_equivalent,
)
from .relations import (
    RelationProfile, attacks_family, focused_attacks, relation_profile, strong_supports, supports,
)

__version__ = "0.1.0"
