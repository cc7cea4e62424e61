"""Finite-model reasoning for non-distributive positive logic.

Meet-semilattice models, model checking, the standard translation into
first-order logic, largest (meet-, meet_omega-) simulations and
distinguishing-formula synthesis.
"""

from .core import (Model, NoMeet, NotAFilter, NotAPoset, NoTop, Poset,
                   UndeclaredProposition, UnknownElement, ValidationError,
                   dump_model, filter_generated_by, is_filter, load_model,
                   meet_of_set, model_from_dict, model_to_dict, validate_model)
from .emit import emit
from .fol import FOLFormula, parse_fol, to_text
from .formula import LFormula, parse_formula
from .hm import (InternalVerificationFailed, Witness, WitnessSynthesizer,
                 distinguishing_formula, hm_report, similar)
from .oracle import enumerate_formulas, theory_inclusion_oracle
from .report import Report
from .semantics import TruthSet, check_l1_morphism, satisfies, truth_set
from .simulation import (Fixpoint, FreeVariableArity, check_preservation,
                         is_meet_omega_simulation, is_meet_simulation,
                         is_simulation, largest_meet_omega_simulation,
                         largest_meet_simulation, largest_simulation,
                         meet_sim_from_sim, meet_to_omega)
from .translation import (FOLStructure, check_fsl, fol_eval, from_structure,
                          standard_translate, to_structure)

__version__ = "0.1.0"
