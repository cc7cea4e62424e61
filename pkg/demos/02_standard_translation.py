"""
Standard translation
====================

Positive formulas as first-order formulas over R and unary predicates.
"""

import numpy as np

from meetsim import emit, standard_translate, to_structure, check_fsl
from meetsim.formula import parse_formula
from meetsim.generators import diamond
from meetsim.translation import fol_truth_set
from meetsim.semantics import truth_mask

m = diamond()
s = to_structure(m)

phi = parse_formula("p | q")
alpha = standard_translate(phi)
print(emit(alpha), end="")

# the translation agrees with the model checker
print(fol_truth_set(s, alpha), truth_mask(m, phi))
assert np.array_equal(fol_truth_set(s, alpha), truth_mask(m, phi))

# the structure satisfies the axioms
print(check_fsl(s).to_json())

# prover input
print(emit(standard_translate(parse_formula("p & q")), "tptp", axioms=True), end="")
