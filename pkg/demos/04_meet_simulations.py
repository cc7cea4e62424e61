"""
Meet-simulations and classical disjunction
==========================================

Classical disjunction is not preserved along meet-simulations; the
translation of a positive disjunction is.
"""

from meetsim import check_preservation, largest_meet_simulation, parse_fol, standard_translate
from meetsim.formula import parse_formula
from meetsim.generators import diamond

m = diamond()
T = largest_meet_simulation(m, m)
print(len(T), ("u", "v", "w") in T)

classical = parse_fol("P_p(x) | P_q(x)")
print(check_preservation(classical, [(m, m)], "meet").to_json())

positive = standard_translate(parse_formula("p | q"))
print(check_preservation(positive, [(m, m)], "meet").to_json())
