"""
Meet-omega-simulations
======================

Relating small sets of states to a state blocks classical falsum.
"""

from meetsim import (check_preservation, is_meet_omega_simulation,
                     largest_meet_omega_simulation, parse_fol)
from meetsim.generators import diamond

m = diamond()

# the empty set related to the top
print(bool(is_meet_omega_simulation({(frozenset(), "1")}, m, m)))
print(is_meet_omega_simulation({(frozenset(), "w")}, m, m).to_json())

T = largest_meet_omega_simulation(m, m)
print(len(T), (frozenset({"u", "v"}), "w") in T)

print(check_preservation(parse_fol("~(x = x)"), [(m, m)], "meet-omega").to_json())
