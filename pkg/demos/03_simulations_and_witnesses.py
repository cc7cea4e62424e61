"""
Simulations and distinguishing formulas
=======================================

The largest simulation between two finite models, and a formula for
every pair it leaves out.
"""

from meetsim import largest_simulation, WitnessSynthesizer, hm_report
from meetsim.generators import diamond, two_chain

m, m2 = diamond(), two_chain()

fp = largest_simulation(m, m2)
print(sorted(fp.relation))
print(fp.stages)

syn = WitnessSynthesizer(m, m2)
for w in m.elements:
    for w2 in m2.elements:
        wit = syn.witness(w, w2)
        print(w, w2, "similar" if wit is None else f"{wit.formula} (stage {wit.stage})")

# cross-check against bounded theory inclusion
print(hm_report(m, m2, depth=3).to_json())
