"""
The diamond model
=================

Building a model, checking formulas and watching disjunction differ
from the classical one.
"""

from meetsim import satisfies, truth_set, validate_model, is_filter
from meetsim.formula import parse_formula

# w is the meet of u and v; 1 is the top
m = validate_model(
    ["w", "u", "v", "1"],
    [("w", "u"), ("w", "v"), ("u", "1"), ("v", "1")],
    {"p": ["u", "1"], "q": ["v", "1"]},
    kind="covers",
)

# truth sets are filters
for text in ["p", "q", "p & q", "p | q", "bot", "top"]:
    ts = truth_set(m, parse_formula(text))
    print(f"{text:8s} {sorted(ts.members, key=m.idx)}  filter={is_filter(m, ts.members)}")

# p | q holds at w although neither p nor q does
print(satisfies(m, "w", parse_formula("p | q")))

# a valuation that is not a filter is rejected
try:
    validate_model(m.elements, [("w", "u"), ("w", "v"), ("u", "1"), ("v", "1")],
                   {"p": ["u", "v", "1"]}, kind="covers")
except Exception as exc:
    print(type(exc).__name__, exc)
