"""County-level solar economics and capacity-expansion toolkit.

Builds per-county solar supply curves (annualized $/MW-yr including spur-line
interconnection) and marginal economic-benefit curves (net value-added $/MW-yr
from an input-output lifecycle model), then trades the two off in a
multi-period capacity-expansion linear program solved by an embedded simplex.
"""

__version__ = "0.1.0"
