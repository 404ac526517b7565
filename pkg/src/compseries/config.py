"""Size caps.  The element cap is overridable through COMPSERIES_ELEMENT_CAP."""

import os

DEFAULT_ELEMENT_CAP = 4096

# all_subgroups suffers combinatorial blowup; the normal-subgroup closure does not.
SUBGROUP_ENUM_CAP = 256

# Full N^3 associativity verification below this order, random triples above.
ASSOC_FULL_CHECK_CAP = 512

DEFAULT_SWEEP_CAP = 10**6


def element_cap():
    raw = os.environ.get("COMPSERIES_ELEMENT_CAP")
    if raw:
        try:
            return int(raw)
        except ValueError:
            raise ValueError(f"COMPSERIES_ELEMENT_CAP must be an integer, got {raw!r}")
    return DEFAULT_ELEMENT_CAP
