"""Size limits shared by the group, lattice and materialization code.

Defaults can be overridden with the ``BRAIDLAB_CAPS`` environment variable,
a comma separated list such as ``group=200000,mmodule=5000``.
"""

import os
from dataclasses import dataclass, replace

from .errors import MalformedTable

ENV_VAR = "BRAIDLAB_CAPS"


@dataclass(frozen=True)
class Caps:
    group: int = 10**6          # elements in a permutation-group closure
    mmodule: int = 20_000       # |A0| * n basis vectors of the M_X lattice
    materialize: int = 4096     # m**k points of a linear/affine base module
    jmap: int = 10**6           # n**k tuples for J_k


def _parse(spec):
    out = {}
    for item in filter(None, (s.strip() for s in spec.split(","))):
        key, sep, value = item.partition("=")
        key = key.strip().replace("-", "_")
        if not sep or key not in Caps.__dataclass_fields__:
            raise MalformedTable(f"bad {ENV_VAR} entry {item!r}")
        try:
            out[key] = int(value)
        except ValueError:
            raise MalformedTable(f"bad {ENV_VAR} value {item!r}") from None
    return out


def get_caps(**overrides):
    """Defaults, then the environment, then explicit keyword overrides."""
    caps = replace(Caps(), **_parse(os.environ.get(ENV_VAR, "")))
    overrides = {k: v for k, v in overrides.items() if v is not None}
    return replace(caps, **overrides)
