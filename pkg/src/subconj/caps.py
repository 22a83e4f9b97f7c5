"""Resource caps for the exact algorithms.

Every operation that could blow up on a large ingested group checks one of
these limits and raises :class:`CapExceeded` instead of silently degrading.
Defaults can be overridden through ``SUBCONJ_*`` environment variables, or per
corpus entry in a manifest.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, replace


class CapExceeded(RuntimeError):
    """An exact computation was refused because a configured cap was exceeded."""

    def __init__(self, kind, detail):
        self.kind = kind
        super().__init__(f"{kind} cap exceeded: {detail}")


@dataclass(frozen=True)
class Caps:
    # full element enumeration of a group
    element_cap: int = 200_000
    # all-subgroup enumeration up to conjugacy
    full_subgroup_cap: int = 2_000
    # p-subgroup enumeration is allowed while |Syl_p| stays within this bound
    sylow_order_cap: int = 256
    # total element-set keys visited by conjugation-orbit walks
    orbit_key_cap: int = 1_000_000
    # exact isomorphism search
    iso_cap: int = 256

    _ENV = {
        "element_cap": "SUBCONJ_ELEMENT_CAP",
        "full_subgroup_cap": "SUBCONJ_FULL_SUBGROUP_CAP",
        "sylow_order_cap": "SUBCONJ_SYLOW_ORDER_CAP",
        "orbit_key_cap": "SUBCONJ_ORBIT_KEY_CAP",
        "iso_cap": "SUBCONJ_ISO_CAP",
    }

    @classmethod
    def from_env(cls):
        values = {}
        for field, var in cls._ENV.items():
            raw = os.environ.get(var)
            if raw is not None:
                values[field] = int(raw)
        return cls(**values)

    def override(self, **kwargs):
        kwargs = {k: v for k, v in kwargs.items() if v is not None}
        return replace(self, **kwargs) if kwargs else self


DEFAULT_CAPS = Caps.from_env()
