"""Resource limits for constructors that can blow up combinatorially.

Every limit is a hard bound: exceeding one raises ResourceCapError, nothing
is ever silently truncated.  The TOPOLAB_CAP environment variable overrides
the defaults, either as a single integer (applied to both carrier caps) or
as comma-separated ``field=value`` pairs.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, fields, replace

from .errors import ValidationError


@dataclass(frozen=True)
class Caps:
    max_points: int = 12            # carrier size for ordinary spaces
    max_hyper_base_points: int = 7  # carrier size of spaces fed to hyperspace builders
    max_opens: int = 1 << 17        # materialized open-lattice size
    max_maps: int = 1 << 20         # function-space enumeration bound
    max_iso_points: int = 8         # brute-force homeomorphism search bound

    def __post_init__(self):
        for f in fields(self):
            if getattr(self, f.name) < 1:
                raise ValidationError(f"cap {f.name} must be positive")


def default_caps() -> Caps:
    """Default caps, with TOPOLAB_CAP applied on top when set."""
    caps = Caps()
    env = os.environ.get("TOPOLAB_CAP")
    if not env:
        return caps
    env = env.strip()
    try:
        if "=" not in env:
            value = int(env)
            return replace(caps, max_points=value, max_hyper_base_points=value)
        overrides = {}
        valid = {f.name for f in fields(Caps)}
        for part in env.split(","):
            key, _, raw = part.partition("=")
            key = key.strip()
            if key not in valid:
                raise ValidationError(f"TOPOLAB_CAP: unknown cap {key!r}")
            overrides[key] = int(raw)
        return replace(caps, **overrides)
    except ValueError as exc:
        raise ValidationError(f"TOPOLAB_CAP: {env!r} is not a valid override") from exc
