"""Runtime size caps.

The defaults follow the desk-scale budget: matrices up to 20000 rows,
groups up to 25000 elements, brute-force subset enumeration up to 16
vertices.  The CLI overrides them through ``--max-dim`` and
``--max-group-order``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ResourceError


@dataclass
class Limits:
    max_dim: int = 20000
    max_group_order: int = 25000
    max_brute_vertices: int = 16
    max_exchange_vertices: int = 14


LIMITS = Limits()


def check_dim(rows: int, cols: int = 0, what: str = "matrix") -> None:
    if rows > LIMITS.max_dim or cols > LIMITS.max_dim:
        raise ResourceError(
            f"{what} of shape ({rows}, {cols}) exceeds max_dim={LIMITS.max_dim}"
        )
