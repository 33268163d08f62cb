"""Independent oracle for restricted partition counts.

p_oracle(N, n) counts partitions of n into parts of size at most N (equal, by
conjugation, to partitions into at most N parts), via the standard dynamic
program.  It shares no code with the partial-fraction machinery it checks.
"""

from __future__ import annotations

__all__ = ["p_oracle"]

# per-N table of counts, grown geometrically as larger n are requested
_TABLES: dict[int, list[int]] = {}


def p_oracle(N: int, n: int) -> int:
    """Number of partitions of n into parts from {1, ..., N}; 1 for n = 0."""
    if N < 1:
        raise ValueError("N must be positive")
    if n < 0:
        return 0
    table = _TABLES.get(N)
    if table is None or len(table) <= n:
        size = max(2 * n + 1, 128)
        dp = [0] * size
        dp[0] = 1
        for part in range(1, N + 1):
            for total in range(part, size):
                dp[total] += dp[total - part]
        table = dp
        _TABLES[N] = table
    return table[n]
