"""Incremental rank tracking over a prime field GF(q)."""

from __future__ import annotations


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    if q % 2 == 0:
        return q == 2
    f = 3
    while f * f <= q:
        if q % f == 0:
            return False
        f += 2
    return True


class RankTracker:
    """Row space of received coefficient vectors, kept in reduced echelon form.

    Vectors are plain lists of ints in ``[0, q)``; lengths stay small (one
    entry per source packet) so pure Python beats numpy here.
    """

    def __init__(self, n: int, q: int):
        self.n = n
        self.q = q
        self.rows: dict[int, list[int]] = {}  # pivot column -> row with 1 at pivot

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, vec) -> list[int]:
        q = self.q
        v = list(vec)
        for col, row in self.rows.items():
            c = v[col]
            if c:
                v = [(a - c * b) % q for a, b in zip(v, row)]
        return v

    def add(self, vec) -> bool:
        """Insert ``vec``; return True if it increased the rank."""
        v = self.reduce(vec)
        pivot = next((i for i, a in enumerate(v) if a), None)
        if pivot is None:
            return False
        q = self.q
        inv = pow(v[pivot], q - 2, q)
        v = [(a * inv) % q for a in v]
        for col, row in self.rows.items():
            c = row[pivot]
            if c:
                self.rows[col] = [(a - c * b) % q for a, b in zip(row, v)]
        self.rows[pivot] = v
        return True

    def contains(self, vec) -> bool:
        return not any(self.reduce(vec))

    def random_combination(self, rng) -> list[int]:
        """Uniformly random vector of the tracked subspace."""
        q = self.q
        out = [0] * self.n
        for row in self.rows.values():
            c = rng.randrange(q)
            if c:
                out = [(a + c * b) % q for a, b in zip(out, row)]
        return out
