"""Weights (coroot-pairing vectors) and exponents (weight + rational offset)."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from . import _num as N


@dataclass(frozen=True)
class Weight:
    """Pairings λ(α_i^∨) against the original simple coroots."""
    pairings: tuple
    label: str | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "pairings", tuple(N.q(x) for x in self.pairings))

    @property
    def rank(self) -> int:
        return len(self.pairings)

    @property
    def rational(self) -> bool:
        return all(N.is_rational(x) for x in self.pairings)

    def pair(self, coroot: Sequence):
        return N.dot(coroot, self.pairings)

    def __add__(self, other: "Weight") -> "Weight":
        return Weight(N.add(self.pairings, other.pairings))

    def __sub__(self, other: "Weight") -> "Weight":
        return Weight(N.sub(self.pairings, other.pairings))

    def __neg__(self) -> "Weight":
        return Weight(N.neg(self.pairings))

    def scaled(self, c) -> "Weight":
        return Weight(N.scale(N.q(c), self.pairings))

    @classmethod
    def zero(cls, n: int) -> "Weight":
        return cls(N.zero(n))

    def to_json(self) -> dict:
        out = {"pairings": [N.fmt(x) for x in self.pairings]}
        if self.label:
            out["label"] = self.label
        return out

    @classmethod
    def from_json(cls, data: dict) -> "Weight":
        return cls(tuple(data["pairings"]), data.get("label"))


@dataclass(frozen=True)
class Exponent:
    """The functional anchor + offset with offset in QΣ."""
    anchor: Weight
    offset: tuple

    def __post_init__(self):
        object.__setattr__(self, "offset", tuple(N.q(x) for x in self.offset))

    @classmethod
    def of(cls, w: Weight) -> "Exponent":
        return cls(w, N.zero(w.rank))

    def pair(self, coroot: Sequence, A: Sequence[Sequence]):
        return self.anchor.pair(coroot) + N.dot(coroot, N.matvec(A, self.offset))

    def shifted(self, mu: Sequence) -> "Exponent":
        return Exponent(self.anchor, N.add(self.offset, mu))

    def to_weight(self, A: Sequence[Sequence], label: str | None = None) -> Weight:
        return Weight(N.add(self.anchor.pairings, N.matvec(A, self.offset)), label)

    def to_json(self) -> dict:
        return {"anchor": self.anchor.to_json(), "offset": [N.fmt(x) for x in self.offset]}


def rebase_offset(A: Sequence[Sequence], src: Weight, dst: Weight) -> tuple | None:
    """An offset μ in QΣ with src + μ = dst as pairings, or None.

    When A is singular the solution is only determined modulo the kernel of
    A; free coordinates are set to zero.
    """
    diff = tuple(N.q(x) for x in N.sub(dst.pairings, src.pairings))
    if not all(N.is_rational(x) for x in diff):
        return None
    return N.solve(A, diff)
