"""Bundled algebras and conversion from orthogonal (ε/δ) coordinates."""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction as Q
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Sequence

from . import _num as N
from .cartan_core import CartanSupermatrix
from .lattice import Weight
from .root_system import AlgebraData

BUNDLED = ("sl2", "osp12", "sl21", "gl11", "osp9_2", "osp_2_4_twisted", "A1_1",
           "sp4", "osp14", "osp12_1", "osp14_1")


@dataclass(frozen=True)
class Coordinates:
    """A diagonal form on named basis vectors and the simple roots in that basis."""
    names: tuple
    form: tuple
    simple_roots: tuple

    def ip(self, u: Sequence, v: Sequence):
        return sum((N.q(a) * N.q(b) * f for a, b, f in zip(u, v, self.form)), Q(0))

    def vector(self, parts: dict | Sequence) -> tuple:
        """Accept a list or a {name: coefficient} mapping."""
        if isinstance(parts, dict):
            unknown = set(parts) - set(self.names)
            if unknown:
                raise KeyError(f"unknown coordinate names {sorted(unknown)}")
            return tuple(N.q(parts.get(n, 0)) for n in self.names)
        return tuple(N.q(x) for x in parts)

    def cartan_matrix(self) -> list:
        out = []
        for r in self.simple_roots:
            n = self.ip(r, r)
            out.append([self.ip(r, s) if n == 0 else 2 * self.ip(r, s) / n
                        for s in self.simple_roots])
        return out

    def to_sigma(self, v) -> tuple:
        """Coordinates in the simple-root basis of an element of the root span."""
        v = self.vector(v)
        cols = N.transpose(self.simple_roots)
        c = N.solve(cols, v)
        if c is None:
            raise ValueError(f"{v} is not in the span of the simple roots")
        return c

    def from_sigma(self, c: Sequence) -> tuple:
        out = [Q(0)] * len(self.names)
        for ci, r in zip(c, self.simple_roots):
            for k, x in enumerate(r):
                out[k] += N.q(ci) * x
        return tuple(out)

    def weight(self, v, label: str | None = None) -> Weight:
        """Pairings λ(α_i^∨) of the functional (v|·)."""
        v = self.vector(v)
        pairings = []
        for r in self.simple_roots:
            n = self.ip(r, r)
            pairings.append(self.ip(v, r) if n == 0 else 2 * self.ip(v, r) / n)
        return Weight(tuple(pairings), label)

    def label(self, c: Sequence) -> str:
        v = self.from_sigma(c)
        terms = []
        for x, name in zip(v, self.names):
            if x == 0:
                continue
            coef = "" if abs(x) == 1 else N.fmt(abs(x))
            terms.append(("-" if x < 0 else "+") + coef + name)
        s = "".join(terms)
        return s[1:] if s.startswith("+") else (s or "0")

    @classmethod
    def from_json(cls, data: dict) -> "Coordinates":
        return cls(tuple(data["names"]), tuple(N.q(x) for x in data["form"]),
                   tuple(tuple(N.q(x) for x in r) for r in data["simple_roots"]))


def data_path(name: str) -> Path:
    return Path(str(resources.files("superkac") / "data" / f"{name}.json"))


def read_json(source: str | Path | dict) -> dict:
    if isinstance(source, dict):
        return source
    p = Path(source)
    if not p.exists():
        bundled = data_path(p.stem)
        if not bundled.exists():
            raise FileNotFoundError(f"no such file or bundled algebra: {source}")
        p = bundled
    return json.loads(p.read_text())


def algebra_from_json(data: dict, *, affine_node: int | None = None, base_bound: int | None = None
                      ) -> AlgebraData:
    m = CartanSupermatrix(data["A"], data["p"])
    coords = Coordinates.from_json(data["coordinates"]) if "coordinates" in data else None
    if coords is not None:
        expected = coords.cartan_matrix()
        if [list(r) for r in m.A] != expected:
            raise ValueError("coordinate annotation does not reproduce the matrix A")
    kw = {}
    if base_bound is not None:
        kw["base_bound"] = base_bound
    node = affine_node if affine_node is not None else data.get("affine_node")
    return AlgebraData(m, name=data.get("name"), affine_node=node,
                       imaginary_table=data.get("imaginary_multiplicities"),
                       coordinates=coords, **kw)


@lru_cache(maxsize=None)
def load(name: str) -> AlgebraData:
    """A bundled algebra by short name (see BUNDLED)."""
    return algebra_from_json(read_json(data_path(name)))


def load_algebra(source, affine_node: int | None = None, base_bound: int | None = None
                 ) -> AlgebraData:
    data = read_json(source)
    if isinstance(source, (str, Path)) and affine_node is None and base_bound is None:
        p = Path(source)
        if not p.exists() and p.stem in BUNDLED:
            return load(p.stem)
    return algebra_from_json(data, affine_node=affine_node, base_bound=base_bound)


def load_weight(source) -> tuple[Weight, str | None]:
    """A weight file; returns the weight and the algebra it names, if any."""
    data = read_json(source)
    return Weight.from_json(data), data.get("algebra")
