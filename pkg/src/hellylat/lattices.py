"""Point-set oracles: integer lattices, exponential lattices, congruence
products, and explicit (windowed) product sets.

Each lattice answers exact membership queries and enumerates the points it
contains inside a finite window, in lexicographic order.  Enumerations are
guarded by a candidate-count budget so runaway windows fail fast.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Union

from .errors import (
    DimensionMismatchError,
    PreconditionError,
    WindowBudgetError,
)
from .geometry import Point, VPolytope, classify_point
from .scalars import (
    Scalar,
    ceil_log,
    compare,
    format_scalar,
    is_integer,
    parse_scalar,
    scalar_sign,
)

#: default cap on candidate points per window enumeration
ENUM_BUDGET = 10**8
#: cap on the power walk when testing membership in an exponential lattice
_POWER_WALK_CAP = 10**6


@dataclass(frozen=True)
class Window:
    """Per-axis closed intervals; `exponents` switches an exponential
    lattice to exponent-space intervals (integer endpoints)."""

    axes: tuple
    exponents: bool = False

    def __post_init__(self):
        for lo, hi in self.axes:
            if compare(lo, hi) > 0:
                raise PreconditionError(f"empty window interval [{lo}, {hi}]")

    @property
    def dim(self) -> int:
        return len(self.axes)

    @staticmethod
    def cube(lo, hi, dim: int, *, exponents: bool = False) -> "Window":
        return Window(tuple((lo, hi) for _ in range(dim)), exponents)

    def to_json_dict(self) -> dict:
        return {
            "axes": [[format_scalar(lo), format_scalar(hi)] for lo, hi in self.axes],
            "exponents": self.exponents,
        }

    @staticmethod
    def from_json_dict(data: dict) -> "Window":
        axes = tuple(
            (parse_scalar(lo), parse_scalar(hi)) for lo, hi in data["axes"]
        )
        return Window(axes, bool(data.get("exponents", False)))


def _floor_int(x: Scalar) -> int:
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator // x.denominator
    lo, hi = -1, 1
    while compare(lo, x) > 0:
        lo *= 2
    while compare(hi, x) <= 0:
        hi *= 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if compare(mid, x) <= 0:
            lo = mid
        else:
            hi = mid
    return lo


def _ceil_int(x: Scalar) -> int:
    return -_floor_int(-x)


@dataclass(frozen=True)
class IntegerLattice:
    """Z^d."""

    dim: int

    def membership(self, x: Point) -> bool:
        self._check(x)
        return all(is_integer(c) for c in x)

    def axis_values(self, lo, hi):
        return list(range(_ceil_int(lo), _floor_int(hi) + 1))

    def _check(self, x):
        if len(x) != self.dim:
            raise DimensionMismatchError(f"point dim {len(x)} != lattice dim {self.dim}")

    def to_json_dict(self) -> dict:
        return {"kind": "integer", "d": self.dim}


@dataclass(frozen=True)
class ExponentialLattice:
    """{alpha^n : n >= 0}^d for an exact alpha > 1."""

    alpha: Scalar
    dim: int

    def __post_init__(self):
        if compare(self.alpha, 1) <= 0:
            raise PreconditionError("exponential lattice requires alpha > 1")

    def exponent_of(self, c: Scalar) -> Optional[int]:
        """n with alpha^n == c, or None; exact power walk."""
        if compare(c, 1) < 0:
            return None
        power: Scalar = Fraction(1)
        for n in range(_POWER_WALK_CAP):
            s = compare(power, c)
            if s == 0:
                return n
            if s > 0:
                return None
            power = power * self.alpha
        raise PreconditionError("power walk exceeded its cap")

    def membership(self, x: Point) -> bool:
        self._check(x)
        return all(self.exponent_of(c) is not None for c in x)

    def axis_values(self, lo, hi, *, exponents: bool = False):
        if exponents:
            n_lo = max(0, _ceil_int(lo))
            n_hi = _floor_int(hi)
            return [self.alpha ** n for n in range(n_lo, n_hi + 1)]
        if compare(hi, 1) < 0:
            return []
        n0 = 0 if compare(lo, 1) <= 0 else ceil_log(self.alpha, lo)
        vals = []
        power = self.alpha ** n0
        while compare(power, hi) <= 0:
            vals.append(power)
            power = power * self.alpha
        return vals

    def _check(self, x):
        if len(x) != self.dim:
            raise DimensionMismatchError(f"point dim {len(x)} != lattice dim {self.dim}")

    def to_json_dict(self) -> dict:
        return {"kind": "exponential", "alpha": format_scalar(self.alpha), "d": self.dim}


@dataclass(frozen=True)
class CongruenceProduct:
    """(S + mZ)^d for residues S and modulus m >= 2."""

    residues: frozenset
    modulus: int
    dim: int

    def __post_init__(self):
        if self.modulus < 2:
            raise PreconditionError("congruence modulus must be >= 2")
        if not self.residues:
            raise PreconditionError("residue set must be nonempty")
        if any(not (0 <= r < self.modulus) for r in self.residues):
            raise PreconditionError("residues must be reduced mod m")

    def membership(self, x: Point) -> bool:
        self._check(x)
        return all(
            is_integer(c) and int(c) % self.modulus in self.residues for c in x
        )

    def axis_values(self, lo, hi):
        return [
            k
            for k in range(_ceil_int(lo), _floor_int(hi) + 1)
            if k % self.modulus in self.residues
        ]

    def _check(self, x):
        if len(x) != self.dim:
            raise DimensionMismatchError(f"point dim {len(x)} != lattice dim {self.dim}")

    def to_json_dict(self) -> dict:
        return {
            "kind": "congruence",
            "residues": sorted(self.residues),
            "modulus": self.modulus,
            "d": self.dim,
        }


@dataclass(frozen=True)
class ExplicitProduct:
    """B^d for an explicit integer set B materialized on [lo, hi].

    Queries outside the defining window are an error, not a guess: the set
    is only known on the window it was built with.
    """

    base: tuple
    lo: int
    hi: int
    dim: int

    def __post_init__(self):
        if list(self.base) != sorted(set(self.base)):
            raise PreconditionError("base must be sorted and deduplicated")
        if self.base and (self.base[0] < self.lo or self.base[-1] > self.hi):
            raise PreconditionError("base values must lie inside the defining window")

    def membership(self, x: Point) -> bool:
        self._check(x)
        for c in x:
            if not is_integer(c):
                return False
            v = int(c)
            if v < self.lo or v > self.hi:
                raise PreconditionError(
                    f"membership query {v} outside defining window [{self.lo}, {self.hi}]"
                )
            if v not in self._base_set():
                return False
        return True

    def _base_set(self):
        return set(self.base)

    def axis_values(self, lo, hi):
        ilo, ihi = _ceil_int(lo), _floor_int(hi)
        if ilo < self.lo or ihi > self.hi:
            raise PreconditionError(
                f"window [{ilo}, {ihi}] exceeds defining window [{self.lo}, {self.hi}]"
            )
        return [b for b in self.base if ilo <= b <= ihi]

    def _check(self, x):
        if len(x) != self.dim:
            raise DimensionMismatchError(f"point dim {len(x)} != lattice dim {self.dim}")

    def to_json_dict(self) -> dict:
        return {
            "kind": "explicit",
            "base": list(self.base),
            "window": [self.lo, self.hi],
            "d": self.dim,
        }


LatticeSpec = Union[IntegerLattice, ExponentialLattice, CongruenceProduct, ExplicitProduct]


def lattice_from_json_dict(data: dict) -> LatticeSpec:
    kind = data["kind"]
    d = int(data["d"])
    if kind == "integer":
        return IntegerLattice(d)
    if kind == "exponential":
        alpha = data["alpha"]
        if isinstance(alpha, str):
            alpha = parse_scalar(alpha)
        return ExponentialLattice(alpha, d)
    if kind == "congruence":
        return CongruenceProduct(frozenset(data["residues"]), int(data["modulus"]), d)
    if kind == "explicit":
        lo, hi = data["window"]
        return ExplicitProduct(tuple(data["base"]), int(lo), int(hi), d)
    raise PreconditionError(f"unknown lattice kind {kind!r}")


def membership(lattice: LatticeSpec, x: Point) -> bool:
    """Exact membership of a point in the lattice."""
    return lattice.membership(tuple(x))


def _axis_lists(lattice: LatticeSpec, window: Window) -> list:
    if window.dim != lattice.dim:
        raise DimensionMismatchError(
            f"window dim {window.dim} != lattice dim {lattice.dim}"
        )
    if window.exponents and not isinstance(lattice, ExponentialLattice):
        raise PreconditionError("exponent windows apply to exponential lattices only")
    lists = []
    for lo, hi in window.axes:
        if isinstance(lattice, ExponentialLattice):
            lists.append(lattice.axis_values(lo, hi, exponents=window.exponents))
        else:
            lists.append(lattice.axis_values(lo, hi))
    return lists


def window_point_count(lattice: LatticeSpec, window: Window) -> int:
    count = 1
    for values in _axis_lists(lattice, window):
        count *= len(values)
    return count


def enumerate_window(
    lattice: LatticeSpec, window: Window, *, budget: int = ENUM_BUDGET
) -> Iterator[Point]:
    """All lattice points inside the window, lexicographically, each once."""
    lists = _axis_lists(lattice, window)
    count = 1
    for values in lists:
        count *= len(values)
    if count > budget:
        raise WindowBudgetError(
            f"window holds {count} candidate points, over the budget of {budget}"
        )
    return itertools.product(*lists)


def points_in_polytope(
    lattice: LatticeSpec, poly: VPolytope, *, budget: int = ENUM_BUDGET
) -> list:
    """Lattice points inside the polytope, each labeled vertex | boundary |
    interior, in lexicographic order.

    Enumerates the polytope's bounding box and classifies each candidate
    exactly; degenerate single-point polytopes are handled directly.
    """
    if poly.dim != lattice.dim:
        raise DimensionMismatchError(
            f"polytope dim {poly.dim} != lattice dim {lattice.dim}"
        )
    if poly.affine_dim == 0:
        p = poly.vertices[0]
        return [(p, "vertex")] if lattice.membership(p) else []
    if not poly.is_full_dimensional:
        raise PreconditionError("points_in_polytope requires a full-dimensional polytope")
    window = Window(tuple(poly.bounding_box()))
    vertex_set = set(poly.vertices)
    out = []
    for p in enumerate_window(lattice, window, budget=budget):
        loc = classify_point(poly, p)
        if loc.kind == "exterior":
            continue
        if loc.kind == "interior":
            out.append((p, "interior"))
        else:
            out.append((p, "vertex" if p in vertex_set else "boundary"))
    return out
