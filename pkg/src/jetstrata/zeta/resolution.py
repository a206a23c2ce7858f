"""Principalization data: numerical data (N_j, nu_j), strata E_J and blow-up towers.

Divisor indices are 1-based throughout, matching the file formats.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import FrozenSet, List, Optional, Sequence, Tuple

from ..rings.laurent import LaurentPolynomialL


class ResolutionError(ValueError):
    pass


@dataclass(frozen=True)
class Stratum:
    J: FrozenSet[int]
    euler: int
    klass: Optional[LaurentPolynomialL] = None

    def to_dict(self) -> dict:
        d = {"J": sorted(self.J), "euler": self.euler}
        if self.klass is not None:
            d["class"] = self.klass.to_pairs()
        return d


@dataclass
class ResolutionData:
    delta: int
    divisors: List[Tuple[int, int]]  # (N_j, nu_j)
    strata: List[Stratum] = field(default_factory=list)

    def __post_init__(self) -> None:
        seen = set()
        k = len(self.divisors)
        for s in self.strata:
            if s.J in seen:
                raise ResolutionError(f"stratum J={sorted(s.J)} listed twice")
            seen.add(s.J)
            if any(not 1 <= j <= k for j in s.J):
                raise ResolutionError(f"stratum J={sorted(s.J)} refers to a divisor outside 1..{k}")

    @property
    def has_classes(self) -> bool:
        return bool(self.strata) and all(s.klass is not None for s in self.strata)

    @classmethod
    def from_dict(cls, data: dict) -> "ResolutionData":
        try:
            delta = int(data["delta"])
            divisors = [(int(d["N"]), int(d["nu"])) for d in data["divisors"]]
            strata = []
            for s in data.get("strata", []):
                klass = s.get("class")
                strata.append(
                    Stratum(
                        frozenset(int(j) for j in s["J"]),
                        int(s["euler"]),
                        LaurentPolynomialL.from_pairs(klass) if klass is not None else None,
                    )
                )
        except (KeyError, TypeError) as exc:
            raise ResolutionError(f"malformed resolution data: {exc!r}") from None
        _reject_floats(data)
        return cls(delta, divisors, strata)

    def to_dict(self) -> dict:
        return {
            "delta": self.delta,
            "divisors": [{"N": N, "nu": nu} for N, nu in self.divisors],
            "strata": [s.to_dict() for s in self.strata],
        }


def _reject_floats(obj) -> None:
    if isinstance(obj, float):
        raise ResolutionError("floating-point values are not allowed")
    if isinstance(obj, dict):
        for v in obj.values():
            _reject_floats(v)
    elif isinstance(obj, list):
        for v in obj:
            _reject_floats(v)


def load_resolution(path: str) -> ResolutionData:
    with open(path) as fh:
        return ResolutionData.from_dict(json.load(fh))


@dataclass
class ValidationReport:
    failures: List[str]

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {"verdict": "PASS" if self.passed else "FAIL", "failures": self.failures}


def validate(res: ResolutionData) -> ValidationReport:
    fails = []
    for j, (N, nu) in enumerate(res.divisors, start=1):
        if N < 1:
            fails.append(f"E_{j}: N = {N} < 1")
        if nu < 1:
            fails.append(f"E_{j}: nu = {nu} < 1")
        if res.delta * N - nu < 0:
            fails.append(f"E_{j}: delta*N - nu = {res.delta * N - nu} < 0")
    for s in res.strata:
        if s.klass is not None and s.klass.at_one() != s.euler:
            fails.append(f"J={sorted(s.J)}: class at L=1 is {s.klass.at_one()}, euler is {s.euler}")
    return ValidationReport(fails)


@dataclass(frozen=True)
class BlowupStep:
    S: FrozenSet[int]
    mu: int
    dimC: int


@dataclass
class BlowupTower:
    delta: int
    steps: List[BlowupStep]

    def __post_init__(self) -> None:
        for i, st in enumerate(self.steps):
            if any(not 1 <= j <= i for j in st.S):
                raise ResolutionError(f"step {i + 1}: S={sorted(st.S)} must lie in 1..{i}")
            if st.mu < 1:
                raise ResolutionError(f"step {i + 1}: mu = {st.mu} < 1")
            if not 0 <= st.dimC <= self.delta - 1:
                raise ResolutionError(f"step {i + 1}: dimC = {st.dimC} outside 0..{self.delta - 1}")

    @classmethod
    def from_dict(cls, data: dict) -> "BlowupTower":
        _reject_floats(data)
        try:
            steps = [BlowupStep(frozenset(int(j) for j in s["S"]), int(s["mu"]), int(s["dimC"])) for s in data["steps"]]
            return cls(int(data["delta"]), steps)
        except (KeyError, TypeError) as exc:
            raise ResolutionError(f"malformed tower: {exc!r}") from None


def load_tower(path: str) -> BlowupTower:
    with open(path) as fh:
        return BlowupTower.from_dict(json.load(fh))


def numerical_data(tower: BlowupTower) -> List[Tuple[int, int]]:
    """(N_j, nu_j) of the exceptional divisors of the tower, in creation order."""
    out: List[Tuple[int, int]] = []
    d = tower.delta
    for st in tower.steps:
        N = sum(out[j - 1][0] for j in st.S) + st.mu
        nu = sum(out[j - 1][1] for j in st.S) + d - len(st.S) - st.dimC
        if d * N - nu < 0:
            raise ResolutionError(f"E_{len(out) + 1}: delta*N - nu = {d * N - nu} < 0")
        out.append((N, nu))
    return out


def tower_resolution(tower: BlowupTower, strata: Sequence[Stratum] = ()) -> ResolutionData:
    return ResolutionData(tower.delta, numerical_data(tower), list(strata))
