"""
Checks of the linking-number identities for embedded Petersen-family graphs.

For a spatial embedding ``f`` of a family member ``G`` with weight map
``w`` the identities checked are

    sum over disjoint pairs of lk        == 1               (mod 2)
    2 * sum over cycles of w * a2        == sum of lk^2 - 1

and, when ``f`` is complexly algebraically linked, that the weighted a2
sum is at least 1, together with the cycles responsible for it.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import NamedTuple

from . import catalog
from .catalog import EXCHANGES, Member, build, classify, weight_rules, weight_table
from .exchange import pullback_along
from .graph import Cycle, CyclePair, enumerate_cycles, enumerate_disjoint_pairs
from .invariants import a2, linking_number
from .spatial import SpatialEmbedding, extract_subdiagram, project

__all__ = [
    "NotInCatalogError",
    "ConsistencyError",
    "PreconditionError",
    "VerificationReport",
    "member_of",
    "compute_report",
    "verify_mod2",
    "verify_integral_identity",
    "is_complexly_algebraically_linked",
    "corollary_check",
    "DERIVATION_ROUTES",
    "DerivationResult",
    "derive_weights",
    "derive_and_check_weights",
]

log = logging.getLogger(__name__)


class NotInCatalogError(ValueError):
    pass


class ConsistencyError(AssertionError):
    """Two computations that must agree did not."""


class PreconditionError(ValueError):
    pass


def member_of(f: SpatialEmbedding) -> Member:
    m = catalog.identify(f.graph)
    if m is None:
        raise NotInCatalogError(
            "embedded graph is not a labeled Petersen-family member "
            "(compare with `cgpetersen catalog`)")
    return m


@dataclass
class VerificationReport:
    member: Member
    pair_lk: dict[CyclePair, int]
    cycle_a2: dict[Cycle, int]
    weights: dict[Cycle, int]
    crossings: int = 0
    witnesses: list[tuple[Cycle, int, int]] = field(default_factory=list)

    @property
    def weighted_a2(self) -> int:
        return sum(self.weights[c] * self.cycle_a2[c] for c in self.cycle_a2)

    @property
    def lhs(self) -> int:
        return 2 * self.weighted_a2

    @property
    def lk_squares(self) -> int:
        return sum(v * v for v in self.pair_lk.values())

    @property
    def rhs(self) -> int:
        return self.lk_squares - 1

    @property
    def lk_sum(self) -> int:
        return sum(self.pair_lk.values())

    @property
    def mod2_sum(self) -> int:
        return self.lk_sum % 2

    @property
    def identity_holds(self) -> bool:
        return self.lhs == self.rhs

    @property
    def mod2_holds(self) -> bool:
        return self.mod2_sum == 1

    @property
    def cal(self) -> bool:
        return is_complexly_algebraically_linked(self)

    def to_dict(self) -> dict:
        return {
            "member": self.member.value,
            "crossings": self.crossings,
            "pairs": [{"pair": [list(p.first.vertices), list(p.second.vertices)], "lk": v}
                      for p, v in sorted(self.pair_lk.items())],
            "cycles": [{"cycle": list(c.vertices), "weight": self.weights[c], "a2": v}
                       for c, v in sorted(self.cycle_a2.items())],
            "lk_sum": self.lk_sum,
            "mod2_sum": self.mod2_sum,
            "mod2_holds": self.mod2_holds,
            "weighted_a2": self.weighted_a2,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "identity_holds": self.identity_holds,
            "complexly_algebraically_linked": self.cal,
            "witnesses": [{"cycle": list(c.vertices), "weight": w, "a2": a}
                          for c, w, a in self.witnesses],
        }


def compute_report(f: SpatialEmbedding, all_cycles: bool = True) -> VerificationReport:
    """Linking numbers of all disjoint pairs and a2 of the cycles of ``f``.

    With ``all_cycles=False`` a2 is only evaluated on cycles of nonzero weight.
    """
    member = member_of(f)
    g = build(member)
    w = weight_table(member)
    crossings = project(f)
    cycles = enumerate_cycles(g)
    pair_lk = {p: linking_number(extract_subdiagram(f, crossings, p))
               for p in enumerate_disjoint_pairs(g, cycles)}
    cycle_a2 = {c: a2(extract_subdiagram(f, crossings, c))
                for c in cycles if all_cycles or w[c]}
    weights = {c: w[c] for c in cycles}
    report = VerificationReport(member, pair_lk, cycle_a2, weights, len(crossings))
    report.witnesses = [(c, weights[c], v) for c, v in sorted(cycle_a2.items())
                        if weights[c] and v]
    return report


def _report(f) -> VerificationReport:
    return f if isinstance(f, VerificationReport) else compute_report(f)


def verify_mod2(f: SpatialEmbedding | VerificationReport) -> tuple[int, bool]:
    r = _report(f)
    return r.mod2_sum, r.mod2_holds


def verify_integral_identity(f: SpatialEmbedding | VerificationReport) -> VerificationReport:
    r = _report(f)
    if r.identity_holds and not r.mod2_holds:
        # The mod 2 statement is the reduction of the integral one.
        raise ConsistencyError("integral identity holds but the mod 2 sum is even")
    return r


def is_complexly_algebraically_linked(f: SpatialEmbedding | VerificationReport) -> bool:
    """Some pair has |lk| >= 2, or two pairs have nonzero lk.

    Cross-checked against the equivalent condition sum(lk^2) >= 3.
    """
    r = _report(f)
    values = list(r.pair_lk.values())
    by_definition = any(abs(v) >= 2 for v in values) or sum(1 for v in values if v) >= 2
    by_squares = r.lk_squares >= 3
    if by_definition != by_squares:
        raise ConsistencyError(
            f"complex algebraic linking: definition gives {by_definition}, "
            f"sum of lk^2 = {r.lk_squares}")
    return by_definition


def corollary_check(f: SpatialEmbedding | VerificationReport) -> list[tuple[Cycle, int, int]]:
    """Cycles with nonzero weight and nonzero a2 for a CAL embedding.

    Raises ``PreconditionError`` when the embedding is not complexly
    algebraically linked and ``ConsistencyError`` if the weighted a2 sum is
    below 1 or no witness exists.
    """
    r = _report(f)
    if not is_complexly_algebraically_linked(r):
        raise PreconditionError("embedding is not complexly algebraically linked")
    if r.weighted_a2 < 1:
        raise ConsistencyError(f"weighted a2 sum is {r.weighted_a2} < 1")
    if not r.witnesses:
        raise ConsistencyError("weighted a2 sum is positive but no witness cycle found")
    return r.witnesses


class Route(NamedTuple):
    target: Member
    source: Member
    steps: tuple[int, ...]

    def describe(self) -> str:
        path = ", ".join(f"D{i}" for i in self.steps)
        return f"{self.source.value} --[{path}]--> {self.target.value}"


# One exchange at a time from the previous table,
# then the composite and reordered routes.
DERIVATION_ROUTES: tuple[Route, ...] = (
    Route(Member.Q7, Member.K6, (1,)),
    Route(Member.Q8, Member.Q7, (5,)),
    Route(Member.P8, Member.Q7, (2,)),
    Route(Member.P9, Member.P8, (3,)),
    Route(Member.P10, Member.P9, (4,)),
    Route(Member.P8, Member.P7, (6,)),
    Route(Member.Q8, Member.K6, (1, 5)),
    Route(Member.Q8, Member.K6, (5, 1)),
    Route(Member.P8, Member.K6, (1, 2)),
    Route(Member.P8, Member.K6, (2, 1)),
    Route(Member.P9, Member.K6, (1, 2, 3)),
    Route(Member.P10, Member.K6, (1, 2, 3, 4)),
)


@dataclass
class DerivationResult:
    route: Route
    mismatches: list[tuple[Cycle, int | None, int | None]]
    rules_hit: dict[str, int]

    @property
    def passed(self) -> bool:
        return not self.mismatches

    @property
    def uncovered_rules(self) -> list[str]:
        return [name for name, _, _ in weight_rules(self.route.target)
                if not self.rules_hit.get(name)]


def derive_weights(source: Member, steps) -> catalog.WeightMap:
    return pullback_along(weight_table(source), [EXCHANGES[i] for i in steps])


def derive_and_check_weights(routes=DERIVATION_ROUTES) -> list[DerivationResult]:
    results = []
    for route in routes:
        derived = derive_weights(route.source, route.steps)
        table = weight_table(route.target)
        mismatches = derived.diff(table)
        hits: dict[str, int] = {}
        for c in enumerate_cycles(table.graph):
            name = classify(route.target, c)[0]
            hits[name] = hits.get(name, 0) + 1
        if mismatches:
            c, got, want = mismatches[0]
            log.warning("%s: first mismatch at %s: derived %s, table %s",
                        route.describe(), c, got, want)
        results.append(DerivationResult(route, mismatches, hits))
    return results
