"""Minimum dedicated sensor placement for structural observability.

A dedicated sensor reads exactly one state.  A sensor set makes a square
pattern structurally observable over a finite horizon iff

  (i)  every state has a directed path (in the digraph of the union
       pattern of all transition factors) to some sensor state, and
  (ii) the transposed union pattern, extended with one identity column
       per sensor, has generic rank n.

``minimal_sensors`` computes a smallest such set: it runs one
minimum-weight maximum-cardinality matching on the bipartite graph whose
zero-weight columns are the transposed union columns (one per state) and
whose unit-weight columns indicate membership of the sink SCCs, then reads
the three sensor groups off the matching.  Matched indicator columns give
``j_prime`` (rank and reachability at once), unmatched row vertices give
``j_double`` (rank completion), and sink SCCs left uncovered contribute
their smallest member as ``j_triple`` (reachability completion).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Collection

from .matching import Matching, WeightedBipartite, generic_rank, min_weight_max_matching
from .structure import Condensation, Pattern, condense, non_accessible_states, transition_union

__all__ = [
    "SensorSet",
    "Certificate",
    "PlacementReport",
    "sink_scc_columns",
    "minimal_sensors",
    "verify_observability",
]


@dataclass(frozen=True)
class SensorSet:
    """Dedicated sensor states, partitioned by how they were chosen.

    ``j_prime``: matched through a sink-SCC indicator column; ``j_double``:
    row vertices left unmatched; ``j_triple``: smallest members of sink
    SCCs that still lacked a sensor.  The groups are pairwise disjoint and
    their union is the placed set.
    """

    j_prime: frozenset
    j_double: frozenset
    j_triple: frozenset

    def __init__(self, j_prime=(), j_double=(), j_triple=()):
        a = frozenset(int(i) for i in j_prime)
        b = frozenset(int(i) for i in j_double)
        c = frozenset(int(i) for i in j_triple)
        if (a & b) or (a & c) or (b & c):
            raise ValueError("sensor groups must be pairwise disjoint")
        object.__setattr__(self, "j_prime", a)
        object.__setattr__(self, "j_double", b)
        object.__setattr__(self, "j_triple", c)

    @property
    def all(self) -> frozenset:
        return self.j_prime | self.j_double | self.j_triple

    def __len__(self) -> int:
        return len(self.all)


@dataclass(frozen=True)
class Certificate:
    """Outcome of the two structural observability conditions.

    ``non_accessible`` witnesses a condition (i) failure; the matching
    deficiency (n minus the achieved generic rank) witnesses (ii).
    """

    condition_i: bool
    condition_ii: bool
    non_accessible: frozenset
    matching_deficiency: int

    @property
    def observable(self) -> bool:
        return self.condition_i and self.condition_ii


@dataclass(frozen=True)
class PlacementReport:
    sensors: SensorSet
    g_union: Pattern
    condensation: Condensation
    beta: int
    matching_cardinality: int
    covered_sccs: frozenset
    certificate: Certificate


def sink_scc_columns(cond: Condensation) -> Pattern:
    """Membership indicator of the sink SCCs, one column per component.

    Columns are ordered by ascending smallest member state, so the layout
    is deterministic; column p has an entry at every state of the p-th
    sink SCC.
    """
    sink_ids = sorted(cond.sink_sccs, key=lambda cid: min(cond.sccs[cid]))
    entries = []
    for p, cid in enumerate(sink_ids):
        entries.extend((state, p) for state in cond.sccs[cid])
    return Pattern(cond.n, len(sink_ids), entries)


def verify_observability(
    pattern: Pattern, horizon: int, sensors: Collection[int]
) -> Certificate:
    """Check both structural observability conditions for a sensor set.

    Condition (i): no state is non-accessible in the union digraph with
    output edges on the sensor states.  Condition (ii): the transposed
    union pattern plus the sensor identity columns has generic rank n.
    """
    if not pattern.is_square():
        raise ValueError("verification needs a square pattern")
    n = pattern.nrows
    sensor_set = frozenset(int(s) for s in sensors)
    for s in sensor_set:
        if not (0 <= s < n):
            raise ValueError(f"sensor index {s} outside 0..{n - 1}")
    union = transition_union(pattern, horizon)
    blocked = non_accessible_states(union, sensor_set)
    rank = generic_rank(
        [union.transpose()], Pattern.identity_columns(n, sensor_set)
    )
    return Certificate(
        condition_i=not blocked,
        condition_ii=rank == n,
        non_accessible=blocked,
        matching_deficiency=n - rank,
    )


def _placement_graph(union: Pattern, sink_cols: Pattern) -> WeightedBipartite:
    n = union.nrows
    edges = [(i, j, 0) for j, i in union.entries]  # column j of the transpose
    edges.extend((i, n + p, 1) for i, p in sink_cols.entries)
    return WeightedBipartite(n, n + sink_cols.ncols, edges)


def minimal_sensors(
    pattern: Pattern, horizon: int, strict_j3: bool = False
) -> PlacementReport:
    """Smallest dedicated sensor set for structural observability.

    One minimum-weight maximum matching on the placement graph decides
    everything; see the module docstring for how the three groups are read
    off.  With ``strict_j3`` every uncovered sink SCC contributes a
    ``j_triple`` sensor even if one of its states already carries a
    ``j_prime``/``j_double`` sensor granting reachability; the default
    skips those (for an exact maximum matching the two rules coincide,
    since an unmatched row inside an uncovered sink SCC would admit an
    augmenting indicator edge).

    The returned certificate always passes; every instance has a solution
    (the full state set in the worst case).
    """
    if not pattern.is_square():
        raise ValueError("placement needs a square pattern")
    n = pattern.nrows
    union = transition_union(pattern, horizon)
    cond = condense(union)
    sink_cols = sink_scc_columns(cond)
    sink_ids = sorted(cond.sink_sccs, key=lambda cid: min(cond.sccs[cid]))

    matching: Matching = min_weight_max_matching(_placement_graph(union, sink_cols))

    matched_rows = {r for r, _ in matching.pairs}
    j_prime = set()
    covered = set()
    for r, c in matching.pairs:
        if c >= n:
            j_prime.add(r)
            covered.add(sink_ids[c - n])
    j_double = set(range(n)) - matched_rows

    j_triple = set()
    for cid in sink_ids:
        if cid in covered:
            continue
        members = cond.sccs[cid]
        if not strict_j3 and (members & (j_prime | j_double)):
            continue
        j_triple.add(min(members))

    sensors = SensorSet(j_prime, j_double, j_triple - j_prime - j_double)
    cert = verify_observability(pattern, horizon, sensors.all)
    if not cert.observable:
        raise RuntimeError("internal error: placement failed its own certificate")
    return PlacementReport(
        sensors=sensors,
        g_union=union,
        condensation=cond,
        beta=sink_cols.ncols,
        matching_cardinality=matching.cardinality,
        covered_sccs=frozenset(covered),
        certificate=cert,
    )
