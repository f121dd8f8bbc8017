"""Triples (X, G, H): a transitive group G on X = {0..n-1}, the distinguished
point x = 0, and a normal subgroup H of the stabilizer G_x.

Provides the conjugates H_y, spans <Y>, the speciality test, the F -> F°
descent, monodromy-orbit splitting, and the exhaustive search for non-trivial
special triples.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations

from .algorithms import (
    DEFAULT_ENUMERATION_BOUND,
    DEFAULT_MAX_CATALOG_DEGREE,
    conjugate_subgroup,
    is_normal,
    normal_subgroups,
    transitive_groups,
)
from .core import PermGroup, Permutation, format_cycles
from .errors import (
    CapacityError,
    InputError,
    InvariantError,
    NotInStabilizerError,
    NotNormalError,
    NotTransitiveError,
)

log = logging.getLogger(__name__)

BASE_POINT = 0


@dataclass(frozen=True, eq=False)
class Triple:
    G: PermGroup
    H: PermGroup

    x = BASE_POINT

    @property
    def degree(self) -> int:
        return self.G.degree

    @property
    def points(self) -> range:
        return range(self.G.degree)


def make_triple(G: PermGroup, H: PermGroup) -> Triple:
    """Validate ``(G, H)`` and return the triple with distinguished point 0."""
    if G.degree != H.degree:
        raise InputError(f"degree mismatch: {G.degree} vs {H.degree}")
    if not G.is_transitive():
        raise NotTransitiveError("G is not transitive")
    for h in H.generators:
        if h(BASE_POINT) != BASE_POINT:
            raise NotInStabilizerError(f"H does not fix x: {format_cycles(h)} moves point {BASE_POINT + 1}")
        if not G.contains(h):
            raise NotInStabilizerError(f"H is not in G_x: {format_cycles(h)} is not in G")
    if not is_normal(H, G.stabilizer(BASE_POINT)):
        raise NotNormalError("H is not normal in G_x")
    return Triple(G, H)


def _check_point(t: Triple, y: int) -> None:
    if not 0 <= y < t.degree:
        raise InputError(f"point {y + 1} out of range 1..{t.degree}")


def h_at(t: Triple, y: int) -> PermGroup:
    """``H_y = g H g^-1`` for the chain transversal element g with ``g(x) == y``."""
    _check_point(t, y)
    g = t.G.transversal(t.x)[y]
    return conjugate_subgroup(t.H, g)


def span(t: Triple, Y) -> PermGroup:
    """``<Y>``: the subgroup generated by every ``H_y`` with y in Y."""
    ys = sorted(set(Y))
    if not ys:
        raise InputError("span of an empty set of points")
    gens: list[Permutation] = []
    for y in ys:
        gens.extend(h_at(t, y).generators)
    return PermGroup(t.degree, gens)


@dataclass(frozen=True)
class SpecialityReport:
    is_trivial: bool
    condition1: bool
    condition2: bool
    failing_pair: tuple[int, int] | None = None

    @property
    def is_special(self) -> bool:
        return self.condition1 and self.condition2

    @property
    def is_counterexample(self) -> bool:
        return self.is_special and not self.is_trivial

    def to_json(self) -> dict:
        return {
            "special": self.is_special,
            "trivial": self.is_trivial,
            "condition1": self.condition1,
            "condition2": self.condition2,
            "failing_pair": None if self.failing_pair is None else [p + 1 for p in self.failing_pair],
        }


def is_special(t: Triple) -> SpecialityReport:
    condition1 = span(t, t.points).is_transitive()
    failing = None
    for y, z in combinations(t.points, 2):
        if z in span(t, (y, z)).orbit(y):
            failing = (y, z)
            break
    return SpecialityReport(
        is_trivial=t.degree == 1,
        condition1=condition1,
        condition2=failing is None,
        failing_pair=failing,
    )


def f_circle(t: Triple, F: PermGroup) -> PermGroup:
    """``F° = <F·x>``, generated by the conjugates ``fHf^-1`` with f in F."""
    if F.degree != t.degree or not F.is_subgroup_of(t.G):
        raise InputError("F is not a subgroup of G")
    if not t.H.is_subgroup_of(F):
        raise InputError("F does not contain H")
    return span(t, F.orbit(t.x))


@dataclass(frozen=True)
class DescendingChain:
    """``F_1 > F_2 > ... > F_m`` with ``F_{k+1} = F_k°`` and ``F_m° == F_m``."""

    links: tuple[PermGroup, ...]
    reached_h: bool

    @property
    def fixpoint(self) -> PermGroup:
        return self.links[-1]


def descending_chain(t: Triple, y: int) -> DescendingChain:
    _check_point(t, y)
    if y == t.x:
        raise InputError("the chain needs a point y different from x")
    links = [span(t, (t.x, y))]
    while True:
        nxt = f_circle(t, links[-1])
        if nxt.order() == links[-1].order():
            break
        links.append(nxt)
    return DescendingChain(tuple(links), reached_h=links[-1].order() == t.H.order())


@dataclass(frozen=True)
class SplittingReport:
    classes: tuple[frozenset[int], ...]
    script_h_order: int

    @property
    def factor_degree(self) -> int:
        return len(self.classes)


def relation_classes(t: Triple) -> list[frozenset[int]]:
    """Transitive closure of ``y ~ z  iff  z in H_k·y for some k``, ordered by least point."""
    parent = list(t.points)

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for k in t.points:
        hk = h_at(t, k)
        for y in t.points:
            for z in hk.orbit(y):
                ry, rz = find(y), find(z)
                if ry != rz:
                    parent[max(ry, rz)] = min(ry, rz)
    groups: dict[int, set[int]] = {}
    for p in t.points:
        groups.setdefault(find(p), set()).add(p)
    return sorted((frozenset(g) for g in groups.values()), key=min)


def monodromy_splitting(t: Triple) -> SplittingReport:
    """Orbits of the group generated by all ``H_y``.

    Cross-checked against the pairwise relation each call; a disagreement
    raises InvariantError.
    """
    script_h = span(t, t.points)
    classes = tuple(script_h.orbits())
    if list(classes) != relation_classes(t):
        raise InvariantError("orbit partition differs from the closure of the pairwise relation")
    return SplittingReport(classes=classes, script_h_order=script_h.order())


# exhaustive search


@dataclass(frozen=True)
class Counterexample:
    G: PermGroup
    H: PermGroup
    report: SpecialityReport


@dataclass(frozen=True)
class DegreeSummary:
    degree: int
    groups: int
    triples: int


@dataclass(frozen=True)
class SearchResult:
    degrees: tuple[int, ...]
    triples_checked: int
    counterexamples: tuple[Counterexample, ...]
    per_degree: tuple[DegreeSummary, ...]


def _check_group(task):
    """Worker: evaluate every triple over one transitive group."""
    degree, gens, bound = task
    G = PermGroup(degree, gens)
    found = []
    hs = normal_subgroups(G.stabilizer(BASE_POINT), bound=bound)
    for H in hs:
        report = is_special(make_triple(G, H))
        if report.is_counterexample:
            found.append((tuple(H.generators), report))
    return len(hs), found


def search_special(
    max_degree: int,
    jobs: int = 1,
    bound: int = DEFAULT_ENUMERATION_BOUND,
    catalog_max: int = DEFAULT_MAX_CATALOG_DEGREE,
) -> SearchResult:
    """Test every triple over every cataloged transitive group of degree 2..max_degree.

    A non-empty ``counterexamples`` is a finding, not an error.
    """
    if max_degree < 2:
        raise InputError("max_degree must be at least 2")
    if max_degree > catalog_max:
        raise CapacityError(f"max_degree {max_degree} exceeds the catalog maximum {catalog_max}")
    tasks = []
    for d in range(2, max_degree + 1):
        catalog = transitive_groups(d, max_degree=catalog_max, bound=bound)
        log.info("degree %d: %d transitive groups", d, len(catalog))
        tasks.extend((d, tuple(G.generators), bound) for G in catalog)

    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_check_group, tasks))
    else:
        results = [_check_group(task) for task in tasks]

    counterexamples = []
    per_degree: dict[int, list[int]] = {}
    for (d, gens, _), (count, found) in zip(tasks, results):
        row = per_degree.setdefault(d, [0, 0])
        row[0] += 1
        row[1] += count
        G = PermGroup(d, gens)
        counterexamples.extend(Counterexample(G, PermGroup(d, hg), rep) for hg, rep in found)
    return SearchResult(
        degrees=tuple(range(2, max_degree + 1)),
        triples_checked=sum(r[1] for r in per_degree.values()),
        counterexamples=tuple(counterexamples),
        per_degree=tuple(DegreeSummary(d, g, n) for d, (g, n) in sorted(per_degree.items())),
    )
