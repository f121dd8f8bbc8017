"""Subgroup-level algorithms: conjugates, joins, normality, subnormality,
Wielandt's criterion, and catalogs of subgroups and transitive groups.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Literal

import numpy as np

from ._elements import ElementIndex, mask_key
from .core import (
    Permutation,
    PermGroup,
    compose,
    conjugate,
    format_cycles,
    inverse,
    symmetric_group,
)
from .errors import CapacityError, InputError, InvariantError

DEFAULT_ENUMERATION_BOUND = 10_080
# Subgroup lattices are only enumerated inside groups up to the order of S7.
SUBGROUP_LATTICE_LIMIT = 5_040
DEFAULT_MAX_CATALOG_DEGREE = 6
MAX_CATALOG_DEGREE = 7


def group_sort_key(group: PermGroup):
    return (group.order(), sorted(g.images for g in group.generators))


def _check_same_degree(a: PermGroup, b) -> None:
    if a.degree != b.degree:
        raise InputError(f"degree mismatch: {a.degree} vs {b.degree}")


def _require_subgroup(h: PermGroup, g: PermGroup) -> None:
    _check_same_degree(h, g)
    for x in h.generators:
        if not g.contains(x):
            raise InputError(f"H is not a subgroup of G: generator {format_cycles(x)} is not in G")


def _require_enumerable(g: PermGroup, bound: int) -> None:
    if g.order() > bound:
        raise CapacityError(f"group order {g.order()} exceeds enumeration bound {bound}")


def conjugate_subgroup(h: PermGroup, g: Permutation) -> PermGroup:
    """The subgroup ``g H g^-1``."""
    _check_same_degree(h, g)
    return PermGroup(h.degree, [conjugate(g, x) for x in h.generators])


def join(a: PermGroup, b: PermGroup) -> PermGroup:
    _check_same_degree(a, b)
    return PermGroup(a.degree, a.generators + b.generators)


def is_normal(h: PermGroup, g: PermGroup) -> bool:
    _require_subgroup(h, g)
    return all(h.contains(conjugate(s, x)) for s in g.generators for x in h.generators)


def normal_closure(h: PermGroup, g: PermGroup) -> PermGroup:
    """Smallest normal subgroup of ``g`` containing ``h``."""
    _require_subgroup(h, g)
    gens = [x for x in h.generators if not x.is_identity()]
    closure = PermGroup(h.degree, gens)
    pending = list(gens)
    while pending:
        x = pending.pop()
        for s in g.generators:
            c = conjugate(s, x)
            if not closure.contains(c):
                gens.append(c)
                pending.append(c)
                closure = PermGroup(h.degree, gens)
    return closure


@dataclass(frozen=True)
class SubnormalChain:
    """Witness ``H = F_l < F_{l-1} < ... < F_0 = G``, each link normal in the next.

    ``links[0]`` is H and ``links[-1]`` is G.
    """

    links: tuple[PermGroup, ...]

    def __len__(self) -> int:
        return len(self.links) - 1

    def verify(self) -> bool:
        return all(
            small.is_subgroup_of(big) and is_normal(small, big)
            for small, big in zip(self.links, self.links[1:])
        )


def normal_closure_series(h: PermGroup, g: PermGroup) -> list[PermGroup]:
    """``N_0 = G``, ``N_{k+1}`` = normal closure of H in ``N_k``, down to the fixpoint."""
    _require_subgroup(h, g)
    series = [g]
    while True:
        nxt = normal_closure(h, series[-1])
        if nxt.order() == series[-1].order():
            return series
        series.append(nxt)


def subnormal_chain(h: PermGroup, g: PermGroup) -> SubnormalChain | None:
    series = normal_closure_series(h, g)
    if series[-1].order() != h.order():
        return None
    # The fixpoint equals H as a set; report H itself as the bottom link.
    return SubnormalChain(tuple([h] + series[-2::-1]) if len(series) > 1 else (h,))


def is_subnormal(h: PermGroup, g: PermGroup) -> bool:
    return subnormal_chain(h, g) is not None


@dataclass(frozen=True)
class WielandtReport:
    hypothesis_holds: bool
    conclusion_holds: bool
    witness_g: Permutation | None = None
    conjugates_checked: int = 0

    @property
    def consistent(self) -> bool:
        """False exactly when the report contradicts Wielandt's theorem."""
        return self.conclusion_holds or not self.hypothesis_holds


def wielandt_verify(h: PermGroup, g: PermGroup, bound: int = DEFAULT_ENUMERATION_BOUND) -> WielandtReport:
    """Check both sides of Wielandt's criterion for ``H <= G`` by enumeration.

    The hypothesis quantifies over every element of G, but only the conjugate
    ``gHg^-1`` matters, so each distinct conjugate is tested once. Elements are
    visited in canonical order and the first failing one is the witness.
    """
    _require_subgroup(h, g)
    _require_enumerable(g, bound)
    seen: set[frozenset[Permutation]] = set()
    hypothesis = True
    witness = None
    h_elems = h.elements()
    for x in g.elements():
        xi = inverse(x)
        conj_set = frozenset(compose(compose(x, a), xi) for a in h_elems)
        if conj_set in seen:
            continue
        seen.add(conj_set)
        if not is_subnormal(h, join(h, conjugate_subgroup(h, x))):
            hypothesis = False
            witness = x
            break
    return WielandtReport(
        hypothesis_holds=hypothesis,
        conclusion_holds=is_subnormal(h, g),
        witness_g=witness,
        conjugates_checked=len(seen),
    )


def conjugacy_classes(g: PermGroup, bound: int = DEFAULT_ENUMERATION_BOUND) -> list[frozenset[Permutation]]:
    """Conjugacy classes ordered by their least element."""
    _require_enumerable(g, bound)
    idx = ElementIndex(g)
    return [frozenset(idx.elements[i] for i in np.flatnonzero(m)) for m in _class_masks(idx)]


def _class_masks(idx: ElementIndex) -> list[np.ndarray]:
    gens = [idx.index(s) for s in idx.group.generators]
    done = idx.empty()
    classes = []
    for a in range(idx.size):
        if done[a]:
            continue
        mask = idx.empty()
        mask[a] = True
        frontier = np.array([a])
        while frontier.size:
            new = np.concatenate([idx.conj(s)[frontier] for s in gens]) if gens else frontier[:0]
            new = np.unique(new[~mask[new]])
            mask[new] = True
            frontier = new
        done |= mask
        classes.append(mask)
    return classes


def normal_subgroups(g: PermGroup, bound: int = DEFAULT_ENUMERATION_BOUND) -> list[PermGroup]:
    """All normal subgroups, built as closures of unions of conjugacy classes."""
    _require_enumerable(g, bound)
    idx = ElementIndex(g)
    classes = _class_masks(idx)
    start = idx.closure([])
    found = {mask_key(start): start}
    queue = [start]
    while queue:
        n = queue.pop(0)
        for cls in classes:
            if (n & cls).any():
                continue
            m = idx.closure(np.flatnonzero(cls), n)
            key = mask_key(m)
            if key not in found:
                found[key] = m
                queue.append(m)
    groups = sorted((idx.subgroup(m) for m in found.values()), key=group_sort_key)
    for n in groups:
        if not is_normal(n, g):
            raise InvariantError(f"class-union subgroup {n!r} is not normal")
    return groups


@dataclass(frozen=True)
class GroupCatalog:
    degree: int
    entries: tuple[PermGroup, ...]
    dedup_mode: Literal["all-subgroups", "up-to-conjugacy"]
    masks: tuple = field(default=(), repr=False, compare=False)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]


def _subgroup_masks(idx: ElementIndex) -> list[np.ndarray]:
    trivial = idx.closure([])
    cyclic: dict[bytes, tuple[int, np.ndarray]] = {}
    for a in range(idx.size):
        m = idx.extend(trivial, a)
        cyclic.setdefault(mask_key(m), (a, m))
    found: dict[bytes, np.ndarray] = {}
    frontier = []
    for key, (_, m) in cyclic.items():
        found[key] = m
        frontier.append(key)
    reps = [a for a, _ in cyclic.values()]
    while frontier:
        new = []
        for key in frontier:
            k = found[key]
            cosets = idx.left_cosets(k)
            # <K, a> depends only on the double coset KaK.
            done = k.copy()
            for a in reps:
                if done[a]:
                    continue
                done[idx.double_coset(k, a, cosets)] = True
                m = idx.extend(k, a, cosets)
                mkey = mask_key(m)
                if mkey not in found:
                    found[mkey] = m
                    new.append(mkey)
        frontier = new
    return list(found.values())


def all_subgroups(
    g: PermGroup, order_bound: int = DEFAULT_ENUMERATION_BOUND
) -> GroupCatalog:
    """Every subgroup of ``g``, by breadth-first closure.

    Seeds are the cyclic subgroups; each known subgroup is extended by one
    cyclic subgroup it does not contain, until no new subgroup appears.
    """
    _require_enumerable(g, min(order_bound, SUBGROUP_LATTICE_LIMIT))
    idx = ElementIndex(g)
    pairs = [(idx.subgroup(m), m) for m in _subgroup_masks(idx)]
    pairs.sort(key=lambda p: group_sort_key(p[0]))
    return GroupCatalog(
        degree=g.degree,
        entries=tuple(p[0] for p in pairs),
        dedup_mode="all-subgroups",
        masks=tuple(p[1] for p in pairs),
    )


def are_conjugate(a: PermGroup, b: PermGroup, ambient: PermGroup | None = None) -> Permutation | None:
    """An element ``s`` of ``ambient`` (default: the symmetric group) with
    ``s A s^-1 == B``, or None."""
    _check_same_degree(a, b)
    if ambient is None:
        ambient = symmetric_group(a.degree)
    if a.order() != b.order():
        return None
    b_set = b.element_set
    a_elems = a.elements()
    for s in ambient.elements():
        si = inverse(s)
        if all(compose(compose(s, x), si) in b_set for x in a_elems):
            return s
    return None


@lru_cache(maxsize=None)
def transitive_groups(
    degree: int,
    max_degree: int = DEFAULT_MAX_CATALOG_DEGREE,
    bound: int = DEFAULT_ENUMERATION_BOUND,
) -> GroupCatalog:
    """Transitive subgroups of the symmetric group, one per conjugacy class.

    Computed from scratch: filter the full subgroup lattice on transitivity,
    then keep the first subgroup (in canonical order) of each conjugacy class.
    """
    if degree < 1:
        raise InputError("degree must be positive")
    if degree > min(max_degree, MAX_CATALOG_DEGREE):
        raise CapacityError(f"degree {degree} exceeds the catalog maximum {max_degree}")
    sym = symmetric_group(degree)
    lattice = all_subgroups(sym, order_bound=bound)
    idx = ElementIndex(sym)
    reps: list[PermGroup] = []
    rep_masks = []
    seen: set[bytes] = set()
    for grp, mask in zip(lattice.entries, lattice.masks):
        if not grp.is_transitive() or mask_key(mask) in seen:
            continue
        reps.append(grp)
        rep_masks.append(mask)
        members = np.flatnonzero(mask)
        for s in range(idx.size):
            image = idx.empty()
            image[idx.conj(s)[members]] = True
            seen.add(mask_key(image))
    return GroupCatalog(
        degree=degree,
        entries=tuple(reps),
        dedup_mode="up-to-conjugacy",
        masks=tuple(rep_masks),
    )


@dataclass(frozen=True)
class WielandtViolation:
    G: PermGroup
    H: PermGroup
    report: WielandtReport


@dataclass(frozen=True)
class WielandtSweep:
    degrees: tuple[int, ...]
    groups_checked: int
    pairs_checked: int
    violations: tuple[WielandtViolation, ...]


def _sweep_group(task):
    degree, gens, bound = task
    G = PermGroup(degree, gens)
    bad = []
    subgroups = all_subgroups(G, order_bound=bound)
    for H in subgroups:
        report = wielandt_verify(H, G, bound=bound)
        if not report.consistent:
            bad.append((tuple(H.generators), report))
    return len(subgroups), bad


def wielandt_sweep(
    max_degree: int,
    jobs: int = 1,
    bound: int = DEFAULT_ENUMERATION_BOUND,
    catalog_max: int = DEFAULT_MAX_CATALOG_DEGREE,
) -> WielandtSweep:
    """Run ``wielandt_verify`` on every subgroup of every cataloged transitive group."""
    tasks = [
        (d, tuple(G.generators), bound)
        for d in range(1, max_degree + 1)
        for G in transitive_groups(d, max_degree=catalog_max, bound=bound)
    ]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_sweep_group, tasks))
    else:
        results = [_sweep_group(t) for t in tasks]
    violations = []
    for (d, gens, _), (_, bad) in zip(tasks, results):
        G = PermGroup(d, gens)
        violations.extend(WielandtViolation(G, PermGroup(d, hg), rep) for hg, rep in bad)
    return WielandtSweep(
        degrees=tuple(range(1, max_degree + 1)),
        groups_checked=len(tasks),
        pairs_checked=sum(r[0] for r in results),
        violations=tuple(violations),
    )
