"""Permutations and permutation groups with a Schreier-Sims stabilizer chain.

Points are 0-based internally. Cycle notation (the only text form) is 1-based.

Composition convention: ``compose(p, q)`` (also ``p * q``) applies ``q`` first,
then ``p``, i.e. ``(p * q)(i) == p(q(i))``.
"""

from __future__ import annotations

from collections import deque
from functools import cached_property, total_ordering
from math import prod
from typing import Iterable, Sequence

from .errors import CycleParseError, InputError


@total_ordering
class Permutation:
    """A bijection of ``{0, ..., degree - 1}`` stored as its image tuple.

    Ordering is lexicographic on the images, which is the canonical order used
    for deduplication and for every sorted output.
    """

    __slots__ = ("images",)

    def __init__(self, images: Iterable[int]):
        images = tuple(int(i) for i in images)
        if not images:
            raise InputError("a permutation needs degree >= 1")
        if sorted(images) != list(range(len(images))):
            raise InputError(f"{images} is not a bijection of 0..{len(images) - 1}")
        object.__setattr__(self, "images", images)

    @classmethod
    def _trusted(cls, images: tuple) -> Permutation:
        p = object.__new__(cls)
        object.__setattr__(p, "images", images)
        return p

    def __setattr__(self, name, value):
        raise AttributeError("Permutation is immutable")

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: Permutation) -> Permutation:
        return compose(self, other)

    def __eq__(self, other):
        if not isinstance(other, Permutation):
            return NotImplemented
        return self.images == other.images

    def __lt__(self, other):
        if not isinstance(other, Permutation):
            return NotImplemented
        return self.images < other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        return f"Permutation({format_cycles(self)!r}, degree={self.degree})"

    def __str__(self):
        return format_cycles(self)

    def __getstate__(self):
        return self.images

    def __setstate__(self, state):
        object.__setattr__(self, "images", state)

    def inverse(self) -> Permutation:
        return inverse(self)

    def is_identity(self) -> bool:
        return all(i == v for i, v in enumerate(self.images))

    def support(self) -> list[int]:
        """Points moved by the permutation, ascending."""
        return [i for i, v in enumerate(self.images) if i != v]

    def cycles(self) -> list[tuple[int, ...]]:
        """Non-trivial cycles in canonical order (0-based points)."""
        seen = set()
        out = []
        for start in range(self.degree):
            if start in seen or self.images[start] == start:
                continue
            cycle = [start]
            seen.add(start)
            j = self.images[start]
            while j != start:
                cycle.append(j)
                seen.add(j)
                j = self.images[j]
            out.append(tuple(cycle))
        return out


def identity(degree: int) -> Permutation:
    if degree < 1:
        raise InputError("degree must be positive")
    return Permutation._trusted(tuple(range(degree)))


def _check_degrees(p: Permutation, q: Permutation) -> None:
    if p.degree != q.degree:
        raise InputError(f"degree mismatch: {p.degree} vs {q.degree}")


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Return the permutation that applies ``q`` first, then ``p``."""
    _check_degrees(p, q)
    return Permutation._trusted(tuple(map(p.images.__getitem__, q.images)))


def inverse(p: Permutation) -> Permutation:
    out = [0] * p.degree
    for i, v in enumerate(p.images):
        out[v] = i
    return Permutation._trusted(tuple(out))


def conjugate(g: Permutation, h: Permutation) -> Permutation:
    """``g h g^-1``."""
    return compose(compose(g, h), inverse(g))


def parse_cycles(text: str, degree: int) -> Permutation:
    """Parse 1-based disjoint cycle notation such as ``"(1 2 3)(4 5)"``.

    ``"e"`` and ``"()"`` denote the identity; commas may separate points.
    """
    if degree < 1:
        raise InputError("degree must be positive")
    images = list(range(degree))
    used: set[int] = set()
    stripped = text.strip()
    if stripped == "e":
        return Permutation._trusted(tuple(images))
    pos = 0
    n = len(text)
    saw_cycle = False
    while pos < n:
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        if ch != "(":
            raise CycleParseError(f"expected '(' but found {ch!r}", text, pos)
        saw_cycle = True
        pos += 1
        cycle: list[int] = []
        while True:
            while pos < n and (text[pos].isspace() or text[pos] == ","):
                pos += 1
            if pos >= n:
                raise CycleParseError("unclosed '('", text, pos)
            if text[pos] == ")":
                pos += 1
                break
            start = pos
            while pos < n and text[pos].isdigit():
                pos += 1
            if start == pos:
                raise CycleParseError(f"unexpected {text[pos]!r}", text, pos)
            point = int(text[start:pos])
            if point < 1 or point > degree:
                raise CycleParseError(f"point {point} exceeds degree {degree}", text, start)
            if point - 1 in used:
                raise CycleParseError(f"repeated point {point}", text, start)
            used.add(point - 1)
            cycle.append(point - 1)
        for a, b in zip(cycle, cycle[1:] + cycle[:1]):
            images[a] = b
    if not saw_cycle:
        raise CycleParseError("empty permutation text", text, 0)
    return Permutation._trusted(tuple(images))


def format_cycles(p: Permutation) -> str:
    """Canonical 1-based cycle notation; the identity is ``"e"``."""
    cycles = p.cycles()
    if not cycles:
        return "e"
    return "".join("(" + " ".join(str(i + 1) for i in c) + ")" for c in cycles)


class _Level:
    __slots__ = ("point", "gens", "transversal")

    def __init__(self, point: int):
        self.point = point
        self.gens: list[Permutation] = []
        self.transversal: dict[int, Permutation] = {}

    def rebuild(self, degree: int) -> None:
        self.transversal = orbit_transversal(self.gens, self.point, degree)


def orbit_transversal(gens: Sequence[Permutation], point: int, degree: int) -> dict[int, Permutation]:
    """Map each orbit point ``q`` to an element sending ``point`` to ``q``.

    Breadth-first over ``gens`` in the given order, so the result is deterministic.
    """
    reps = {point: identity(degree)}
    queue = deque([point])
    while queue:
        p = queue.popleft()
        u = reps[p]
        for s in gens:
            q = s.images[p]
            if q not in reps:
                reps[q] = compose(s, u)
                queue.append(q)
    return reps


class PermGroup:
    """A permutation group given by generators, with a stabilizer chain.

    The chain is built by deterministic Schreier-Sims with base points in
    ascending numeric order (points with a trivial basic orbit are skipped). Instances are
    immutable. Two groups compare equal when each contains the other's
    generators.
    """

    def __init__(self, degree: int, generators: Iterable[Permutation] = ()):
        if degree < 1:
            raise InputError("degree must be positive")
        gens = tuple(generators)
        for g in gens:
            if not isinstance(g, Permutation):
                raise InputError(f"generator {g!r} is not a Permutation")
            if g.degree != degree:
                raise InputError(f"generator {g} has degree {g.degree}, expected {degree}")
        self.degree = degree
        self.generators = gens
        self._levels = self._schreier_sims([g for g in gens if not g.is_identity()])

    def _schreier_sims(self, gens: list[Permutation]) -> list[_Level]:
        n = self.degree
        # Every point but the last is a candidate base point, in ascending
        # order; levels with a trivial orbit are dropped once the chain is complete.
        levels = [_Level(p) for p in range(n - 1)]
        for g in gens:
            for lv in levels:
                lv.gens.append(g)
                if g.images[lv.point] != lv.point:
                    break
        for lv in levels:
            lv.rebuild(n)

        def sift(g: Permutation, start: int) -> tuple[Permutation, int]:
            for j in range(start, len(levels)):
                lv = levels[j]
                u = lv.transversal.get(g.images[lv.point])
                if u is None:
                    return g, j
                g = compose(inverse(u), g)
            return g, len(levels)

        i = len(levels) - 1
        while i >= 0:
            lv = levels[i]
            residue = None
            for u in list(lv.transversal.values()):
                for s in lv.gens:
                    su = compose(s, u)
                    schreier = compose(inverse(lv.transversal[su.images[lv.point]]), su)
                    if schreier.is_identity():
                        continue
                    h, j = sift(schreier, i + 1)
                    if not h.is_identity():
                        residue = (h, j)
                        break
                if residue:
                    break
            if residue is None:
                i -= 1
                continue
            h, j = residue
            for k in range(i + 1, j + 1):
                levels[k].gens.append(h)
                levels[k].rebuild(n)
            i = j
        return [lv for lv in levels if len(lv.transversal) > 1]

    # chain accessors

    @property
    def base(self) -> list[int]:
        return [lv.point for lv in self._levels]

    @property
    def transversals(self) -> list[dict[int, Permutation]]:
        return [dict(lv.transversal) for lv in self._levels]

    @property
    def strong_generators(self) -> list[Permutation]:
        return list(self._levels[0].gens) if self._levels else []

    def order(self) -> int:
        return prod(len(lv.transversal) for lv in self._levels)

    def __len__(self) -> int:
        return self.order()

    def identity(self) -> Permutation:
        return identity(self.degree)

    def sift(self, p: Permutation) -> Permutation:
        """Strip ``p`` through the chain; the residue is the identity iff ``p`` is in the group."""
        if p.degree != self.degree:
            raise InputError(f"degree mismatch: {p.degree} vs {self.degree}")
        for lv in self._levels:
            u = lv.transversal.get(p.images[lv.point])
            if u is None:
                return p
            p = compose(inverse(u), p)
        return p

    def contains(self, p: Permutation) -> bool:
        return self.sift(p).is_identity()

    __contains__ = contains

    def is_subgroup_of(self, other: PermGroup) -> bool:
        if self.degree != other.degree:
            raise InputError(f"degree mismatch: {self.degree} vs {other.degree}")
        return all(other.contains(g) for g in self.generators)

    def __eq__(self, other):
        if not isinstance(other, PermGroup):
            return NotImplemented
        return (
            self.degree == other.degree
            and self.order() == other.order()
            and self.is_subgroup_of(other)
        )

    def __hash__(self):
        return hash((self.degree, self.order()))

    def __repr__(self):
        gens = ", ".join(format_cycles(g) for g in self.generators)
        return f"PermGroup(degree={self.degree}, order={self.order()}, generators=[{gens}])"

    def __reduce__(self):
        return (PermGroup, (self.degree, self.generators))

    def _check_point(self, point: int) -> None:
        if not 0 <= point < self.degree:
            raise InputError(f"point {point + 1} out of range 1..{self.degree}")

    def orbit(self, point: int) -> frozenset[int]:
        self._check_point(point)
        return frozenset(self.transversal(point))

    def orbits(self) -> list[frozenset[int]]:
        """Orbit partition, ordered by least point."""
        seen: set[int] = set()
        out = []
        for p in range(self.degree):
            if p not in seen:
                orb = self.orbit(p)
                seen |= orb
                out.append(orb)
        return out

    def transversal(self, point: int) -> dict[int, Permutation]:
        """Coset representatives for the stabilizer of ``point``, keyed by image.

        Taken from the stabilizer chain when ``point`` is the first base point.
        """
        self._check_point(point)
        if self._levels and self._levels[0].point == point:
            return dict(self._levels[0].transversal)
        return orbit_transversal(self.generators, point, self.degree)

    def stabilizer(self, point: int) -> PermGroup:
        self._check_point(point)
        if self._levels and self._levels[0].point == point:
            return PermGroup(self.degree, self._levels[1].gens if len(self._levels) > 1 else ())
        reps = self.transversal(point)
        schreier = set()
        for u in reps.values():
            for s in self.generators:
                su = compose(s, u)
                g = compose(inverse(reps[su.images[point]]), su)
                if not g.is_identity():
                    schreier.add(g)
        return PermGroup(self.degree, sorted(schreier))

    def is_transitive(self) -> bool:
        return len(self.orbit(0)) == self.degree

    @cached_property
    def _element_tuple(self) -> tuple[Permutation, ...]:
        elems = [self.identity()]
        for lv in reversed(self._levels):
            elems = [compose(u, e) for u in lv.transversal.values() for e in elems]
        return tuple(sorted(elems))

    def elements(self) -> tuple[Permutation, ...]:
        """All elements in canonical (lexicographic) order."""
        return self._element_tuple

    @cached_property
    def element_set(self) -> frozenset[Permutation]:
        return frozenset(self._element_tuple)


def group_from_generators(gens: Iterable[Permutation], degree: int | None = None) -> PermGroup:
    gens = list(gens)
    if degree is None:
        if not gens:
            raise InputError("degree is required for an empty generator list")
        degree = gens[0].degree
    return PermGroup(degree, gens)


def trivial_group(degree: int) -> PermGroup:
    return PermGroup(degree, ())


def symmetric_group(degree: int) -> PermGroup:
    if degree < 3:
        gens = [Permutation((1, 0))] if degree == 2 else []
        return PermGroup(degree, gens)
    transposition = Permutation((1, 0) + tuple(range(2, degree)))
    cycle = Permutation(tuple(range(1, degree)) + (0,))
    return PermGroup(degree, [transposition, cycle])


def is_member(group: PermGroup, p: Permutation) -> bool:
    return group.contains(p)


def order(group: PermGroup) -> int:
    return group.order()


def orbit(group: PermGroup, point: int) -> frozenset[int]:
    return group.orbit(point)


def point_stabilizer(group: PermGroup, point: int) -> PermGroup:
    return group.stabilizer(point)


def is_transitive(group: PermGroup) -> bool:
    return group.is_transitive()
