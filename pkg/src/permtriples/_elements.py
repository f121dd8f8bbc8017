"""Indexed element tables for enumerating subsets of a small group.

Elements of an ambient group are numbered in canonical (lexicographic) order
and subsets are boolean masks over those numbers. Multiplication is looked up
through per-element columns that are built lazily with numpy.
"""

from __future__ import annotations

import numpy as np

from .core import Permutation, PermGroup


class ElementIndex:
    def __init__(self, group: PermGroup):
        self.group = group
        self.elements: tuple[Permutation, ...] = group.elements()
        self.size = len(self.elements)
        self.degree = group.degree
        self.images = np.array([e.images for e in self.elements], dtype=np.int64).reshape(
            self.size, self.degree
        )
        # Most significant digit first, so lexicographic order == numeric order.
        self._weights = self.degree ** np.arange(self.degree - 1, -1, -1, dtype=np.int64)
        self.codes = self.images @ self._weights
        self._lookup = {e: i for i, e in enumerate(self.elements)}
        self.identity = self._lookup[group.identity()]
        self._right: dict[int, np.ndarray] = {}
        self._conj: dict[int, np.ndarray] = {}

    def index(self, p: Permutation) -> int:
        return self._lookup[p]

    def _locate(self, images: np.ndarray) -> np.ndarray:
        codes = images @ self._weights
        pos = np.searchsorted(self.codes, codes)
        return pos

    def right(self, g: int) -> np.ndarray:
        """``r[a] == index(element[a] * element[g])``."""
        col = self._right.get(g)
        if col is None:
            col = self._locate(self.images[:, self.images[g]])
            self._right[g] = col
        return col

    def conj(self, s: int) -> np.ndarray:
        """``c[a] == index(s * element[a] * s^-1)``."""
        col = self._conj.get(s)
        if col is None:
            simg = self.images[s]
            sinv = np.argsort(simg)
            col = self._locate(simg[self.images[:, sinv]])
            self._conj[s] = col
        return col

    def empty(self) -> np.ndarray:
        return np.zeros(self.size, dtype=bool)

    def closure(self, gens, start: np.ndarray | None = None) -> np.ndarray:
        """Mask of the subgroup generated by ``gens`` together with the group ``start``."""
        if start is None:
            mask = self.empty()
            mask[self.identity] = True
        else:
            mask = start.copy()
        gens = list(gens)
        if not gens:
            return mask
        frontier = np.flatnonzero(mask)
        while frontier.size:
            new = np.concatenate([self.right(g)[frontier] for g in gens])
            new = np.unique(new[~mask[new]])
            mask[new] = True
            frontier = new
        return mask

    def left_cosets(self, group_mask: np.ndarray) -> np.ndarray:
        """Rows ``right(k)`` for every ``k`` in the group, shape ``(|K|, size)``."""
        return np.stack([self.right(int(k)) for k in np.flatnonzero(group_mask)])

    def extend(self, group_mask: np.ndarray, a: int, cosets: np.ndarray | None = None) -> np.ndarray:
        """Mask of ``<K, a>`` for a subgroup ``K``, grown one left coset ``zK`` at a time.

        ``<K, a>`` is the closure of K under right multiplication by ``a`` and
        by K, so it suffices to step by ``a`` and saturate each new element to
        its left coset.
        """
        if cosets is None:
            cosets = self.left_cosets(group_mask)
        mask = group_mask.copy()
        step = self.right(a)
        frontier = np.flatnonzero(mask)
        while frontier.size:
            z = step[frontier]
            z = z[~mask[z]]
            if not z.size:
                break
            before = mask.copy()
            mask[cosets[:, z].ravel()] = True
            frontier = np.flatnonzero(mask & ~before)
        return mask

    def double_coset(self, group_mask: np.ndarray, a: int, cosets: np.ndarray) -> np.ndarray:
        """Indices of ``K a K``."""
        ka = self.right(a)[np.flatnonzero(group_mask)]
        return cosets[:, ka].ravel()

    def canonical_generators(self, mask: np.ndarray) -> list[int]:
        """Greedy generating set: smallest elements not already in the span."""
        span = self.empty()
        span[self.identity] = True
        gens: list[int] = []
        for a in np.flatnonzero(mask):
            if not span[a]:
                gens.append(int(a))
                span = self.extend(span, int(a))
        return gens

    def subgroup(self, mask: np.ndarray) -> PermGroup:
        gens = [self.elements[i] for i in self.canonical_generators(mask)]
        return PermGroup(self.degree, gens)

    def mask_of(self, group: PermGroup) -> np.ndarray:
        mask = self.empty()
        mask[[self._lookup[e] for e in group.elements()]] = True
        return mask


def mask_key(mask: np.ndarray) -> bytes:
    return np.packbits(mask).tobytes()
