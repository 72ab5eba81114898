"""Link functions of the five patterned matrix ensembles.

A link function maps an index pair (i, j) to the storage key of a matrix
entry; entries with equal link values within one ensemble are the same
random variable.  Vertices are 0-based, in {0, ..., n-1}.  Link values of
different kinds never compare equal, even when numerically identical; all
public helpers therefore take the kind explicitly and only ever compare
values within one kind.
"""

from __future__ import annotations

import enum
from typing import Union

import numpy as np

LValue = Union[int, tuple[int, int]]


class LinkKind(enum.Enum):
    """One of the five ensembles; serializes as a single character."""

    WIGNER = "W"
    TOEPLITZ = "T"
    HANKEL = "H"
    REVERSE_CIRCULANT = "R"
    SYMMETRIC_CIRCULANT = "S"

    @property
    def char(self) -> str:
        return self.value

    @classmethod
    def from_char(cls, c: str) -> "LinkKind":
        try:
            return cls(c)
        except ValueError:
            raise ValueError(f"unknown ensemble character {c!r}; expected one of W,T,H,R,S") from None


ALL_KINDS = tuple(LinkKind)

# Maximum number of solutions x of L(p, x) = t, uniform in n, p, t.
DELTA = {
    LinkKind.WIGNER: 1,
    LinkKind.TOEPLITZ: 2,
    LinkKind.HANKEL: 1,
    LinkKind.REVERSE_CIRCULANT: 1,
    LinkKind.SYMMETRIC_CIRCULANT: 2,
}


def delta(kind: LinkKind) -> int:
    return DELTA[kind]


def _check_vertex(n: int, v: int) -> None:
    if not 0 <= v < n:
        raise ValueError(f"vertex {v} out of range for n={n}")


def link_eval(kind: LinkKind, n: int, i: int, j: int) -> LValue:
    """Link value of the edge (i, j); symmetric in its vertex arguments."""
    if n < 1:
        raise ValueError("n must be >= 1")
    _check_vertex(n, i)
    _check_vertex(n, j)
    if kind is LinkKind.TOEPLITZ:
        return abs(i - j)
    if kind is LinkKind.HANKEL:
        return i + j
    if kind is LinkKind.REVERSE_CIRCULANT:
        return (i + j) % n
    if kind is LinkKind.SYMMETRIC_CIRCULANT:
        d = abs(i - j) % n
        return min(d, n - d)
    # Wigner: the unordered pair, stored as (min, max)
    return (min(i, j), max(i, j))


def link_solve(kind: LinkKind, n: int, prev: int, target: LValue) -> set[int]:
    """All x in {0,...,n-1} with link_eval(kind, n, prev, x) == target.

    The empty set is a valid result; cardinality never exceeds delta(kind).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    _check_vertex(n, prev)
    if kind is LinkKind.WIGNER:
        a, b = target
        if prev == a:
            return {b}
        if prev == b:
            return {a}
        return set()
    t = int(target)
    if kind is LinkKind.TOEPLITZ:
        return {x for x in (prev + t, prev - t) if 0 <= x < n}
    if kind is LinkKind.HANKEL:
        x = t - prev
        return {x} if 0 <= x < n else set()
    if kind is LinkKind.REVERSE_CIRCULANT:
        return {(t - prev) % n} if 0 <= t < n else set()
    # symmetric circulant
    if not 0 <= t <= n - t:
        return set()
    return {(prev + t) % n, (prev - t) % n}


def property_p_count(kind: LinkKind, n: int) -> int:
    """max over column pairs (i, j), i != j, of #{k : L(k,i) = L(k,j)}.

    Bounded uniformly in n for all five kinds; the bound controls how many
    rows can simultaneously tie two columns together.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    keys = encoded_lvalues(kind, n)
    # count equal entries between every pair of columns
    best = 0
    for i in range(n):
        eq = (keys[:, i][:, None] == keys).sum(axis=0)
        eq[i] = 0
        best = max(best, int(eq.max()))
    return best


def encoded_lvalues(kind: LinkKind, n: int) -> np.ndarray:
    """n x n int64 matrix of link values, injectively encoded per kind.

    Wigner pairs are packed as min*n + max.  Encodings are only comparable
    within a single kind.
    """
    i = np.arange(n, dtype=np.int64)
    a, b = i[:, None], i[None, :]
    if kind is LinkKind.TOEPLITZ:
        return np.abs(a - b)
    if kind is LinkKind.HANKEL:
        return a + b
    if kind is LinkKind.REVERSE_CIRCULANT:
        return (a + b) % n
    if kind is LinkKind.SYMMETRIC_CIRCULANT:
        d = np.abs(a - b) % n
        return np.minimum(d, n - d)
    return np.minimum(a, b) * n + np.maximum(a, b)


def lvalue_key_grid(kind: LinkKind, n: int) -> tuple[int, np.ndarray]:
    """(number of distinct storage slots, n x n slot-index matrix).

    Used to fill a patterned matrix from a flat vector of independent
    draws.  Wigner is excluded (its upper triangle is filled directly).
    """
    if kind is LinkKind.WIGNER:
        raise ValueError("Wigner entries are drawn per upper-triangle cell, not via a key grid")
    keys = encoded_lvalues(kind, n)
    sizes = {
        LinkKind.TOEPLITZ: n,
        LinkKind.HANKEL: 2 * n - 1,
        LinkKind.REVERSE_CIRCULANT: n,
        LinkKind.SYMMETRIC_CIRCULANT: n // 2 + 1,
    }
    return sizes[kind], keys


def branch_count(kind: LinkKind) -> int:
    """Number of enumeration branches used by the exact circuit counter.

    Branches partition the solution set of link_solve so that, over a grid
    of partial circuits, every solution appears in exactly one branch.
    """
    return 2 if kind in (LinkKind.TOEPLITZ, LinkKind.SYMMETRIC_CIRCULANT) else 1


def solve_branch_grid(
    kind: LinkKind,
    n: int,
    prev: np.ndarray,
    fa: np.ndarray,
    fb: np.ndarray,
    branch: int,
) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized link_solve against the target fixed by the edge (fa, fb).

    Returns (x, valid): candidate next vertices and a mask of grid cells
    where the branch yields a genuine, not-yet-seen solution.  Union over
    branches equals the full solution set, disjointly.
    """
    if kind is LinkKind.TOEPLITZ:
        t = np.abs(fa - fb)
        if branch == 0:
            x = prev + t
            return x, x < n
        x = prev - t
        return x, (x >= 0) & (t != 0)
    if kind is LinkKind.SYMMETRIC_CIRCULANT:
        d = np.abs(fa - fb) % n
        t = np.minimum(d, n - d)
        if branch == 0:
            return (prev + t) % n, np.ones(np.broadcast(prev, t).shape, dtype=bool)
        return (prev - t) % n, (2 * t) % n != 0
    if kind is LinkKind.HANKEL:
        x = fa + fb - prev
        return x, (x >= 0) & (x < n)
    if kind is LinkKind.REVERSE_CIRCULANT:
        t = (fa + fb) % n
        return (t - prev) % n, np.ones(np.broadcast(prev, t).shape, dtype=bool)
    # Wigner: x is the other endpoint of the stored pair, if prev is one of them
    a = np.minimum(fa, fb)
    b = np.maximum(fa, fb)
    x = np.where(prev == a, b, a)
    return x, (prev == a) | (prev == b)
