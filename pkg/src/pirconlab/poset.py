"""Finite posets represented by their cover relations.

Elements are opaque strings.  Reachability is cached as per-element bit
masks, which keeps interval extraction, joins, and isomorphism search
cheap at desk scale (everything here is intended for posets of at most a
few hundred elements).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import (
    CycleDetected,
    NoMaximum,
    NotComparable,
    RedundantCover,
    SizeLimitExceeded,
    UnknownId,
)

ALPHA = "a"  # lower level of the two-element chain
BETA = "b"  # upper level

ISO_SIZE_CAP = 64


class FinitePoset:
    """Immutable finite poset on string ids.

    The public constructor takes the cover relation and validates it:
    the digraph must be acyclic and no listed cover may be implied
    transitively.  Use :meth:`from_relation` to build from an arbitrary
    order relation (covers are then derived).
    """

    def __init__(self, elements: Sequence[str], covers: Iterable[tuple[str, str]]):
        elements = tuple(elements)
        if len(set(elements)) != len(elements):
            raise ValueError("element ids must be unique")
        index = {e: i for i, e in enumerate(elements)}
        cover_pairs = []
        seen = set()
        for a, b in covers:
            if a not in index or b not in index:
                raise UnknownId(f"cover ({a!r}, {b!r}) mentions an unknown id")
            if a == b:
                raise CycleDetected(f"self-cover at {a!r}")
            if (a, b) not in seen:
                seen.add((a, b))
                cover_pairs.append((a, b))

        n = len(elements)
        upper = {e: [] for e in elements}
        lower = {e: [] for e in elements}
        for a, b in cover_pairs:
            upper[a].append(b)
            lower[b].append(a)

        order = self._topological(elements, upper)

        # reachability masks over the cover digraph
        up = [0] * n
        for e in reversed(order):
            i = index[e]
            mask = 1 << i
            for c in upper[e]:
                mask |= up[index[c]]
            up[i] = mask
        down = [0] * n
        for e in order:
            i = index[e]
            mask = 1 << i
            for c in lower[e]:
                mask |= down[index[c]]
            down[i] = mask

        # irredundancy: a cover (a, b) must not also be reachable via a
        # longer path, i.e. via some other upper cover of a
        for a, b in cover_pairs:
            bi = index[b]
            for c in upper[a]:
                if c != b and (up[index[c]] >> bi) & 1:
                    raise RedundantCover(
                        f"cover ({a!r}, {b!r}) is implied transitively"
                    )

        self.elements = elements
        self._index = index
        self._up = up
        self._down = down
        self._cover_pairs = frozenset(cover_pairs)
        self._upper = {e: tuple(sorted(upper[e])) for e in elements}
        self._lower = {e: tuple(sorted(lower[e])) for e in elements}

    @staticmethod
    def _topological(elements, upper) -> list[str]:
        indeg = {e: 0 for e in elements}
        for e in elements:
            for c in upper[e]:
                indeg[c] += 1
        ready = [e for e in elements if indeg[e] == 0]
        out = []
        while ready:
            e = ready.pop()
            out.append(e)
            for c in upper[e]:
                indeg[c] -= 1
                if indeg[c] == 0:
                    ready.append(c)
        if len(out) != len(elements):
            raise CycleDetected("cover digraph contains a directed cycle")
        return out

    @classmethod
    def from_relation(
        cls, elements: Sequence[str], relation: Iterable[tuple[str, str]]
    ) -> "FinitePoset":
        """Build from an order relation; covers are derived by transitive reduction.

        The relation may omit reflexive pairs and need not be closed; the
        transitive closure is computed here.  Antisymmetry is enforced.
        """
        elements = tuple(elements)
        if len(set(elements)) != len(elements):
            raise ValueError("element ids must be unique")
        index = {e: i for i, e in enumerate(elements)}
        n = len(elements)
        up = [1 << i for i in range(n)]
        for a, b in relation:
            if a not in index or b not in index:
                raise UnknownId(f"relation ({a!r}, {b!r}) mentions an unknown id")
            if a != b:
                up[index[a]] |= 1 << index[b]
        changed = True
        while changed:
            changed = False
            for i in range(n):
                acc = up[i]
                rest = acc & ~(1 << i)
                while rest:
                    j = (rest & -rest).bit_length() - 1
                    rest &= rest - 1
                    acc |= up[j]
                if acc != up[i]:
                    up[i] = acc
                    changed = True
        for i in range(n):
            for j in range(i + 1, n):
                if (up[i] >> j) & 1 and (up[j] >> i) & 1:
                    raise CycleDetected(
                        f"antisymmetry fails between {elements[i]!r} and {elements[j]!r}"
                    )
        covers = []
        for i in range(n):
            strict = up[i] & ~(1 << i)
            for j in _bit_indices(strict):
                mid = strict & ~(1 << j)
                if all(not (up[k] >> j) & 1 for k in _bit_indices(mid)):
                    covers.append((elements[i], elements[j]))
        return cls(elements, covers)

    # -- basic queries ---------------------------------------------------

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, e: str) -> bool:
        return e in self._index

    def __repr__(self) -> str:
        return (
            f"FinitePoset({len(self.elements)} elements,"
            f" {len(self._cover_pairs)} covers)"
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, FinitePoset):
            return NotImplemented
        return (
            sorted(self.elements) == sorted(other.elements)
            and self._cover_pairs == other._cover_pairs
        )

    def __hash__(self):
        return hash((frozenset(self.elements), self._cover_pairs))

    def _require(self, *ids: str) -> None:
        for e in ids:
            if e not in self._index:
                raise UnknownId(f"{e!r} is not an element")

    def leq(self, a: str, b: str) -> bool:
        self._require(a, b)
        return (self._up[self._index[a]] >> self._index[b]) & 1 == 1

    def lt(self, a: str, b: str) -> bool:
        return a != b and self.leq(a, b)

    def comparable(self, a: str, b: str) -> bool:
        return self.leq(a, b) or self.leq(b, a)

    @property
    def covers(self) -> frozenset[tuple[str, str]]:
        return self._cover_pairs

    def upper_covers(self, e: str) -> tuple[str, ...]:
        self._require(e)
        return self._upper[e]

    def lower_covers(self, e: str) -> tuple[str, ...]:
        self._require(e)
        return self._lower[e]

    def minimal_elements(self) -> tuple[str, ...]:
        return tuple(sorted(e for e in self.elements if not self._lower[e]))

    def maximal_elements(self) -> tuple[str, ...]:
        return tuple(sorted(e for e in self.elements if not self._upper[e]))

    def bottom(self) -> Optional[str]:
        mins = self.minimal_elements()
        return mins[0] if len(mins) == 1 else None

    def top(self) -> Optional[str]:
        maxs = self.maximal_elements()
        return maxs[0] if len(maxs) == 1 else None

    def coatoms(self) -> tuple[str, ...]:
        top = self.top()
        if top is None:
            raise NoMaximum("poset has no maximum")
        return self._lower[top]

    def _members_of(self, mask: int) -> tuple[str, ...]:
        return tuple(self.elements[j] for j in _bit_indices(mask))

    def up_set(self, e: str) -> tuple[str, ...]:
        """All x with e <= x."""
        self._require(e)
        return self._members_of(self._up[self._index[e]])

    def down_set(self, e: str) -> tuple[str, ...]:
        self._require(e)
        return self._members_of(self._down[self._index[e]])

    def strict_down_set(self, e: str) -> frozenset[str]:
        return frozenset(self.down_set(e)) - {e}

    # -- derived posets --------------------------------------------------

    def subposet(self, members: Iterable[str]) -> "FinitePoset":
        """Induced subposet; covers are recomputed inside the subset."""
        chosen = set(members)
        members = [e for e in self.elements if e in chosen]
        if len(members) != len(chosen):
            raise UnknownId("subposet members must be elements")
        rel = [
            (a, b) for a in members for b in members if a != b and self.leq(a, b)
        ]
        return FinitePoset.from_relation(members, rel)

    def interval(self, x: str, y: str) -> "IntervalHandle":
        if not self.leq(x, y):
            raise NotComparable(f"{x!r} <= {y!r} does not hold")
        mask = self._up[self._index[x]] & self._down[self._index[y]]
        return IntervalHandle(self, x, y, self._members_of(mask))

    def open_interval(self, x: str, y: str) -> "FinitePoset":
        members = [z for z in self.interval(x, y).members if z not in (x, y)]
        return self.subposet(members)

    def half_open_lower(self, x: str, y: str) -> "FinitePoset":
        """[x, y) as an induced poset."""
        return self.subposet(z for z in self.interval(x, y).members if z != y)

    def half_open_upper(self, x: str, y: str) -> "FinitePoset":
        """(x, y] as an induced poset."""
        return self.subposet(z for z in self.interval(x, y).members if z != x)

    def principal_ideal(self, y: str) -> "FinitePoset":
        self._require(y)
        return self.subposet(self.down_set(y))

    def principal_filter(self, y: str) -> "FinitePoset":
        self._require(y)
        return self.subposet(self.up_set(y))

    def proper_part(self) -> "FinitePoset":
        bottom, top = self.bottom(), self.top()
        if bottom is None or top is None:
            raise ValueError("proper part needs a minimum and a maximum")
        return self.subposet(e for e in self.elements if e not in (bottom, top))

    # -- structure -------------------------------------------------------

    def is_graded(self) -> Optional[dict[str, int]]:
        """The unique rank function, or None.

        Graded means every principal ideal has maximal chains of one
        common size; equivalently the longest-chain height increases by
        exactly one along every cover.
        """
        height = {}
        for e in self._topological(self.elements, self._upper):
            lows = self._lower[e]
            height[e] = 0 if not lows else 1 + max(height[a] for a in lows)
        for a, b in self._cover_pairs:
            if height[b] != height[a] + 1:
                return None
        return height

    def height(self) -> dict[str, int]:
        """Longest-chain height of each element (0 on minimal elements)."""
        out = {}
        for e in self._topological(self.elements, self._upper):
            lows = self._lower[e]
            out[e] = 0 if not lows else 1 + max(out[a] for a in lows)
        return out

    def join(self, x: str, y: str) -> Optional[str]:
        """Least upper bound of x and y, if it exists."""
        self._require(x, y)
        ub = self._up[self._index[x]] & self._up[self._index[y]]
        for j in _bit_indices(ub):
            if ub & ~self._up[j] == 0:
                return self.elements[j]
        return None

    def linear_extension(self) -> tuple[str, ...]:
        """Total order refining <=; ties broken by smallest id."""
        indeg = {e: len(self._lower[e]) for e in self.elements}
        ready = sorted(e for e in self.elements if indeg[e] == 0)
        out = []
        while ready:
            e = ready.pop(0)
            out.append(e)
            fresh = []
            for c in self._upper[e]:
                indeg[c] -= 1
                if indeg[c] == 0:
                    fresh.append(c)
            if fresh:
                ready.extend(fresh)
                ready.sort()
        return tuple(out)

    def chains(self) -> list[frozenset[str]]:
        """Every chain (totally ordered subset), the empty chain included.

        Each chain is produced exactly once: elements are appended in
        increasing order of a fixed linear extension, so every chain is
        built by repeatedly adding a new maximum.
        """
        position = {e: i for i, e in enumerate(self.linear_extension())}
        above = {
            e: sorted(
                (x for x in self.up_set(e) if x != e), key=position.__getitem__
            )
            for e in self.elements
        }
        out = [frozenset()]

        def grow(chain: tuple[str, ...]) -> None:
            out.append(frozenset(chain))
            for x in above[chain[-1]]:
                grow(chain + (x,))

        for e in sorted(self.elements, key=position.__getitem__):
            grow((e,))
        return out

    # -- serialization ---------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "elements": sorted(self.elements),
            "covers": sorted([a, b] for a, b in self._cover_pairs),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_json_dict(cls, data: dict) -> "FinitePoset":
        return cls(data["elements"], [tuple(p) for p in data["covers"]])


@dataclass(frozen=True)
class IntervalHandle:
    """A closed interval [x, y] of a parent poset."""

    parent: FinitePoset
    lower: str
    upper: str
    members: tuple[str, ...]

    def as_poset(self) -> FinitePoset:
        return self.parent.subposet(self.members)

    def __len__(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class Chain2Product:
    """A poset times the two-element chain {a < b}, with pair bookkeeping."""

    base: FinitePoset
    poset: FinitePoset
    to_pair: dict
    of_pair: dict

    def at(self, p: str, level: str) -> str:
        return self.of_pair[(p, level)]


def product_with_chain2(P: FinitePoset) -> Chain2Product:
    """P x {a < b} ordered componentwise."""
    ids = []
    to_pair = {}
    of_pair = {}
    for p in P.elements:
        for level in (ALPHA, BETA):
            pid = f"({p},{level})"
            ids.append(pid)
            to_pair[pid] = (p, level)
            of_pair[(p, level)] = pid
    rel = []
    for p in P.elements:
        for q in P.elements:
            if P.leq(p, q):
                rel.append((of_pair[(p, ALPHA)], of_pair[(q, ALPHA)]))
                rel.append((of_pair[(p, BETA)], of_pair[(q, BETA)]))
                rel.append((of_pair[(p, ALPHA)], of_pair[(q, BETA)]))
    poset = FinitePoset.from_relation(ids, rel)
    return Chain2Product(P, poset, to_pair, of_pair)


def is_isomorphic(
    P: FinitePoset,
    Q: FinitePoset,
    pins: Optional[dict[str, str]] = None,
    max_size: int = ISO_SIZE_CAP,
) -> Optional[dict[str, str]]:
    """An order isomorphism P -> Q, or None.

    Complete backtracking search over colour classes produced by iterated
    degree refinement; ``pins`` forces chosen images.
    """
    if len(P) > max_size or len(Q) > max_size:
        raise SizeLimitExceeded(f"isomorphism search capped at {max_size} elements")
    if len(P) != len(Q):
        return None

    pc = _refine_colors(P)
    qc = _refine_colors(Q)
    if sorted(pc.values()) != sorted(qc.values()):
        return None

    pins = dict(pins or {})
    for a, b in pins.items():
        if a not in P.elements or b not in Q.elements:
            raise UnknownId("pin mentions an unknown id")
        if pc[a] != qc[b]:
            return None

    by_color_q: dict[int, list[str]] = {}
    for e in sorted(Q.elements):
        by_color_q.setdefault(qc[e], []).append(e)

    order = sorted(P.elements, key=lambda e: (len(by_color_q[pc[e]]), e))
    order = list(pins) + [e for e in order if e not in pins]

    mapping: dict[str, str] = {}
    used: set[str] = set()

    def compatible(a: str, b: str) -> bool:
        for x, y in mapping.items():
            if P.leq(a, x) != Q.leq(b, y):
                return False
            if P.leq(x, a) != Q.leq(y, b):
                return False
        return True

    def extend(k: int) -> bool:
        if k == len(order):
            return True
        a = order[k]
        candidates = [pins[a]] if a in pins else by_color_q[pc[a]]
        for b in candidates:
            if b in used or not compatible(a, b):
                continue
            mapping[a] = b
            used.add(b)
            if extend(k + 1):
                return True
            del mapping[a]
            used.discard(b)
        return False

    if extend(0):
        return dict(mapping)
    return None


def _refine_colors(P: FinitePoset) -> dict[str, int]:
    graded = P.is_graded()
    color = dict(graded) if graded is not None else {e: 0 for e in P.elements}
    for _ in range(len(P.elements) + 1):
        sig = {}
        for e in P.elements:
            sig[e] = (
                color[e],
                tuple(sorted(color[c] for c in P.lower_covers(e))),
                tuple(sorted(color[c] for c in P.upper_covers(e))),
            )
        canon = {s: i for i, s in enumerate(sorted(set(sig.values())))}
        fresh = {e: canon[sig[e]] for e in P.elements}
        if fresh == color:
            break
        color = fresh
    return color


def _bit_indices(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low
