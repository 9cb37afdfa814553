"""Abstract simplicial complexes and their desk-scale topology.

Faces are frozensets of string vertex ids.  Every non-void complex
contains the empty face.  Reduced integer homology is computed from
Smith normal forms of the boundary matrices, so torsion is visible.
The ball/sphere classifier checks homology plus pseudomanifold
conditions; these are necessary conditions, not a PL certificate.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional, Union

from .errors import FaceNotInComplex, NotCollapsibleWithThisMatching
from .poset import (
    ALPHA,
    BETA,
    Chain2Product,
    FinitePoset,
    IntervalHandle,
    product_with_chain2,
)
from .snf import smith_diagonal

Face = frozenset

BALL_LIKE = "BallLike"
SPHERE_LIKE = "SphereLike"
NEITHER = "Neither"


class SimplicialComplex:
    """A finite abstract simplicial complex."""

    def __init__(self, faces: Iterable[frozenset]):
        faces = frozenset(frozenset(f) for f in faces)
        if faces and frozenset() not in faces:
            raise ValueError("a non-void complex must contain the empty face")
        for f in faces:
            for v in f:
                if f - {v} not in faces:
                    raise ValueError(f"not downward closed at {sorted(f)}")
        self._faces = faces

    @classmethod
    def void(cls) -> "SimplicialComplex":
        return cls(())

    @classmethod
    def closure(cls, family: Iterable[Iterable[str]]) -> "SimplicialComplex":
        """The complex generated by a family of finite vertex sets."""
        faces = set()
        for member in family:
            member = tuple(sorted(set(member)))
            for k in range(len(member) + 1):
                for sub in itertools.combinations(member, k):
                    faces.add(frozenset(sub))
        return cls(faces)

    # -- queries -----------------------------------------------------------

    @property
    def faces(self) -> frozenset:
        return self._faces

    def __len__(self) -> int:
        return len(self._faces)

    def __contains__(self, face) -> bool:
        return frozenset(face) in self._faces

    def __eq__(self, other) -> bool:
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self._faces == other._faces

    def __hash__(self):
        return hash(self._faces)

    def __repr__(self) -> str:
        if self.is_void:
            return "SimplicialComplex(void)"
        return f"SimplicialComplex(dim {self.dim}, {len(self._faces)} faces)"

    @property
    def is_void(self) -> bool:
        return not self._faces

    @property
    def dim(self) -> int:
        """Dimension; -1 for the empty complex.  Void complexes have none."""
        if self.is_void:
            raise ValueError("the void complex has no dimension")
        return max(len(f) for f in self._faces) - 1

    @cached_property
    def vertices(self) -> tuple[str, ...]:
        return tuple(sorted({v for f in self._faces for v in f}))

    @cached_property
    def by_dim(self) -> dict[int, list[tuple[str, ...]]]:
        """Faces as sorted tuples, grouped by dimension, lexicographic order."""
        out: dict[int, list[tuple[str, ...]]] = {}
        for f in self._faces:
            out.setdefault(len(f) - 1, []).append(tuple(sorted(f)))
        for lst in out.values():
            lst.sort()
        return out

    @cached_property
    def facets(self) -> tuple[frozenset, ...]:
        """Maximal faces, sorted by (dimension, vertex tuple)."""
        vs = self.vertices
        out = [
            f
            for f in self._faces
            if not any(v not in f and (f | {v}) in self._faces for v in vs)
        ]
        return tuple(sorted(out, key=lambda f: (len(f), tuple(sorted(f)))))

    def face_count(self) -> int:
        return len(self._faces)

    # -- constructions -------------------------------------------------------

    def link(self, face: Iterable[str]) -> "SimplicialComplex":
        face = frozenset(face)
        if face not in self._faces:
            raise FaceNotInComplex(f"{sorted(face)} is not a face")
        return SimplicialComplex(
            t for t in self._faces if not (t & face) and (t | face) in self._faces
        )

    def deletion(self, vertices: Iterable[str]) -> "SimplicialComplex":
        vs = frozenset(vertices)
        return SimplicialComplex(t for t in self._faces if not (t & vs))

    def join(self, other: "SimplicialComplex") -> "SimplicialComplex":
        """Join; the other complex is relabelled if vertex names collide."""
        mine = set(self.vertices)
        clash = mine & set(other.vertices)
        rename = {}
        for v in other.vertices:
            w = v
            while w in mine or w in rename.values():
                w = w + "'"
            rename[v] = w
        if clash:
            other_faces = [frozenset(rename[v] for v in f) for f in other._faces]
        else:
            other_faces = list(other._faces)
        return SimplicialComplex(
            s | t for s in self._faces for t in other_faces
        )

    def to_json_dict(self) -> dict:
        return {"facets": sorted(sorted(f) for f in self.facets)}

    @classmethod
    def from_json_dict(cls, data: dict) -> "SimplicialComplex":
        return cls.closure(data["facets"])


def order_complex(arg: Union[FinitePoset, IntervalHandle]) -> SimplicialComplex:
    """The complex of chains of a poset (or of an interval handle)."""
    P = arg.as_poset() if isinstance(arg, IntervalHandle) else arg
    return SimplicialComplex(P.chains())


# -- homology ----------------------------------------------------------------


@dataclass(frozen=True)
class HomologyProfile:
    """Reduced integer homology, one entry per dimension from -1 up.

    ``betti[i]`` and ``torsion[i]`` describe dimension ``i - 1``; the
    dimension -1 slot is nonzero exactly for the empty complex.
    """

    betti: tuple[int, ...]
    torsion: tuple[tuple[int, ...], ...]

    MIN_DIM = -1

    def betti_at(self, d: int) -> int:
        i = d - self.MIN_DIM
        return self.betti[i] if 0 <= i < len(self.betti) else 0

    def torsion_at(self, d: int) -> tuple[int, ...]:
        i = d - self.MIN_DIM
        return self.torsion[i] if 0 <= i < len(self.torsion) else ()

    @property
    def is_trivial(self) -> bool:
        return not any(self.betti) and not any(self.torsion)

    def is_sphere(self, d: int) -> bool:
        if any(self.torsion):
            return False
        return all(
            b == (1 if i + self.MIN_DIM == d else 0)
            for i, b in enumerate(self.betti)
        ) and self.betti_at(d) == 1

    def to_json_dict(self) -> dict:
        return {
            "min_dim": self.MIN_DIM,
            "betti": list(self.betti),
            "torsion": [list(t) for t in self.torsion],
        }


def reduced_homology(cx: SimplicialComplex) -> HomologyProfile:
    """Reduced homology over the integers via Smith normal form."""
    if cx.is_void:
        return HomologyProfile(betti=(), torsion=())
    top = cx.dim
    by_dim = cx.by_dim
    sizes = {k: len(by_dim.get(k, ())) for k in range(-1, top + 1)}
    ranks = {}
    diags = {}
    for k in range(0, top + 1):
        mat = _boundary_matrix(cx, k)
        diag = smith_diagonal(mat)
        ranks[k] = len(diag)
        diags[k] = diag
    ranks[-1] = 0
    ranks[top + 1] = 0
    diags[top + 1] = []
    betti = []
    torsion = []
    for k in range(-1, top + 1):
        betti.append(sizes[k] - ranks[k] - ranks[k + 1])
        torsion.append(tuple(d for d in diags[k + 1] if d > 1))
    return HomologyProfile(betti=tuple(betti), torsion=tuple(torsion))


def _boundary_matrix(cx: SimplicialComplex, k: int) -> list[list[int]]:
    """Matrix of the boundary map C_k -> C_{k-1} in the fixed face order."""
    cols = cx.by_dim.get(k, [])
    rows = cx.by_dim.get(k - 1, [])
    row_index = {f: i for i, f in enumerate(rows)}
    mat = [[0] * len(cols) for _ in rows]
    for j, face in enumerate(cols):
        for i, v in enumerate(face):
            sub = face[:i] + face[i + 1 :]
            mat[row_index[sub]][j] = -1 if i % 2 else 1
    return mat


def euler_characteristic(cx: SimplicialComplex) -> int:
    """Non-reduced Euler characteristic from face counts."""
    if cx.is_void:
        return 0
    return sum(
        (-1) ** k * len(faces) for k, faces in cx.by_dim.items() if k >= 0
    )


# -- pseudomanifold checks ----------------------------------------------------


@dataclass(frozen=True)
class PseudomanifoldReport:
    is_pure: bool
    dimension: Optional[int]
    incidence_ok: bool
    ridge_connected: bool
    boundary_ridges: tuple[tuple[str, ...], ...]
    overfull_ridges: tuple[tuple[str, ...], ...]

    @property
    def is_pseudomanifold(self) -> bool:
        return self.is_pure and self.incidence_ok and self.ridge_connected

    @property
    def has_boundary(self) -> bool:
        return bool(self.boundary_ridges)


def pseudomanifold_report(cx: SimplicialComplex) -> PseudomanifoldReport:
    """Purity, ridge incidence (<= 2 facets), and ridge connectivity.

    Ridges are the (d-1)-dimensional faces; for d = 0 the single ridge is
    the empty face, so the check bounds the number of isolated points.
    """
    if cx.is_void:
        return PseudomanifoldReport(False, None, False, False, (), ())
    d = cx.dim
    facets = cx.facets
    is_pure = all(len(f) - 1 == d for f in facets)
    if d - 1 < -1:
        # the complex {<empty>}: one facet, nothing below it
        return PseudomanifoldReport(is_pure, d, True, True, (), ())
    incidence: dict[frozenset, list[int]] = {}
    for fi, f in enumerate(facets):
        if len(f) - 1 != d:
            continue
        for v in f:
            incidence.setdefault(f - {v}, []).append(fi)
    boundary = []
    overfull = []
    for ridge, touching in incidence.items():
        if len(touching) == 1:
            boundary.append(tuple(sorted(ridge)))
        elif len(touching) > 2:
            overfull.append(tuple(sorted(ridge)))
    top_facets = [i for i, f in enumerate(facets) if len(f) - 1 == d]
    adj: dict[int, set[int]] = {i: set() for i in top_facets}
    for touching in incidence.values():
        for a, b in itertools.combinations(touching, 2):
            adj[a].add(b)
            adj[b].add(a)
    connected = True
    if top_facets:
        seen = {top_facets[0]}
        stack = [top_facets[0]]
        while stack:
            for nb in adj[stack.pop()]:
                if nb not in seen:
                    seen.add(nb)
                    stack.append(nb)
        connected = len(seen) == len(top_facets)
    return PseudomanifoldReport(
        is_pure=is_pure,
        dimension=d,
        incidence_ok=not overfull,
        ridge_connected=connected,
        boundary_ridges=tuple(sorted(boundary)),
        overfull_ridges=tuple(sorted(overfull)),
    )


def boundary_complex(cx: SimplicialComplex) -> SimplicialComplex:
    """Closure of the ridges contained in exactly one facet."""
    report = pseudomanifold_report(cx)
    return SimplicialComplex.closure(report.boundary_ridges)


def classify_ball_or_sphere(cx: SimplicialComplex, expected_dim: int) -> str:
    """Homology-level verdict: BallLike, SphereLike, or Neither.

    SphereLike needs the reduced homology of a sphere of the expected
    dimension plus a boundaryless pseudomanifold; BallLike needs trivial
    reduced homology plus a pseudomanifold with boundary.  Necessary
    conditions only.
    """
    if cx.is_void or cx.dim != expected_dim:
        return NEITHER
    report = pseudomanifold_report(cx)
    if not report.is_pseudomanifold:
        return NEITHER
    profile = reduced_homology(cx)
    if not report.has_boundary and profile.is_sphere(expected_dim):
        return SPHERE_LIKE
    if report.has_boundary and profile.is_trivial:
        return BALL_LIKE
    return NEITHER


# -- discrete Morse matchings -------------------------------------------------


@dataclass(frozen=True)
class MorseMatching:
    """An involutive pairing of faces across one dimension step."""

    pairs: dict
    critical: frozenset

    def __post_init__(self):
        for a, b in self.pairs.items():
            if self.pairs.get(b) != a:
                raise ValueError("matching is not an involution")
            lo, hi = (a, b) if len(a) < len(b) else (b, a)
            if len(hi) != len(lo) + 1 or not lo < hi:
                raise ValueError("matched faces must be adjacent in dimension")

    @property
    def complete(self) -> bool:
        return not self.critical

    def partner(self, face) -> Optional[frozenset]:
        return self.pairs.get(frozenset(face))

    def matched_pairs(self) -> list[tuple[frozenset, frozenset]]:
        """Each pair once, as (lower, upper), deterministic order."""
        out = [
            (a, b)
            for a, b in self.pairs.items()
            if len(a) < len(b)
        ]
        out.sort(key=lambda p: (len(p[0]), tuple(sorted(p[0]))))
        return out


@dataclass(frozen=True)
class ProductCollapse:
    """The punctured product complex with its complete matching."""

    base: FinitePoset
    product: Chain2Product
    punctured: FinitePoset
    complex: SimplicialComplex
    matching: MorseMatching


def collapse_matching(P: FinitePoset) -> ProductCollapse:
    """Complete matching on the order complex of prod(P) minus its corners.

    Writing Q for the proper part of P x {a<b} with (bottom, b) removed,
    each chain is toggled on the a-partner of its first b-level entry,
    where an imagined (top, b) sentinel caps every chain.  The result is
    complete and acyclic, so the complex collapses to the void complex.
    """
    bottom, top = P.bottom(), P.top()
    if bottom is None or top is None or bottom == top:
        raise ValueError("need a bounded poset with distinct bottom and top")
    product = product_with_chain2(P)
    dropped = {
        product.at(bottom, ALPHA),
        product.at(top, BETA),
        product.at(bottom, BETA),
    }
    punctured = product.poset.subposet(
        e for e in product.poset.elements if e not in dropped
    )
    cx = order_complex(punctured)
    position = {e: i for i, e in enumerate(punctured.linear_extension())}

    def toggle(chain: frozenset) -> frozenset:
        members = sorted(chain, key=position.__getitem__)
        base_of = top
        for m in members:
            p, level = product.to_pair[m]
            if level == BETA:
                base_of = p
                break
        pivot = product.at(base_of, ALPHA)
        return chain ^ {pivot}

    pairs = {}
    for face in cx.faces:
        mate = toggle(face)
        if mate not in cx.faces:
            raise AssertionError("toggle left the complex")
        pairs[face] = mate
    for face, mate in pairs.items():
        if pairs[mate] != face:
            raise AssertionError("toggle is not an involution")
    matching = MorseMatching(pairs=pairs, critical=frozenset())
    return ProductCollapse(P, product, punctured, cx, matching)


def verify_acyclic(cx: SimplicialComplex, matching: MorseMatching) -> bool:
    """True iff the matched Hasse digraph of the face poset has no cycle.

    Cover edges of the face poset point downward except along matched
    pairs, which point upward.
    """
    faces = sorted(cx.faces, key=lambda f: (len(f), tuple(sorted(f))))
    index = {f: i for i, f in enumerate(faces)}
    succ: list[list[int]] = [[] for _ in faces]
    for f in faces:
        for v in f:
            sub = f - {v}
            if matching.pairs.get(sub) == f:
                succ[index[sub]].append(index[f])
            else:
                succ[index[f]].append(index[sub])
    indeg = [0] * len(faces)
    for outs in succ:
        for j in outs:
            indeg[j] += 1
    ready = [i for i, d in enumerate(indeg) if d == 0]
    seen = 0
    while ready:
        i = ready.pop()
        seen += 1
        for j in succ[i]:
            indeg[j] -= 1
            if indeg[j] == 0:
                ready.append(j)
    return seen == len(faces)


def collapse_to_void(
    cx: SimplicialComplex, matching: MorseMatching
) -> tuple[tuple[tuple[str, ...], tuple[str, ...]], ...]:
    """An explicit elementary-collapse sequence down to the void complex.

    Pairs are scheduled along a topological order of the precedence
    digraph (a pair goes first when its upper face blocks another pair's
    free face).  Each step is re-checked against the live complex.
    """
    if not matching.complete:
        raise NotCollapsibleWithThisMatching("matching leaves critical faces")
    faces = set(cx.faces)
    key_of = {}
    pair_list = matching.matched_pairs()
    for i, (lo, hi) in enumerate(pair_list):
        key_of[lo] = i
        key_of[hi] = i
    if len(key_of) != len(faces):
        raise NotCollapsibleWithThisMatching("matching does not cover the complex")

    succ: dict[int, set[int]] = {i: set() for i in range(len(pair_list))}
    for f in faces:
        for v in f:
            sub = f - {v}
            if matching.pairs.get(sub) != f:
                # f blocks sub's pair: collapse f's pair first
                succ[key_of[f]].add(key_of[sub])
    indeg = {i: 0 for i in succ}
    for outs in succ.values():
        for j in outs:
            indeg[j] += 1
    ready = sorted((i for i, d in indeg.items() if d == 0), reverse=True)
    order = []
    while ready:
        i = ready.pop()
        order.append(i)
        fresh = []
        for j in succ[i]:
            indeg[j] -= 1
            if indeg[j] == 0:
                fresh.append(j)
        if fresh:
            ready.extend(fresh)
            ready.sort(reverse=True)
    if len(order) != len(pair_list):
        raise NotCollapsibleWithThisMatching("matching contains a cycle")

    cofaces: dict[frozenset, list[frozenset]] = {f: [] for f in faces}
    for f in faces:
        for v in f:
            cofaces[f - {v}].append(f)
    alive = set(faces)
    steps = []
    for i in order:
        lo, hi = pair_list[i]
        live_cofaces = {g for g in cofaces[lo] if g in alive}
        if live_cofaces != {hi}:
            raise NotCollapsibleWithThisMatching(
                f"face {sorted(lo)} is not free when scheduled"
            )
        alive.discard(lo)
        alive.discard(hi)
        steps.append((tuple(sorted(lo)), tuple(sorted(hi))))
    if alive:
        raise NotCollapsibleWithThisMatching("faces left over after all pairs")
    return tuple(steps)
