"""Group specifications, exact word metrics, BFS balls, and the left action.

Two families are built in:

* free groups of rank k, elements as reduced words over letters 1..k and
  their negatives, optionally with an augmented generating set (extra
  generator words of standard length 2, e.g. ``free:2:gens=a,b,ab``);
* lattices Z^d with an arbitrary finite symmetric generating set of
  integer vectors, e.g. ``zd:2:gens=(1,0),(0,1)``.

Both have cheap, decidable word problems, so every norm and distance in
the package is an exact integer. Free-group norms come from reduced word
length (standard set) or from a shortest-segmentation dynamic program
(augmented sets); lattice norms are read from BFS tables. Together a tree
and a flat lattice witness both the hyperbolic and the non-hyperbolic
regime on a desk-scale window.
"""
from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass

import numpy as np

from .errors import (
    ConstructionError,
    DomainError,
    OutOfWindowError,
    ParseError,
    ResourceCapError,
)

Word = tuple[int, ...]
Vector = tuple[int, ...]

DEFAULT_BALL_CAP = 5_000_000

_LETTERS = "abcdefghijklmnopqrstuvwxyz"


# ---------------------------------------------------------------------------
# elements


@dataclass(frozen=True)
class GroupElement:
    """An element of a fixed group spec.

    ``data`` is a reduced word (tuple of nonzero signed letters) for free
    groups, or an integer coordinate vector for lattices.
    """

    spec: "GroupSpec"
    data: tuple[int, ...]

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        if not isinstance(other, GroupElement):
            return NotImplemented
        if self.spec != other.spec:
            raise DomainError("cannot multiply elements of different group specs")
        return GroupElement(self.spec, self.spec._mul_data(self.data, other.data))

    def inverse(self) -> "GroupElement":
        return GroupElement(self.spec, self.spec._inv_data(self.data))

    def is_identity(self) -> bool:
        return self.spec._is_identity_data(self.data)

    def __str__(self) -> str:
        return self.spec.format_element(self)

    def __repr__(self) -> str:
        return self.spec.format_element(self)


# ---------------------------------------------------------------------------
# specs


class GroupSpec:
    """Common interface of the built-in group families."""

    def identity(self) -> GroupElement:
        raise NotImplementedError

    def generator_elements(self) -> tuple[GroupElement, ...]:
        """The full symmetric generating set, in canonical order."""
        raise NotImplementedError

    def parse_element(self, text: str) -> GroupElement:
        raise NotImplementedError

    def format_element(self, g: GroupElement) -> str:
        raise NotImplementedError

    def sort_key(self, g: GroupElement):
        """Deterministic total order on elements, used for canonical listings."""
        raise NotImplementedError

    def spec_string(self) -> str:
        """The grammar string that parses back to this spec."""
        raise NotImplementedError

    @property
    def is_hyperbolic(self) -> bool:
        """Whether the family member is a hyperbolic space (trees and lines
        are; lattices of rank at least 2 are not)."""
        raise NotImplementedError

    # data-level group operations, implemented per family
    def _mul_data(self, u, v):
        raise NotImplementedError

    def _inv_data(self, u):
        raise NotImplementedError

    def _is_identity_data(self, u) -> bool:
        raise NotImplementedError

    def element(self, data) -> GroupElement:
        return GroupElement(self, tuple(data))


def _reduce_word(letters) -> Word:
    out: list[int] = []
    for l in letters:
        if out and out[-1] == -l:
            out.pop()
        else:
            out.append(l)
    return tuple(out)


def _reduce_concat(u: Word, v: Word) -> Word:
    i = len(u)
    j = 0
    while i > 0 and j < len(v) and u[i - 1] == -v[j]:
        i -= 1
        j += 1
    return u[:i] + v[j:]


def _letter_key(l: int) -> tuple[int, int]:
    # a < a^-1 < b < b^-1 < ...
    return (abs(l), 0 if l > 0 else 1)


@dataclass(frozen=True)
class FreeGroupSpec(GroupSpec):
    """Free group of rank ``rank``, word metric from the standard letters
    plus the optional ``extra_generators`` (reduced words of standard
    length 2, inverse closure implied)."""

    rank: int
    extra_generators: tuple[Word, ...] = ()

    def __post_init__(self):
        if not isinstance(self.rank, int) or self.rank < 1:
            raise ConstructionError("free group rank must be a positive integer")
        if self.rank > len(_LETTERS):
            raise ConstructionError(f"free group rank is limited to {len(_LETTERS)}")
        seen = set()
        for w in self.extra_generators:
            if len(w) != 2:
                raise ConstructionError(
                    "extra free-group generators must have standard length 2; "
                    "longer generator words are not supported"
                )
            if _reduce_word(w) != w:
                raise ConstructionError(f"extra generator {w} is not reduced")
            if any(not (1 <= abs(l) <= self.rank) for l in w):
                raise ConstructionError(f"extra generator {w} uses letters outside rank {self.rank}")
            if w in seen or tuple(-l for l in reversed(w)) in seen:
                raise ConstructionError(f"duplicate extra generator {self._format_data(w)}")
            seen.add(w)
        object.__setattr__(
            self,
            "extra_generators",
            tuple(sorted(self.extra_generators, key=lambda w: tuple(_letter_key(l) for l in w))),
        )

    # -- group structure

    def identity(self) -> GroupElement:
        return GroupElement(self, ())

    def _mul_data(self, u: Word, v: Word) -> Word:
        return _reduce_concat(u, v)

    def _inv_data(self, u: Word) -> Word:
        return tuple(-l for l in reversed(u))

    def _is_identity_data(self, u: Word) -> bool:
        return not u

    def generator_data(self) -> tuple[Word, ...]:
        gens: list[Word] = []
        for i in range(1, self.rank + 1):
            gens.append((i,))
            gens.append((-i,))
        for w in self.extra_generators:
            gens.append(w)
            gens.append(self._inv_data(w))
        gens = sorted(set(gens), key=lambda w: (len(w), tuple(_letter_key(l) for l in w)))
        return tuple(gens)

    def generator_elements(self) -> tuple[GroupElement, ...]:
        return tuple(GroupElement(self, w) for w in self.generator_data())

    # -- norms

    def norm_of(self, data: Word) -> int:
        if not self.extra_generators:
            return len(data)
        return self._segment_norm(data)

    def _segment_norm(self, word: Word) -> int:
        # Shortest factorization of a reduced word into generator pieces,
        # scanning cancellation-free segmentations only. Exact for piece
        # length <= 2: any factorization with adjacent cancellation rewrites
        # to a cancellation-free one of equal or smaller piece count, since
        # the product of two cancelling pieces is a single letter, the empty
        # word, or a two-letter word re-expressible as two letter pieces.
        pieces = self.generator_data()
        n = len(word)
        big = n + 1
        cost = [0] + [big] * n
        for i in range(1, n + 1):
            ci = big
            for p in pieces:
                lp = len(p)
                if lp <= i and word[i - lp : i] == p:
                    c = cost[i - lp] + 1
                    if c < ci:
                        ci = c
            cost[i] = ci
        return cost[n]

    # -- text form

    def parse_element(self, text: str) -> GroupElement:
        return GroupElement(self, self._parse_word(text))

    def _parse_word(self, text: str) -> Word:
        if text == "e":
            return ()
        letters: list[int] = []
        i = 0
        while i < len(text):
            ch = text[i]
            low = ch.lower()
            if low not in _LETTERS or _LETTERS.index(low) >= self.rank:
                raise ParseError(f"unexpected character {ch!r} in word {text!r}", position=i)
            l = _LETTERS.index(low) + 1
            if ch.isupper():
                l = -l
            i += 1
            count = 1
            if i < len(text) and text[i] == "^":
                m = re.match(r"\^(-?\d+)", text[i:])
                if not m:
                    raise ParseError(f"malformed exponent in word {text!r}", position=i)
                count = int(m.group(1))
                if count == 0:
                    raise ParseError("zero exponent in word", position=i)
                i += m.end()
            if count < 0:
                l, count = -l, -count
            letters.extend([l] * count)
        return _reduce_word(letters)

    def format_element(self, g: GroupElement) -> str:
        return self._format_data(g.data)

    @staticmethod
    def _format_data(data: Word) -> str:
        if not data:
            return "e"
        out = []
        i = 0
        while i < len(data):
            l = data[i]
            j = i
            while j < len(data) and data[j] == l:
                j += 1
            ch = _LETTERS[abs(l) - 1]
            if l < 0:
                ch = ch.upper()
            run = j - i
            out.append(ch if run == 1 else f"{ch}^{run}")
            i = j
        return "".join(out)

    def sort_key(self, g: GroupElement):
        return (len(g.data), tuple(_letter_key(l) for l in g.data))

    def spec_string(self) -> str:
        if not self.extra_generators:
            return f"free:{self.rank}"
        words = [_LETTERS[i] for i in range(self.rank)]
        words += [self._format_data(w) for w in self.extra_generators]
        return f"free:{self.rank}:gens={','.join(words)}"

    @property
    def is_hyperbolic(self) -> bool:
        return True


def _lattice_index(vectors: tuple[Vector, ...], dim: int) -> int:
    """Index of the subgroup of Z^dim generated by ``vectors`` (0 if the
    span has deficient rank). Integer row reduction; the generated subgroup
    is all of Z^dim exactly when the index is 1."""
    rows = [list(v) for v in vectors if any(v)]
    index = 1
    for col in range(dim):
        while True:
            nz = [r for r in rows if r[col] != 0]
            if len(nz) <= 1:
                break
            nz.sort(key=lambda r: abs(r[col]))
            a, b = nz[0], nz[1]
            q = b[col] // a[col]
            for i in range(dim):
                b[i] -= q * a[i]
        pivot = next((r for r in rows if r[col] != 0), None)
        if pivot is None:
            return 0
        rows.remove(pivot)
        index *= abs(pivot[col])
    return index


@dataclass(frozen=True)
class LatticeSpec(GroupSpec):
    """Z^rank with the word metric of a finite symmetric generating set.

    The constructor closes the set under negation, sorts it canonically,
    and rejects sets that do not generate the full lattice (which would
    leave the Cayley graph disconnected)."""

    rank: int
    generators: tuple[Vector, ...]

    def __post_init__(self):
        if not isinstance(self.rank, int) or self.rank < 1:
            raise ConstructionError("lattice rank must be a positive integer")
        closed = set()
        for v in self.generators:
            v = tuple(int(c) for c in v)
            if len(v) != self.rank:
                raise ConstructionError(f"generator {v} does not have rank {self.rank}")
            if not any(v):
                raise ConstructionError("lattice generators must be nonzero")
            closed.add(v)
            closed.add(tuple(-c for c in v))
        gens = tuple(sorted(closed))
        if _lattice_index(gens, self.rank) != 1:
            raise ConstructionError(
                "lattice generators do not generate the full lattice "
                "(elementary divisors are not all 1)"
            )
        object.__setattr__(self, "generators", gens)

    def identity(self) -> GroupElement:
        return GroupElement(self, (0,) * self.rank)

    def _mul_data(self, u: Vector, v: Vector) -> Vector:
        return tuple(a + b for a, b in zip(u, v))

    def _inv_data(self, u: Vector) -> Vector:
        return tuple(-a for a in u)

    def _is_identity_data(self, u: Vector) -> bool:
        return not any(u)

    def generator_data(self) -> tuple[Vector, ...]:
        return self.generators

    def generator_elements(self) -> tuple[GroupElement, ...]:
        return tuple(GroupElement(self, v) for v in self.generators)

    def parse_element(self, text: str) -> GroupElement:
        v = _parse_vector(text, self.rank)
        return GroupElement(self, v)

    def format_element(self, g: GroupElement) -> str:
        return "(" + ",".join(str(c) for c in g.data) + ")"

    def sort_key(self, g: GroupElement):
        return (sum(abs(c) for c in g.data), g.data)

    def spec_string(self) -> str:
        # echo only one representative of each +/- pair
        reps = []
        seen = set()
        for v in self.generators:
            if v in seen:
                continue
            neg = tuple(-c for c in v)
            seen.add(v)
            seen.add(neg)
            reps.append(max(v, neg))
        gens = ",".join("(" + ",".join(str(c) for c in v) + ")" for v in sorted(reps))
        return f"zd:{self.rank}:gens={gens}"

    @property
    def is_hyperbolic(self) -> bool:
        return self.rank == 1


# ---------------------------------------------------------------------------
# spec grammar


def _parse_vector(text: str, rank: int, position: int = 0) -> Vector:
    m = re.fullmatch(r"\((-?\d+(?:,-?\d+)*)\)", text)
    if not m:
        raise ParseError(f"malformed vector {text!r}", position=position)
    v = tuple(int(c) for c in m.group(1).split(","))
    if len(v) != rank:
        raise ParseError(f"vector {text!r} does not have rank {rank}", position=position)
    return v


def _split_vectors(text: str) -> list[str]:
    parts = []
    depth = 0
    cur = ""
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append(cur)
            cur = ""
        else:
            cur += ch
    parts.append(cur)
    return parts


def parse_group_spec(text: str) -> GroupSpec:
    """Parse ``free:<k>``, ``free:<k>:gens=<w1>,...``, or
    ``zd:<d>:gens=(v1),(v2),...`` (negations are added automatically).

    Augmented free generating sets must contain every standard letter and
    may add reduced words of length 2 only; lattice generating sets must
    span the full lattice. Anything else is rejected with a position.
    """
    if text.startswith("free:"):
        rest = text[5:]
        m = re.match(r"(\d+)", rest)
        if not m:
            raise ParseError("expected a rank after 'free:'", position=5)
        rank = int(m.group(1))
        if rank < 1:
            raise ParseError("free group rank must be at least 1", position=5)
        tail = rest[m.end() :]
        if not tail:
            try:
                return FreeGroupSpec(rank)
            except ConstructionError as e:
                raise ParseError(str(e), position=5) from e
        if not tail.startswith(":gens="):
            raise ParseError(f"unexpected trailer {tail!r} in group spec", position=5 + m.end())
        gpos = 5 + m.end() + 6
        probe = FreeGroupSpec(rank)
        letters_seen: set[int] = set()
        extras: list[Word] = []
        for tok in tail[6:].split(","):
            if not tok:
                raise ParseError("empty generator word", position=gpos)
            try:
                w = probe._parse_word(tok)
            except ParseError as e:
                raise ParseError(f"bad generator word {tok!r}: {e}", position=gpos) from e
            if len(w) == 0:
                raise ParseError("identity is not a generator", position=gpos)
            if len(w) == 1:
                letters_seen.add(abs(w[0]))
            elif len(w) == 2:
                extras.append(w)
            else:
                raise ParseError(
                    f"generator word {tok!r} is longer than 2; unsupported", position=gpos
                )
            gpos += len(tok) + 1
        if letters_seen != set(range(1, rank + 1)):
            raise ParseError(
                "augmented free generating sets must include every standard letter",
                position=5 + m.end() + 6,
            )
        try:
            return FreeGroupSpec(rank, tuple(extras))
        except ConstructionError as e:
            raise ParseError(str(e), position=5 + m.end() + 6) from e
    if text.startswith("zd:"):
        rest = text[3:]
        m = re.match(r"(\d+)", rest)
        if not m:
            raise ParseError("expected a rank after 'zd:'", position=3)
        rank = int(m.group(1))
        if rank < 1:
            raise ParseError("lattice rank must be at least 1", position=3)
        tail = rest[m.end() :]
        if not tail.startswith(":gens="):
            raise ParseError("lattice specs require ':gens=(v1),(v2),...'", position=3 + m.end())
        gpos = 3 + m.end() + 6
        vectors = []
        for tok in _split_vectors(tail[6:]):
            vectors.append(_parse_vector(tok, rank, position=gpos))
            gpos += len(tok) + 1
        try:
            return LatticeSpec(rank, tuple(vectors))
        except ConstructionError as e:
            raise ParseError(str(e), position=3 + m.end() + 6) from e
    raise ParseError(f"unrecognized group spec {text!r}", position=0)


# ---------------------------------------------------------------------------
# norms, distances, balls


_NORM_TABLES: dict[GroupSpec, tuple[int, dict[Vector, int]]] = {}


def _bfs_norms(spec: GroupSpec, radius: int, cap: int = DEFAULT_BALL_CAP) -> dict:
    """Exact norms of every element with |g| <= radius, by breadth-first
    search from the identity over the symmetric generating set."""
    gens = [g.data for g in spec.generator_elements()]
    start = spec.identity().data
    norms = {start: 0}
    frontier = deque([start])
    while frontier:
        u = frontier.popleft()
        n = norms[u]
        if n == radius:
            continue
        for s in gens:
            v = spec._mul_data(u, s)
            if v not in norms:
                norms[v] = n + 1
                if len(norms) > cap:
                    raise ResourceCapError(
                        f"ball of radius {radius} exceeds the cap of {cap} elements"
                    )
                frontier.append(v)
    return norms


def _lattice_norm_table(spec: LatticeSpec, radius: int) -> dict:
    cached = _NORM_TABLES.get(spec)
    if cached is not None and cached[0] >= radius:
        return cached[1]
    table = _bfs_norms(spec, radius)
    _NORM_TABLES[spec] = (radius, table)
    return table


def word_norm(spec: GroupSpec, g: GroupElement, radius: int) -> int:
    """|g| in the word metric, provided it does not exceed ``radius``.

    Free-group norms are computed directly (reduced length, or the
    segmentation dynamic program for augmented sets); lattice norms are
    read from a BFS table built out to ``radius``.
    """
    if g.spec != spec:
        raise DomainError("element does not belong to the given group spec")
    if isinstance(spec, FreeGroupSpec):
        n = spec.norm_of(g.data)
        if n > radius:
            raise OutOfWindowError(f"|{g}| = {n} exceeds the window radius {radius}")
        return n
    table = _lattice_norm_table(spec, radius)
    n = table.get(g.data)
    if n is None or n > radius:
        raise OutOfWindowError(f"|{g}| exceeds the window radius {radius}")
    return n


def element_norm(spec: GroupSpec, g: GroupElement, max_radius: int = 4096) -> int:
    """|g| with the window radius grown automatically (doubling BFS tables
    for lattices). Convenience for sample validation."""
    if isinstance(spec, FreeGroupSpec):
        return word_norm(spec, g, max_radius)
    radius = 4
    while radius <= max_radius:
        try:
            return word_norm(spec, g, radius)
        except OutOfWindowError:
            radius *= 2
    raise OutOfWindowError(f"|{g}| exceeds {max_radius}")


def word_distance(spec: GroupSpec, x: GroupElement, y: GroupElement, radius: int) -> int:
    """d(x, y) = |x^-1 y|, provided it does not exceed ``radius``."""
    if x.spec != spec or y.spec != spec:
        raise DomainError("elements do not belong to the given group spec")
    diff = GroupElement(spec, spec._mul_data(spec._inv_data(x.data), y.data))
    return word_norm(spec, diff, radius)


def act(g: GroupElement, x: GroupElement) -> GroupElement:
    """Left translation g * x."""
    if g.spec != x.spec:
        raise DomainError("cannot act across different group specs")
    return g * x


def on_geodesic(
    spec: GroupSpec, x: GroupElement, y: GroupElement, z: GroupElement, radius: int
) -> bool:
    """Whether z lies on some geodesic from x to y, i.e.
    d(x,z) + d(z,y) = d(x,y)."""
    return (
        word_distance(spec, x, z, radius) + word_distance(spec, z, y, radius)
        == word_distance(spec, x, y, radius)
    )


def _free_standard_ball_size(rank: int, radius: int) -> int:
    size = 1
    sphere = 2 * rank
    for _ in range(1, radius + 1):
        size += sphere
        sphere *= 2 * rank - 1
    return size


class CayleyBall:
    """All elements with |g| <= radius, with their exact norms.

    Elements are listed in canonical order (by norm, then by the spec's
    sort key), so sphere listings and JSON exports are deterministic.
    """

    def __init__(self, spec: GroupSpec, radius: int, norms: dict):
        self.spec = spec
        self.radius = radius
        self._norms = norms
        elems = [GroupElement(spec, d) for d in norms]
        elems.sort(key=lambda g: (norms[g.data], spec.sort_key(g)))
        self.elements: tuple[GroupElement, ...] = tuple(elems)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, g: GroupElement) -> bool:
        return isinstance(g, GroupElement) and g.spec == self.spec and g.data in self._norms

    def norm(self, g: GroupElement) -> int:
        if g not in self:
            raise DomainError(f"{g} is not in the ball of radius {self.radius}")
        return self._norms[g.data]

    def sphere(self, r: int) -> tuple[GroupElement, ...]:
        if r > self.radius:
            raise OutOfWindowError(f"sphere radius {r} exceeds the ball radius {self.radius}")
        return tuple(g for g in self.elements if self._norms[g.data] == r)

    def window(self, base: GroupElement | None = None):
        """A MetricWindow over this ball. Pairwise distances can reach twice
        the ball radius, so the oracle is opened out to 2 * radius."""
        from .metric import MetricWindow

        if base is None:
            base = self.spec.identity()
        if base not in self:
            raise DomainError("window base point must lie in the ball")
        reach = 2 * self.radius
        if isinstance(self.spec, LatticeSpec):
            _lattice_norm_table(self.spec, reach)
        spec = self.spec

        def dist(x: GroupElement, y: GroupElement) -> int:
            return word_distance(spec, x, y, reach)

        return MetricWindow(
            self.elements, dist, base, validate=False, bulk=self._bulk_distance_builder(reach)
        )

    def _bulk_distance_builder(self, reach: int):
        spec = self.spec
        elements = self.elements

        def build() -> np.ndarray:
            if isinstance(spec, FreeGroupSpec) and not spec.extra_generators:
                from . import kernels

                enc, lens = encode_free_words([g.data for g in elements])
                lcp = kernels.lcp_matrix(enc, lens, enc, lens)
                return (lens[:, None] + lens[None, :] - 2 * lcp).astype(np.int32)
            if isinstance(spec, LatticeSpec):
                return _lattice_distance_matrix(spec, elements, reach)
            # augmented free sets: segmentation norms, pairwise
            n = len(elements)
            out = np.zeros((n, n), dtype=np.int32)
            datas = [g.data for g in elements]
            for i in range(n):
                for j in range(i + 1, n):
                    d = spec.norm_of(_reduce_concat(spec._inv_data(datas[i]), datas[j]))
                    out[i, j] = d
                    out[j, i] = d
            return out

        return build

    def to_json(self) -> dict:
        return {
            "spec": self.spec.spec_string(),
            "radius": self.radius,
            "elements": [
                {"id": i, "repr": str(g), "norm": self._norms[g.data]}
                for i, g in enumerate(self.elements)
            ],
        }


def _lattice_distance_matrix(
    spec: LatticeSpec, elements: tuple[GroupElement, ...], reach: int
) -> np.ndarray:
    table = _lattice_norm_table(spec, reach)
    pts = np.array([g.data for g in elements], dtype=np.int64)
    span = int(np.abs(pts).max(initial=0)) * 2
    d = spec.rank
    dense_size = (2 * span + 1) ** d
    n = len(elements)
    out = np.empty((n, n), dtype=np.int32)
    if dense_size <= 8_000_000:
        dense = np.full((2 * span + 1,) * d, -1, dtype=np.int32)
        for vec, norm in table.items():
            idx = tuple(c + span for c in vec)
            if all(0 <= i <= 2 * span for i in idx):
                dense[idx] = norm
        for i in range(n):
            diffs = pts - pts[i] + span
            out[i] = dense[tuple(diffs[:, k] for k in range(d))]
        if (out < 0).any():
            raise OutOfWindowError("pairwise distance exceeds the window radius")
        return out
    for i in range(n):
        xi = pts[i]
        for j in range(n):
            key = tuple(int(c) for c in (pts[j] - xi))
            v = table.get(key)
            if v is None:
                raise OutOfWindowError("pairwise distance exceeds the window radius")
            out[i, j] = v
    return out


def encode_free_words(datas: list[Word]) -> tuple[np.ndarray, np.ndarray]:
    """Pack reduced words into an int8 matrix (rows padded with 0) plus a
    length vector, for the numba kernels. Letters fit in int8 for ranks
    up to 26."""
    width = max((len(d) for d in datas), default=0)
    width = max(width, 1)
    enc = np.zeros((len(datas), width), dtype=np.int8)
    lens = np.zeros(len(datas), dtype=np.int32)
    for i, d in enumerate(datas):
        lens[i] = len(d)
        if d:
            enc[i, : len(d)] = d
    return enc, lens


_BALL_CACHE: dict[tuple, CayleyBall] = {}
_BALL_CACHE_SLOTS = 4


def build_ball(spec: GroupSpec, radius: int, cap: int = DEFAULT_BALL_CAP) -> CayleyBall:
    """BFS ball of the given radius. Raises ResourceCapError when the exact
    element count would exceed ``cap`` (standard free groups are rejected
    up front via the closed-form size).

    Balls are immutable, so a few recent ones are kept; a cached ball is
    reused only when its exact size fits under the requested cap.
    """
    if radius < 0:
        raise DomainError("ball radius must be nonnegative")
    cached = _BALL_CACHE.get((spec, radius))
    if cached is not None:
        if len(cached) > cap:
            raise ResourceCapError(
                f"ball of radius {radius} has {len(cached)} elements, exceeding the cap of {cap}"
            )
        return cached
    if isinstance(spec, FreeGroupSpec) and not spec.extra_generators:
        est = _free_standard_ball_size(spec.rank, radius)
        if est > cap:
            raise ResourceCapError(
                f"ball of radius {radius} has {est} elements, exceeding the cap of {cap}"
            )
    norms = _bfs_norms(spec, radius, cap=cap)
    ball = CayleyBall(spec, radius, norms)
    if len(_BALL_CACHE) >= _BALL_CACHE_SLOTS:
        _BALL_CACHE.pop(next(iter(_BALL_CACHE)))
    _BALL_CACHE[(spec, radius)] = ball
    return ball


def sphere(ball: CayleyBall, r: int) -> tuple[GroupElement, ...]:
    """All elements of exact norm r inside the ball."""
    return ball.sphere(r)
