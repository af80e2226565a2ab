"""Sets, set systems and intersection predicates over the universe [n].

A set is a plain ``int`` bitmask: element ``i`` (1-based) lives in bit ``i - 1``.
A :class:`Family` is an immutable, deduplicated collection of masks kept in
increasing numeric order and backed by a ``uint64`` array, so that families
with millions of members stay cheap to build and to hand to the counters.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, Sequence

import numpy as np

MAX_N = 62

# Pairwise predicate work is chunked so the |A| x |B| popcount matrix stays small.
_CHUNK_CELLS = 1 << 22


class AvoidsetError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(AvoidsetError, ValueError):
    """Input data does not describe a valid set, family or parameter."""


class UniverseRangeError(ValidationError):
    """Universe size outside the supported range."""


class UniverseMismatchError(ValidationError):
    """Two families that must share a universe do not."""


class PreconditionError(AvoidsetError, ValueError):
    """An operation's mathematical hypotheses do not hold for the input."""


class CapacityError(AvoidsetError):
    """The requested computation exceeds a configured size cap."""


class Convention(str, enum.Enum):
    """Which pairs a single-family intersection condition quantifies over."""

    DISTINCT = "distinct"
    ALL = "all"


# ---------------------------------------------------------------------------
# masks


def check_universe(n: int, lo: int = 1) -> None:
    if not isinstance(n, (int, np.integer)) or not lo <= n <= MAX_N:
        raise UniverseRangeError(f"universe size n={n} outside {lo}..{MAX_N}")


def full_mask(n: int) -> int:
    return (1 << n) - 1


def mask_from_elements(elements: Iterable[int], n: int) -> int:
    """Encode 1-based ``elements`` as a mask; raises if any lies outside 1..n."""
    elements = list(elements)
    mask = 0
    for e in elements:
        if not 1 <= e <= n:
            raise ValidationError(f"set {sorted(elements)} has element {e} outside 1..{n}")
        mask |= 1 << (e - 1)
    return mask


def elements_of(mask: int) -> list[int]:
    """1-based elements of ``mask`` in increasing order."""
    mask = int(mask)
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length())
        mask ^= low
    return out


def intersection_size(a: int, b: int) -> int:
    return (int(a) & int(b)).bit_count()


def complement(a: int, n: int) -> int:
    return full_mask(n) & ~int(a)


def submasks(mask: int) -> Iterator[int]:
    """All submasks of ``mask``, including 0 and ``mask`` itself."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def format_set(mask: int) -> str:
    elems = elements_of(mask)
    return ",".join(map(str, elems)) if elems else "-"


# ---------------------------------------------------------------------------
# families


@dataclass(frozen=True, eq=False)
class Family:
    """Canonical set system over [n]: members strictly increasing as masks.

    Build through :func:`make_family` or :meth:`from_masks`; the raw
    constructor trusts its input except for a cheap validity check.
    """

    n: int
    members: np.ndarray

    def __post_init__(self) -> None:
        if not 0 <= self.n <= MAX_N:
            raise UniverseRangeError(f"universe size n={self.n} outside 0..{MAX_N}")
        arr = self.members
        if arr.dtype != np.uint64 or arr.ndim != 1:
            raise ValidationError("members must be a 1-d uint64 array")
        if arr.size:
            if int(arr[-1]) >> self.n:
                raise ValidationError(f"member {format_set(int(arr[-1]))} outside universe [{self.n}]")
            if arr.size > 1 and not np.all(arr[1:] > arr[:-1]):
                raise ValidationError("members must be strictly increasing")
        arr.flags.writeable = False

    @classmethod
    def from_masks(cls, n: int, masks: Iterable[int] | np.ndarray) -> Family:
        arr = np.unique(np.asarray(list(masks) if not isinstance(masks, np.ndarray) else masks, dtype=np.uint64))
        return cls(n, arr)

    @classmethod
    def empty(cls, n: int) -> Family:
        return cls(n, np.empty(0, dtype=np.uint64))

    def __len__(self) -> int:
        return int(self.members.size)

    def __iter__(self) -> Iterator[int]:
        return iter(self.members.tolist())

    def __contains__(self, mask: object) -> bool:
        if not isinstance(mask, (int, np.integer)) or mask < 0 or int(mask) >> self.n:
            return False
        i = int(np.searchsorted(self.members, np.uint64(mask)))
        return i < self.members.size and int(self.members[i]) == int(mask)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Family):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.members, other.members)

    def __hash__(self) -> int:
        return hash((self.n, self.members.tobytes()))

    def __repr__(self) -> str:
        shown = ", ".join("{" + format_set(m).replace("-", "") + "}" for m in self.members[:8].tolist())
        more = ", ..." if len(self) > 8 else ""
        return f"Family(n={self.n}, [{shown}{more}], size={len(self)})"

    def masks(self) -> list[int]:
        return self.members.tolist()

    def sets(self) -> list[list[int]]:
        """Members as sorted 1-based element lists."""
        return [elements_of(m) for m in self.members.tolist()]

    def sizes(self) -> np.ndarray:
        return np.bitwise_count(self.members).astype(np.int64)

    def is_uniform(self, r: int) -> bool:
        return bool(np.all(self.sizes() == r))

    def union(self, other: Family) -> Family:
        same_universe(self, other)
        return Family(self.n, np.union1d(self.members, other.members))

    def difference(self, other: Family) -> Family:
        same_universe(self, other)
        return Family(self.n, np.setdiff1d(self.members, other.members, assume_unique=True))

    def intersection(self, other: Family) -> Family:
        same_universe(self, other)
        return Family(self.n, np.intersect1d(self.members, other.members, assume_unique=True))

    def issubset(self, other: Family) -> bool:
        return self.n == other.n and bool(np.all(np.isin(self.members, other.members, assume_unique=True)))

    def filter(self, keep: np.ndarray) -> Family:
        return Family(self.n, self.members[keep])


def make_family(n: int, sets: Iterable[Iterable[int]]) -> Family:
    """Canonical family over [n] from 1-based element lists (order irrelevant)."""
    check_universe(n)
    return Family.from_masks(n, [mask_from_elements(s, n) for s in sets])


def same_universe(a: Family, b: Family) -> int:
    if a.n != b.n:
        raise UniverseMismatchError(f"universe mismatch: n={a.n} vs n={b.n}")
    return a.n


def power_set(n: int, ground: int | None = None) -> Family:
    """P(ground) as a family over [n]; ``ground`` defaults to [n]."""
    ground = full_mask(n) if ground is None else int(ground)
    if n <= 24 and ground == full_mask(n):
        return Family(n, np.arange(1 << n, dtype=np.uint64))
    return Family.from_masks(n, submasks(ground))


def uniform_family(n: int, r: int, ground: int | None = None) -> Family:
    """All r-subsets of ``ground`` (default [n])."""
    ground = full_mask(n) if ground is None else int(ground)
    if n <= 24 and ground == full_mask(n):
        everything = np.arange(1 << n, dtype=np.uint64)
        return Family(n, everything[np.bitwise_count(everything) == r])
    from itertools import combinations

    bits = [1 << (e - 1) for e in elements_of(ground)]
    return Family.from_masks(n, [sum(c) for c in combinations(bits, r)])


def join(a: int, family: Family) -> Family:
    """A v F := {A u F : F in F}."""
    return Family.from_masks(family.n, family.members | np.uint64(a))


def subfamily_containing(family: Family, T: int) -> Family:
    t = np.uint64(T)
    return family.filter((family.members & t) == t)


def delete_element(family: Family, i: int) -> Family:
    """D_i(F) = {F \\ {i}}, same universe; collisions merge."""
    return Family.from_masks(family.n, family.members & ~np.uint64(1 << (i - 1)))


def delete_top(family: Family) -> Family:
    """D_n(F) viewed as a family over [n-1]."""
    n = family.n
    if n < 1:
        raise UniverseRangeError("cannot delete from the empty universe")
    return Family.from_masks(n - 1, family.members & np.uint64(full_mask(n - 1)))


# ---------------------------------------------------------------------------
# constraints


@dataclass(frozen=True)
class AvoidOne:
    """Intersection sizes other than ``t`` are allowed."""

    t: int

    def allows(self, k: int) -> bool:
        return k != self.t

    def validate(self, n: int) -> None:
        if not 0 <= self.t <= n:
            raise ValidationError(f"avoided size t={self.t} outside 0..{n}")

    def describe(self) -> str:
        return f"avoid {self.t}"


@dataclass(frozen=True)
class AllowedSet:
    """Only intersection sizes in ``sizes`` are allowed."""

    sizes: frozenset

    def __init__(self, sizes: Iterable[int]) -> None:
        object.__setattr__(self, "sizes", frozenset(int(k) for k in sizes))

    def allows(self, k: int) -> bool:
        return k in self.sizes

    def validate(self, n: int) -> None:
        bad = sorted(k for k in self.sizes if not 0 <= k <= n)
        if bad:
            raise ValidationError(f"allowed sizes {bad} outside 0..{n}")

    def describe(self) -> str:
        return "allowed {" + ",".join(map(str, sorted(self.sizes))) + "}"


IntersectionConstraint = AvoidOne | AllowedSet


def allowed_table(c: IntersectionConstraint, n: int) -> np.ndarray:
    """Boolean lookup ``table[k]`` for k in 0..n."""
    return np.array([c.allows(k) for k in range(n + 1)], dtype=bool)


def _pair_blocks(a: np.ndarray, b: np.ndarray) -> Iterator[tuple[int, np.ndarray]]:
    """Yield (row offset, popcount(a_block & b)) blocks."""
    if a.size == 0 or b.size == 0:
        return
    rows = max(1, _CHUNK_CELLS // b.size)
    for lo in range(0, a.size, rows):
        yield lo, np.bitwise_count(a[lo : lo + rows, None] & b[None, :])


def satisfies_cross(A: Family, B: Family, c: IntersectionConstraint) -> bool:
    """Every (a, b) in A x B, identical sets included, meets the constraint."""
    n = same_universe(A, B)
    table = allowed_table(c, n)
    for _, block in _pair_blocks(A.members, B.members):
        if not table[block].all():
            return False
    return True


def first_cross_violation(A: Family, B: Family, c: IntersectionConstraint) -> tuple[int, int] | None:
    n = same_universe(A, B)
    table = allowed_table(c, n)
    for lo, block in _pair_blocks(A.members, B.members):
        bad = np.argwhere(~table[block])
        if bad.size:
            i, j = bad[0]
            return int(A.members[lo + i]), int(B.members[j])
    return None


def satisfies_single(F: Family, c: IntersectionConstraint, convention: Convention | str = Convention.ALL) -> bool:
    convention = Convention(convention)
    if convention is Convention.ALL:
        return satisfies_cross(F, F, c)
    table = allowed_table(c, F.n)
    for lo, block in _pair_blocks(F.members, F.members):
        ok = table[block]
        rows = np.arange(lo, lo + block.shape[0])
        ok[np.arange(block.shape[0]), rows] = True
        if not ok.all():
            return False
    return True


# ---------------------------------------------------------------------------
# family text format


def format_family(F: Family) -> str:
    lines = [f"n={F.n}"]
    lines.extend(format_set(m) for m in F.members.tolist())
    return "\n".join(lines) + "\n"


def parse_family(text: str) -> Family:
    n = None
    sets: list[list[int]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if n is None:
            if not line.startswith("n="):
                raise ValidationError(f"line {lineno}: expected 'n=<int>' header, got {line!r}")
            try:
                n = int(line[2:])
            except ValueError:
                raise ValidationError(f"line {lineno}: bad universe size {line[2:]!r}") from None
            continue
        if line == "-":
            sets.append([])
            continue
        try:
            sets.append([int(tok) for tok in line.split(",")])
        except ValueError:
            raise ValidationError(f"line {lineno}: bad set {line!r}") from None
    if n is None:
        raise ValidationError("missing 'n=<int>' header")
    return make_family(n, sets)


def read_family(path: str | Path) -> Family:
    return parse_family(Path(path).read_text(encoding="utf-8"))


def write_family(F: Family, path: str | Path) -> None:
    Path(path).write_text(format_family(F), encoding="utf-8")


def as_sets(F: Family) -> Sequence[frozenset[int]]:
    """Members as frozensets of 1-based elements, for readable comparisons."""
    return [frozenset(s) for s in F.sets()]
