"""Partition and composition combinatorics for (k,c) representations."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import accumulate, combinations
from typing import Iterable

from .satake import GroupData


class Dominance(enum.Enum):
    LESS = "LESS"
    EQUAL = "EQUAL"
    GREATER = "GREATER"
    INCOMPARABLE = "INCOMPARABLE"

    def __str__(self) -> str:
        return self.value


def _parse_parts(text: str) -> tuple:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError:
        raise ValueError(f"malformed part list {text!r}") from None


@dataclass(frozen=True)
class Composition:
    parts: tuple

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p < 0 for p in parts):
            raise ValueError(f"composition parts must be non-negative: {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def parse(cls, text: str) -> "Composition":
        return cls(_parse_parts(text))

    @property
    def size(self) -> int:
        return sum(self.parts)

    def underlying_partition(self) -> "Partition":
        return Partition(tuple(sorted((p for p in self.parts if p), reverse=True)))

    def __len__(self) -> int:
        return len(self.parts)

    def __str__(self) -> str:
        return ",".join(map(str, self.parts))


@dataclass(frozen=True)
class Partition:
    parts: tuple

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p < 1 for p in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"partition must be weakly decreasing: {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def parse(cls, text: str) -> "Partition":
        return cls(_parse_parts(text))

    @classmethod
    def rectangle(cls, k: int, c: int) -> "Partition":
        """The orbit ``(k^c)``: ``c`` parts equal to ``k``."""
        return cls((k,) * c)

    @property
    def size(self) -> int:
        return sum(self.parts)

    def multiplicity(self, part: int) -> int:
        return self.parts.count(part)

    def __len__(self) -> int:
        return len(self.parts)

    def __str__(self) -> str:
        return ",".join(map(str, self.parts))


def _as_partition(lam) -> Partition:
    if isinstance(lam, Partition):
        return lam
    if isinstance(lam, Composition):
        return lam.underlying_partition()
    return Composition(tuple(lam)).underlying_partition()


def dominance_compare(lam, mu) -> Dominance:
    lam, mu = _as_partition(lam), _as_partition(mu)
    if lam.size != mu.size:
        return Dominance.INCOMPARABLE
    length = max(len(lam), len(mu))
    a = list(accumulate(lam.parts + (0,) * (length - len(lam))))
    b = list(accumulate(mu.parts + (0,) * (length - len(mu))))
    ge = all(x >= y for x, y in zip(a, b))
    le = all(x <= y for x, y in zip(a, b))
    if ge and le:
        return Dominance.EQUAL
    if ge:
        return Dominance.GREATER
    if le:
        return Dominance.LESS
    return Dominance.INCOMPARABLE


def greater_or_noncomparable(lam, mu) -> bool:
    """True iff ``lam`` (a composition, compared via its underlying partition) is
    greater than or incomparable with ``mu`` in the dominance order."""
    lam = lam if isinstance(lam, Composition) else Composition(tuple(lam))
    mu = _as_partition(mu)
    if lam.size != mu.size:
        raise ValueError("sizes differ")
    return dominance_compare(lam, mu) in (Dominance.GREATER, Dominance.INCOMPARABLE)


def valid_nilpotent_orbit(group: GroupData | str, lam) -> bool:
    kind = group.kind if isinstance(group, GroupData) else GroupData(group, 1).kind
    lam = _as_partition(lam)
    if kind == "GL":
        return True
    parity = 1 if kind == "Sp" else 0
    return all(lam.multiplicity(p) % 2 == 0 for p in set(lam.parts) if p % 2 == parity)


def doubling_orbit(group: GroupData | str, k: int, c: int) -> Partition:
    """The orbit ``((2k-1)^c 1^c)``."""
    if k < 1 or c < 1:
        raise ValueError("k and c must be positive")
    lam = Partition((2 * k - 1,) * c + (1,) * c)
    if not valid_nilpotent_orbit(group, lam):
        kind = group.kind if isinstance(group, GroupData) else group
        raise ValueError(f"{lam} is not a nilpotent orbit for {kind}")
    return lam


def _zero_one_splits(parts: tuple, c: int) -> Iterable[tuple]:
    """All ``lam'' `` in ``{0,1}^len`` with ``sum == c`` and ``lam'' <= parts``."""
    support = [i for i, p in enumerate(parts) if p > 0]
    for chosen in combinations(support, c):
        sel = set(chosen)
        yield tuple(p - 1 if i in sel else p for i, p in enumerate(parts))


def semi_whittaker_dim_bound(k: int, c: int, lam) -> int:
    """Upper bound for ``dim J_{N, psi_lam}(sigma_{k,c})`` from the gluing filtration
    ``sigma_{k,c} = sigma_{k-1,c} x sigma_{1,c}``."""
    parts = lam.parts if isinstance(lam, (Composition, Partition)) else tuple(int(p) for p in lam)
    if sum(parts) != k * c:
        raise ValueError(f"composition {parts} does not have size {k}*{c}")
    if k < 1 or c < 1:
        raise ValueError("k and c must be positive")
    memo: dict = {}

    def bound(kk: int, ps: tuple) -> int:
        if kk == 1:
            return 1 if all(p <= 1 for p in ps) else 0
        key = (kk, ps)
        if key not in memo:
            memo[key] = sum(bound(kk - 1, rest) for rest in _zero_one_splits(ps, c))
        return memo[key]

    return bound(k, parts)


def compositions_of(n: int, length: int | None = None) -> Iterable[tuple]:
    """Compositions of ``n`` into positive parts (or ``length`` non-negative parts)."""
    if length is not None:
        if length == 0:
            if n == 0:
                yield ()
            return
        for first in range(n + 1):
            for rest in compositions_of(n - first, length - 1):
                yield (first,) + rest
        return
    if n == 0:
        yield ()
        return
    for first in range(1, n + 1):
        for rest in compositions_of(n - first):
            yield (first,) + rest

