"""Set partitions of {1,...,n} and the refinement order.

A partition is kept in canonical form: blocks sorted by their minimum
element, elements sorted inside each block.  The proper part of the
partition lattice (everything except the discrete and the total
partition) is enumerated in lexicographic order of the restricted-growth
encoding, which gives every partition a stable position.
"""

from __future__ import annotations


class PartitionParseError(ValueError):
    """Raised when a partition string does not match the block grammar."""

    def __init__(self, message: str, position: int | None = None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class Partition:
    """A set partition of {1,...,n} in canonical form."""

    __slots__ = ("n", "blocks", "_rgs", "_block_index", "_hash")

    def __init__(self, n: int, blocks):
        if n < 1:
            raise ValueError(f"ground-set size must be positive, got {n}")
        seen: set[int] = set()
        norm = []
        for block in blocks:
            b = tuple(sorted(block))
            if not b:
                raise ValueError("empty block")
            for e in b:
                if not isinstance(e, int) or not 1 <= e <= n:
                    raise ValueError(f"element {e} out of range 1..{n}")
                if e in seen:
                    raise ValueError(f"duplicate element {e}")
                seen.add(e)
            norm.append(b)
        if len(seen) != n:
            missing = sorted(set(range(1, n + 1)) - seen)
            raise ValueError(f"missing elements {missing}")
        self.n = n
        self.blocks = tuple(sorted(norm))
        block_index = [0] * (n + 1)
        for i, b in enumerate(self.blocks):
            for e in b:
                block_index[e] = i
        self._block_index = tuple(block_index)
        # restricted-growth string; blocks are already in first-appearance order
        self._rgs = tuple(block_index[e] for e in range(1, n + 1))
        self._hash = hash((n, self._rgs))

    @classmethod
    def discrete(cls, n: int) -> "Partition":
        return cls(n, [(e,) for e in range(1, n + 1)])

    @classmethod
    def total(cls, n: int) -> "Partition":
        return cls(n, [tuple(range(1, n + 1))])

    @property
    def num_blocks(self) -> int:
        return len(self.blocks)

    @property
    def rgs(self) -> tuple[int, ...]:
        """Restricted-growth encoding: block index of each element 1..n."""
        return self._rgs

    def is_discrete(self) -> bool:
        return len(self.blocks) == self.n

    def is_total(self) -> bool:
        return len(self.blocks) == 1

    def is_proper(self) -> bool:
        return 1 < len(self.blocks) < self.n

    def block_containing(self, e: int) -> tuple[int, ...]:
        return self.blocks[self._block_index[e]]

    def refines(self, other: "Partition") -> bool:
        """True iff every block of self lies inside a block of other."""
        if self.n != other.n:
            raise ValueError(f"mismatched ground sets: {self.n} vs {other.n}")
        idx = other._block_index
        for b in self.blocks:
            target = idx[b[0]]
            for e in b[1:]:
                if idx[e] != target:
                    return False
        return True

    def meet(self, other: "Partition") -> "Partition":
        """Common refinement: blocks are the nonempty pairwise intersections.

        The result may be the discrete partition; callers working inside
        the proper part must check.
        """
        if self.n != other.n:
            raise ValueError(f"mismatched ground sets: {self.n} vs {other.n}")
        cells: dict[tuple[int, int], list[int]] = {}
        for e in range(1, self.n + 1):
            cells.setdefault((self._block_index[e], other._block_index[e]), []).append(e)
        return Partition(self.n, cells.values())

    def __eq__(self, other) -> bool:
        if not isinstance(other, Partition):
            return NotImplemented
        return self.n == other.n and self._rgs == other._rgs

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "Partition") -> bool:
        # canonical order: lexicographic on the restricted-growth encoding
        if self.n != other.n:
            return self.n < other.n
        return self._rgs < other._rgs

    def __le__(self, other: "Partition") -> bool:
        return self == other or self < other

    def __str__(self) -> str:
        return format_partition(self)

    def __repr__(self) -> str:
        return f"Partition({str(self)!r})"


def format_partition(p: Partition) -> str:
    """Canonical text form, e.g. "1,5|2|3|4"."""
    return "|".join(",".join(str(e) for e in b) for b in p.blocks)


def parse_partition(text: str, n: int | None = None) -> Partition:
    """Parse the block grammar: blocks separated by '|', elements by ','.

    The ground-set size defaults to the largest element mentioned.
    """
    if not text.strip():
        raise PartitionParseError("empty partition text")
    blocks: list[list[int]] = []
    seen: set[int] = set()
    pos = 0
    for block_text in text.split("|"):
        block: list[int] = []
        for token in block_text.split(","):
            stripped = token.strip()
            if not stripped or not stripped.isdigit():
                raise PartitionParseError(f"expected integer, got {token!r}", pos)
            e = int(stripped)
            if e < 1:
                raise PartitionParseError(f"element {e} out of range", pos)
            if e in seen:
                raise PartitionParseError(f"duplicate element {e}", pos)
            seen.add(e)
            block.append(e)
            pos += len(token) + 1
        if not block:
            raise PartitionParseError("empty block", pos)
        blocks.append(block)
    size = max(seen) if n is None else n
    try:
        return Partition(size, blocks)
    except ValueError as exc:
        raise PartitionParseError(str(exc)) from exc


def all_partitions(n: int) -> list[Partition]:
    """All partitions of {1,...,n}, ordered lexicographically by
    restricted-growth encoding (total partition first, discrete last)."""
    out: list[Partition] = []
    code = [0] * n

    def extend(i: int, mx: int):
        if i == n:
            blocks: dict[int, list[int]] = {}
            for e, c in enumerate(code, start=1):
                blocks.setdefault(c, []).append(e)
            out.append(Partition(n, blocks.values()))
            return
        for v in range(mx + 2):
            code[i] = v
            extend(i + 1, max(mx, v))

    extend(1, 0)
    return out


def enumerate_proper(n: int) -> list[Partition]:
    """The proper part of the partition lattice: everything except the
    discrete and the total partition, in canonical order."""
    if n < 3:
        raise ValueError(f"the proper part needs n >= 3, got {n}")
    return [p for p in all_partitions(n) if p.is_proper()]
