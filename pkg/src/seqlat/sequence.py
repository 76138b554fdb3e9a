"""Sequences over the alphabet and patterns (antichains of maximal sequences).

A sequence is a tuple of elements. A :class:`Pattern` stands for the
downward-closed set of all valid sequences that embed contiguously into one
of its members; only the maximal members are stored, sorted canonically, so
two patterns are equal exactly when their tuples are equal.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .alphabet import AlphabetSchema, Element, element_key, element_leq, element_meet
from .errors import ConfigError, InputError

Sequence = tuple

_KEYS: dict = {}


def sequence_key(s: Sequence) -> tuple:
    """Canonical sort key: lexicographic over element keys."""
    k = _KEYS.get(s)
    if k is None:
        k = tuple(element_key(e) for e in s)
        if len(_KEYS) > 2_000_000:
            _KEYS.clear()
        _KEYS[s] = k
    return k


@dataclass(frozen=True, eq=False)
class Pattern:
    """Canonical antichain of maximal valid sequences.

    ``is_top`` marks the synthetic most specific description used to seed
    lattice construction; it is absorbed by every meet.
    """

    sequences: tuple = ()
    is_top: bool = False
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        # Patterns are dictionary keys all over the miner; hash once.
        object.__setattr__(self, "_hash", hash((self.sequences, self.is_top)))

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, Pattern):
            return NotImplemented
        return self._hash == other._hash and self.is_top == other.is_top and self.sequences == other.sequences

    def __iter__(self) -> Iterator[Sequence]:
        return iter(self.sequences)

    def __len__(self) -> int:
        return len(self.sequences)

    def __bool__(self) -> bool:
        return bool(self.sequences) or self.is_top


TOP = Pattern((), is_top=True)
EMPTY = Pattern(())


def _check_pair(schema: AlphabetSchema, a: Sequence, b: Sequence) -> None:
    n = len(schema.fields)
    for e in a + b:
        if not isinstance(e, tuple) or len(e) != n:
            raise InputError(f"element {e!r} does not match schema {schema.names}")


def is_valid(schema: AlphabetSchema, s: Sequence) -> bool:
    bottom = schema.general
    return all(e != bottom for e in s)


def is_subsequence_general(schema: AlphabetSchema, t: Sequence, s: Sequence) -> bool:
    """Gapped embedding of ``t`` into ``s`` (greedy leftmost matching)."""
    _check_pair(schema, t, s)
    j = 0
    for e in t:
        while j < len(s) and not element_leq(schema, e, s[j]):
            j += 1
        if j == len(s):
            return False
        j += 1
    return True


def is_subsequence_contiguous(schema: AlphabetSchema, t: Sequence, s: Sequence) -> bool:
    n, m = len(t), len(s)
    if n > m:
        return False
    cache = schema._embeds
    key = (t, s)
    hit = cache.get(key)
    if hit is not None:
        return hit
    hit = False
    for k in range(m - n + 1):
        for i in range(n):
            if not element_leq(schema, t[i], s[k + i]):
                break
        else:
            hit = True
            break
    if len(cache) > 2_000_000:
        cache.clear()
    cache[key] = hit
    return hit


def split_at_bottom(schema: AlphabetSchema, s: Iterable[Element], min_len: int = 1) -> list[Sequence]:
    """Maximal runs of non-bottom elements, keeping runs of length >= min_len."""
    bottom = schema.general
    runs = []
    run: list = []
    for e in s:
        if e == bottom:
            if len(run) >= min_len and run:
                runs.append(tuple(run))
            run = []
        else:
            run.append(e)
    if run and len(run) >= min_len:
        runs.append(tuple(run))
    return runs


def alignments(schema: AlphabetSchema, s: Sequence, t: Sequence) -> Iterator[tuple[int, list[Element]]]:
    """Yield ``(offset, window)`` for every overlap of ``s`` and ``t``.

    ``offset`` k pairs ``s[i]`` with ``t[i + k]``; ``window`` holds the
    elementwise meets of the overlapping positions, bottoms included.
    """
    n, m = len(s), len(t)
    for k in range(-(n - 1), m):
        lo, hi = max(0, -k), min(n, m - k)
        yield k, [element_meet(schema, s[i], t[i + k]) for i in range(lo, hi)]


def sequence_meet(schema: AlphabetSchema, s: Sequence, t: Sequence) -> set[Sequence]:
    """All bottom-free runs of all alignment windows (not reduced to an antichain)."""
    _check_pair(schema, s, t)
    out: set = set()
    for _, window in alignments(schema, s, t):
        out.update(split_at_bottom(schema, window))
    return out


def maximal_antichain(schema: AlphabetSchema, seqs: Iterable[Sequence]) -> Pattern:
    # Longest first: a sequence can only embed into one at least as long.
    # Same-length peers are all checked, kept or not (embedding is transitive).
    by_len: dict = {}
    for s in set(seqs):
        by_len.setdefault(len(s), []).append(s)
    kept: list = []
    for n in sorted(by_len, reverse=True):
        group = by_len[n]
        survivors = [
            s for s in group
            if not any(k is not s and is_subsequence_contiguous(schema, s, k) for k in kept)
            and not any(k != s and is_subsequence_contiguous(schema, s, k) for k in group)
        ]
        kept.extend(survivors)
    kept.sort(key=sequence_key)
    return Pattern(tuple(kept))


def make_pattern(schema: AlphabetSchema, seqs: Iterable[Sequence]) -> Pattern:
    """Validate user-supplied sequences and reduce them to a canonical pattern."""
    seqs = list(seqs)
    for s in seqs:
        for e in s:
            schema.check(e)
        if not s:
            raise InputError("patterns cannot contain the empty sequence")
        if not is_valid(schema, s):
            raise InputError("patterns cannot contain the least element of the alphabet")
    return maximal_antichain(schema, seqs)


def pattern_of(schema: AlphabetSchema, raw: Sequence) -> Pattern:
    """Description of one object: its raw sequence cut at any bottom element."""
    for e in raw:
        schema.check(e)
    return maximal_antichain(schema, split_at_bottom(schema, raw))


def pattern_meet(schema: AlphabetSchema, x: Pattern, y: Pattern) -> Pattern:
    if x.is_top:
        return y
    if y.is_top or x == y:
        return x
    seqs: set = set()
    for s in x.sequences:
        for t in y.sequences:
            seqs |= sequence_meet(schema, s, t)
    return maximal_antichain(schema, seqs)


def pattern_leq(schema: AlphabetSchema, x: Pattern, y: Pattern) -> bool:
    """``x`` is subsumed by ``y``: each member of x embeds into some member of y."""
    if y.is_top:
        return True
    if x.is_top:
        return False
    if x == y:
        return True
    ys = y.sequences
    return all(any(is_subsequence_contiguous(schema, s, t) for t in ys) for s in x.sequences)


def run_length_encode(schema: AlphabetSchema, raw: Sequence) -> Sequence:
    """Collapse runs of events equal on all non-repetition fields into one
    event whose repetition interval is ``[n, n]``."""
    r = schema.repetition_index
    if r is None:
        raise ConfigError("schema has no repetition field")
    out: list = []
    prev_key = None
    count = 0
    for e in raw:
        key = e[:r] + e[r + 1:]
        if key == prev_key:
            count += e[r][0]
            continue
        if prev_key is not None:
            out.append(prev_key[:r] + ((count, count),) + prev_key[r:])
        prev_key, count = key, e[r][0]
    if prev_key is not None:
        out.append(prev_key[:r] + ((count, count),) + prev_key[r:])
    return tuple(out)


def run_length_decode(schema: AlphabetSchema, encoded: Sequence) -> Sequence:
    r = schema.repetition_index
    if r is None:
        raise ConfigError("schema has no repetition field")
    out = []
    for e in encoded:
        lo, hi = e[r]
        if lo != hi:
            raise InputError(f"cannot unroll a non-degenerate repetition interval {e[r]!r}")
        out.extend([e[:r] + ((1, 1),) + e[r + 1:]] * lo)
    return tuple(out)
