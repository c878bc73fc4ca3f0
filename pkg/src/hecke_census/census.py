"""Brute-force class census: every infinite-order conjugacy class once.

Classes are enumerated as block-exponent necklaces: tuples (k1, ..., kn)
with nonzero canonical exponents and word length ``n + sum |ki|`` within
budget, emitted only when the tuple equals its own minimal rotation.
Memory stays linear in the word length, so no global dedup set is
needed.  Work is partitioned by the first block value; partial tables
merge by componentwise addition, which makes the output independent of
the worker count.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterator

from .necklaces import BlockAlphabet, exponent_ordinal
from .words import CyclicWord, DomainError, GroupParams

CSV_HEADER = "len,symmetric,p_reciprocal,symmetric_p,power,reciprocal_total,all_classes"

# counter indices
_ALL, _SYM, _PREC, _SYMP, _POWER = range(5)


@dataclass(frozen=True)
class CensusRow:
    symmetric: int
    p_reciprocal: int
    symmetric_p: int
    power: int
    all_classes: int

    @property
    def reciprocal_total(self) -> int:
        return self.symmetric + self.p_reciprocal + self.symmetric_p


@dataclass(frozen=True)
class CensusTable:
    params: GroupParams
    max_len: int
    rows: dict[int, CensusRow]

    def row(self, length: int) -> CensusRow:
        return self.rows[length]

    def reciprocal_total(self, length: int) -> int:
        return self.rows[length].reciprocal_total

    def column(self, name: str) -> dict[int, int]:
        if name == "reciprocal_total":
            return {l: row.reciprocal_total for l, row in self.rows.items()}
        return {l: getattr(row, name) for l, row in self.rows.items()}


def _categorize(alphabet: BlockAlphabet, s: bytes, r_ord: int | None) -> int:
    """Category index of a necklace: 0 none, else _SYM/_PREC/_SYMP."""
    n = len(s)
    u2 = alphabet.rev_neg(s) * 2
    iota_t = False
    gamma_t = False
    odd_n = n % 2 == 1
    for t in range(n):
        if u2[t : t + n] != s:
            continue
        c = (-t) % n
        if odd_n:
            pos = c if c % 2 == 1 else c + n
            assert s[(pos - 1) // 2] == r_ord, "fixed gamma block must be g^r"
            iota_t = gamma_t = True
            break
        if c % 2 == 0:
            iota_t = True
        else:
            assert s[(c - 1) // 2] == r_ord and s[((c - 1) // 2 + n // 2) % n] == r_ord
            gamma_t = True
        if iota_t and gamma_t:
            break
    if iota_t and gamma_t:
        return _SYMP
    if iota_t:
        return _SYM
    if gamma_t:
        return _PREC
    return 0


def _scan_first(
    params: GroupParams,
    max_len: int,
    first_index: int,
    visit: Callable[[int, bytes], None],
) -> None:
    """Visit every self-minimal necklace whose minimal block is exps[first_index]."""
    alphabet = BlockAlphabet.for_params(params)
    pairs = [
        (exponent_ordinal(k), 1 + abs(k))
        for k in alphabet.exponents[first_index:]
    ]
    o1, w1 = pairs[0]
    if w1 > max_len:
        return
    first_byte = bytes([o1])
    buf = bytearray([o1])

    def dfs(used: int) -> None:
        s = bytes(buf)
        n = len(s)
        # minimal-rotation filter: compare only rotations starting at o1
        s2 = s + s
        i = s2.find(first_byte, 1)
        minimal = True
        while 0 < i < n:
            if s2[i : i + n] < s:
                minimal = False
                break
            i = s2.find(first_byte, i + 1)
        if minimal:
            visit(used, s)
        for o, w in pairs:
            if used + w <= max_len:
                buf.append(o)
                dfs(used + w)
                buf.pop()

    dfs(w1)


def _partition_counts(params: GroupParams, max_len: int, first_index: int) -> list[list[int]]:
    alphabet = BlockAlphabet.for_params(params)
    r_ord = exponent_ordinal(params.r) if params.even else None
    counters = [[0] * (max_len + 1) for _ in range(5)]

    def visit(length: int, s: bytes) -> None:
        counters[_ALL][length] += 1
        cat = _categorize(alphabet, s, r_ord)
        if cat:
            counters[cat][length] += 1
            if r_ord is not None and all(o == r_ord for o in s):
                counters[_POWER][length] += 1

    _scan_first(params, max_len, first_index, visit)
    return counters


def census(params: GroupParams, max_len: int, workers: int = 1) -> CensusTable:
    """Exact per-length, per-category class counts up to ``max_len``."""
    if max_len < 2:
        raise DomainError("max_len must be >= 2")
    alphabet = BlockAlphabet.for_params(params)
    indices = range(len(alphabet.exponents))
    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(
                pool.map(lambda i: _partition_counts(params, max_len, i), indices)
            )
    else:
        parts = [_partition_counts(params, max_len, i) for i in indices]

    totals = [[0] * (max_len + 1) for _ in range(5)]
    for part in parts:
        for c, col in enumerate(part):
            for length, v in enumerate(col):
                totals[c][length] += v

    rows = {
        length: CensusRow(
            symmetric=totals[_SYM][length],
            p_reciprocal=totals[_PREC][length],
            symmetric_p=totals[_SYMP][length],
            power=totals[_POWER][length],
            all_classes=totals[_ALL][length],
        )
        for length in range(2, max_len + 1)
    }
    return CensusTable(params=params, max_len=max_len, rows=rows)


def enumerate_classes(params: GroupParams, max_len: int) -> Iterator[CyclicWord]:
    """Every infinite-order class of word length <= max_len, exactly once.

    Ordered by (word length, class-key order).
    """
    if max_len < 2:
        raise DomainError("max_len must be >= 2")
    alphabet = BlockAlphabet.for_params(params)
    found: list[tuple[int, bytes]] = []
    for i in range(len(alphabet.exponents)):
        _scan_first(params, max_len, i, lambda length, s: found.append((length, s)))
    found.sort()
    for _, s in found:
        yield CyclicWord.from_blocks(params, alphabet.decode(s))


def table_to_csv(table: CensusTable) -> str:
    lines = [CSV_HEADER]
    for length in range(2, table.max_len + 1):
        row = table.rows[length]
        lines.append(
            f"{length},{row.symmetric},{row.p_reciprocal},{row.symmetric_p},"
            f"{row.power},{row.reciprocal_total},{row.all_classes}"
        )
    return "\n".join(lines) + "\n"


def table_to_json(table: CensusTable) -> str:
    doc = {
        "p": table.params.p,
        "max_len": table.max_len,
        "rows": [
            {
                "len": length,
                "symmetric": str(row.symmetric),
                "p_reciprocal": str(row.p_reciprocal),
                "symmetric_p": str(row.symmetric_p),
                "power": str(row.power),
                "reciprocal_total": str(row.reciprocal_total),
                "all_classes": str(row.all_classes),
            }
            for length, row in sorted(table.rows.items())
        ],
    }
    return json.dumps(doc, indent=2) + "\n"
