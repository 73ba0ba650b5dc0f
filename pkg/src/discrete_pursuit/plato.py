"""The Plato sentence-ending corpus and its ingestion.

Each sentence of six of Plato's books was classified by the long/short
pattern of its final five syllables; the corpus stores, per book, the
percentage of sentences ending in each of the 32 patterns (short = U = 1,
long = - = 0) plus the sentence count.  The embedded table is kept verbatim
as printed, including the rounding drift that leaves some columns a little
off a 100.0 total; analyses therefore read percentages as parts per 100
rather than renormalizing by the drifted column sums.
"""

from __future__ import annotations

import csv
import hashlib
from dataclasses import dataclass

import numpy as np

from .radon import MassFunction
from .spaces import DiscreteSpace, space_z2k

__all__ = [
    "BOOKS",
    "Corpus",
    "corpus_to_csv",
    "ingest_csv",
    "load_table1",
    "pattern_to_index",
]

BOOKS = ("Rep", "Laws", "Phil", "Pol", "Soph", "Tim")
_ALIASES = {
    "rep": "Rep", "rep.": "Rep", "republic": "Rep",
    "laws": "Laws", "laws.": "Laws",
    "phil": "Phil", "phil.": "Phil", "philebus": "Phil",
    "pol": "Pol", "pol.": "Pol", "politicus": "Pol",
    "soph": "Soph", "soph.": "Soph", "sophist": "Soph",
    "tim": "Tim", "tim.": "Tim", "timaeus": "Tim",
}

# percentage of sentence endings per pattern:      Rep   Laws  Phil  Pol   Soph  Tim
_TABLE1_ROWS = [
    ("UUUUU", 1.1, 2.4, 2.5, 1.7, 2.8, 2.4),
    ("-UUUU", 1.6, 3.8, 2.8, 2.5, 3.6, 3.9),
    ("U-UUU", 1.7, 1.9, 2.1, 3.1, 3.4, 6.0),
    ("UU-UU", 1.9, 2.6, 2.6, 2.6, 2.6, 1.8),
    ("UUU-U", 2.1, 3.0, 4.0, 3.3, 2.4, 3.4),
    ("UUUU-", 2.0, 3.8, 4.8, 2.9, 2.5, 3.5),
    ("--UUU", 2.1, 2.7, 4.3, 3.3, 3.3, 3.4),
    ("-U-UU", 2.1, 1.8, 1.5, 2.3, 4.0, 3.4),
    ("-UU-U", 2.8, 0.6, 0.7, 0.4, 2.1, 1.7),
    ("-UUU-", 4.6, 8.8, 6.5, 4.0, 2.3, 3.3),
    ("U--UU", 3.3, 3.4, 6.7, 5.3, 3.3, 3.4),
    ("U-U-U", 2.6, 1.0, 0.6, 0.9, 1.6, 3.2),
    ("U-UU-", 4.6, 1.1, 0.7, 1.0, 3.0, 2.7),
    ("UU--U", 2.6, 1.5, 3.1, 3.1, 3.0, 3.0),
    ("UU-U-", 4.4, 3.0, 1.9, 3.0, 3.0, 2.2),
    ("UUU--", 2.5, 5.7, 5.4, 4.4, 5.1, 3.9),
    ("---UU", 2.9, 4.2, 5.5, 6.9, 5.2, 3.0),
    ("--U-U", 3.0, 1.4, 0.7, 2.7, 2.6, 3.3),
    ("--UU-", 3.4, 1.0, 0.4, 0.7, 2.3, 3.3),
    ("-U--U", 2.0, 2.3, 1.2, 3.4, 3.7, 3.3),
    ("-U-U-", 6.4, 2.4, 2.8, 1.8, 2.1, 3.0),
    ("-UU--", 4.2, 0.6, 0.7, 0.8, 3.0, 2.8),
    ("UU---", 2.8, 2.9, 2.6, 4.6, 3.4, 3.0),
    ("U-U--", 4.2, 1.2, 1.3, 1.0, 1.3, 3.3),
    ("U--U-", 4.8, 8.2, 5.3, 4.5, 4.6, 3.0),
    ("U---U", 2.4, 1.9, 5.3, 2.5, 2.5, 2.2),
    ("U----", 3.5, 4.1, 3.3, 3.8, 2.9, 2.4),
    ("-U---", 4.0, 3.7, 3.3, 4.9, 3.5, 3.0),
    ("--U--", 4.1, 2.1, 2.3, 2.1, 4.1, 6.4),
    ("---U-", 4.1, 8.8, 9.0, 6.8, 4.7, 3.8),
    ("----U", 2.0, 3.0, 2.9, 2.9, 2.6, 2.2),
    ("-----", 4.2, 5.2, 4.0, 4.9, 3.4, 1.8),
]
_SENTENCE_COUNTS = {
    "Rep": 3778, "Laws": 3783, "Phil": 958, "Pol": 770, "Soph": 919, "Tim": 762,
}

# sums of the printed columns drift from 100.0 by up to 1.9; accept percent
# columns in a window around 100 rather than the nominal rounding bound
PERCENT_SUM_WINDOW = (95.0, 105.0)


def canonical_book(name: str) -> str:
    key = name.strip()
    if key in BOOKS or key == "Crit":
        return key
    low = key.lower()
    if low in _ALIASES:
        return _ALIASES[low]
    raise KeyError(f"unknown book name {name!r}")


def _normalize_pattern(p: str) -> str:
    out = []
    for ch in p.strip():
        if ch in "U1":
            out.append("U")
        elif ch in "-0":
            out.append("-")
        else:
            raise ValueError(f"malformed pattern {p!r}: bad character {ch!r}")
    if len(out) != 5:
        raise ValueError(f"malformed pattern {p!r}: need 5 symbols")
    return "".join(out)


def pattern_to_index(p: str) -> int:
    """Integer value of the pattern's bit tuple (U=1, first symbol = MSB)."""
    return int("".join("1" if ch == "U" else "0" for ch in _normalize_pattern(p)), 2)


@dataclass(frozen=True)
class Corpus:
    """Named percentage columns over the 32 sentence-ending patterns."""

    patterns: tuple  # table row order
    books: dict  # name -> np.ndarray of 32 percentages, in pattern order
    counts: dict  # name -> sentence count or None

    def __post_init__(self):
        norm = [_normalize_pattern(p) for p in self.patterns]
        if len(norm) != 32 or len(set(norm)) != 32:
            missing = sorted(
                set(format(x, "05b").replace("1", "U").replace("0", "-") for x in range(32))
                - set(norm)
            )
            raise ValueError(f"need all 32 distinct patterns; missing {missing}")
        for name, col in self.books.items():
            v = np.asarray(col, dtype=np.float64)
            if v.shape != (32,):
                raise ValueError(f"book {name!r} does not have 32 values")
            s = v.sum()
            if not PERCENT_SUM_WINDOW[0] <= s <= PERCENT_SUM_WINDOW[1]:
                raise ValueError(
                    f"book {name!r} percentages sum to {s:.1f}, outside "
                    f"{PERCENT_SUM_WINDOW}"
                )

    @property
    def book_names(self) -> tuple:
        return tuple(self.books)

    def space(self) -> DiscreteSpace:
        """Z_2^5 space labelled with the patterns, in integer order."""
        labels = [None] * 32
        for p in self.patterns:
            labels[pattern_to_index(p)] = _normalize_pattern(p)
        return space_z2k(5, labels=labels)

    def proportions(self, book: str, renormalize: bool = False) -> np.ndarray:
        """Pattern proportions in space (integer) order.

        Percentages are divided by 100; with ``renormalize=True`` the
        column is rescaled to total exactly one instead, which shifts every
        downstream number by the column's rounding drift.
        """
        book = canonical_book(book)
        col = np.asarray(self.books[book], dtype=np.float64)
        out = np.zeros(32)
        for p, v in zip(self.patterns, col):
            out[pattern_to_index(p)] = v
        return out / out.sum() if renormalize else out / 100.0

    def mass_function(self, book: str, renormalize: bool = False) -> MassFunction:
        return MassFunction(space=self.space(), values=self.proportions(book, renormalize))

    def value(self, book: str, pattern: str) -> float:
        book = canonical_book(book)
        idx = [_normalize_pattern(p) for p in self.patterns].index(
            _normalize_pattern(pattern)
        )
        return float(self.books[book][idx])

    def checksum(self) -> str:
        """SHA-256 over all 198 embedded values, pinned by the test suite."""
        parts = []
        for name in self.book_names:
            for p, v in zip(self.patterns, self.books[name]):
                parts.append(f"{name},{p},{v:.1f}")
            cnt = self.counts.get(name)
            parts.append(f"{name},_count,{cnt}")
        return hashlib.sha256("\n".join(parts).encode()).hexdigest()


def load_table1() -> Corpus:
    """The embedded corpus: six books, 32 patterns, sentence counts."""
    patterns = tuple(r[0] for r in _TABLE1_ROWS)
    books = {
        name: np.array([r[1 + i] for r in _TABLE1_ROWS])
        for i, name in enumerate(BOOKS)
    }
    return Corpus(patterns=patterns, books=books, counts=dict(_SENTENCE_COUNTS))


def ingest_csv(path, values: str = "percent") -> Corpus:
    """Read a long-format CSV ``book,pattern,value`` into a corpus.

    Rows with pattern ``_count`` give sentence counts.  ``values="count"``
    reads the value column as raw counts and converts to percentages.
    Patterns may use U/- or 1/0 symbols.  Missing or duplicate
    (book, pattern) entries are errors.
    """
    if values not in ("percent", "count"):
        raise ValueError("values must be 'percent' or 'count'")
    data: dict[str, dict[str, float]] = {}
    counts: dict[str, int] = {}
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        for row in reader:
            if not row or row[0].startswith("#") or row[0] == "book":
                continue
            if len(row) != 3:
                raise ValueError(f"expected book,pattern,value rows, got {row!r}")
            book, pattern, value = row[0].strip(), row[1].strip(), row[2].strip()
            if pattern == "_count":
                counts[book] = int(value)
                continue
            pattern = _normalize_pattern(pattern)
            col = data.setdefault(book, {})
            if pattern in col:
                raise ValueError(f"duplicate entry for ({book}, {pattern})")
            col[pattern] = float(value)
    if not data:
        raise ValueError("no data rows found")
    all_patterns = [
        format(x, "05b").replace("1", "U").replace("0", "-") for x in range(32)
    ]
    for book, col in data.items():
        missing = [p for p in all_patterns if p not in col]
        if missing:
            raise ValueError(f"book {book!r} is missing pattern {missing[0]!r}")
    first = next(iter(data))
    patterns = tuple(sorted(data[first], key=pattern_to_index))
    books = {}
    for book, col in data.items():
        v = np.array([col[p] for p in patterns])
        if values == "count":
            total = v.sum()
            if total <= 0:
                raise ValueError(f"book {book!r} has no sentences")
            counts.setdefault(book, int(round(total)))
            v = 100.0 * v / total
        books[book] = v
    return Corpus(
        patterns=patterns,
        books=books,
        counts={b: counts.get(b) for b in books},
    )


def corpus_to_csv(corpus: Corpus, path):
    """Write a corpus in the long format accepted by :func:`ingest_csv`."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["book", "pattern", "value"])
        for name in corpus.book_names:
            for p, v in zip(corpus.patterns, corpus.books[name]):
                writer.writerow([name, p, repr(float(v))])
            if corpus.counts.get(name) is not None:
                writer.writerow([name, "_count", corpus.counts[name]])
