"""Truncated moment functionals and cumulant tables.

A Distribution holds one exact scalar for every word up to its degree
bound and is normalized at the empty word.  A CumulantTable is the same
minus the empty word.  Both validate totality on construction, naming the
first missing word in graded-lex order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping

from .errors import DomainError, IncompleteTableError, NormalizationError, TruncationError
from .scalars import ONE, ZERO, GaussianRational
from .words import FaceSignature, FamilyFaces, Letter, Word, format_word


def _validate_table(signature: FaceSignature, degree: int, table: Mapping,
                    include_empty: bool) -> None:
    if degree < 1:
        raise DomainError("degree bound must be >= 1")
    expected = 0
    for word in signature.words(degree):
        if not word and not include_empty:
            continue
        expected += 1
        if word not in table:
            raise IncompleteTableError(format_word(word))
    if len(table) != expected:
        known = set(signature.words(degree))
        for word in table:
            if word not in known or (not word and not include_empty):
                raise DomainError(f"unexpected word {format_word(word)} in table")


@dataclass
class Distribution:
    """Exact joint moments of a two-faced system, truncated at `degree`."""

    signature: FaceSignature
    degree: int
    moments: dict[Word, GaussianRational]

    def __post_init__(self):
        _validate_table(self.signature, self.degree, self.moments, include_empty=True)
        if self.moments[()] != ONE:
            raise NormalizationError("moment of the empty word must be 1")

    def moment(self, word: Word) -> GaussianRational:
        if len(word) > self.degree:
            raise TruncationError(
                f"word {format_word(word)} exceeds degree bound {self.degree}"
            )
        return self.moments[word]

    def restrict(self, families) -> Distribution:
        """Moments of the words supported on the given families (Cor 2.10-style)."""
        sub = self.signature.restrict(families)
        keep = {f.family for f in sub.families}
        kept = {
            w: v for w, v in self.moments.items() if all(l.family in keep for l in w)
        }
        return Distribution(sub, self.degree, kept)

    def retag(self, mapping: Mapping) -> Distribution:
        """Rename family ids via `mapping` (missing ids are kept)."""
        def fid(f):
            return mapping.get(f, f)

        families = tuple(
            FamilyFaces(fid(f.family), f.left, f.right, f.star_closed)
            for f in self.signature.families
        )
        moments = {
            tuple(Letter(fid(l.family), l.side, l.index, l.star) for l in w): v
            for w, v in self.moments.items()
        }
        return Distribution(FaceSignature(families), self.degree, moments)


@dataclass
class CumulantTable:
    """Exact cumulants, one per nonempty word up to `degree`."""

    signature: FaceSignature
    degree: int
    values: dict[Word, GaussianRational]

    def __post_init__(self):
        _validate_table(self.signature, self.degree, self.values, include_empty=False)

    def value(self, word: Word) -> GaussianRational:
        if not word:
            raise DomainError("cumulants are indexed by nonempty words")
        if len(word) > self.degree:
            raise TruncationError(
                f"word {format_word(word)} exceeds degree bound {self.degree}"
            )
        return self.values[word]


def tabulate(signature: FaceSignature, degree: int,
             fn: Callable[[Word], GaussianRational]) -> Distribution:
    """Distribution from a word->scalar function (fn(()) must be 1)."""
    return Distribution(
        signature, degree, {w: fn(w) for w in signature.words(degree)}
    )


def point_distribution(signature: FaceSignature, degree: int) -> Distribution:
    """All nonempty moments zero: the neutral element of additive convolution."""
    return tabulate(signature, degree, lambda w: ONE if not w else ZERO)


def ones_distribution(signature: FaceSignature, degree: int) -> Distribution:
    """Every moment 1: constant-1 variables, neutral for multiplicative convolution."""
    return tabulate(signature, degree, lambda w: ONE)


def group_families(dist: Distribution, family, namer=None) -> Distribution:
    """View a multi-family distribution as a single two-faced family.

    Left faces are pooled into one left face, right faces into one right
    face; indices are renamed `namer(old_family, index)` (default
    "<family>:<index>") to stay unique.
    """
    if namer is None:
        def namer(fid, index):
            return f"{fid}:{index}"

    left, right = [], []
    star = dist.signature.star_closed
    for fam in dist.signature.families:
        left.extend(namer(fam.family, i) for i in fam.left)
        right.extend(namer(fam.family, i) for i in fam.right)
    signature = FaceSignature((FamilyFaces(family, tuple(left), tuple(right), star),))
    moments = {
        tuple(Letter(family, l.side, namer(l.family, l.index), l.star) for l in w): v
        for w, v in dist.moments.items()
    }
    return Distribution(signature, dist.degree, moments)
