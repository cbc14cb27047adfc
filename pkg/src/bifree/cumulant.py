"""Cumulants of two-faced distributions.

The moment-to-cumulant transform realizes the logarithm of the unipotent
group of truncated moment tuples under additive convolution: the N-th
convolution power of a distribution is, word by word, a polynomial in N of
degree at most the word length with zero constant term, and the cumulant
of a word is the N-linear coefficient of that polynomial.  The coefficient
is extracted exactly from the powers at N = 0..n by Newton forward
differences.

The inverse transform solves for moments degree by degree: the unknown
moment of a word enters its own cumulant with coefficient one, so probing
the transform with that moment set to zero isolates it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .convolve import boxplus2
from .dist import CumulantTable, Distribution, point_distribution
from .errors import DomainError, TruncationError
from .scalars import ONE, ZERO, GaussianRational
from .words import Word


@dataclass
class ConvolutionPowerCache:
    """Additive convolution powers of a base distribution, built on demand."""

    base: Distribution
    powers: dict[int, Distribution] = field(default_factory=dict)

    def power(self, n: int) -> Distribution:
        if n not in self.powers:
            if n == 0:
                self.powers[0] = point_distribution(self.base.signature, self.base.degree)
            elif n == 1:
                self.powers[1] = self.base
            else:
                self.powers[n] = boxplus2(self.power(n - 1), self.base, self.base.degree)
        return self.powers[n]


def _linear_coefficient(values) -> GaussianRational:
    """N-coefficient of the polynomial interpolating values at N = 0, 1, ..."""
    row = list(values)
    result = ZERO
    sign = 1
    for m in range(1, len(values)):
        row = [row[i + 1] - row[i] for i in range(len(row) - 1)]
        result = result + sign * (row[0] / m)
        sign = -sign
    return result


def cumulants_from_moments(mu: Distribution, degree: int) -> CumulantTable:
    """All cumulants of words up to `degree`."""
    if mu.degree < degree:
        raise TruncationError(
            f"cumulants at degree {degree} need moments at that degree"
        )
    cache = ConvolutionPowerCache(mu)
    values = {}
    for word in mu.signature.words(degree):
        n = len(word)
        if n == 0:
            continue
        values[word] = _linear_coefficient(
            [cache.power(k).moment(word) for k in range(n + 1)]
        )
    return CumulantTable(mu.signature, degree, values)


def moments_from_cumulants(table: CumulantTable, degree: int) -> Distribution:
    """The unique distribution whose cumulants up to `degree` match `table`."""
    if table.degree < degree:
        raise TruncationError(
            f"moments at degree {degree} need cumulants at that degree"
        )
    signature = table.signature
    solved: dict[Word, GaussianRational] = {(): ONE}
    for n in range(1, degree + 1):
        candidate = Distribution(
            signature, n,
            {w: solved.get(w, ZERO) for w in signature.words(n)},
        )
        cache = ConvolutionPowerCache(candidate)
        powers = [cache.power(k) for k in range(n + 1)]
        for word in signature.words(n):
            if len(word) != n:
                continue
            probed = _linear_coefficient([p.moment(word) for p in powers])
            solved[word] = table.value(word) - probed
    return Distribution(signature, degree, solved)


def dilate(mu: Distribution, s: GaussianRational) -> Distribution:
    """Scale every variable by s: the moment of a word picks up s^degree."""
    return Distribution(
        mu.signature, mu.degree,
        {w: (s ** len(w)) * v for w, v in mu.moments.items()},
    )


# ---------------------------------------------------------------------------
# Independent single-face oracle via non-crossing partitions


def _set_partitions(n: int):
    if n == 0:
        yield ()
        return
    for rest in _set_partitions(n - 1):
        yield rest + ((n - 1,),)
        for i, block in enumerate(rest):
            yield rest[:i] + (block + (n - 1,),) + rest[i + 1 :]


def _is_noncrossing(partition) -> bool:
    owner = {}
    for b, block in enumerate(partition):
        for x in block:
            owner[x] = b
    n = len(owner)
    for a in range(n):
        for b in range(a + 1, n):
            for c in range(b + 1, n):
                for d in range(c + 1, n):
                    if owner[a] == owner[c] != owner[b] == owner[d]:
                        return False
    return True


@lru_cache(maxsize=None)
def _nc_partitions(n: int):
    parts = [tuple(sorted(p, key=min)) for p in _set_partitions(n)]
    return tuple(sorted((p for p in parts if _is_noncrossing(p)), key=len))


def _refines(pi, sigma) -> bool:
    blocks = [set(b) for b in sigma]
    return all(any(set(b) <= s for s in blocks) for b in pi)


@lru_cache(maxsize=None)
def _nc_moebius(n: int):
    """Moebius function mu(pi, top) on the non-crossing partition lattice,
    computed by the defining recursion on the refinement order."""
    partitions = _nc_partitions(n)
    top = min(partitions, key=len)
    moebius = {top: 1}
    for pi in sorted(partitions, key=len):
        if pi == top:
            continue
        moebius[pi] = -sum(
            moebius[sigma]
            for sigma in partitions
            if len(sigma) < len(pi) and _refines(pi, sigma)
        )
    return moebius


def free_cumulant_oracle(mu: Distribution, word: Word) -> GaussianRational:
    """Free cumulant of a single-face word by brute-force Moebius inversion.

    Sums Moebius-weighted moment products over all non-crossing partitions;
    entirely independent of the convolution-power transform.
    """
    if not word:
        raise DomainError("free cumulants are indexed by nonempty words")
    families = {l.family for l in word}
    sides = {l.side for l in word}
    if len(families) != 1 or len(sides) != 1:
        raise DomainError("the oracle handles words on one side of one family only")
    n = len(word)
    moebius = _nc_moebius(n)
    total = ZERO
    for partition in _nc_partitions(n):
        product = GaussianRational(moebius[partition])
        for block in partition:
            product = product * mu.moment(tuple(word[i] for i in block))
        total = total + product
    return total
