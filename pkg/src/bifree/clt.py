"""Central-limit experiment harness.

Scaled sums S_N = N^(-1/2) * (sum of N bi-free copies) are computed through
cumulant scaling: the cumulant of a degree-m word picks up the factor
N^(1-m/2), which is rational because N is restricted to perfect squares.
A literal oracle (N-fold product, then expansion of the scaled sum) backs
the fast path for small N.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import isqrt

from .cumulant import cumulants_from_moments, moments_from_cumulants
from .dist import CumulantTable, Distribution
from .engine import bifree_product
from .errors import DomainError
from .models import CovarianceSpec, gaussian_dist
from .rationals import rat
from .scalars import GaussianRational
from .scalars import _new as _gr
from .scalars import decimal_magnitude
from .words import Letter, Word, format_word


def _require_centered(mu: Distribution) -> None:
    for letter in mu.signature.letters():
        if mu.moment((letter,)):
            raise DomainError(
                f"centered input required: word {format_word((letter,))} has "
                "nonzero moment"
            )


def _square_root(n: int) -> int:
    if n < 1 or isqrt(n) ** 2 != n:
        raise DomainError(f"N must be a positive perfect square, got {n}")
    return isqrt(n)


def scaled_sum_dist(mu: Distribution, n: int, degree: int) -> Distribution:
    """Distribution of N^(-1/2) times the sum of N bi-free copies of mu."""
    _require_centered(mu)
    root = _square_root(n)
    cumulants = cumulants_from_moments(mu, degree)
    scaled = {}
    for word, value in cumulants.values.items():
        m = len(word)
        # N^(1 - m/2) = root^(2 - m)
        k = 2 - m
        factor = _gr(rat(root**k) if k >= 0 else rat(1, root**-k), rat(0))
        scaled[word] = factor * value
    return moments_from_cumulants(CumulantTable(mu.signature, degree, scaled), degree)


def scaled_sum_dist_direct(mu: Distribution, n: int, degree: int) -> Distribution:
    """Oracle for scaled_sum_dist: N-fold bi-free product, then expansion.

    Builds the joint distribution of N tagged copies and expands every
    moment of the scaled sum into the N^m tagged words.  Exponential in the
    word degree; intended for N <= 4.
    """
    _require_centered(mu)
    root = _square_root(n)
    copies = [
        mu.retag({f.family: (f.family, t) for f in mu.signature.families})
        for t in range(n)
    ]
    joint = bifree_product(copies, degree)
    inv_root = _gr(rat(1, root), rat(0))

    def moment(word: Word) -> GaussianRational:
        total = _gr(rat(0), rat(0))
        for tags in itertools.product(range(n), repeat=len(word)):
            tagged = tuple(
                Letter((l.family, t), l.side, l.index, l.star)
                for l, t in zip(word, tags)
            )
            total = total + joint.moment(tagged)
        return total * inv_root ** len(word)

    return Distribution(
        mu.signature, degree,
        {w: moment(w) for w in mu.signature.words(degree)},
    )


@dataclass
class CltRow:
    word: Word
    n: int
    moment: GaussianRational
    gaussian: GaussianRational
    error: GaussianRational  # exact difference moment - gaussian


@dataclass
class CltReport:
    degree: int
    ns: tuple[int, ...]
    rows: list[CltRow]
    decay_ok: bool

    def to_csv(self) -> str:
        lines = ["word,N,moment,gaussian,error,abs_error"]
        for row in self.rows:
            lines.append(
                ",".join(
                    (
                        f'"{format_word(row.word)}"',
                        str(row.n),
                        f'"{row.moment}"',
                        f'"{row.gaussian}"',
                        f'"{row.error}"',
                        decimal_magnitude(row.error),
                    )
                )
            )
        return "\n".join(lines) + "\n"


def _magnitude_squared(value: GaussianRational):
    return value.re * value.re + value.im * value.im


def clt_report(mu: Distribution, ns, degree: int) -> CltReport:
    """Tabulate scaled-sum moments against the limiting central-limit
    distribution with covariance C_kl = mu(kl), and check that N * |error|
    never grows along the sampled N.
    """
    _require_centered(mu)
    ns = tuple(ns)
    for n in ns:
        _square_root(n)
    alphabet = mu.signature.letters()
    cov = CovarianceSpec(
        mu.signature, {(u, v): mu.moment((u, v)) for u in alphabet for v in alphabet}
    )
    limit = gaussian_dist(cov, degree)
    rows: list[CltRow] = []
    errors: dict[Word, dict[int, GaussianRational]] = {}
    for n in ns:
        s_n = scaled_sum_dist(mu, n, degree)
        for word in mu.signature.words(degree):
            error = s_n.moment(word) - limit.moment(word)
            rows.append(CltRow(word, n, s_n.moment(word), limit.moment(word), error))
            errors.setdefault(word, {})[n] = error
    decay_ok = True
    for word, by_n in errors.items():
        ordered = sorted(by_n)
        for smaller, larger in zip(ordered, ordered[1:]):
            lhs = larger * larger * _magnitude_squared(by_n[larger])
            rhs = smaller * smaller * _magnitude_squared(by_n[smaller])
            if lhs > rhs:
                decay_ok = False
    return CltReport(degree, ns, rows, decay_ok)
