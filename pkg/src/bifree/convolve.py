"""Additive and multiplicative bi-free convolution of two-faced distributions.

Both operations are the distribution of letter-wise sums respectively
products of a bi-free pair carrying the two inputs, and both are computed
by the same product engine that backs `bifree_product`: the pair's joint
moments are evaluated with the sum (respectively the length-two product)
of the two tagged copies of each letter.  By linearity this equals the
2^n-term tagged-word expansion of the definition, which the test-suite
keeps as an independent route.
"""

from __future__ import annotations

from .dist import Distribution
from .engine import _build_table, _EvalContext
from .errors import SignatureError, TruncationError
from .words import LEFT


def _check_pair(mu: Distribution, nu: Distribution, degree: int) -> None:
    if mu.signature != nu.signature:
        raise SignatureError("convolution requires identical face signatures")
    if mu.degree < degree or nu.degree < degree:
        raise TruncationError(
            f"convolution at degree {degree} needs both inputs at that degree"
        )


def boxplus2(mu: Distribution, nu: Distribution, degree: int,
             jobs: int = 1) -> Distribution:
    """Additive bi-free convolution: distribution of the letter-wise sums."""
    _check_pair(mu, nu, degree)
    ctx = _EvalContext([mu, nu])
    letter_steps = [
        (
            letter,
            ((
                ctx.summand(letter.side == LEFT, 0, ctx.letter_ids[0][letter]),
                ctx.summand(letter.side == LEFT, 1, ctx.letter_ids[1][letter]),
            ),),
        )
        for letter in mu.signature.letters()
    ]
    table = _build_table(ctx, letter_steps, degree, jobs)
    return Distribution(mu.signature, degree, table)


def boxtimes2(mu: Distribution, nu: Distribution, degree: int,
              jobs: int = 1) -> Distribution:
    """Multiplicative bi-free convolution: distribution of letter-wise products.

    Each letter stands for the product (mu-copy letter) * (nu-copy letter),
    in that order; the two factors are applied as consecutive operators.
    """
    _check_pair(mu, nu, degree)
    ctx = _EvalContext([mu, nu])
    letter_steps = [
        (
            letter,
            (
                (ctx.summand(letter.side == LEFT, 0, ctx.letter_ids[0][letter]),),
                (ctx.summand(letter.side == LEFT, 1, ctx.letter_ids[1][letter]),),
            ),
        )
        for letter in mu.signature.letters()
    ]
    table = _build_table(ctx, letter_steps, degree, jobs)
    return Distribution(mu.signature, degree, table)
