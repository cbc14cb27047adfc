"""Shared builders for random exact fixtures."""

from bifree.dist import Distribution
from bifree.scalars import ONE, qi


def rand_scalar(rng, with_imag=False):
    if with_imag:
        return qi(rng.randint(-4, 4), rng.randint(1, 4), rng.randint(-2, 2), rng.randint(1, 3))
    return qi(rng.randint(-4, 4), rng.randint(1, 4))


def rand_dist(signature, degree, rng, with_imag=False, centered=False):
    moments = {}
    for word in signature.words(degree):
        if not word:
            moments[word] = ONE
        elif centered and len(word) == 1:
            moments[word] = qi(0)
        else:
            moments[word] = rand_scalar(rng, with_imag)
    return Distribution(signature, degree, moments)
