import pytest
from util import rand_dist

from bifree.clt import clt_report, scaled_sum_dist, scaled_sum_dist_direct
from bifree.dist import Distribution
from bifree.errors import DomainError
from bifree.models import CovarianceSpec, gaussian_dist, gram_psd_check
from bifree.scalars import ONE, ZERO, qi
from bifree.words import LEFT, Letter, two_faced

SIG = two_faced(left=("a",), family=1)
A = Letter(1, LEFT, "a")


def single_left(m2, m4, degree=4):
    moments = {w: ZERO for w in SIG.words(degree)}
    moments[()] = ONE
    moments[(A, A)] = m2
    moments[(A, A, A, A)] = m4
    return Distribution(SIG, degree, moments)


def test_n_equal_one_is_identity(rng):
    sig = two_faced(left=("a",), right=("c",), family=1)
    mu = rand_dist(sig, 4, rng, centered=True)
    assert scaled_sum_dist(mu, 1, 4) == mu
    assert scaled_sum_dist_direct(mu, 1, 4) == mu


def test_degree_two_moments_invariant(rng):
    sig = two_faced(left=("a",), right=("c",), family=1)
    mu = rand_dist(sig, 4, rng, centered=True)
    for n in (4, 9, 16):
        s = scaled_sum_dist(mu, n, 4)
        for u in sig.letters():
            for w in sig.letters():
                assert s.moment((u, w)) == mu.moment((u, w))


def test_known_fourth_moment_at_n_four():
    mu = single_left(ONE, qi(5))
    s4 = scaled_sum_dist(mu, 4, 4)
    assert s4.moment((A,) * 4) == qi(11, 4)


def test_cumulant_scaling_equals_direct_product_path(rng):
    sig = two_faced(left=("a",), right=("c",), family=1)
    mu = rand_dist(sig, 4, rng, centered=True)
    for n in (1, 4):
        assert scaled_sum_dist(mu, n, 4) == scaled_sum_dist_direct(mu, n, 4)


def test_preconditions():
    mu = single_left(ONE, qi(5))
    with pytest.raises(DomainError):
        scaled_sum_dist(mu, 3, 4)  # not a perfect square
    uncentered = dict(mu.moments)
    uncentered[(A,)] = ONE
    bad = Distribution(SIG, 4, uncentered)
    with pytest.raises(DomainError):
        scaled_sum_dist(bad, 4, 4)
    with pytest.raises(DomainError):
        clt_report(bad, [4], 4)


def test_report_errors_decay_exactly():
    mu = single_left(ONE, qi(5))
    report = clt_report(mu, [4, 16, 64], 4)
    errors = {row.n: row.error for row in report.rows if row.word == (A,) * 4}
    assert errors == {4: qi(3, 4), 16: qi(3, 16), 64: qi(3, 64)}
    assert report.decay_ok
    assert all(row.error == ZERO for row in report.rows if len(row.word) == 2)


def test_gaussian_input_has_zero_errors():
    cov = {(A, A): qi(1, 2)}
    gamma = gaussian_dist(CovarianceSpec(SIG, cov), 4)
    report = clt_report(gamma, [4, 16], 4)
    assert all(row.error == ZERO for row in report.rows)


def test_hermitian_input_gives_psd_limit(rng):
    sig = two_faced(left=("a",), right=("c",), family=1)
    c_letter = Letter(1, "right", "c")
    # hermitian-style moment table: symmetric second moments from a
    # factorization, higher moments arbitrary
    mu = rand_dist(sig, 4, rng, centered=True)
    moments = dict(mu.moments)
    moments[(A, A)] = qi(2)
    moments[(c_letter, c_letter)] = qi(1)
    moments[(A, c_letter)] = qi(1)
    moments[(c_letter, A)] = qi(1)
    mu = Distribution(sig, 4, moments)
    report = clt_report(mu, [4], 4)
    cov = CovarianceSpec(
        sig, {(u, v): mu.moment((u, v)) for u in sig.letters() for v in sig.letters()}
    )
    limit = gaussian_dist(cov, 4)
    assert gram_psd_check(limit, 4).positive
    assert report.decay_ok


def test_csv_output_shape():
    mu = single_left(ONE, qi(5))
    report = clt_report(mu, [4], 2)
    text = report.to_csv()
    lines = text.strip().splitlines()
    assert lines[0] == "word,N,moment,gaussian,error,abs_error"
    assert len(lines) == 1 + len(list(SIG.words(2)))
    assert '"()"' in lines[1]
