import itertools

import numpy as np
import pytest

from dkpo_lab.algebra import (BetaRepresentation, Sector, build_eta0, build_representation,
                              check_algebra, single_entry_perturbations)
from dkpo_lab.errors import StructuralError


@pytest.fixture(params=["scalar", "vector"])
def rep(request):
    return build_representation(request.param)


def brute_force_failures(beta, g=np.diag([1, -1, -1])):
    out = []
    for m, l, n in itertools.product(range(3), repeat=3):
        lhs = beta[m] @ beta[l] @ beta[n] + beta[n] @ beta[l] @ beta[m]
        rhs = beta[m] * g[l, n] + beta[n] * g[l, m]
        if not np.array_equal(lhs, rhs):
            out.append((m, l, n))
    return out


def test_scalar_beta0_entries():
    b0 = build_representation(Sector.SCALAR).beta[0]
    assert np.count_nonzero(b0) == 2
    assert b0[0, 3] == b0[3, 0] == 1


def test_vector_beta0_entries():
    b0 = build_representation("vector").beta[0]
    nz = sorted(zip(*np.nonzero(b0)))
    assert nz == [(0, 3), (1, 4), (3, 0), (4, 1)]
    assert all(b0[i, j] == -1 for i, j in nz)


def test_scalar_beta2_entries():
    b2 = build_representation("scalar").beta[2]
    expected = np.zeros((4, 4), dtype=np.int64)
    expected[2, 3], expected[3, 2] = 1, -1
    np.testing.assert_array_equal(b2, expected)


def test_representation_invariants(rep):
    assert rep.dim == (4 if rep.sector is Sector.SCALAR else 6)
    for b in rep.beta:
        assert b.dtype == np.int64
        assert set(np.unique(b)) <= {-1, 0, 1}
    np.testing.assert_array_equal(rep.metric, np.diag([1, -1, -1]))


def test_algebra_holds(rep):
    report = check_algebra(rep)
    assert report.checked == 27
    assert report.failures == ()
    assert report.n_passed == 27


def test_flipped_vector_entry_detected():
    rep = build_representation("vector")
    mats = [np.array(b) for b in rep.beta]
    assert mats[1][0, 5] == 1
    mats[1][0, 5] = -1
    report = check_algebra(BetaRepresentation(rep.sector, tuple(mats)))
    expected = brute_force_failures(mats)
    assert expected
    assert [f.indices for f in report.failures] == expected
    for f in report.failures:
        assert f.difference.any()


def test_every_single_entry_perturbation_detected(rep):
    seen = 0
    for label, bad in single_entry_perturbations(rep):
        seen += 1
        assert not check_algebra(bad).passed, label
    assert seen == 2 * sum(np.count_nonzero(b) for b in rep.beta)


def test_dimension_mismatch_is_structural():
    rep = build_representation("scalar")
    bad = BetaRepresentation(rep.sector, (rep.beta[0], rep.beta[1], np.zeros((6, 6), dtype=np.int64)))
    with pytest.raises(StructuralError):
        check_algebra(bad)


def test_scalar_eta0():
    eta = build_eta0(build_representation("scalar"))
    np.testing.assert_array_equal(eta, np.diag([1, -1, -1, 1]))
    np.testing.assert_array_equal(eta, eta.T)


def test_eta0_involution_and_commutes(rep):
    eta = build_eta0(rep)
    assert eta.dtype.kind == "i"
    np.testing.assert_array_equal(eta @ eta, np.eye(rep.dim, dtype=np.int64))
    np.testing.assert_array_equal(eta @ rep.beta[0], rep.beta[0] @ eta)
