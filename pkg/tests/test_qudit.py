from collections import Counter
from itertools import combinations, product

import numpy as np
import pytest

from conftest import haar, ref_concurrence_pure, ref_partial_trace, ref_substate_amplitudes, \
    ref_wootters
from fidmono import measures, monogamy, qudit, states
from fidmono.monogamy import ALL_LARGE, ALL_SMALL, BoundParams
from fidmono.qstate import DensityMatrix, StateVector, outer
from fidmono.qudit import SubstateIndex

P = BoundParams(0.8, 2, 2, mode="qudit")


def test_substate_index():
    idx = SubstateIndex(((0, 1), (1, 2)))
    assert str(idx) == "0,1 1,2"
    with pytest.raises(ValueError):
        SubstateIndex(((1, 1),))
    with pytest.raises(ValueError):
        idx.check((2, 2))
    with pytest.raises(ValueError):
        idx.check((2, 2, 2))


@pytest.mark.parametrize("dims, count", [((2, 2, 2), 1), ((3, 3, 3), 27), ((2, 3, 4), 18),
                                         ((4, 4), 36), ((2, 2, 2, 2), 1)])
def test_counts(dims, count):
    subs = qudit.enumerate_substates(dims)
    assert len(subs) == count == qudit.n_substates(dims)
    assert len(set(subs)) == count
    assert subs == sorted(subs)


def test_label_pair_multiplicity():
    subs = qudit.enumerate_substates((3, 3, 3))
    for party in range(3):
        c = Counter(s.pairs[party] for s in subs)
        assert set(c) == set(combinations(range(3), 2))
        assert set(c.values()) == {9}


def test_projection_examples():
    rng = np.random.default_rng(1)
    psi = StateVector(haar(rng, 8), (2, 2, 2))
    (only,) = qudit.enumerate_substates((2, 2, 2))
    np.testing.assert_array_equal(qudit.project_substate_pure(psi, only).amplitudes,
                                  psi.amplitudes)
    rho = outer(psi)
    np.testing.assert_array_equal(qudit.project_substate_mixed(rho, only).entries, rho.entries)
    b111 = states.basis_state((1, 1, 1), (3, 3, 3))
    sub = qudit.project_substate_pure(b111, SubstateIndex(((1, 2),) * 3))
    np.testing.assert_array_equal(sub.amplitudes, np.eye(8)[0])
    sub = qudit.project_substate_pure(b111, SubstateIndex(((0, 2),) * 3))
    np.testing.assert_array_equal(sub.amplitudes, np.zeros(8))


def test_projection_matches_reference():
    rng = np.random.default_rng(2)
    dims = (2, 3, 4)
    a = haar(rng, 24)
    psi = StateVector(a, dims)
    for idx in qudit.enumerate_substates(dims):
        np.testing.assert_array_equal(qudit.project_substate_pure(psi, idx).amplitudes,
                                      ref_substate_amplitudes(a, dims, idx.pairs))


def test_mixed_projection_examples():
    rho = DensityMatrix(np.eye(27) / 27, (3, 3, 3))
    sub = qudit.project_substate_mixed(rho, SubstateIndex(((0, 2), (1, 2), (0, 1))))
    np.testing.assert_allclose(sub.entries, np.eye(8) / 27)
    assert sub.trace == pytest.approx(8 / 27)
    assert sub.dims == (2, 2, 2)


def test_pairsum_examples():
    assert qudit.concurrence_pure_pairsum(states.basis_state((1, 2, 0), (3, 3, 3))) == 0.0
    a = np.zeros(9, complex)
    a[[4, 8]] = 1 / np.sqrt(2)  # (|11> + |22>)/sqrt2
    psi = StateVector(np.kron(a, [1, 0]), (3, 3, 2))
    assert qudit.concurrence_pure_pairsum(psi) == pytest.approx(1.0, abs=1e-15)
    rng = np.random.default_rng(3)
    for _ in range(20):
        amps = haar(rng, 27)
        psi = StateVector(amps, (3, 3, 3))
        c = qudit.concurrence_pure_pairsum(psi)
        assert c == pytest.approx(measures.concurrence_pure(psi), abs=1e-12)
        assert c == pytest.approx(ref_concurrence_pure(amps, (3, 3, 3)), abs=1e-12)


def test_substate_pair_concurrence_examples():
    prod3 = states.basis_state((0, 1, 2), (3, 3, 3))
    for idx in qudit.enumerate_substates((3, 3, 3)):
        for j in (1, 2):
            assert qudit.substate_pair_concurrence(prod3, idx, (0, j)) == 0.0
    (only,) = qudit.enumerate_substates((2, 2, 2))
    w = states.w_class_example2()
    assert qudit.substate_pair_concurrence(w, only, (0, 2)) == pytest.approx(2 / 3, abs=1e-14)
    assert qudit.substate_pair_concurrence(outer(w), only, (0, 2)) == pytest.approx(2 / 3,
                                                                                   abs=1e-14)
    with pytest.raises(ValueError):
        qudit.substate_pair_concurrence(w, only, (1, 2))


def test_substate_pair_concurrence_reference():
    rng = np.random.default_rng(4)
    amps = haar(rng, 27)
    psi = StateVector(amps, (3, 3, 3))
    rho = outer(psi)
    for idx in qudit.enumerate_substates((3, 3, 3)):
        sub = ref_substate_amplitudes(amps, (3, 3, 3), idx.pairs)
        for j in (1, 2):
            red = ref_partial_trace(np.outer(sub, sub.conj()), (2, 2, 2), [0, j])
            want = ref_wootters(red)
            assert qudit.substate_pair_concurrence(psi, idx, (0, j)) == pytest.approx(want,
                                                                                     abs=1e-7)
            assert qudit.substate_pair_concurrence(rho, idx, (0, j)) == pytest.approx(
                qudit.substate_pair_concurrence(psi, idx, (0, j)), abs=1e-10)


def _lemma3_bruteforce(amps, dims):
    t = amps.reshape(dims)
    total = 0.0
    for pairs in product(*[list(combinations(range(d), 2)) for d in dims]):
        sub = np.array([t[i] for i in product(*pairs)]).reshape(2, 4)
        for a, e in combinations(range(2), 2):
            for b, f in product(range(4), repeat=2):
                total += abs(sub[a, b] * sub[e, f] - sub[e, b] * sub[a, f])**2
    return 2 * total / np.prod([d - 1 for d in dims])


def test_lemma3_examples():
    rng = np.random.default_rng(5)
    psi = StateVector(haar(rng, 8), (2, 2, 2))
    assert qudit.lemma3_rhs_pure(psi) == pytest.approx(measures.concurrence_pure(psi)**2,
                                                       abs=1e-14)
    assert qudit.lemma3_rhs_pure(states.basis_state((2, 0, 1), (3, 3, 3))) == 0.0
    for dims in ((3, 3, 3), (2, 3, 4)):
        amps = haar(rng, int(np.prod(dims)))
        psi = StateVector(amps, dims)
        got = qudit.lemma3_rhs_pure(psi)
        assert got == pytest.approx(_lemma3_bruteforce(amps, dims), abs=1e-13)
        assert 0 <= got <= measures.concurrence_pure(psi)**2
    with pytest.raises(ValueError):
        qudit.lemma3_rhs_pure(states.ghz(4))


def test_theorem3_examples():
    rng = np.random.default_rng(6)
    psi = StateVector(haar(rng, 8), (2, 2, 2))
    rep = qudit.theorem3_bound(psi, P)
    assert rep.prefactor == 1.0 and len(rep.contributions) == 1
    c12 = measures.pair_concurrence(psi, 0, 1)
    c13 = measures.pair_concurrence(psi, 0, 2)
    h, mu = 0.5**P.exponent, monogamy.mu_coeff(P)
    branch = rep.contributions[0].branch
    if branch == monogamy.AB_LARGE:
        assert rep.bound == pytest.approx(h * c12**2 + mu * c13**2, abs=1e-14)
    elif branch == monogamy.AC_LARGE:
        assert rep.bound == pytest.approx(h * c13**2 + mu * c12**2, abs=1e-14)
    assert qudit.theorem3_bound(states.basis_state((1, 2, 0), (3, 3, 3)), P).bound == 0.0
    for s in range(20):
        psi = states.haar_pure((3, 3, 3), s)
        rep = qudit.theorem3_bound(psi, P)
        assert rep.bound <= measures.concurrence_pure(psi)**2 + 1e-12
        assert rep.prefactor == pytest.approx(1 / 8)
        assert rep.as_dict()["substates"] == 27


def test_theorem3_mixed_path_matches_pure():
    psi = states.haar_pure((3, 3, 3), 42)
    a = qudit.theorem3_bound(psi, P)
    b = qudit.theorem3_bound(outer(psi), P)
    assert a.bound == pytest.approx(b.bound, abs=1e-10)
    assert [c.branch for c in a.contributions] == [c.branch for c in b.contributions]


def test_chain_hypothesis():
    assert qudit.chain_hypothesis_holds(np.array([0.5, 0.2, 0.1]), 1.0, 3)
    assert not qudit.chain_hypothesis_holds(np.array([0.1, 0.2, 0.1]), 1.0, 3)
    assert qudit.chain_hypothesis_holds(np.array([0.1, 0.1, 0.2]), 1.0, 1)
    assert not qudit.chain_hypothesis_holds(np.array([0.1, 0.2, 0.1]), 1.0, 1)
    assert not qudit.chain_hypothesis_holds(np.array([0.5, 0.2, 0.1]), 1.0, 1)
    assert qudit.chain_hypothesis_holds(np.array([0.5, 0.1, 0.3]), 1.0, 2)


def test_theorem4_collapses_to_theorem3():
    q = BoundParams(0.9, 1, 2, mode="qudit")
    hits = 0
    for s in range(40):
        psi = states.haar_pure((2, 2, 2), s)
        t3 = qudit.theorem3_bound(psi, q)
        t4 = qudit.theorem4_bound(psi, q, ALL_SMALL)
        if t3.contributions[0].branch == monogamy.AB_LARGE:
            hits += 1
            assert t4.bound == pytest.approx(t3.bound, abs=1e-15)
    assert hits > 0


def test_theorem4_examples():
    q = BoundParams(0.9, 1, 2, mode="qudit")
    zero = states.basis_state((0, 1, 0, 1), (2, 2, 2, 2))
    for r in (ALL_SMALL, ALL_LARGE, 2):
        assert qudit.theorem4_bound(zero, q, r).bound == 0.0
    checked = 0
    for s in range(100):
        psi = states.haar_pure((2, 2, 2, 2), s)
        rep = qudit.theorem4_bound(psi, q, ALL_SMALL)
        if rep.all_satisfied:
            checked += 1
            assert rep.bound <= measures.concurrence_pure(psi)**2 + 1e-12
    assert checked > 0
    for s in range(10):
        psi = states.haar_pure((3, 2, 2, 2), s)
        for r in (ALL_SMALL, ALL_LARGE, 2):
            rep = qudit.theorem4_bound(psi, q, r)
            assert len(rep.contributions) == 3
            assert rep.bound <= measures.concurrence_pure(psi)**2 + 1e-12
    with pytest.raises(ValueError):
        qudit.theorem4_bound(states.haar_pure((2, 2), 0), q, ALL_SMALL)
    with pytest.raises(ValueError):
        qudit.theorem3_bound(psi, BoundParams(1, 1, 1))
