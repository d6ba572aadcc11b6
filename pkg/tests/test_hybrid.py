from itertools import product

import numpy as np
import pytest
from scipy.optimize import linprog

from tripartite.hybrid import (ALL_BIPARTITIONS, HybridCertificate, Separator, Verdict,
                               enumerate_vertices, local_vertices, membership,
                               trivial_model_octet, verify_certificate)
from tripartite.inequalities import (SVETLICHNY, CorrelationOctet, mermin_m, mermin_m_prime,
                                     svetlichny)

R = 1 / np.sqrt(2)
GHZ_SI_MAX = CorrelationOctet([-R, -R, -R, R, -R, R, R, R])
C1_UNION_C2 = CorrelationOctet([R, R, R, -R, R, -R, -R, -R])
GHZ_MERMIN_MAX = CorrelationOctet([0, 1, 1, 0, 1, 0, 0, -1])


def factorizes(octet, lone_axis):
    """True when e(..) = f(pair settings) * g(lone setting) for the given lone party."""
    e = np.moveaxis(np.asarray(octet).reshape(2, 2, 2), lone_axis, 2)
    ratio = e[:, :, 1] * e[:, :, 0]
    return bool(np.all(ratio == ratio[0, 0]))


ALL_SIGN_OCTETS = [np.array(o, dtype=float) for o in product((1, -1), repeat=8)]
LONE_AXIS = {"12|3": 2, "13|2": 1, "23|1": 0}


def oracle_inside(octet, vertices):
    """Same feasibility problem solved by HiGHS."""
    V = np.array([v.octet.e for v in vertices]).T
    A = np.vstack([V, np.ones(V.shape[1])])
    b = np.concatenate([octet.e, [1.0]])
    res = linprog(np.zeros(V.shape[1]), A_eq=A, b_eq=b, bounds=(0, None), method="highs")
    return res.status == 0


class TestEnumeration:
    @pytest.mark.parametrize("bp", ALL_BIPARTITIONS)
    def test_single_bipartition_matches_brute_force(self, bp):
        vertices = enumerate_vertices([bp])
        brute = {o.tobytes() for o in ALL_SIGN_OCTETS if factorizes(o, LONE_AXIS[bp])}
        assert len(vertices) == 32 == len(brute)
        assert {v.octet.e.tobytes() for v in vertices} == brute

    def test_union(self):
        vertices = enumerate_vertices()
        brute = {o.tobytes() for o in ALL_SIGN_OCTETS
                 if any(factorizes(o, ax) for ax in LONE_AXIS.values())}
        assert len(vertices) == len(brute) == 64

    def test_local_vertices_in_every_bipartition(self):
        local = local_vertices()
        assert len(local) == 16
        for bp in ALL_BIPARTITIONS:
            keys = {v.octet.e.tobytes() for v in enumerate_vertices([bp])}
            assert all(o.e.tobytes() in keys for o in local)

    def test_local_vertices_obey_mermin(self):
        for o in local_vertices():
            assert abs(mermin_m(o)) <= 2 and abs(mermin_m_prime(o)) <= 2

    def test_vertices_obey_svetlichny(self):
        vertices = enumerate_vertices()
        assert all(abs(svetlichny(v.octet)) <= 4 for v in vertices)
        assert all(set(np.unique(v.octet.e)) <= {-1.0, 1.0} for v in vertices)

    def test_hybrid_vertices_reach_mermin_four(self):
        vertices = enumerate_vertices()
        best = max(vertices, key=lambda v: abs(mermin_m_prime(v.octet)))
        assert abs(mermin_m_prime(best.octet)) == 4
        assert any(v.octet == trivial_model_octet() for v in vertices)

    def test_vertex_octet_is_product_of_signs(self):
        for v in enumerate_vertices(["13|2"]):
            for x, y, z in product((0, 1), repeat=3):
                assert v.octet[x, y, z] == v.pair_sign[2 * x + z] * v.single_sign[y]

    def test_rejects_empty_and_unknown(self):
        with pytest.raises(ValueError):
            enumerate_vertices([])
        with pytest.raises(ValueError):
            enumerate_vertices(["1|23"])


class TestTrivialModel:
    def test_octet(self):
        np.testing.assert_array_equal(trivial_model_octet().e, [1, -1, 1, -1, 1, -1, -1, 1])

    def test_values(self):
        o = trivial_model_octet()
        assert (mermin_m_prime(o), mermin_m(o), svetlichny(o)) == (4, 0, 4)


class TestMembership:
    def test_trivial_model_inside(self):
        for bps in (["12|3"], ALL_BIPARTITIONS):
            cert = membership(trivial_model_octet(), bps)
            assert cert.verdict is Verdict.INSIDE
            assert verify_certificate(trivial_model_octet(), cert)

    def test_trivial_model_outside_other_bipartition(self):
        # Its M' = 4 exceeds the LHV bound, so it is not local, and with only 13|2
        # available it has to be outside.
        cert = membership(trivial_model_octet(), ["13|2"])
        assert cert.verdict is Verdict.OUTSIDE
        assert verify_certificate(trivial_model_octet(), cert)

    def test_ghz_si_max_outside(self):
        cert = membership(GHZ_SI_MAX)
        assert cert.verdict is Verdict.OUTSIDE
        assert verify_certificate(GHZ_SI_MAX, cert)
        assert np.max(np.abs(cert.separator.h)) == pytest.approx(1)

    def test_zero_inside(self):
        zero = CorrelationOctet(np.zeros(8))
        cert = membership(zero)
        assert cert.inside and verify_certificate(zero, cert)

    def test_ghz_mermin_max_inside(self):
        cert = membership(GHZ_MERMIN_MAX)
        assert cert.inside and verify_certificate(GHZ_MERMIN_MAX, cert)

    def test_c1_union_c2_outside(self):
        cert = membership(C1_UNION_C2)
        assert not cert.inside and verify_certificate(C1_UNION_C2, cert)

    @pytest.mark.parametrize("support", [[0, 2, 5, 6], [1, 2, 4, 7]])
    def test_four_correlator_sets_reproducible(self, support):
        """Any values on E1 or E2 alone extend to a hybrid octet."""
        rng = np.random.default_rng(7)
        vertices = enumerate_vertices()
        for _ in range(20):
            target = rng.uniform(-1, 1, size=4)
            V = np.array([v.octet.e for v in vertices]).T
            A = np.vstack([V[support], np.ones(V.shape[1])])
            res = linprog(np.zeros(V.shape[1]), A_eq=A, b_eq=np.append(target, 1),
                          bounds=(0, None), method="highs")
            assert res.status == 0
            octet = CorrelationOctet(np.clip(V @ res.x, -1, 1))
            assert membership(octet).inside

    def test_svetlichny_functional_is_a_valid_separator(self):
        cert = HybridCertificate(Verdict.OUTSIDE, separator=Separator(SVETLICHNY.copy(), 4.0))
        assert verify_certificate(C1_UNION_C2, cert)
        flipped = HybridCertificate(Verdict.OUTSIDE, separator=Separator(-SVETLICHNY, 4.0))
        assert verify_certificate(GHZ_SI_MAX, flipped)

    def test_corrupted_weights_rejected(self):
        zero = CorrelationOctet(np.zeros(8))
        cert = membership(zero)
        bad = cert.weights.copy()
        bad[int(np.argmax(bad))] *= -1
        assert not verify_certificate(zero, HybridCertificate(Verdict.INSIDE, weights=bad))

    def test_wrong_certificate_kind_rejected(self):
        inside = membership(CorrelationOctet(np.zeros(8)))
        assert not verify_certificate(GHZ_SI_MAX, inside)
        outside = membership(GHZ_SI_MAX)
        assert not verify_certificate(CorrelationOctet(np.zeros(8)), outside)

    def test_certificate_shape_contract(self):
        with pytest.raises(ValueError):
            HybridCertificate(Verdict.INSIDE)
        with pytest.raises(ValueError):
            HybridCertificate(Verdict.OUTSIDE, weights=np.ones(3))

    def test_tolerance_must_be_positive(self):
        with pytest.raises(ValueError):
            membership(GHZ_SI_MAX, tolerance=0)


def test_soundness_random_mixtures(rng):
    vertices = enumerate_vertices()
    V = np.array([v.octet.e for v in vertices]).T
    for _ in range(200):
        k = int(rng.integers(1, 8))
        idx = rng.choice(len(vertices), size=k, replace=False)
        q = np.zeros(len(vertices))
        q[idx] = rng.dirichlet(np.ones(k))
        octet = CorrelationOctet(V @ q)
        cert = membership(octet)
        assert cert.inside
        assert np.max(np.abs(V @ cert.weights - octet.e)) < 1e-8
        assert verify_certificate(octet, cert, vertices)


def test_completeness_at_the_svetlichny_facet(rng):
    for _ in range(100):
        e = rng.uniform(-1, 1, size=8)
        # Push along the Svetlichny direction until |S_V| > 4.
        e = np.clip(e + np.sign(SVETLICHNY @ e + 1e-3) * SVETLICHNY, -1, 1)
        octet = CorrelationOctet(e)
        if abs(svetlichny(octet)) <= 4 + 1e-9:
            continue
        cert = membership(octet)
        assert cert.verdict is Verdict.OUTSIDE
        assert verify_certificate(octet, cert)


def test_oracle_equivalence(rng):
    values = np.array([-1, -R, 0, R, 1])
    vertices = enumerate_vertices()
    verdicts = []
    for _ in range(100):
        octet = CorrelationOctet(rng.choice(values, size=8))
        cert = membership(octet)
        assert cert.inside == oracle_inside(octet, vertices)
        assert verify_certificate(octet, cert, vertices)
        verdicts.append(cert.inside)
    # The sample must exercise both verdicts to mean anything.
    assert any(verdicts) and not all(verdicts)
