import json

import numpy as np
import pytest

from corpus import high_degree_corpus
from rigidity_spectra.certify import (
    BAND,
    EPS,
    THEOREM_IDS,
    Certificate,
    Condition,
    _verdict,
    certify,
    certify_corollary,
    certify_eigkrig,
    certify_ramanujan_glob,
    certify_redund,
    eigenvalue_variant_report,
)
from rigidity_spectra.errors import SizeGuardError
from rigidity_spectra.families import (
    gen_complete,
    gen_complete_bipartite,
    gen_cycle,
    gen_hd,
    gen_paley,
    gen_petersen,
    gen_random_regular,
)
from rigidity_spectra.graph import Graph
from rigidity_spectra.packing import pack_spanning_rigid, verify_packing
from rigidity_spectra.sparsity import is_globally_rigid, is_redundantly_rigid, is_rigid


def spectral(cert):
    return [c for c in cert.conditions if c.kind == "spectral"]


def test_k7_eigkrig_levels():
    cert = certify_eigkrig(gen_complete(7), 1)
    assert cert.verdict == "certified"
    lhs = [c.lhs for c in spectral(cert)]
    rhs = [c.rhs for c in spectral(cert)]
    assert np.allclose(lhs, [7, 6, 5], atol=1e-10)
    assert np.allclose(rhs, [5 / 7, 3 / 6, 1 / 5])


def test_h10_fails_at_first_condition():
    cert = certify_eigkrig(gen_hd(10), 1)
    assert cert.verdict == "condition_failed"
    assert cert.failed_at == "(1)"
    assert spectral(cert)[0].lhs <= 5 / 11


def test_low_degree_not_applicable():
    cert = certify_eigkrig(gen_cycle(4), 1)
    assert cert.verdict == "not_applicable"
    assert cert.conditions[0].kind == "precondition"
    assert cert.conditions[0].status == "fail"
    assert certify_redund(gen_complete_bipartite(3, 3)).verdict == "not_applicable"


def test_corollary_examples():
    glob = certify_corollary(gen_complete(7), 1, "glob")
    assert glob.verdict == "certified"
    assert spectral(glob)[0].rhs == pytest.approx(2.4)
    kdis = certify_corollary(gen_complete(13), 2, "kdisrig")
    assert kdis.verdict == "certified"
    assert spectral(kdis)[0].rhs == pytest.approx(2 + 3 / 11)
    main = certify_corollary(gen_hd(10), 1, "maincor")
    assert main.verdict == "condition_failed"
    assert spectral(main)[0].lhs <= 5 / 11 < 2 + 1 / 9


def test_corollary_argument_errors():
    with pytest.raises(ValueError):
        certify_corollary(gen_complete(13), 2, "glob")
    with pytest.raises(ValueError):
        certify_corollary(gen_complete(13), 1, "strcor")
    with pytest.raises(ValueError):
        certify(gen_complete(7), "nonsense")


def test_redund_examples():
    cert = certify_redund(gen_complete(7))
    assert cert.verdict == "certified"
    assert np.allclose([c.rhs for c in spectral(cert)], [6 / 7, 4 / 6, 2 / 5])
    for seed in range(3):
        g = gen_random_regular(24, 7, seed)
        if certify_redund(g).certified:
            assert is_redundantly_rigid(g)


def test_ramanujan_route():
    for g in (gen_paley(17), gen_complete(9)):
        cert = certify_ramanujan_glob(g)
        assert cert.verdict == "certified"
        assert is_globally_rigid(g)
    assert certify_ramanujan_glob(gen_petersen()).verdict == "not_applicable"
    assert certify_ramanujan_glob(gen_paley(13)).verdict == "not_applicable"
    assert certify_ramanujan_glob(gen_cycle(9)).verdict == "not_applicable"
    # 10-regular but far from Ramanujan
    assert certify_ramanujan_glob(gen_hd(10)).verdict == "condition_failed"


def test_variant_report():
    k7 = eigenvalue_variant_report(gen_complete(7))
    assert k7.lambda2 == pytest.approx(-1) and k7.lambda2_fires
    assert k7.q2 == pytest.approx(5) and k7.q2_fires
    h10 = eigenvalue_variant_report(gen_hd(10))
    assert not h10.lambda2_fires and not h10.q2_fires
    assert not eigenvalue_variant_report(gen_cycle(5)).applicable


def test_boundary_band():
    pre = Condition("precondition", "pre", "min degree >= 6", 6, 6, ">=")
    near = Condition("spectral", "(1)", "x > y", 1.0 + 5e-8, 1.0, ">")
    assert near.status == "boundary"
    assert _verdict([pre, near]) == "boundary"
    below = Condition("spectral", "(1)", "x > y", 1.0 - 5e-8, 1.0, ">")
    assert below.status == "boundary"
    clear = Condition("spectral", "(2)", "x > y", 1.0 + 2 * BAND, 1.0, ">")
    assert clear.status == "pass"
    assert _verdict([pre, clear]) == "certified"
    fail = Condition("spectral", "(3)", "x > y", 0.5, 1.0, ">")
    assert _verdict([pre, near, fail]) == "condition_failed"
    cert = Certificate("strcor", 1, _verdict([pre, near]), [pre, near], "rigid")
    assert "BOUNDARY" in cert.text()


def test_size_guard():
    big = gen_cycle(301)
    with pytest.raises(SizeGuardError):
        certify_eigkrig(big, 1)
    with pytest.raises(SizeGuardError):
        certify_redund(big)
    assert certify_eigkrig(big, 1, force=True).verdict == "not_applicable"
    assert certify_corollary(big, 1, "maincor").verdict == "not_applicable"


def test_parallel_matches_serial():
    g = gen_random_regular(30, 8, 4)
    assert certify_redund(g, jobs=1).to_dict() == certify_redund(g, jobs=4).to_dict()


def test_certificate_json_roundtrip():
    for tid in THEOREM_IDS:
        cert = certify(gen_complete(7), tid)
        again = Certificate.from_dict(json.loads(cert.to_json()))
        assert again == cert


def test_corollary_constants_dominate_theorem_constants():
    for k in range(1, 5):
        for delta in range(6 * k, 400):
            assert 2 + (2 * k - 1) / (delta - 1) > (6 * k - 1) / (delta + 1)
            assert 1 + (2 * k - 1) / (delta - 1) > (4 * k - 1) / delta
    for delta in range(6, 400):
        assert 2 + 2 / (delta - 1) > 6 / (delta + 1)
        assert 1 + 2 / (delta - 1) > 4 / delta


def _sample():
    return high_degree_corpus()[:15]


def test_certified_margins_exceed_eps():
    for g in _sample():
        for tid in ("maincor", "glob", "kdisrig", "redund", "ramanujan_glob"):
            cert = certify(g, tid)
            if cert.certified:
                assert all(c.margin > EPS for c in spectral(cert))


def test_corollary_certified_implies_theorem_certified():
    for g in _sample():
        if certify_corollary(g, 1, "kdisrig").certified:
            assert certify_eigkrig(g, 1).certified
        if certify_corollary(g, 1, "glob").certified:
            assert certify_redund(g).certified


def test_soundness_sample():
    for g in _sample():
        if certify(g, "maincor").certified or certify(g, "strcor").certified:
            assert is_rigid(g)
        if certify(g, "glob").certified:
            assert is_globally_rigid(g)
        if certify(g, "redund").certified:
            assert is_redundantly_rigid(g)
        if g.n <= 30 and certify(g, "eigkrig", 1).certified:
            assert verify_packing(g, pack_spanning_rigid(g, 1))


def test_adding_edges_keeps_certificates():
    rng = np.random.default_rng(51)
    for g in _sample()[:10]:
        before = {tid: certify(g, tid).verdict for tid in ("maincor", "glob", "redund")}
        missing = [(u, v) for u in range(g.n) for v in range(u + 1, g.n) if not g.has_edge(u, v)]
        if not missing:
            continue
        e = missing[int(rng.integers(len(missing)))]
        h = Graph(g.n, g.edges + (e,))
        for tid, verdict in before.items():
            if verdict == "certified":
                assert certify(h, tid).verdict == "certified", (g, tid)
