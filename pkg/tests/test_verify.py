import pytest

from bunkbed.catalog import connected_graphs, named_graph, named_instance
from bunkbed.exactnum import rat
from bunkbed.graph import Graph
from bunkbed.measures import alt_colouring_counts
from bunkbed.verify import (
    FAILS,
    HOLDS,
    OPEN_OK,
    IDENTITY_SUITES,
    bsst_counts,
    check_bunkbed,
    check_engine_consistency,
    check_hypergraph_factorization,
    check_p_threshold,
    run_identity_suite,
    scan_conjectures,
)

SMALL_P = (rat(1, 4), rat(1, 2), rat(3, 4))


def test_check_bunkbed_k3_at_q2():
    rep = check_bunkbed(named_graph("K3"), p_grid=SMALL_P, q_grid=(rat(2),))
    assert rep.verdict == HOLDS
    assert rep.ok


def test_check_bunkbed_percolation_and_posts():
    rep = check_bunkbed(named_graph("P3"), measure="percolation", p_grid=SMALL_P)
    assert rep.verdict == HOLDS
    rep = check_bunkbed(
        named_graph("P3"), posts={1}, p_grid=SMALL_P, q_grid=(rat(1, 2), rat(2))
    )
    assert rep.verdict == HOLDS


def test_check_bunkbed_arboreal_small():
    rep = check_bunkbed(
        named_graph("K3"),
        measure="arboreal",
        lam_grid=(rat(1, 2), rat(1), rat(2)),
        open_conjecture=True,
    )
    assert rep.verdict == OPEN_OK


def test_check_bunkbed_single_pair():
    rep = check_bunkbed(
        named_graph("C4"), u=0, v=2, p_grid=(rat(1, 2),), q_grid=(rat(2),)
    )
    assert rep.verdict == HOLDS
    assert rep.quantities["at_pair"] == "(0,2)"


def test_p_threshold_examples():
    p3 = named_graph("P3")
    for q in (rat(1, 2), rat(2)):
        rep = check_p_threshold(p3, {1}, q)
        assert rep.verdict == HOLDS
    # At p = 1 the difference vanishes identically.
    from bunkbed.graph import BunkbedSpec, bunkbed, bunkbed_copies, POSTS_CONTRACTED
    from bunkbed.measures import bunkbed_case_profiles, case_difference

    bb = bunkbed(BunkbedSpec(p3, frozenset({1}), POSTS_CONTRACTED))
    u1, _ = bunkbed_copies(bb, 0)
    v1, v2 = bunkbed_copies(bb, 2)
    (prof,) = bunkbed_case_profiles(bb, [(u1, v1, v2)])
    assert case_difference(prof, bb.m, rat(1), rat(2)) == 0


def test_bsst_counts_k3():
    k3 = named_graph("K3")
    for e, f in ((0, 1), (0, 2), (1, 2)):
        xp, xm = bsst_counts(k3, e, f)
        assert (xp - xm) ** 2 == 1  # [e][f] - [.][e,f] = 2*2 - 3*1
    with pytest.raises(ValueError):
        bsst_counts(k3, 0, 0)


def test_bsst_counts_c4_opposite():
    c4 = named_graph("C4")
    xp, xm = bsst_counts(c4, 0, 2)
    # The lone 4-edge connected subgraph is the cycle itself.
    assert xp + xm == 1
    # [e][f] - [.][e,f]: trees with e: 3, with f: 3, total 4, with both: 2.
    assert (xp - xm) ** 2 == 3 * 3 - 4 * 2


def test_identity_suites_on_small_instances():
    instances = [
        ("K3", named_graph("K3")),
        ("P4", named_graph("P4")),
        ("C4", named_graph("C4")),
        ("K4", named_graph("K4")),
    ]
    for suite in IDENTITY_SUITES:
        rep = run_identity_suite(suite, instances)
        assert rep.verdict == HOLDS, (suite, rep.witness)


def test_unknown_suite_rejected():
    with pytest.raises(ValueError):
        run_identity_suite("nonsense")


def test_identity_suite_collects_guard_skips():
    big = Graph(31, tuple((i, i + 1, rat(1)) for i in range(30)))
    rep = run_identity_suite(
        "resistance-bracket", [("big", big), ("K3", named_graph("K3"))]
    )
    assert rep.verdict == HOLDS
    assert rep.quantities.get("skipped") == "1"


def test_hypergraph_factorization_report():
    rep = check_hypergraph_factorization()
    assert rep.verdict == HOLDS
    assert rat(rep.quantities["constant"]) > 0
    assert rat(rep.quantities["value_at_q1"]) < 0


def test_engine_consistency_quick():
    rep = check_engine_consistency(trials=8, seed=11)
    assert rep.verdict == HOLDS


def test_scan_conjectures_small():
    reports = scan_conjectures(
        lam_grid=(rat(1, 2), rat(1), rat(2)),
        seed=7,
        weightings=2,
        max_n=3,
    )
    by_claim = {r.claim: r for r in reports}
    assert by_claim["bunkbed-forest-conjecture"].verdict == OPEN_OK
    assert by_claim["alt-model-counts"].verdict == HOLDS
    assert by_claim["outerplanar-triple-product"].verdict == HOLDS
    assert by_claim["forest-harris-conjecture"].verdict == OPEN_OK
    assert by_claim["edge-negative-correlation"].verdict == OPEN_OK
    assert by_claim["identity-four-point-leading"].verdict == HOLDS
    assert by_claim["four-point-forest-conjecture"].verdict == OPEN_OK
    # Reports are JSON-serializable.
    import json

    json.dumps([r.to_json() for r in reports])


def _fig5_bracket_counts(variant, n_path):
    """Exact counts of the two-sided connection patterns in the fig5 family.

    Returns (separate_rr_bb, separate_crossing): colourings where both layers
    connect their endpoints in two distinct components, and where the two
    crossing connections hold in distinct components.
    """
    from bunkbed.graph import POSTS_CONTRACTED, BunkbedSpec, bunkbed, bunkbed_copies
    from bunkbed.measures import _roots_and_kappa

    inst = named_instance(f"fig5-{variant}-{n_path}")
    g = inst.graph
    bb = bunkbed(BunkbedSpec(g, inst.posts, POSTS_CONTRACTED))
    u1, u2 = bunkbed_copies(bb, inst.u)
    v1, v2 = bunkbed_copies(bb, inst.v)
    pairs = [(a, b) for a, b, _ in bb.edges]
    m = g.m
    both = crossing = 0
    for colouring in range(1 << m):
        mask = 0
        for i in range(m):
            mask |= 1 << (i if colouring >> i & 1 else m + i)
        roots, kappa = _roots_and_kappa(bb.n, pairs, mask)
        if m + kappa != bb.n:
            continue
        if roots[u1] == roots[v1] and roots[u2] == roots[v2] and roots[u1] != roots[u2]:
            both += 1
        if roots[u1] == roots[v2] and roots[u2] == roots[v1] and roots[u1] != roots[u2]:
            crossing += 1
    return both, crossing


def test_fig5_exact_count_structure():
    # Exact enumerated counts: the crossing pattern has exactly 2 colourings
    # in the diagonal family and none in the same-side family, so the pattern
    # difference is non-negative; the two-sided count is 8 throughout.
    for n_path in (1, 2, 3):
        both, crossing = _fig5_bracket_counts("G", n_path)
        assert crossing == 2
        assert both == 8
        assert both - crossing >= 0
        both_h, crossing_h = _fig5_bracket_counts("H", n_path)
        assert crossing_h == 0
        assert both_h >= crossing_h


def test_scan_reports_are_deterministic():
    import json

    kwargs = dict(lam_grid=(rat(1, 2), rat(2)), seed=99, weightings=2, max_n=3)
    first = [r.to_json() for r in scan_conjectures(**kwargs)]
    second = [r.to_json() for r in scan_conjectures(**kwargs)]
    assert json.dumps(first) == json.dumps(second)


def test_failure_verdict_plumbing():
    from bunkbed.verify import VerificationReport

    rep = VerificationReport(
        claim="demo", instance="demo", verdict=FAILS, witness={"u": 0}
    )
    assert not rep.ok
    assert rep.to_json()["witness"] == {"u": 0}

    IDENTITY_SUITES["always-off"] = lambda g: False
    try:
        out = run_identity_suite("always-off", [("K3", named_graph("K3"))])
        assert out.verdict == FAILS
        assert out.witness == {"failing_instances": ["K3"]}
    finally:
        del IDENTITY_SUITES["always-off"]
