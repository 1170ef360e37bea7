"""Exit criteria.  Each test records a PASS/FAIL line shown in the terminal summary."""

import time
from importlib import resources

import numpy as np
import pytest

from cogmap import (
    ConceptNet,
    accumulate_pair,
    build_circuit,
    element_ranking,
    impulse_closed_form,
    impulse_series,
    influence,
    k_matrix,
    k_pair,
    pressure,
    rank_nodes,
    search_additive_reordering,
    solve_circuit_nodal,
    spectral_radius,
    to_dense,
)
from cogmap.cli import main

from conftest import matches_printed, random_ensemble, record_criterion

pytestmark = pytest.mark.acceptance

FOUR_PRINTED = {
    ("alpha", "1"): "1.6", ("alpha", "2"): "1.3", ("alpha", "beta"): "2.4",
    ("1", "alpha"): "2", ("1", "2"): "1", ("1", "beta"): "1.3",
    ("2", "alpha"): "1", ("2", "1"): "1.5", ("2", "beta"): "1.64",
    ("beta", "alpha"): "3", ("beta", "1"): "1", ("beta", "2"): "2",
}

NINE_PRINTED = {
    (2, 1): "-1.13", (2, 5): "-0.57", (3, 1): "1", (3, 5): "1.72", (3, 7): "2", (3, 9): "2",
    (1, 5): "0.72", (1, 7): "1", (1, 9): "1", (8, 1): "-0.89", (8, 2): "-2.5", (8, 5): "0.18",
    (8, 7): "0.12", (8, 9): "0.51", (9, 1): "-0.78", (9, 5): "-0.28", (9, 7): "0.22",
}

# printed column 6 sits above our values; removing edge 5->6 reproduces the print
NINE_COLUMN6_PRINTED = {1: 1.33, 2: -0.27, 3: 2.40, 5: 0.73, 8: 0.75, 9: 0.80}
NINE_ROW5_PRINTED = [-0.65, 0, 0, 0, -0.45, 0.73, 0.32, 0, 0.32]

REF_PSI = (8, 9, 5, 6, 4, 1, 2, 7, 3)
REF_V = (2, 9, 1, 4, 3, 5, 6, 8, 7)
REF_PSI_IMP = (7, 9, 4, 5, 3, 1, 8, 6, 2)
REF_V_IMP = (2, 9, 1, 5, 8, 6, 7, 3, 4)

SWAP_VALUE_TOL = 0.02


def _data(name):
    return str(resources.files("cogmap").joinpath("data", name))


@pytest.fixture(scope="module")
def ensemble200():
    return random_ensemble(seed=20240601, count=200, n_max=8, p=0.3)


def _timed(func, repeat=5):
    func()  # compile / warm caches
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = func()
        best = min(best, time.perf_counter() - t0)
    return out, best


def test_1_four_node_golden(four_node_net):
    km, elapsed = _timed(lambda: k_matrix(four_node_net, jobs=1))
    bad = [
        (pair, km[pair], printed)
        for pair, printed in FOUR_PRINTED.items()
        if not matches_printed(km[pair], printed)
    ]
    ok = not bad and elapsed < 0.010 and not np.diag(km.values).any()
    record_criterion("1", "four-node golden matrix", ok, f"12 entries, {len(bad)} off, {elapsed * 1e3:.2f} ms")
    assert not bad
    assert elapsed < 0.010


def test_2_sd_verified_subset(nine_net):
    km, elapsed = _timed(lambda: k_matrix(nine_net, jobs=1), repeat=3)
    K = km.values
    bad = [(ij, K[ij[0] - 1, ij[1] - 1], p) for ij, p in NINE_PRINTED.items() if not matches_printed(K[ij[0] - 1, ij[1] - 1], p)]
    zero_rows = all(not K[r - 1].any() for r in (4, 6, 7))
    zero_diag = not np.diag(K).any()

    # documented discrepancies: column 6 (ours lower) and row 5
    col6 = {i: K[i - 1, 5] for i in NINE_COLUMN6_PRINTED}
    col6_ok = all(col6[i] < NINE_COLUMN6_PRINTED[i] - 0.005 for i in col6)
    assert abs(col6[3] - 2.14) < 0.005
    without_56 = ConceptNet(nine_net.labels, {e: w for e, w in nine_net.edges.items() if e != ("5", "6")})
    k_alt = k_matrix(without_56).values
    alt_ok = all(matches_printed(k_alt[i - 1, 5], f"{NINE_COLUMN6_PRINTED[i]:.2f}") for i in (1, 2, 3, 8, 9))
    row5_differs = [j + 1 for j in range(9) if abs(K[4, j] - NINE_ROW5_PRINTED[j]) > 0.005]
    print(f"\ncolumn 6 ours vs printed: {[(i, round(float(col6[i]), 4), NINE_COLUMN6_PRINTED[i]) for i in col6]}")
    print(f"row 5 ours {np.round(K[4], 4).tolist()} vs printed {NINE_ROW5_PRINTED} (differs at {row5_differs})")

    ok = not bad and zero_rows and zero_diag and col6_ok and alt_ok and bool(row5_differs) and elapsed < 1.0
    record_criterion(
        "2",
        "nine-node K subset",
        ok,
        f"{len(NINE_PRINTED)} entries, {len(bad)} off; column-6/row-5 discrepancies confirmed; {elapsed * 1e3:.1f} ms",
    )
    assert not bad, bad
    assert zero_rows and zero_diag
    assert col6_ok and alt_ok and row5_differs
    assert elapsed < 1.0


def test_3_reference_k_ranks(nine_net):
    km = k_matrix(nine_net)
    psi = rank_nodes(pressure(km)).ranks
    v = rank_nodes(influence(km)).ranks
    ok = psi == REF_PSI and v == REF_V
    record_criterion("3", "nine-node K-method ranks", ok, f"psi={psi} v={v}")
    assert psi == REF_PSI
    assert v == REF_V


def _swap_mismatch(got, want, values):
    """Mismatched nodes, and whether every mismatch is a swap of near-equal values."""
    diff = [i for i in range(len(got)) if got[i] != want[i]]
    pos = {r: i for i, r in enumerate(got)}
    allowed = True
    notes = []
    for i in diff:
        j = pos[want[i]]  # the node we put at the rank the table gives node i
        gap = abs(values[i] - values[j])
        notes.append(f"node {i + 1} ranked {got[i]} (expected {want[i]}), value gap to node {j + 1} = {gap:.4f}")
        if got[j] != want[i] or want[j] != got[i] or gap >= SWAP_VALUE_TOL:
            allowed = False
    return diff, allowed, notes


def test_4_reference_impulse_ranks(nine_net):
    res = impulse_closed_form(to_dense(nine_net))
    psi = rank_nodes(res.psi_imp).ranks
    v = rank_nodes(res.v_imp).ranks
    d_psi, ok_psi, n_psi = _swap_mismatch(psi, REF_PSI_IMP, res.psi_imp)
    d_v, ok_v, n_v = _swap_mismatch(v, REF_V_IMP, res.v_imp)
    for line in n_psi + n_v:
        print("fixture note:", line)
    ok = ok_psi and ok_v
    record_criterion(
        "4",
        "nine-node impulse ranks",
        ok,
        f"psi_imp={psi} (expected {REF_PSI_IMP}); v_imp={v} (expected {REF_V_IMP})",
    )
    assert ok_psi, n_psi
    assert ok_v, n_v


def test_5_element_ranking_head(nine_net):
    head = element_ranking(k_matrix(nine_net), nine_net.labels)[:4]
    pairs = [p for p, _ in head]
    ok = (
        pairs[0] == ("3", "6")
        and {pairs[1], pairs[2]} == {("3", "7"), ("3", "9")}
        and head[1][1] == head[2][1]
        and head[0][1] > head[1][1] > head[3][1]
        and pairs[3] == ("3", "5")
    )
    record_criterion("5", "element ranking head", ok, f"{[(p, round(v, 3)) for p, v in head]}")
    assert ok


def test_6_oracle_equivalence(ensemble200):
    t0 = time.perf_counter()
    worst = 0.0
    pairs = 0
    for net in ensemble200:
        for s in net.labels:
            for t in net.labels:
                if s == t:
                    continue
                k = k_pair(accumulate_pair(net, s, t))
                circuit = build_circuit(net, s, t)
                ref = solve_circuit_nodal(circuit).k_value if circuit.chains else 0.0
                worst = max(worst, abs(k - ref))
                pairs += 1
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-9 and elapsed < 30
    record_criterion("6", "Oracle equivalence", ok, f"{pairs} pairs, max |diff| = {worst:.2e}, {elapsed:.2f} s")
    assert worst <= 1e-9
    assert elapsed < 30


def test_7_requirement_suite(ensemble200):
    rng = np.random.default_rng(77)
    delta = 1e-6
    fails = {k: 0 for k in "abcde"}
    for net in ensemble200:
        K = k_matrix(net).values
        for c in (-1.0, 0.5, 3.0):
            Kc = k_matrix(net.with_weights(lambda s, t, w: c * w)).values
            if np.max(np.abs(Kc - c * K), initial=0) > 1e-9:
                fails["a"] += 1
        if net.edges:
            edges = list(net.edges)
            e = edges[int(rng.integers(len(edges)))]
            Kd = k_matrix(net.with_weights(lambda s, t, w: w + delta if (s, t) == e else w)).values
            if np.max(np.abs(Kd - K)) > delta + 1e-12:
                fails["b"] += 1
        if not np.all(np.isfinite(K)):
            fails["c"] += 1
        if np.max(np.abs(k_matrix(net.reversed()).values - K.T), initial=0) > 1e-12:
            fails["d"] += 1
        perm = rng.permutation(net.n)
        if np.max(np.abs(k_matrix(net.relabeled(perm)).values - K[np.ix_(perm, perm)]), initial=0) > 1e-12:
            fails["e"] += 1
    ok = not any(fails.values())
    record_criterion("7", "Requirement suite (linearity, stability, finiteness, reversal, permutation)", ok, f"failures {fails}")
    assert ok, fails


def test_8_impulse_convergence_divergence():
    rng = np.random.default_rng(88)
    worst = 0.0
    for _ in range(100):
        n = int(rng.integers(1, 11))
        W = rng.uniform(-1, 1, (n, n)) * (rng.random((n, n)) < 0.5)
        np.fill_diagonal(W, 0)
        rho = np.max(np.abs(np.linalg.eigvals(W)))
        if rho > 0:
            W *= rng.uniform(0.05, 0.8) / rho
        p0, v0 = rng.normal(size=n), rng.normal(size=n)
        res = impulse_closed_form(W)
        worst = max(worst, float(np.max(np.abs(impulse_series(W, p0, v0, 200).final - (v0 + res.response @ p0)))))
    ok_a = worst <= 1e-6

    W = np.array([[0.0, 2.0], [1.0, 0.0]])
    traj = impulse_series(W, p0=[1, 1])
    est = spectral_radius(W)
    K = k_matrix(ConceptNet.from_dense(W)).values
    ok_b = traj.diverging and est.rho > 1 and bool(np.all(np.isfinite(K)))

    search = search_additive_reordering(np.random.default_rng(2024), 10_000)
    ok_c = search.found
    detail_c = (
        f"found at trial {search.trials} (n={search.W.shape[0]}, shift={search.shift:.3f}, nodes {search.flipped_pair} flip)"
        if ok_c
        else f"not found; last log entries {search.log[-5:]}"
    )
    record_criterion(
        "8",
        "Impulse convergence/divergence",
        ok_a and ok_b and ok_c,
        f"(a) max err {worst:.1e}; (b) rho={est.rho:.5f}, diverging={traj.diverging}; (c) {detail_c}",
    )
    assert ok_a and ok_b and ok_c


def test_9_determinism_and_performance(capsys, tmp_path):
    outs = {}
    for jobs in ("1", "8"):
        for rep in range(2):
            assert main(["k-matrix", "--input", _data("nine_node.csv"), "--jobs", jobs]) == 0
            outs[(jobs, rep)] = capsys.readouterr().out
    identical = len(set(outs.values())) == 1

    rng = np.random.default_rng(9)
    n = 100
    mask = (rng.random((n, n)) < 2 / (n - 1)) & ~np.eye(n, dtype=bool)
    W = np.where(mask, rng.uniform(-1, 1, (n, n)), 0.0)
    path = tmp_path / "sparse100.csv"
    from cogmap import render_matrix

    path.write_text(render_matrix(ConceptNet.from_dense(W)))
    t0 = time.perf_counter()
    code = main(["k-matrix", "--input", str(path), "--max-len", "12"])
    elapsed = time.perf_counter() - t0
    out = capsys.readouterr().out
    ok = identical and code == 0 and elapsed < 60
    record_criterion(
        "9",
        "Determinism & performance",
        ok,
        f"jobs 1/8 byte-identical={identical}; n=100 mean out-degree {mask.sum() / n:.2f} max-len 12: {elapsed:.2f} s",
    )
    assert identical
    assert code == 0 and out.count("\n") >= n
    assert elapsed < 60
