"""Exact invariants, bound evaluators, verdicts, and certificates."""

import json
import math

import pytest

from sumrank import certify as ct
from sumrank import construct as cs
from sumrank import hamming as hm
from sumrank import spaces as sp


@pytest.fixture(scope="module")
def qp_code():
    return cs.quasi_perfect_2xm(2, 2, 2)


@pytest.fixture(scope="module")
def am_code():
    return cs.almost_msrd_2x2(2, 4)


def test_sr_min_distance_exhaustive(qp_code, am_code):
    d = ct.sr_min_distance(qp_code)
    assert d.value == 3 and d.method == "exhaustive"
    assert sp.packed_word_weight(qp_code.profile, d.witness) == 3
    d2 = ct.sr_min_distance(am_code)
    assert d2.value == 4


def test_sr_min_distance_zero_code(f4):
    z = hm.zero_code(f4, 3)
    code = cs.sr_covering([z, z])
    res = ct.sr_min_distance(code)
    assert res.infinite
    with pytest.raises(ValueError):
        _ = res.value


def test_sr_distance_matches_raw_enumeration(am_code):
    """Independent recount: stream codewords, weigh blocks by elimination."""
    best = min(w for w in (sp.sum_rank_weight(am_code.to_word(p))
                           for p in am_code.enumerate_packed()) if w)
    assert best == ct.sr_min_distance(am_code).value == 4


def test_sr_min_distance_composed(f2, f4):
    code = cs.distance_optimal_2x2(2)
    res = ct.sr_min_distance(code)
    assert res.exact and res.value == 4
    assert res.method == "composed+witness"
    assert sp.packed_word_weight(code.profile, res.witness) == 4
    assert code.contains_packed(res.witness)


def test_sr_covering_radius_golden(qp_code):
    radius, table = ct.sr_covering_radius(qp_code)
    assert radius == 2
    assert len(table.leader_weight) == 2 ** qp_code.codim == 64
    assert table.covering_radius == 2


def test_sr_covering_radius_full_space(f4):
    code = cs.sr_covering([hm.full_code(f4, 2), hm.full_code(f4, 2)])
    radius, table = ct.sr_covering_radius(code)
    assert radius == 0 and len(table.leader_weight) == 1


def test_walk_matches_sweep_binary(qp_code):
    walk_r, walk_table = ct.sr_covering_radius(qp_code)
    sweep_r, sweep_table = ct.sr_covering_radius_sweep(qp_code)
    assert walk_r == sweep_r
    assert walk_table.leader_weight == sweep_table


def test_walk_matches_sweep_odd_characteristic(f3):
    f9 = f3.extension(2)
    code = cs.sr_linearized([hm.repetition_code(f9, 2),
                             hm.parity_check_code(f9, 2)], base=f3)
    walk_r, walk_table = ct.sr_covering_radius(code)
    sweep_r, sweep_table = ct.sr_covering_radius_sweep(code)
    assert walk_r == sweep_r
    assert walk_table.leader_weight == sweep_table


def test_extension_preserves_radius(f4):
    rep = hm.repetition_code(f4, 3)
    inner = cs.sr_covering([rep, rep])
    r_inner, _ = ct.sr_covering_radius(inner)
    extended = cs.extend_full_blocks(inner, 1)
    r_ext, _ = ct.sr_covering_radius(extended)
    assert r_inner == r_ext


def test_singleton_like_bound(f2):
    prof = sp.MatrixProfile(f2, tuple([(2, 2)] * 4))
    assert ct.singleton_like_bound(prof, 4) == 2 ** 10
    assert ct.singleton_like_bound(prof, 1) == prof.ambient_size
    het = sp.MatrixProfile(f2, ((2, 3), (2, 2)))
    assert ct.singleton_like_bound(het, 3) == 2 ** 4
    with pytest.raises(ValueError, match="out of range"):
        ct.singleton_like_bound(prof, 9)
    # block order does not change the bound
    het2 = sp.MatrixProfile(f2, ((2, 2), (2, 3)))
    for d in range(1, 5):
        assert ct.singleton_like_bound(het, d) == ct.singleton_like_bound(het2, d)


def test_singleton_defect_and_msrd(f2, am_code):
    assert ct.singleton_defect(am_code.profile, am_code.dim, 4) == 2
    assert ct.msrd_verdict(am_code.profile, am_code.dim, 4)[0] == "almost-MSRD"
    do = cs.distance_optimal_2x2(2)
    assert ct.singleton_defect(do.profile, do.dim, 4) == 4
    name, defect = ct.msrd_verdict(do.profile, do.dim, 4)
    assert name == "defect 4" and defect == 4
    # full space: defect 0 at d = 1
    prof = sp.MatrixProfile(f2, ((2, 2),))
    assert ct.singleton_defect(prof, 4, 1) == 0
    assert ct.msrd_verdict(prof, 4, 1)[0] == "MSRD"
    het = sp.MatrixProfile(f2, ((2, 3), (2, 2)))
    with pytest.raises(ValueError, match="equal column sizes"):
        ct.singleton_defect(het, 4, 2)


def test_sphere_packing_and_perfection(f4):
    full = cs.sr_covering([hm.full_code(f4, 2), hm.full_code(f4, 2)])
    rec = ct.sphere_packing_check(full.profile, full.size, 1)
    assert rec.holds and rec.equality
    assert ct.perfection_verdict(1, 0) == "perfect"
    assert ct.perfection_verdict(3, 2) == "quasi-perfect"
    assert ct.perfection_verdict(3, 1) == "perfect"
    assert ct.perfection_verdict(3, 4) == "neither"


def test_sphere_packing_sanity_on_known_codes(qp_code, am_code):
    for code, d in ((qp_code, 3), (am_code, 4)):
        rec = ct.sphere_packing_check(code.profile, code.size, d)
        assert rec.holds
        assert code.size <= ct.singleton_like_bound(code.profile, d)


def test_distance_optimal_check(f2):
    do = cs.distance_optimal_2x2(2)
    verdict, rec = ct.distance_optimal_check(do.profile, do.size, 4)
    assert verdict == "certified"
    assert rec["volume"] == 8731 and rec["rhs"] == 2 ** 60
    # [distance 5 would need a larger volume]
    small = cs.distance_optimal_sxs(2, 3, 1, 1)
    verdict_s, rec_s = ct.distance_optimal_check(small.profile, small.size, 4)
    assert verdict_s == "certified" and rec_s["volume"] == 52823


def test_distance_optimal_check_hamming():
    v15, r15 = ct.distance_optimal_check_hamming(15, 4, 4 ** 10, 4)
    assert v15 == "inconclusive" and r15["volume"] == 991
    v63, r63 = ct.distance_optimal_check_hamming(63, 4, 4 ** 56, 4)
    assert v63 == "certified" and r63["volume"] == 17767


def test_strong_singleton_bch():
    rec = ct.strong_singleton_bch(2, 65535, 2, 16, 33)
    assert rec.applicable and rec.case == 1
    assert rec.bound == 2 ** (4 * (65535 - 32))
    assert rec.improves and rec.bound * 2 ** 64 == rec.singleton
    rec2 = ct.strong_singleton_bch(2, 65535, 2, 16, 32)
    assert rec2.case == 2 and rec2.bound == 2 ** (4 * (65535 - 16))
    bad = ct.strong_singleton_bch(2, 65535, 2, 15, 33)
    assert not bad.applicable and "59049" in bad.reason
    low_d = ct.strong_singleton_bch(2, 65535, 2, 16, 20)
    assert not low_d.applicable
    short = ct.strong_singleton_bch(2, 100, 2, 16, 33)
    assert not short.applicable


def test_block_length_bound():
    rec = ct.block_length_bound(2, 2, 4, 2, 1.0)
    assert abs(rec.value - 16 * 2 * math.log(2)) < 1e-12
    assert any("non-rigorous" in a for a in rec.assumptions)
    with pytest.raises(ValueError, match="divisibility"):
        ct.block_length_bound(2, 2, 6, 2)
    with pytest.raises(ValueError, match="divisibility"):
        ct.block_length_bound(2, 2, 4, 3)


def test_blf_relation_and_witness(f4):
    rec = ct.blf_relation_check(2, 2, 8, 2)
    assert rec.value is True
    with pytest.raises(ValueError, match="divisibility"):
        ct.blf_relation_check(2, 2, 6, 2)
    cov = cs.covering_repetition(2, 2, 3)
    radius, _ = ct.sr_covering_radius(cov)
    assert radius <= 4  # at most m * R_H = 2 * 2
    wit = ct.blf_witness(cov, radius)
    assert wit.value == 3 and f"{cov.codim},{radius}" in wit.name


def test_size_bound_from_witness(f4):
    ham = hm.hamming_code(f4, 2)
    radius, _ = hm.covering_radius(ham)
    assert radius == 1
    k_witness = ham.size  # 4^3 = 64 codewords cover radius 1
    rec = ct.size_bound_from_witness(2, 2, 5, 2, k_witness)
    assert rec.value == 4096
    with pytest.raises(ValueError, match="divisibility"):
        ct.size_bound_from_witness(2, 2, 5, 3, 64)


def test_entropy():
    assert ct.entropy(4, 0.0) == 0.0
    assert abs(ct.entropy(4, 0.75) - 1.0) < 1e-12
    rho = 0.3
    expected = (rho * math.log(3, 4) - rho * math.log(rho, 4)
                - (1 - rho) * math.log(1 - rho, 4))
    assert abs(ct.entropy(4, rho) - expected) < 1e-12
    with pytest.raises(ValueError, match="outside"):
        ct.entropy(4, 0.8)
    with pytest.raises(ValueError, match="outside"):
        ct.entropy(4, -0.1)


def test_strong_singleton_blf():
    rec = ct.strong_singleton_blf(2, 2, 4, 2, 64, 1.0)
    assert rec.value == 2 ** (4 * 63 - 8)
    assert any("non-rigorous" in a for a in rec.assumptions)
    # degenerate c = 0 makes the gate trivially true
    rec0 = ct.strong_singleton_blf(2, 2, 4, 2, 3, 0.0)
    assert rec0.value == 2 ** ((3 - 1) * 4 - 4 * 2)
    with pytest.raises(ValueError, match="divisibility"):
        ct.strong_singleton_blf(2, 2, 4, 3, 64)
    with pytest.raises(ValueError, match="gate"):
        ct.strong_singleton_blf(2, 2, 4, 2, 10, 1.0)


def test_condition_checks_cyclic_d4():
    rec = ct.family_condition_checks("cyclic-d4", {"q": 4, "m": 2, "lam": 1})
    assert rec.rational_holds          # 8 < 9
    assert not rec.exact_holds         # 991 < 1024
    assert (rec.exact_lhs, rec.exact_rhs) == (991, 1024)
    rec3 = ct.family_condition_checks("cyclic-d4", {"q": 4, "m": 3, "lam": 1})
    assert rec3.exact_holds            # 17767 > 16384
    assert (rec3.exact_lhs, rec3.exact_rhs) == (17767, 16384)
    rec_bad = ct.family_condition_checks("cyclic-d4", {"q": 5, "m": 2, "lam": 4})
    assert not rec_bad.rational_holds  # 160 >= 16
    with pytest.raises(ValueError, match="divide"):
        ct.family_condition_checks("cyclic-d4", {"q": 4, "m": 2, "lam": 7})


def test_condition_checks_sxs_and_plotkin():
    rec = ct.family_condition_checks("distance-optimal-sxs",
                                      {"q": 2, "s": 3, "m": 1, "lam": 1})
    assert rec.rational_holds and rec.exact_holds
    assert (rec.exact_lhs, rec.exact_rhs) == (52823, 32768)
    rec22 = ct.family_condition_checks("distance-optimal-sxs",
                                        {"q": 2, "s": 2, "m": 2, "lam": 1})
    assert not rec22.exact_holds
    assert (rec22.exact_lhs, rec22.exact_rhs) == (8731, 16384)
    pl2 = ct.family_condition_checks("plotkin-distance-optimal", {"s": 2, "m": 1})
    assert not pl2.rational_holds      # 2 * (3/4)^4 < 1
    assert not pl2.exact_holds
    pl3 = ct.family_condition_checks("plotkin-distance-optimal", {"s": 3, "m": 1})
    assert pl3.rational_holds
    assert not pl3.exact_holds         # 223294 < 262144 at m = 1
    assert (pl3.exact_lhs, pl3.exact_rhs) == (223294, 262144)


def test_certificate_json_deterministic(qp_code):
    c1 = ct.certify_code(qp_code, "quasi-perfect")
    c2 = ct.certify_code(qp_code, "quasi-perfect")
    assert c1.to_json() == c2.to_json()
    assert c1.verdict == "certified" and c1.exit_code == 0
    payload = json.loads(c1.to_json())
    assert payload["property"] == "quasi-perfect"
    assert {q["name"] for q in payload["quantities"]} >= {
        "min_sum_rank_distance", "covering_radius", "dimension"}
    assert all("method" in q for q in payload["quantities"])


def test_certificate_verdicts(am_code):
    cert = ct.certify_code(am_code, "almost-msrd")
    assert cert.verdict == "certified" and cert.exit_code == 0
    cert2 = ct.certify_code(am_code, "msrd")
    assert cert2.verdict == "refuted" and cert2.exit_code == 1
    cert3 = ct.certify_code(am_code, "distance-optimal")
    assert cert3.verdict == "certified"
    cert4 = ct.certify_code(am_code, "sphere-packing")
    assert cert4.verdict == "certified"
    cert5 = ct.certify_code(am_code, "singleton")
    assert cert5.verdict == "certified"
    with pytest.raises(ValueError, match="unknown claim"):
        ct.certify_code(am_code, "bogus")


def test_certify_perfect_full_space(f4):
    full = cs.sr_covering([hm.full_code(f4, 2), hm.full_code(f4, 2)])
    cert = ct.certify_code(full, "perfect")
    assert cert.verdict == "certified"
    rec = ct.sphere_packing_check(full.profile, full.size, 1)
    assert rec.equality  # perfect <=> equality in sphere packing


def test_certify_budget_degrades_to_inconclusive(qp_code):
    cert = ct.certify_code(qp_code, "quasi-perfect", syndrome_budget=2)
    assert cert.verdict == "inconclusive" and cert.exit_code == 2


def test_certificate_records_witness(qp_code):
    cert = ct.certify_code(qp_code, "distance-optimal")
    wit = next(q for q in cert.quantities if q["name"] == "distance_witness")
    word = sp.SumRankWord(qp_code.profile,
                          tuple(tuple(tuple(r) for r in mat) for mat in wit["value"]))
    assert sp.sum_rank_weight(word) == 3


def test_verdicts_stable_under_block_permutation(f2):
    """Volumes, sizes, and bounds are block-order invariant."""
    blocks = ((2, 3), (2, 2), (1, 2))
    permuted = ((1, 2), (2, 3), (2, 2))
    a = sp.MatrixProfile(f2, blocks)
    b = sp.MatrixProfile(f2, permuted)
    for r in range(a.N + 1):
        assert sp.ball_volume_exact(a, r) == sp.ball_volume_exact(b, r)
    for d in range(1, a.N + 1):
        assert ct.singleton_like_bound(a, d) == ct.singleton_like_bound(b, d)
        assert (ct.distance_optimal_check(a, 2 ** 6, d)
                == ct.distance_optimal_check(b, 2 ** 6, d))


def test_export_matrices(f4):
    code = hm.hamming_code(f4, 2)
    out = code.export_matrices()
    assert len(out["generator"]) == 3 and len(out["parity_check"]) == 2
    f = code.field
    for g in out["generator"]:
        for h in out["parity_check"]:
            acc = 0
            for x, y in zip(g, h):
                acc = f.add(acc, f.mul(x, y))
            assert acc == 0
