import json
import subprocess
import os

from fractions import Fraction as F

import pytest

import frobstab as fs


def test_rank_roundtrip():
    assert fs.rank_tl(2, 3, 2) == 3 == fs.rank_tl_oracle(2, 3, 2)
    assert fs.rank_tl(3, 2, 2) == 3
    assert fs.rank_tl(2, 3, 5) == 0
    assert sum(fs.rank_tl(3, 3, l) for l in range(0, 7)) == 27


def test_fraction_boundary():
    stats = fs.profile_stats([(2, F(5, 3)), (3, F(1, 6))])
    assert stats["mu"] == F(23, 30)
    assert stats["instability"] == F(3, 2)
    assert isinstance(stats["mu"], F)
    with pytest.raises(TypeError):
        fs.profile_stats([(2, 0.5)])
    assert fs.mu_pushforward(fs.VarietyContext(n=1, p=2, mu_omega=2), 0) == F(1, 2)


def test_decomposition_order_and_values():
    dec = fs.tl_decomposition([(2, F(1, 2)), (1, F(-1))], 2, 2)
    assert dec == {F(1): 1, F(-1, 2): 2}
    assert list(dec) == [F(1), F(-1, 2)]  # descending slopes
    mx, mn = fs.tl_extremes([(1, F(1)), (1, F(0))], 3, 2)
    assert (mx, mn) == (F(2), F(0))
    assert fs.instability_tl_exact([(1, F(1)), (1, F(0))], 3, 2) == F(2)
    assert fs.bound_tl2([(1, F(1)), (1, F(0))], 3, 2) == F(2)


def test_dominance():
    fine = fs.polygon_of([(1, F(1)), (1, F(-1))])
    coarse = fs.polygon_of([(2, F(0))])
    assert fs.dominates(fine, coarse)
    assert fs.dominates_same_endpoints(fine, coarse)
    assert not fs.dominates(coarse, fine) or fine == coarse
    with pytest.raises(ValueError):
        fs.dominates(fs.polygon_of([(1, F(0))]), coarse)


def test_forms_and_verdicts():
    rows = fs.forms_recurrence(2, 3)
    assert rows[1] == {"i": 1, "rank_b": 8, "rank_z": 10, "degb_coeff": F(6), "degz_coeff": F(8)}
    assert fs.forms_closed(2, 3, 2)["rank_b"] == 8
    verdict = fs.check_zi_instability(3, 2, 1)
    assert verdict["sufficient_conflict"]
    assert verdict["paper_sufficient_lhs"] == F(9, 7)
    assert verdict["exact_sufficient_lhs"] == F(6, 7)
    assert not verdict["exact_destabilizes"]
    assert fs.z1_hn(3, 3) == [(0, F(0)), (26, F(27)), (29, F(30))]
    with pytest.raises(fs.HypothesisError):
        fs.z1_hn(3, 2)
    assert fs.bound_bn_subsheaf(2, 3, 4, F(1)) == F(-1, 12)


def test_bounds_and_advisor():
    ctx = fs.VarietyContext(n=2, p=3, mu_omega=0, lmax_omega=0, omega_semistable=True)
    per_l, total = fs.bound_pushforward_case_ii(ctx, 2, F(0), F(1, 2))
    assert total == F(3)  # p^{n-1} * r * I(E)
    assert all(v == F(1, 2) for v in per_l)
    assert fs.bound_sun(ctx, 2, [F(1, 2)] * 5) == F(3)
    assert fs.bound_pushforward_case_i(ctx, 2) == 0
    assert fs.bound_langer_gap(4, 2, F(1, 2), F(3)) == F(5)
    assert fs.bound_tensor([(2, F(0), F(1)), (3, F(0), F(0))], 3, F(3)) == F(4)
    with pytest.raises(fs.HypothesisError):
        fs.bound_sun(fs.VarietyContext(n=1, p=2, mu_omega=-1), 1, [F(0), F(0)])
    advice = fs.stability_advisor(ctx, e_semistable=True)
    assert any(cite == "Prop. BxZx0" for _, cite in advice)


def test_selfcheck_report():
    report = fs.selfcheck("small", seed=7)
    assert report["passed"] is True
    assert report["seed"] == 7
    assert [n["id"] for n in report["paper-notes"]] == [
        "dvec-indexing",
        "instzix-simplification",
        "phi0-strict-inequality",
    ]
    assert report == json.loads(fs.selfcheck_json("small", 7))


def test_cli_agrees_with_module():
    cli = os.environ.get("FROBSTAB_CLI")
    if not cli:
        pytest.skip("FROBSTAB_CLI not set")
    out = subprocess.run([cli, "rank-tl", "--r", "2", "--p", "3", "--l", "2"],
                         capture_output=True, text=True, check=True)
    assert json.loads(out.stdout) == {"rank": "3", "oracle": "3", "agrees": True}
