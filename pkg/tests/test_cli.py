from __future__ import annotations

import csv
import io
import json

import pytest

from dunklkit import cli
from dunklkit.registry import TARGETS

# One valid parameter set per registered target.
SAMPLES = {
    "numerics.gamma_fn": {"x": "4.5"},
    "numerics.bessel_j_mod": {"nu": "0.5", "z": "1.3"},
    "numerics.pfq_series": {"a": "[1,2]", "b": "[3]", "z": "0.5"},
    "numerics.gauss_2f1": {"a": "0.5", "b": "1", "c": "1.5", "z": "0.25"},
    "numerics.quad": {"f": "gauss", "a": "-3", "b": "3"},
    "numerics.fourier_line": {"f": "bump", "lam": "1.5"},
    "rootsys.build_root_system": {"family": "B", "n": "2"},
    "rootsys.reflect": {"alpha": "[1,-1]", "x": '["1/2", 3]'},
    "rootsys.weyl_group": {"family": "B", "n": "2"},
    "rootsys.dominant": {"family": "A", "n": "2", "x": "[2,-1,-1]"},
    "rootsys.delta_weight": {"family": "B", "n": "2", "k": "[1,2]", "x": "[0.3,1.1]"},
    "rootsys.rho_gamma": {"family": "B", "n": "2", "k": '["1/2", 1]'},
    "dunklops.dunkl_apply": {"family": "B", "n": "2", "k": "[1,2]", "p": '{"2,1": "1"}'},
    "dunklops.laplacian_apply": {"family": "B", "n": "2", "k": "[1,2]", "p": '{"2,2": "1"}'},
    "dunklops.cherednik_apply": {"family": "B", "n": "2", "k": "[1,2]", "f": '{"1,0": "1"}'},
    "dunklops.heckman_prime_apply": {"family": "B", "n": "2", "k": "[1,2]", "f": '{"1,0": "1"}'},
    "dunklops.commutator_residual": {"family": "B", "n": "2", "k": "[1,2]", "degree": "3"},
    "dunkl1d.kernel_E": {"lam": "2", "x": "1", "k": "1"},
    "dunkl1d.mu_density": {"x": "1", "y": "0.3", "k": "1"},
    "dunkl1d.nu_density": {"x": "1", "y": "0.7", "z": "0.5", "k": "1"},
    "dunkl1d.translate_radial": {"f": "gauss", "y": "0.5", "x": "0.3", "k": "1"},
    "dunkl1d.transform_pair": {"f": "skew_bump", "lam": "1.5", "k": "1"},
    "dunkl1d.mehta_constant": {"k": "1"},
    "dunkl1d.heat_kernel": {"t": "1", "x": "0.5", "y": "-0.2", "k": "1"},
    "dunkl1d.asym_limit": {"lam": "1", "x": "1", "k": "1", "t_seq": "[10,100]"},
    "trig1d.jacobi_phi": {"lam": "1.5", "x": "1", "alpha": "0.5", "beta": "-0.5"},
    "trig1d.ho_F": {"lam": "1.5", "x": "1", "k1": "1", "k2": "0.5"},
    "trig1d.opdam_G": {"lam": "1.5", "x": "1", "k1": "1", "k2": "0.5"},
    "trig1d.c_and_plancherel": {"lam": "1.5", "k1": "1", "k2": "0.5"},
    "trig1d.cherednik_transform_pair": {"f": "skew_bump", "lam": "1.5", "k1": "1", "k2": "0.5"},
    "trig1d.mu_trig_density": {"x": "1", "y": "0.3", "k1": "1", "k2": "0.5"},
    "trig1d.nu_trig_density": {"x": "1", "y": "0.7", "z": "0.5", "k1": "1", "k2": "0.5"},
    "trig1d.rational_limit": {"lam": "1", "x": "1", "k": "1", "eps_seq": "[0.1,0.01]"},
    "geom.euclid_phi": {"lam": "1.5", "r": "1", "n": "3"},
    "geom.hankel_pair": {"f": "bump", "lam_or_r": "1.5", "n": "3"},
    "geom.sphere_phi": {"ell": "2", "theta": "0.7", "n": "3"},
    "geom.sphere_expand": {"f": "cos", "n": "3", "L": "4"},
    "geom.sphere_synth": {"coeffs": "[1,0.5]", "theta": "0.7", "n": "3"},
    "geom.hyp_phi": {"lam": "1.5", "r": "1", "n": "3"},
    "geom.hyp_c_plancherel": {"lam": "1.5", "n": "3"},
    "geom.hyp_abel": {"f": "gauss", "r": "0.5", "n": "3"},
    "geom.hyp_abel_inverse": {"g": "gauss", "r": "0.5", "n": "3"},
    "geom.hyp_dual_abel": {"g": "cos", "r": "0.5", "n": "3"},
    "geom.hyp_dual_abel_inverse": {"f": "sech2", "r": "0.5", "n": "3"},
    "geom.hyp_heat": {"t": "1", "r": "0.5", "n": "3"},
    "geom.hyp_schrodinger_bound": {"t": "1", "r": "0.5", "n": "3"},
    "geom.hyp_wave_radial": {"f": "gauss:3", "g": "gauss:4", "t": "0.5", "n": "3"},
    "geom.model_convert": {"model": "ball", "coords": "[0.3,0.1]", "target": "halfspace"},
    "tree.sphere_volume": {"q": "3", "r": "2"},
    "tree.phi": {"lam": "0.4", "r": "3", "q": "3"},
    "tree.c": {"lam": "0.4", "q": "3"},
    "tree.spherical_transform": {"f": '[1, "1/2"]', "q": "3", "lam": "0.4"},
    "tree.inverse_spherical_transform": {"f": '[1, "1/2"]', "q": "3", "r": "1"},
    "tree.abel": {"f": '[1, "1/2", 0, 2]', "q": "3", "h": "1"},
    "tree.abel_inverse": {"g": '[1, 2, 3, 2, 1]', "q": "3", "r": "1"},
    "tree.dual_abel": {"g": '[1, 2, 3, 2, 1]', "q": "3", "r": "2"},
    "tree.dual_abel_inverse": {"f": '[1, "1/2", 0, 2]', "q": "3", "h": "2"},
    "tree.heat_walk": {"t": "4", "r": "2", "q": "3"},
    "tree.wave": {"f": '[1, "1/2"]', "g": '[0, 1]', "q": "2", "t": "3"},
    "tree.oracle": {"depth": "4", "q": "2"},
}


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def _command_for(target_id):
    cat = TARGETS[target_id].category
    return "eval" if cat == "eval" else cat


def test_samples_cover_every_target():
    assert set(SAMPLES) == set(TARGETS)


@pytest.mark.parametrize("target_id", sorted(SAMPLES))
def test_every_target_is_reachable(target_id, capsys):
    argv = [_command_for(target_id), "--target", target_id, "--format", "json"]
    for k, v in SAMPLES[target_id].items():
        argv += ["--param", f"{k}={v}"]
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    rows = json.loads(out)
    assert len(rows) == 1
    assert "err_est" in rows[0]


def test_csv_header_and_grid_order(capsys):
    code, out, _ = run(capsys, "eval", "--target", "tree.phi", "--param", "q=2", "--param", "lam=0.4", "--grid", "r=0..3")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["lam", "r", "q", "value", "err_est"]
    assert [r[1] for r in rows[1:]] == ["0", "1", "2", "3"]


def test_heat_grid_rows_are_positive(capsys):
    code, out, _ = run(capsys, "heat", "--target", "geom.hyp_heat", "--param", "t=1", "--param", "n=3",
                       "--grid", "r=0:0.5:10")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 21
    assert all(float(r["value"]) > 0 for r in rows)


def test_tree_heat_value_is_exact(capsys):
    code, out, _ = run(capsys, "heat", "--target", "tree.heat_walk", "--param", "t=4", "--param", "r=2",
                       "--param", "q=3", "--format", "json")
    assert code == 0
    assert json.loads(out)[0]["value"] == "5/128"


def test_commutator_residual_is_exact_zero(capsys):
    argv = ["eval", "--target", "dunklops.commutator_residual", "--format", "json"]
    for k, v in SAMPLES["dunklops.commutator_residual"].items():
        argv += ["--param", f"{k}={v}"]
    code, out, _ = run(capsys, *argv)
    assert code == 0
    assert json.loads(out)[0]["value"] == "0"


def test_output_is_byte_stable(capsys, tmp_path):
    argv = ["eval", "--target", "trig1d.ho_F", "--param", "k1=1", "--param", "k2=0.5", "--param", "x=1",
            "--grid", "lam=0:0.25:2"]
    first, second = tmp_path / "a.csv", tmp_path / "b.csv"
    assert cli.main(argv + ["--out", str(first)]) == 0
    assert cli.main(argv + ["--out", str(second), "--jobs", "2"]) == 0
    assert first.read_bytes() == second.read_bytes()


def test_usage_errors_exit_with_two(capsys):
    assert run(capsys, "eval", "--target", "no.such")[0] == 2
    assert run(capsys, "eval", "--target", "tree.phi", "--param", "q=2", "--param", "lam=0.4")[0] == 2
    assert run(capsys, "eval", "--target", "tree.phi", "--param", "q=2", "--param", "lam=0.4",
               "--param", "r=1", "--param", "bogus=3")[0] == 2
    assert run(capsys, "heat", "--target", "tree.phi", "--param", "q=2", "--param", "lam=0.4", "--param", "r=1")[0] == 2
    assert run(capsys, "eval", "--target", "tree.phi", "--grid", "r=0:0:3", "--param", "q=2", "--param", "lam=0.4")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2


def test_numeric_failures_exit_with_one(capsys):
    # the c-function of the tree has a pole at lam = 0
    code, _, err = run(capsys, "eval", "--target", "tree.c", "--param", "lam=0", "--param", "q=3")
    assert code == 1
    assert "PoleError" in err


def test_unreachable_tolerance_exits_with_one(capsys):
    base = ["eval", "--target", "numerics.gauss_2f1", "--param", "a=0.5", "--param", "b=1",
            "--param", "c=1.5", "--param", "z=0.25"]
    code, out, err = run(capsys, *base, "--tol", "err_est=1e-30")
    assert code == 1
    assert "tolerance unreachable" in err
    assert out.startswith("a,b,c,z,value,err_est")
    assert run(capsys, *base, "--tol", "err_est=1e-6")[0] == 0


def test_empty_suite_selection_is_a_usage_error(capsys):
    code, _, err = run(capsys, "suite", "no.such.check*")
    assert code == 2


def test_suite_reports_json(capsys):
    code, out, _ = run(capsys, "suite", "tree.abel*")
    assert code == 0
    report = json.loads(out)
    assert [r["check_id"] for r in report] == ["tree.abel_exact"]
    assert report[0]["status"] == "pass"


def test_targets_listing(capsys):
    code, out, _ = run(capsys, "targets")
    assert code == 0
    assert len(out.strip().splitlines()) == len(TARGETS)
