"""Smoke tests for the uniforge extension module."""

import json
import os
import subprocess
import tempfile

import numpy as np
import pytest

import uniforge as uf


def test_shape_indexing():
    s = uf.Shape([2, 3])
    assert s.total_dim == 6
    assert s.linear_index([1, 2]) == 5
    assert s.multi_index(5) == [1, 2]


def bell():
    amps = np.zeros(4, dtype=complex)
    amps[0] = amps[3] = 1 / np.sqrt(2)
    return uf.PureState([2, 2], amps)


def test_bell_reduction_is_maximally_mixed():
    rho = uf.reduce(bell(), [0])
    assert np.allclose(rho, np.eye(2) / 2, atol=1e-12)
    assert np.allclose(uf.oracle_reduce(bell(), [1]), np.eye(2) / 2, atol=1e-12)


def test_registry_roundtrip_and_verifier():
    names = uf.registry_names()
    assert "[[5,1,3]]_2" in names
    code = uf.registry_materialize("[[5,1,3]]_2")
    assert code.dimension == 2
    assert code.claimed_uniformity == 2

    good = uf.verify_pure_code(code, 3, threads=2)
    assert good["pass"]
    bad = uf.verify_pure_code(code, 4, threads=2)
    assert not bad["pass"]


def test_registry_params_expose_qmds():
    p = uf.registry_params("((5,3,3))_3")
    assert (p["n"], p["K"], p["d"], p["D"]) == (5, 3, 3, 3)
    assert p["qmds"]


def test_predictors_exact_integers():
    assert uf.predict_combine(5, 2, 5, 2) == 3
    assert uf.predict_corollary1(5, 3) == 4
    pred = uf.predict_combine_eliminate(10, 3, 3, 10, 3, 3, 1, 1)
    assert pred["dim"] == 9
    assert pred["l"] == 5


def test_me_state_and_isometry_application():
    pair = uf.me_state(2)
    iso = uf.registry_materialize("((5,3,3))_3")
    state = uf.apply_isometry(iso, pair, [1])
    assert state.dims == [2, 3, 3, 3, 3, 3]
    rep = uf.state_uniformity(state, 2, threads=2)
    assert rep["pass"]
    assert rep["subsets_checked"] == 15


def test_combine_and_max_uniformity():
    state = uf.combine("((4,4,2))_2", "((4,4,2))_2")
    assert uf.max_uniformity(state, threads=2) == 3


def test_me_subspace_check():
    w = uf.me_subspace(9)
    assert w.dimension == 4
    assert uf.me_subspace_check(w, 0, trials=25)["pass"]


def test_eliminate_and_glue():
    five = uf.registry_materialize("[[5,1,3]]_2")
    shortened = uf.eliminate(five, 4)
    assert shortened.dimension == 4
    assert uf.subspace_uniformity(shortened, 1)["pass"]
    glued = uf.glue(five, five)
    assert glued.dimension == 4


def test_feasibility():
    assert uf.feasibility_check([2, 2, 2], 1)
    assert not uf.feasibility_check([2, 9], 1)


def test_errors_surface_as_forge_error():
    with pytest.raises(uf.ForgeError):
        uf.registry_materialize("[[9,9,9]]_9")
    with pytest.raises(uf.ForgeError):
        uf.me_state(1)


def test_state_file_roundtrip(tmp_path):
    path = str(tmp_path / "bell.state.json")
    uf.write_state(path, bell())
    back = uf.read_state(path)
    assert np.array_equal(back.amplitudes, bell().amplitudes)


def test_run_recipe_inline():
    recipe = {
        "format_version": 1,
        "seed": 3,
        "nodes": [
            {"id": "pair", "op": "me_state", "params": {"k": 2}},
            {"id": "iso", "op": "code", "params": {"name": "((5,3,3))_3"}},
            {"id": "out", "op": "apply", "inputs": ["iso", "pair"], "params": {"targets": [1]}},
        ],
        "verify": [{"target": "out", "check": "uniformity", "r": 2}],
    }
    result = uf.run_recipe(json.dumps(recipe), threads=2)
    assert result["pass"]
    report = json.loads(result["report_json"])
    assert report["checks"][0]["pass"]


def test_gallery_recipe_from_disk():
    recipes = os.environ.get("FORGE_RECIPES")
    if not recipes:
        pytest.skip("FORGE_RECIPES not set")
    with open(os.path.join(recipes, "eliminate_442.json")) as fh:
        result = uf.run_recipe(fh.read(), threads=2)
    assert result["pass"]


def test_cli_exit_codes():
    cli = os.environ.get("FORGE_CLI")
    recipes = os.environ.get("FORGE_RECIPES")
    if not cli or not recipes:
        pytest.skip("FORGE_CLI not set")

    ok = subprocess.run(
        [cli, "run", os.path.join(recipes, "two_uniform_c2_c3x5.json"), "--threads", "2"],
        capture_output=True,
        text=True,
    )
    assert ok.returncode == 0, ok.stderr

    with tempfile.TemporaryDirectory() as tmp:
        # a GHZ state is not 2-uniform: expect exit code 1
        ghz = np.zeros(8, dtype=complex)
        ghz[0] = ghz[7] = 1 / np.sqrt(2)
        path = os.path.join(tmp, "ghz.state.json")
        uf.write_state(path, uf.PureState([2, 2, 2], ghz))
        fail = subprocess.run([cli, "verify", path, "--uniform", "2"], capture_output=True)
        assert fail.returncode == 1

        # malformed file: exit code 2
        bad = os.path.join(tmp, "bad.json")
        with open(bad, "w") as fh:
            fh.write("{ nope")
        usage = subprocess.run([cli, "verify", bad, "--uniform", "1"], capture_output=True)
        assert usage.returncode == 2

    predict = subprocess.run(
        [cli, "predict", "combine-eliminate", "10", "3", "3", "10", "3", "3", "1", "1"],
        capture_output=True,
        text=True,
    )
    assert predict.returncode == 0
    assert "dim = 9" in predict.stdout
    assert "l = 5" in predict.stdout


def test_cli_verify_subspace_pure_distance(tmp_path):
    cli = os.environ.get("FORGE_CLI")
    if not cli:
        pytest.skip("FORGE_CLI not set")
    w = uf.registry_materialize("((4,4,2))_2")
    path = str(tmp_path / "w.subspace.json")
    uf.write_subspace(path, w)
    ok = subprocess.run([cli, "verify", path, "--pure-distance", "2"], capture_output=True)
    assert ok.returncode == 0
    wrong = subprocess.run([cli, "verify", path, "--pure-distance", "3"], capture_output=True)
    assert wrong.returncode == 1


def test_capacity_env_var_controls_the_dense_cap():
    cli = os.environ.get("FORGE_CLI")
    recipes = os.environ.get("FORGE_RECIPES")
    if not cli or not recipes:
        pytest.skip("FORGE_CLI not set")
    env = dict(os.environ, FORGE_CAPACITY="10")
    squeezed = subprocess.run(
        [cli, "run", os.path.join(recipes, "two_uniform_c2_c3x5.json")],
        capture_output=True,
        text=True,
        env=env,
    )
    assert squeezed.returncode == 2
    assert "capacity" in squeezed.stderr
