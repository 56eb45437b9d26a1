"""End-to-end CLI tests driven through an in-process main()."""

import hashlib
import json
import math

import numpy as np
import pytest

from conftest import run_cli
from stigmergia.moments import signed_log
from stigmergia.pgm import write_grey


def ellipse_pgm(path, a=12, b=25, value=30, ground=220, invert=False):
    """A dark ellipse on a light ground (or the reverse)."""
    img = np.full((64, 80), ground, dtype=np.uint8)
    rr, cc = np.mgrid[0:64, 0:80]
    mask = ((rr - 31.5) / a) ** 2 + ((cc - 39.5) / b) ** 2 <= 1.0
    img[mask] = value
    if invert:
        img = (255 - img.astype(np.int64)).astype(np.uint8)
    write_grey(path, img)


def read_manifest(outdir):
    with open(outdir / "manifest.json", encoding="utf-8") as fh:
        return json.load(fh)


# --------------------------------------------------------------------- table1


def test_table1_default_shape():
    code, out, err = run_cli("table1")
    assert code == 0 and err == ""
    lines = out.splitlines()
    assert lines[0] == "id,h1,h2,h3,h4,h5,h6,h7,label"
    assert len(lines) == 21
    assert lines[1].startswith("1,-8.694,")
    assert ",-13.808," in lines[5]  # sample 5's h2
    assert lines[7].endswith(",scallop")  # id 7
    assert lines[1].endswith(",non-scallop")


def test_table1_triplicate_and_normalize():
    code, out, _ = run_cli("table1", "--triplicate", "--normalize")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 61
    # sample 2 holds the h1 max -> exactly 1.0 after min-max
    assert lines[2].split(",")[1] == "1.0"
    assert lines[5].split(",")[1] == "0.0"  # sample 5 holds the h1 min
    # triplicated rows repeat the source values
    assert lines[14].split(",")[1:] == lines[34].split(",")[1:] == lines[54].split(",")[1:]
    vals = np.array([[float(v) for v in ln.split(",")[1:8]] for ln in lines[1:]])
    assert vals.min() >= 0.0 and vals.max() <= 1.0


def test_table1_byte_deterministic(tmp_path):
    f1, f2 = tmp_path / "a.csv", tmp_path / "b.csv"
    assert run_cli("table1", "--triplicate", "--normalize", "--out", str(f1))[0] == 0
    assert run_cli("table1", "--triplicate", "--normalize", "--out", str(f2))[0] == 0
    assert f1.read_bytes() == f2.read_bytes()


# ---------------------------------------------------------------------- synth


def test_synth_shape_and_determinism(tmp_path):
    code, out, _ = run_cli("synth", "--classes", "3", "--per-class", "4", "--seed", "7")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "id,f1,f2,f3,f4,f5,f6,f7,label"
    assert len(lines) == 13
    assert lines[1].split(",")[-1] == "c0"
    assert lines[-1].split(",")[-1] == "c2"
    again = run_cli("synth", "--classes", "3", "--per-class", "4", "--seed", "7")[1]
    assert again == out
    other = run_cli("synth", "--classes", "3", "--per-class", "4", "--seed", "8")[1]
    assert other != out


def test_synth_rejects_impossible_geometry():
    code, _, err = run_cli("synth", "--classes", "40", "--features", "3")
    assert code == 2
    assert "stigmergia:" in err


# -------------------------------------------------------------------- extract


def test_extract_ellipse_features(tmp_path):
    img = tmp_path / "ell.pgm"
    ellipse_pgm(img)
    code, out, err = run_cli("extract", str(img))
    assert code == 0 and err == ""
    lines = out.splitlines()
    assert lines[0] == "h1,h2,h3,h4,h5,h6,h7,source"
    cells = lines[1].split(",")
    assert cells[-1] == str(img)
    h = [float(v) for v in cells[:7]]
    assert all(math.isfinite(v) for v in h)
    # a 25:12 ellipse is clearly elongated: h1 above the disk floor 1/(2*pi),
    # h2 well off zero
    assert h[0] > 0.17
    assert h[1] > 0.005


def test_extract_same_image_twice_gives_identical_rows(tmp_path):
    img = tmp_path / "ell.pgm"
    ellipse_pgm(img)
    code, out, _ = run_cli("extract", str(img), str(img))
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 3
    assert lines[1] == lines[2]


def test_extract_log_normalize_applies_signed_log(tmp_path):
    img = tmp_path / "ell.pgm"
    ellipse_pgm(img)
    raw = run_cli("extract", str(img))[1].splitlines()[1].split(",")[:7]
    log = run_cli("extract", "--log-normalize", str(img))[1].splitlines()[1].split(",")[:7]
    for r, l in zip(raw, log):
        assert float(l) == signed_log(float(r))


def test_extract_polarity_flip_is_neutral(tmp_path):
    dark = tmp_path / "dark.pgm"
    light = tmp_path / "light.pgm"
    ellipse_pgm(dark)
    ellipse_pgm(light, invert=True)
    row_dark = run_cli("extract", "--object", "dark", str(dark))[1].splitlines()[1]
    row_light = run_cli("extract", "--object", "light", str(light))[1].splitlines()[1]
    assert row_dark.split(",")[:7] == row_light.split(",")[:7]


def test_extract_missing_file_fails_but_continues(tmp_path):
    img = tmp_path / "ell.pgm"
    ellipse_pgm(img)
    out_csv = tmp_path / "f.csv"
    code, _, err = run_cli("extract", str(tmp_path / "nope.pgm"), str(img),
                           "--out", str(out_csv))
    assert code == 1
    assert "nope.pgm" in err
    lines = out_csv.read_text(encoding="utf-8").splitlines()
    assert len(lines) == 2  # header + the one readable image


def test_extract_degenerate_image_reports_error(tmp_path):
    img = tmp_path / "flat.pgm"
    write_grey(img, np.full((10, 10), 128, dtype=np.uint8))
    code, out, err = run_cli("extract", str(img))
    assert code == 1
    assert "flat.pgm" in err
    assert out.splitlines() == ["h1,h2,h3,h4,h5,h6,h7,source"]


# -------------------------------------------------------------------- cluster


@pytest.fixture(scope="module")
def features_csv(tmp_path_factory):
    path = tmp_path_factory.mktemp("feat") / "larvae.csv"
    assert run_cli("table1", "--triplicate", "--normalize", "--out", str(path))[0] == 0
    return path


def cluster_args(features, outdir, *extra):
    return (
        "cluster", str(features), "--t-max", "200", "--snapshot-every", "100",
        "--seed", "3", "--out", str(outdir), *extra,
    )


def test_cluster_outputs_and_manifest(tmp_path, features_csv):
    outdir = tmp_path / "run"
    code, out, err = run_cli(*cluster_args(features_csv, outdir))
    assert code == 0 and err == ""
    assert "clustered 60 items in 200 steps" in out
    for step in (0, 100, 200):
        assert (outdir / f"placement_t{step}.csv").is_file()
    m = read_manifest(outdir)
    assert m["format"] == "stigmergia-run/1"
    assert m["n_items"] == 60
    assert m["final_file"] == "placement_t200.csv"
    assert m["input_file"] == str(features_csv)
    assert m["input_sha256"] == hashlib.sha256(features_csv.read_bytes()).hexdigest()
    assert m["params"]["t_max"] == 200
    assert m["params"]["seed"] == 3
    assert [s["step"] for s in m["snapshots"]] == [0, 100, 200]
    for s in m["snapshots"]:
        assert isinstance(s["entropy"], float)
    final = (outdir / m["final_file"]).read_text(encoding="utf-8").splitlines()
    assert len(final) == 61  # all items grounded in the final placement


def test_cluster_reruns_are_byte_identical(tmp_path, features_csv):
    d1, d2 = tmp_path / "r1", tmp_path / "r2"
    assert run_cli(*cluster_args(features_csv, d1))[0] == 0
    assert run_cli(*cluster_args(features_csv, d2))[0] == 0
    for name in ("placement_t0.csv", "placement_t100.csv", "placement_t200.csv",
                 "manifest.json"):
        assert (d1 / name).read_bytes() == (d2 / name).read_bytes()


def test_cluster_replay_reproduces_run(tmp_path, features_csv):
    d1, d2 = tmp_path / "orig", tmp_path / "replay"
    assert run_cli(*cluster_args(features_csv, d1))[0] == 0
    code, _, err = run_cli("cluster", "--replay", str(d1 / "manifest.json"),
                           "--out", str(d2))
    assert code == 0, err
    for name in ("placement_t0.csv", "placement_t200.csv", "manifest.json"):
        assert (d1 / name).read_bytes() == (d2 / name).read_bytes()


def test_cluster_replay_refuses_changed_input(tmp_path):
    feats = tmp_path / "f.csv"
    assert run_cli("table1", "--normalize", "--out", str(feats))[0] == 0
    d1 = tmp_path / "orig"
    assert run_cli("cluster", str(feats), "--t-max", "50", "--out", str(d1))[0] == 0
    feats.write_text(feats.read_text(encoding="utf-8") + "\n", encoding="utf-8")
    code, _, err = run_cli("cluster", "--replay", str(d1 / "manifest.json"),
                           "--out", str(tmp_path / "replay"))
    assert code == 2
    assert "refusing to replay" in err


def test_cluster_empty_input_warns(tmp_path):
    feats = tmp_path / "empty.csv"
    feats.write_text("h1,h2\n", encoding="utf-8")
    outdir = tmp_path / "run"
    code, out, err = run_cli("cluster", str(feats), "--t-max", "10",
                             "--grid-rows", "5", "--grid-cols", "5",
                             "--out", str(outdir))
    assert code == 0
    assert "no items" in err
    m = read_manifest(outdir)
    assert m["n_items"] == 0
    assert all(s["entropy"] is None for s in m["snapshots"])


def test_cluster_pgm_snapshots(tmp_path, features_csv):
    outdir = tmp_path / "run"
    code, _, _ = run_cli(*cluster_args(features_csv, outdir),
                         "--pgm-snapshots", "--highlight-label", "scallop")
    assert code == 0
    m = read_manifest(outdir)
    assert m["highlight_label"] == "scallop"
    assert m["class_pixel_values"] == {"": 0, "scallop": 255, "non-scallop": 128}
    from stigmergia.pgm import read_image

    img = read_image(outdir / m["snapshots"][-1]["image"])
    assert img.shape == (15, 15)
    assert set(np.unique(img).tolist()) <= {0, 128, 255}
    assert (img == 255).sum() == 15  # 5 scallop rows triplicated
    assert (img == 128).sum() == 45


def test_cluster_without_input_is_usage_error():
    code, _, err = run_cli("cluster")
    assert code == 2
    assert "features CSV" in err


def test_cluster_rejects_unnormalized_features(tmp_path):
    feats = tmp_path / "raw.csv"
    assert run_cli("table1", "--out", str(feats))[0] == 0  # raw log values, not [0,1]
    code, _, err = run_cli("cluster", str(feats), "--t-max", "10",
                           "--out", str(tmp_path / "run"))
    assert code == 2
    assert "normalize" in err


# ------------------------------------------------------------------- classify


def write_known_placement(path):
    path.write_text(
        "id,row,col,label\n"
        "1,0,0,a\n"
        "2,0,2,a\n"
        "3,5,5,b\n"
        "30,0,1,a\n"
        "31,5,6,b\n"
        "32,8,8,\n",
        encoding="utf-8",
    )


def test_classify_known_answer(tmp_path):
    pl = tmp_path / "p.csv"
    write_known_placement(pl)
    pred = tmp_path / "pred.csv"
    code, out, err = run_cli(
        "classify", str(pl), "--grid-rows", "9", "--grid-cols", "9",
        "--markers", "1-3", "--k", "3", "--out", str(pred),
    )
    assert code == 0, err
    # id 30 sits between the two "a" markers (correct); id 31 is outvoted
    # 2-to-1 by the far "a" pair (wrong); id 32 has no ground truth
    assert out.strip() == "accuracy: 0.5 (1/2)"
    assert pred.read_text(encoding="utf-8") == (
        "id,predicted,truth,correct\n"
        "30,a,a,1\n"
        "31,a,b,0\n"
        "32,a,,\n"
    )


def test_classify_k1_flips_the_verdict(tmp_path):
    pl = tmp_path / "p.csv"
    write_known_placement(pl)
    code, out, _ = run_cli(
        "classify", str(pl), "--grid-rows", "9", "--grid-cols", "9",
        "--markers", "1-3", "--k", "1",
    )
    assert code == 0
    assert out.strip() == "accuracy: 1.0 (2/2)"  # nearest marker is right for both


def test_classify_run_directory(tmp_path, features_csv):
    outdir = tmp_path / "run"
    assert run_cli(*cluster_args(features_csv, outdir))[0] == 0
    code, out, err = run_cli("classify", str(outdir))
    assert code == 0, err
    assert out.startswith("accuracy: ")
    acc = float(out.split()[1])
    assert 0.0 <= acc <= 1.0


def test_classify_csv_with_sibling_manifest(tmp_path, features_csv):
    outdir = tmp_path / "run"
    assert run_cli(*cluster_args(features_csv, outdir))[0] == 0
    code, out, _ = run_cli("classify", str(outdir / "placement_t200.csv"))
    assert code == 0  # grid dimensions found in the sibling manifest.json
    assert out.startswith("accuracy: ")


def test_classify_explicit_manifest(tmp_path, features_csv):
    outdir = tmp_path / "run"
    assert run_cli(*cluster_args(features_csv, outdir))[0] == 0
    moved = tmp_path / "elsewhere.csv"
    moved.write_bytes((outdir / "placement_t200.csv").read_bytes())
    code, out, _ = run_cli("classify", str(moved),
                           "--manifest", str(outdir / "manifest.json"))
    assert code == 0
    assert out.startswith("accuracy: ")


def test_classify_needs_dimensions(tmp_path):
    pl = tmp_path / "p.csv"
    write_known_placement(pl)
    code, _, err = run_cli("classify", str(pl), "--markers", "1-3")
    assert code == 2
    assert "grid dimensions" in err


def test_classify_rejects_even_k(tmp_path):
    pl = tmp_path / "p.csv"
    write_known_placement(pl)
    code, _, err = run_cli("classify", str(pl), "--grid-rows", "9",
                           "--grid-cols", "9", "--markers", "1-3", "--k", "2")
    assert code == 2
    assert "odd" in err


def test_classify_marker_without_label(tmp_path):
    pl = tmp_path / "p.csv"
    pl.write_text("id,row,col,label\n1,0,0,a\n2,1,1,\n3,2,2,b\n30,5,5,\n",
                  encoding="utf-8")
    code, _, err = run_cli("classify", str(pl), "--grid-rows", "9",
                           "--grid-cols", "9", "--markers", "1-3")
    assert code == 2
    assert "marker 2 has no label" in err


def test_classify_without_ground_truth(tmp_path):
    pl = tmp_path / "p.csv"
    pl.write_text("id,row,col,label\n1,0,0,a\n2,1,1,b\n3,2,2,a\n30,5,5,\n",
                  encoding="utf-8")
    code, out, _ = run_cli("classify", str(pl), "--grid-rows", "9",
                           "--grid-cols", "9", "--markers", "1-3", "--k", "3")
    assert code == 0
    assert out.strip() == "accuracy: n/a (no ground-truth labels outside the marker range)"


def test_classify_bad_marker_range(tmp_path):
    pl = tmp_path / "p.csv"
    write_known_placement(pl)
    code, _, err = run_cli("classify", str(pl), "--grid-rows", "9",
                           "--grid-cols", "9", "--markers", "7")
    assert code == 2
    assert "markers" in err


# -------------------------------------------------------------------- scatter


def test_scatter_projects_columns(tmp_path):
    feats = tmp_path / "f.csv"
    assert run_cli("table1", "--out", str(feats))[0] == 0
    code, out, _ = run_cli("scatter", str(feats), "--x", "h1", "--y", "h1")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "id,x,y,label"
    assert len(lines) == 21
    for ln in lines[1:]:
        cells = ln.split(",")
        assert cells[1] == cells[2]  # diagonal projection
    assert lines[1].endswith("non-scallop")


def test_scatter_unknown_column(tmp_path):
    feats = tmp_path / "f.csv"
    assert run_cli("table1", "--out", str(feats))[0] == 0
    code, _, err = run_cli("scatter", str(feats), "--x", "h1", "--y", "h9")
    assert code == 2
    assert "h9" in err


# --------------------------------------------------------------------- config


def test_config_file_feeds_cluster(tmp_path, features_csv):
    cfg = tmp_path / "exp.cfg"
    cfg.write_text("t_max = 60  # short run\nseed = 9\n", encoding="utf-8")
    outdir = tmp_path / "run"
    code, _, _ = run_cli("cluster", str(features_csv), "--config", str(cfg),
                         "--out", str(outdir))
    assert code == 0
    m = read_manifest(outdir)
    assert m["params"]["t_max"] == 60
    assert m["params"]["seed"] == 9


def test_flags_override_config(tmp_path, features_csv):
    cfg = tmp_path / "exp.cfg"
    cfg.write_text("t_max=60\nseed=9\n", encoding="utf-8")
    outdir = tmp_path / "run"
    code, _, _ = run_cli("cluster", str(features_csv), "--config", str(cfg),
                         "--t-max", "20", "--out", str(outdir))
    assert code == 0
    m = read_manifest(outdir)
    assert m["params"]["t_max"] == 20  # flag wins
    assert m["params"]["seed"] == 9  # config still supplies the rest


def test_config_from_environment(tmp_path, features_csv, monkeypatch):
    cfg = tmp_path / "env.cfg"
    cfg.write_text("t_max=30\n", encoding="utf-8")
    monkeypatch.setenv("STIGMERGIA_CONFIG", str(cfg))
    outdir = tmp_path / "run"
    assert run_cli("cluster", str(features_csv), "--out", str(outdir))[0] == 0
    assert read_manifest(outdir)["params"]["t_max"] == 30


def test_explicit_config_beats_environment(tmp_path, features_csv, monkeypatch):
    env_cfg = tmp_path / "env.cfg"
    env_cfg.write_text("t_max=30\n", encoding="utf-8")
    flag_cfg = tmp_path / "flag.cfg"
    flag_cfg.write_text("t_max=40\n", encoding="utf-8")
    monkeypatch.setenv("STIGMERGIA_CONFIG", str(env_cfg))
    outdir = tmp_path / "run"
    assert run_cli("cluster", str(features_csv), "--config", str(flag_cfg),
                   "--out", str(outdir))[0] == 0
    assert read_manifest(outdir)["params"]["t_max"] == 40


@pytest.mark.parametrize(
    "content,fragment",
    [
        ("wat=3\n", "unknown config key"),
        ("t_max=abc\n", "bad value"),
        ("t_max\n", "expected key=value"),
    ],
)
def test_config_errors(tmp_path, content, fragment):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text(content, encoding="utf-8")
    code, _, err = run_cli("table1", "--config", str(cfg))
    assert code == 2
    assert fragment in err


def test_missing_config_file():
    code, _, err = run_cli("table1", "--config", "/no/such/file.cfg")
    assert code == 2
    assert "not found" in err


# --------------------------------------------------------------------- parser


@pytest.mark.parametrize("verb", ["extract", "table1", "cluster", "classify",
                                  "synth", "scatter"])
def test_help_exits_zero(verb):
    with pytest.raises(SystemExit) as exc:
        run_cli(verb, "--help")
    assert exc.value.code == 0


def test_missing_verb_exits_two():
    with pytest.raises(SystemExit) as exc:
        run_cli()
    assert exc.value.code == 2
