"""End-to-end: valim CSVs in, deterministic images out."""

import subprocess

import pytest

from valim_plots.cli import main

REFERENCE = {
    "1c": ("contour", "--figure", "1c"),
    "2b": ("cond-validity", "--figure", "2b", "--seed", "0"),
    "3": ("validity-cdf", "--figure", "3", "--seed", "0"),
    "4c": ("contour", "--figure", "4c"),
    "5b": ("validify", "--figure", "5b", "--seed", "0"),
    "6": ("sparse-demo", "--figure", "6", "--seed", "0"),
}

PNG_MAGIC = b"\x89PNG\r\n\x1a\n"


@pytest.fixture(scope="session")
def csv_dir(tmp_path_factory):
    out = tmp_path_factory.mktemp("csv")
    jobs = dict(REFERENCE)
    for fig in ("1a", "1b", "1d"):
        jobs[fig] = ("contour", "--figure", fig)
    for fig, argv in jobs.items():
        subprocess.run(
            ["valim", *argv, "--out", str(out / f"{fig}.csv")],
            check=True,
            capture_output=True,
        )
    return out


def _render(csv_dir, tmp_path, figure, inputs, name):
    target = tmp_path / name
    argv = ["--figure", figure, "--in"]
    argv += [str(csv_dir / f"{i}.csv") for i in inputs]
    argv += ["--out", str(target)]
    assert main(argv) == 0
    return target


def test_six_reference_csvs_make_six_images(csv_dir, tmp_path):
    for fig in REFERENCE:
        target = _render(csv_dir, tmp_path, fig, [fig], f"fig{fig}.png")
        assert target.read_bytes().startswith(PNG_MAGIC)


def test_four_csv_job_renders_four_panels(csv_dir, tmp_path):
    target = _render(csv_dir, tmp_path, "1", ["1a", "1b", "1c", "1d"], "fig1.svg")
    svg = target.read_text()
    assert 'id="axes_4"' in svg
    assert 'id="axes_5"' not in svg


def test_cdf_image_has_diagonal_and_four_series(csv_dir, tmp_path):
    svg = _render(csv_dir, tmp_path, "3", ["3"], "fig3.svg").read_text()
    assert 'id="diagonal"' in svg
    for role in ("vacuous", "hose_0.5", "dempster", "tnorm_product"):
        assert f'id="series_{role}"' in svg


def test_conditional_cdf_panel(csv_dir, tmp_path):
    svg = _render(csv_dir, tmp_path, "2b", ["2b"], "fig2b.svg").read_text()
    assert 'id="series_H_A"' in svg
    assert 'id="diagonal"' in svg


def test_region_boundaries_present(csv_dir, tmp_path):
    svg = _render(csv_dir, tmp_path, "6", ["6"], "fig6.svg").read_text()
    for role in ("vacuous", "tnorm_product", "validified"):
        assert f'id="region_{role}"' in svg


def test_rerun_is_byte_identical(csv_dir, tmp_path):
    first = _render(csv_dir, tmp_path, "3", ["3"], "a.svg").read_bytes()
    second = _render(csv_dir, tmp_path, "3", ["3"], "b.svg").read_bytes()
    assert first == second
    first = _render(csv_dir, tmp_path, "1c", ["1c"], "a.png").read_bytes()
    second = _render(csv_dir, tmp_path, "1c", ["1c"], "b.png").read_bytes()
    assert first == second


def test_color_override_changes_the_image(csv_dir, tmp_path):
    plain = _render(csv_dir, tmp_path, "1c", ["1c"], "plain.png").read_bytes()
    target = tmp_path / "red.png"
    argv = ["--figure", "1c", "--in", str(csv_dir / "1c.csv"),
            "--out", str(target), "--color", "vacuous=tab:red"]
    assert main(argv) == 0
    assert target.read_bytes() != plain


def test_missing_column_is_named(csv_dir, tmp_path, capsys):
    doctored = tmp_path / "doctored.csv"
    doctored.write_text(
        (csv_dir / "1c.csv").read_text().replace("theta,", "th,", 1)
    )
    target = tmp_path / "never.png"
    rc = main(["--figure", "1c", "--in", str(doctored), "--out", str(target)])
    assert rc == 2
    assert "'theta'" in capsys.readouterr().err
    assert not target.exists()


def test_empty_csv_writes_nothing(tmp_path, capsys):
    empty = tmp_path / "empty.csv"
    empty.write_text("# valim 0.1.0 | contour\ntheta,contour_vacuous\n")
    target = tmp_path / "never.png"
    rc = main(["--figure", "1a", "--in", str(empty), "--out", str(target)])
    assert rc == 2
    assert "empty CSV" in capsys.readouterr().err
    assert not target.exists()


def test_missing_input_file(tmp_path, capsys):
    rc = main(["--figure", "3", "--in", str(tmp_path / "ghost.csv"),
               "--out", str(tmp_path / "never.png")])
    assert rc == 2
    assert "ghost.csv" in capsys.readouterr().err


def test_unknown_figure_id(csv_dir, tmp_path, capsys):
    rc = main(["--figure", "9z", "--in", str(csv_dir / "3.csv"),
               "--out", str(tmp_path / "never.png")])
    assert rc == 2
    assert "9z" in capsys.readouterr().err


def test_console_script(csv_dir, tmp_path):
    target = tmp_path / "fig5b.png"
    proc = subprocess.run(
        ["plots", "--figure", "5b", "--in", str(csv_dir / "5b.csv"),
         "--out", str(target)],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert target.read_bytes().startswith(PNG_MAGIC)
