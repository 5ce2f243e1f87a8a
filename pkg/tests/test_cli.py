from __future__ import annotations

import numpy as np
import pytest

from said import Image, ScaleSpec, baseline_downscale, load, save
from said.cli import RunConfig, expand_inputs, main, parse_args, run
from said.pipeline import SaidParams

import conftest


def write_corpus(dir_path, names=("one.ppm", "two.ppm", "three.ppm"), size=24):
    """Deterministic small images plus matching references at quarter size."""
    dir_path.mkdir(parents=True, exist_ok=True)
    ref_dir = dir_path / "refs"
    ref_dir.mkdir(exist_ok=True)
    gen = np.random.default_rng(99)
    for name in names:
        arr = gen.random((size, size, 3))
        img = Image.from_array(arr)
        save(img, dir_path / name)
        ref = baseline_downscale(load(dir_path / name), ScaleSpec(factor=2.0), "bicubic")
        save(ref, ref_dir / name)
    return ref_dir


class TestParseArgs:
    def test_defaults_follow_said_params(self, tmp_path):
        cfg = parse_args(["--scale", "4", "in.png", "--out", str(tmp_path)])
        assert cfg.method == "said"
        assert cfg.scale == 4.0
        assert cfg.params == SaidParams()
        assert cfg.report == "csv"
        assert cfg.jobs == 1

    def test_scale_is_required(self):
        with pytest.raises(SystemExit) as exc:
            parse_args(["in.png"])
        assert exc.value.code != 0

    def test_scale_must_exceed_one(self):
        with pytest.raises(SystemExit) as exc:
            parse_args(["--scale", "0.5", "in.png"])
        assert exc.value.code != 0

    def test_non_integer_scale_accepted(self):
        cfg = parse_args(["--scale", "2.5", "in.png"])
        assert cfg.scale == 2.5

    def test_unknown_flag_is_usage_error(self):
        with pytest.raises(SystemExit) as exc:
            parse_args(["--scale", "4", "--bogus", "in.png"])
        assert exc.value.code != 0

    def test_non_numeric_scale_rejected(self):
        with pytest.raises(SystemExit):
            parse_args(["--scale", "four", "in.png"])

    def test_param_overrides(self):
        cfg = parse_args(
            ["--scale", "3", "--sigma", "2", "--gamma", "1", "--alpha", "0.2",
             "--beta", "0.05", "--antialias", "--method", "lanczos", "in.png"]
        )
        assert cfg.params.sigma == 2.0 and cfg.params.antialias
        assert cfg.method == "lanczos"

    def test_invalid_param_combination_rejected(self):
        with pytest.raises(SystemExit):
            parse_args(["--scale", "4", "--alpha", "3.9", "--beta", "3.9", "in.png"])

    def test_jobs_env_default(self, monkeypatch):
        monkeypatch.setenv("SAID_JOBS", "5")
        cfg = parse_args(["--scale", "4", "in.png"])
        assert cfg.jobs == 5


class TestExpandInputs:
    def test_directory_expansion_sorted(self, tmp_path):
        write_corpus(tmp_path)
        files, errors = expand_inputs((str(tmp_path),))
        assert [f.name for f in files] == ["one.ppm", "three.ppm", "two.ppm"]
        assert errors == []

    def test_missing_path_is_an_error(self, tmp_path):
        files, errors = expand_inputs((str(tmp_path / "ghost.png"),))
        assert files == [] and len(errors) == 1


class TestRun:
    def test_constant_image_with_reference_gives_inf_row(self, tmp_path):
        src = tmp_path / "in"
        src.mkdir()
        img = Image.from_array(np.full((32, 32, 3), 0.5))
        save(img, src / "flat.png")
        refs = tmp_path / "refs"
        refs.mkdir()
        save(Image.from_array(np.full((8, 8, 3), 0.5)), refs / "flat.png")
        out = tmp_path / "out"
        config = RunConfig(
            inputs=(str(src / "flat.png"),),
            method="said",
            scale=4.0,
            output_dir=str(out),
            reference_dir=str(refs),
        )
        result = run(config)
        assert result.ok
        row = result.rows[0]
        assert row.psnr_db == float("inf")
        assert row.ssim == 1.0
        report = result.report_path.read_text()
        assert "inf" in report
        assert (out / "flat_said_x4.png").exists()
        assert (out / "report_metrics.png").exists()

    def test_output_naming_non_integer_scale(self, tmp_path):
        src = tmp_path / "a.ppm"
        save(Image.from_array(np.random.default_rng(1).random((16, 16, 3))), src)
        out = tmp_path / "out"
        config = RunConfig(
            inputs=(str(src),), method="bicubic", scale=2.5, output_dir=str(out)
        )
        result = run(config)
        assert result.ok
        assert (out / "a_bicubic_x2.5.ppm").exists()

    def test_batch_equals_single_invocations(self, tmp_path):
        src = tmp_path / "in"
        ref_dir = write_corpus(src)
        batch_out = tmp_path / "batch"
        batch = run(
            RunConfig(
                inputs=(str(src),),
                method="said",
                scale=2.0,
                output_dir=str(batch_out),
                reference_dir=str(ref_dir),
            )
        )
        assert batch.ok
        assert len(batch.rows) == 3
        for row in batch.rows:
            single_out = tmp_path / f"single_{row.file}"
            single = run(
                RunConfig(
                    inputs=(str(src / row.file),),
                    method="said",
                    scale=2.0,
                    output_dir=str(single_out),
                    reference_dir=str(ref_dir),
                )
            )
            assert single.rows[0].psnr_db == row.psnr_db
            assert single.rows[0].ssim == row.ssim
            batch_bytes = (batch_out / f"{row.file[:-4]}_said_x2{row.file[-4:]}").read_bytes()
            single_bytes = (single_out / f"{row.file[:-4]}_said_x2{row.file[-4:]}").read_bytes()
            assert batch_bytes == single_bytes
        # csv has 3 per-file rows + header + mean
        assert len(batch.report_path.read_text().strip().split("\n")) == 5

    def test_same_schema_across_methods(self, tmp_path):
        src = tmp_path / "in"
        ref_dir = write_corpus(src, names=("x.ppm",))
        header = None
        for method in ("bicubic", "said"):
            result = run(
                RunConfig(
                    inputs=(str(src / "x.ppm"),),
                    method=method,
                    scale=2.0,
                    output_dir=str(tmp_path / method),
                    reference_dir=str(ref_dir),
                )
            )
            lines = result.report_path.read_text().strip().split("\n")
            if header is None:
                header = lines[0]
            assert lines[0] == header == "file,method,scale,psnr_db,ssim"

    def test_missing_reference_continues_with_error(self, tmp_path):
        src = tmp_path / "in"
        write_corpus(src, names=("ok.ppm", "orphan.ppm"))
        (src / "refs" / "orphan.ppm").unlink()
        result = run(
            RunConfig(
                inputs=(str(src / "ok.ppm"), str(src / "orphan.ppm")),
                method="bicubic",
                scale=2.0,
                output_dir=str(tmp_path / "out"),
                reference_dir=str(src / "refs"),
            )
        )
        assert not result.ok
        assert len(result.rows) == 2
        assert result.rows[0].has_metrics
        assert not result.rows[1].has_metrics
        # the downscaled output is still produced for the orphan
        assert (tmp_path / "out" / "orphan_bicubic_x2.ppm").exists()

    def test_reference_dimension_mismatch_is_reported(self, tmp_path):
        src = tmp_path / "in"
        src.mkdir()
        save(Image.from_array(np.random.default_rng(2).random((24, 24, 3))), src / "p.ppm")
        refs = tmp_path / "refs"
        refs.mkdir()
        save(Image.from_array(np.random.default_rng(3).random((5, 5, 3))), refs / "p.ppm")
        result = run(
            RunConfig(
                inputs=(str(src / "p.ppm"),),
                method="bicubic",
                scale=2.0,
                output_dir=str(tmp_path / "out"),
                reference_dir=str(refs),
            )
        )
        assert not result.ok and len(result.errors) == 1

    def test_rerun_is_byte_identical(self, tmp_path):
        src = tmp_path / "in"
        ref_dir = write_corpus(src)
        runs = []
        for tag in ("r1", "r2"):
            out = tmp_path / tag
            run(
                RunConfig(
                    inputs=(str(src),),
                    method="said",
                    scale=2.0,
                    output_dir=str(out),
                    reference_dir=str(ref_dir),
                )
            )
            runs.append(
                {p.name: p.read_bytes() for p in sorted(out.iterdir()) if p.suffix != ".png" or "report" not in p.name}
            )
        assert runs[0].keys() == runs[1].keys()
        for name in runs[0]:
            if name == "report_metrics.png":
                continue  # figure bytes depend on the renderer, not the data
            assert runs[0][name] == runs[1][name], name

    @pytest.mark.parametrize("jobs", [2, 8])
    def test_jobs_do_not_change_results(self, tmp_path, jobs):
        src = tmp_path / "in"
        ref_dir = write_corpus(src)
        outputs = {}
        for tag, n in (("serial", 1), ("parallel", jobs)):
            out = tmp_path / tag
            result = run(
                RunConfig(
                    inputs=(str(src),),
                    method="said",
                    scale=2.0,
                    output_dir=str(out),
                    reference_dir=str(ref_dir),
                    jobs=n,
                )
            )
            assert result.ok
            outputs[tag] = {
                p.name: p.read_bytes()
                for p in sorted(out.iterdir())
                if p.name != "report_metrics.png"
            }
        assert outputs["serial"] == outputs["parallel"]

    def test_trace_writes_stage_files(self, tmp_path):
        src = tmp_path / "in.png"
        save(Image.from_array(conftest.synthetic_photo(32, 32)), src)
        out = tmp_path / "out"
        result = run(
            RunConfig(
                inputs=(str(src),),
                method="said",
                scale=4.0,
                output_dir=str(out),
                trace=True,
            )
        )
        assert result.ok
        base = "in_said_x4"
        for stage in ("edgemap", "blurred", "sharpened", "bicubic", "texture", "blended", "stages"):
            assert (out / f"{base}_{stage}.png").exists(), stage


class TestMain:
    def test_exit_zero_on_success(self, tmp_path, capsys):
        src = tmp_path / "in.png"
        save(Image.from_array(np.full((16, 16, 3), 0.25)), src)
        code = main(["--scale", "2", str(src), "--out", str(tmp_path / "out")])
        assert code == 0
        assert "report" in capsys.readouterr().out

    def test_exit_nonzero_on_missing_input(self, tmp_path, capsys):
        code = main(
            ["--scale", "2", str(tmp_path / "ghost.png"), "--out", str(tmp_path / "out")]
        )
        assert code == 1
        assert "error" in capsys.readouterr().err

    def test_markdown_report(self, tmp_path):
        src = tmp_path / "in"
        ref_dir = write_corpus(src, names=("m.ppm",))
        out = tmp_path / "out"
        code = main(
            [
                "--scale", "2", str(src / "m.ppm"), "--out", str(out),
                "--reference-dir", str(ref_dir), "--report", "markdown",
            ]
        )
        assert code == 0
        assert "| Method | PSNR / SSIM |" in (out / "report.md").read_text()
