import io
import subprocess
import sys

import pytest

from duelqr import raster_io
from duelqr.cli import main
from duelqr.composer import ComposeConfig, compose
from duelqr.payloads import NASA_URL, NSA_URL
from duelqr.scan_sim import verify_dual
from duelqr.structure_map import StructureMode, stolen_data_census


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_dual_then_verify(tmp_path):
    path = str(tmp_path / "dual.pbm")
    code, out, _ = run("dual", "--msg1", NSA_URL.decode(), "--msg2", NASA_URL.decode(), "--out", path)
    assert code == 0 and "wrote" in out
    code, out, _ = run("verify", "--in", path, "--trials", "20")
    assert code == 0
    assert out.splitlines()[-1] == "PASS"


def test_dual_matches_library(tmp_path):
    path = tmp_path / "lib.pgm"
    run("dual", "--msg1", "alpha", "--msg2", "beta", "--orient", "h", "--mode", "tight",
        "--scale", "10", "--out", str(path))
    expected = compose(b"alpha", b"beta", config=ComposeConfig(10, "H", StructureMode.TIGHT))
    assert path.read_bytes() == raster_io.write(expected, "pgm")


def test_verify_text_matches_library(tmp_path):
    path = str(tmp_path / "v.pbm")
    run("dual", "--msg1", "alpha", "--msg2", "beta", "--out", path)
    _, out, _ = run("verify", "--in", path, "--trials", "5")
    report = verify_dual(raster_io.load(path))
    assert out.startswith(report.to_text())


def test_encode_then_sample(tmp_path):
    path = str(tmp_path / "hello.pbm")
    assert run("encode", "--msg", "hello", "--out", path)[0] == 0
    code, out, _ = run("sample", "--in", path)
    assert code == 0 and out == "hello\n"


def test_message_files(tmp_path):
    (tmp_path / "a.bin").write_bytes(b"\x00\xffbinary")
    (tmp_path / "b.bin").write_bytes(b"other")
    path = str(tmp_path / "f.pbm")
    assert run("dual", "--msg1-file", str(tmp_path / "a.bin"), "--msg2-file", str(tmp_path / "b.bin"),
               "--out", path)[0] == 0
    code, out, _ = run("verify", "--in", path, "--msg1-file", str(tmp_path / "a.bin"),
                       "--msg2", "other", "--trials", "5")
    assert code == 0


def test_oversized_message_exits_2(tmp_path):
    code, _, err = run("dual", "--msg1", "a", "--msg2", "\x7f" * 65, "--out", str(tmp_path / "x.pbm"))
    assert code == 2 and "CapacityExceeded" in err


def test_missing_file_names_path(tmp_path):
    missing = str(tmp_path / "nope.pbm")
    code, _, err = run("sample", "--in", missing)
    assert code == 2 and missing in err


def test_bad_flag_exits_2(capsys):
    assert run("dual", "--orient", "x")[0] == 2


def test_verify_wrong_messages_exits_1(tmp_path):
    path = str(tmp_path / "w.pbm")
    run("dual", "--msg1", "alpha", "--msg2", "beta", "--out", path)
    code, out, _ = run("verify", "--in", path, "--msg1", "beta", "--msg2", "alpha", "--trials", "5")
    assert code == 1 and out.splitlines()[-1] == "FAIL"


def test_matrix_decode(tmp_path):
    matrix = tmp_path / "m.txt"
    run("encode", "--msg", "fixture", "--version", "3", "--ec", "Q", "--mask", "5",
        "--matrix-out", str(matrix), "--out", str(tmp_path / "m.pbm"))
    assert matrix.read_text().startswith("version 3 ec Q mask 5")
    code, out, _ = run("decode", "--matrix", str(matrix))
    assert code == 0 and out == "fixture\n"


def test_census():
    code, out, _ = run("census")
    assert code == 0
    assert out == "".join(stolen_data_census(7, "H", m).to_text() + "\n" for m in StructureMode)


def test_budget_exceeded_exits_2(tmp_path):
    code, _, err = run("dual", "--msg1", "a", "--msg2", "b", "--version", "1", "--out", str(tmp_path / "x.pbm"))
    assert code == 2 and "BudgetExceeded" in err


def test_figure(tmp_path):
    pytest.importorskip("matplotlib")
    path = str(tmp_path / "d.pbm")
    fig = tmp_path / "sweep.png"
    run("dual", "--msg1", "alpha", "--msg2", "beta", "--out", path)
    code, out, _ = run("verify", "--in", path, "--trials", "5", "--figure", str(fig))
    assert code == 0 and fig.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_module_entry_point(tmp_path):
    path = str(tmp_path / "s.pbm")
    subprocess.run([sys.executable, "-m", "duelqr", "encode", "--msg", "sub", "--out", path], check=True)
    result = subprocess.run([sys.executable, "-m", "duelqr", "sample", "--in", path],
                            capture_output=True, check=True)
    assert result.stdout == b"sub\n"
