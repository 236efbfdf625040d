import io
import json
from fractions import Fraction

import pytest

from schottky.cli import EXIT_DOMAIN, EXIT_INPUT, EXIT_OK, load_config, main, parse_point
from schottky.description import SchottkyDescription, build_gamma_ms, build_gamma_s
from schottky.errors import ParseError
from schottky.moebius import QPoint


@pytest.fixture
def write_desc(tmp_path):
    def write(desc, name="desc.txt"):
        path = tmp_path / name
        path.write_text(desc.to_text(), encoding="utf-8")
        return str(path)

    return write


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_build(capsys):
    code, out, _ = run(capsys, "build", "--m", "2", "--s", "2", "--N", "1")
    assert code == EXIT_OK
    assert out == build_gamma_ms(2, 2, 1).to_text()
    assert len(out.splitlines()) == 11


def test_build_genus0(capsys):
    code, out, _ = run(capsys, "build", "--genus0", "--s", "2")
    assert code == EXIT_OK
    assert out.splitlines()[0] == "schottky v1; variant=genus0; s=2"
    assert "2 | f1 | 5 -24 -1 5 | 5 1 | 4 6" in out


def test_build_ffamily(capsys):
    code, out, _ = run(capsys, "build", "--ffamily", "3")
    assert code == EXIT_OK
    assert out.splitlines()[0] == "schottky v1; variant=ffamily; T=3"


def test_build_deterministic(capsys):
    _, first, _ = run(capsys, "build", "--m", "3", "--s", "5", "--N", "2")
    _, second, _ = run(capsys, "build", "--m", "3", "--s", "5", "--N", "2")
    assert first == second


def test_build_bad_parameters(capsys):
    code, out, err = run(capsys, "build", "--m", "1", "--s", "2", "--N", "1")
    assert code == EXIT_DOMAIN
    assert out == ""
    assert "require 1 < m ≤ s" in err


def test_build_missing_parameters(capsys):
    code, _, err = run(capsys, "build", "--m", "2")
    assert code == EXIT_INPUT
    assert err.startswith("error:")


def test_build_to_file(capsys, tmp_path):
    target = tmp_path / "out.txt"
    code, out, _ = run(capsys, "build", "--genus0", "--s", "3", "-o", str(target))
    assert code == EXIT_OK
    assert out == ""
    assert SchottkyDescription.from_text(target.read_text(encoding="utf-8")) == build_gamma_s(3)


def test_validate(capsys, write_desc):
    code, out, _ = run(capsys, "validate", write_desc(build_gamma_s(3)))
    assert code == EXIT_OK
    lines = out.splitlines()
    assert lines[:5] == [f"condition {i}: PASS" for i in range(1, 6)]
    assert "min inversive distance: 23/2" in lines
    assert lines[-1] == "epsilon: 1/4"


def test_validate_fails(capsys, write_desc):
    code, out, _ = run(capsys, "validate", "--epsilon", "2", write_desc(build_gamma_ms(2, 2, 1)))
    assert code == EXIT_DOMAIN
    assert "condition 5: FAIL" in out


def test_validate_json(capsys, write_desc):
    code, out, _ = run(capsys, "validate", "--json", write_desc(build_gamma_ms(2, 2, 1)))
    assert code == EXIT_OK
    document = json.loads(out)
    assert document["passed"] is True
    assert document["min_inversive_distance"] == "7"


def test_validate_stdin(capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO(build_gamma_s(2).to_text()))
    code, out, _ = run(capsys, "validate", "-")
    assert code == EXIT_OK
    assert out.startswith("condition 1: PASS")


def test_malformed_document(capsys, tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("schottky v1; variant=custom\n2 | f1 | -5 24 1 | 5 1 | 4 6\n", encoding="utf-8")
    code, out, err = run(capsys, "validate", str(path))
    assert code == EXIT_INPUT
    assert out == ""
    assert "line 2" in err


def test_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "words", str(tmp_path / "nothing.txt"))
    assert code == EXIT_INPUT
    assert err.startswith("error:")


def test_reduce_point(capsys, write_desc):
    code, out, _ = run(capsys, "reduce", "--point", "5,1/2", write_desc(build_gamma_s(2)))
    assert code == EXIT_OK
    assert out == "-5, 2 ; word: 2\n"


def test_reduce_point_in_domain(capsys, write_desc):
    _, out, _ = run(capsys, "reduce", "--point", "0,10", write_desc(build_gamma_s(2)))
    assert out == "0, 10 ; word: -\n"


def test_reduce_sample(capsys, write_desc):
    path = write_desc(build_gamma_ms(2, 2, 2))
    code, out, _ = run(capsys, "reduce", "--sample", "5", "--seed", "3", path)
    assert code == EXIT_OK
    lines = out.splitlines()
    assert len(lines) == 5
    assert all(" -> " in line and " ; word: " in line for line in lines)
    _, again, _ = run(capsys, "reduce", "--sample", "5", "--seed", "3", path)
    assert again == out


@pytest.mark.parametrize("argv", [[], ["--point", "1,0"], ["--point", "1"]])
def test_reduce_bad_input(capsys, write_desc, argv):
    code, _, _ = run(capsys, "reduce", *argv, write_desc(build_gamma_s(2)))
    assert code == EXIT_INPUT


def test_reduce_budget(capsys, write_desc):
    # f1^-1(f1^-1(10i)), two steps away from F
    point = "60760/12401,10/12401"
    code, _, err = run(
        capsys, "reduce", "--point", point, "--max-iters", "1", write_desc(build_gamma_s(2))
    )
    assert code == EXIT_DOMAIN
    assert "did not reach F" in err


def test_words(capsys, write_desc):
    code, out, _ = run(capsys, "words", "--max-len", "2", write_desc(build_gamma_s(2)))
    assert code == EXIT_OK
    assert out.splitlines() == ["-", "-2", "2", "-2,-2", "2,2"]


def test_words_too_long(capsys, write_desc):
    code, _, err = run(capsys, "words", "--max-len", "9", write_desc(build_gamma_s(2)))
    assert code == EXIT_DOMAIN
    assert "allow_long" in err


def test_topology(capsys, write_desc):
    code, out, _ = run(capsys, "topology", write_desc(build_gamma_s(4)))
    assert code == EXIT_OK
    lines = out.splitlines()
    assert lines[0] == "r=3 b=4 g=0"
    assert lines[1].split() == ["N", "r", "b", "g", "genus_1", "genus_2", "genus_3", "genus_4"]


def test_topology_json(capsys, write_desc):
    code, out, _ = run(capsys, "topology", "--json", write_desc(build_gamma_ms(2, 2, 1)))
    assert code == EXIT_OK
    document = json.loads(out)
    assert document["signature"] == {"r": 5, "b": 2, "g": 2, "chi": -4}
    assert document["level"] == 0
    assert document["table"] == [
        {"N": 1, "r": 5, "b": 2, "g": 2, "genus_1": 1, "genus_2": 1}
    ]


def test_topology_sweep(capsys, write_desc):
    code, out, _ = run(capsys, "topology", "--sweep", "3", write_desc(build_gamma_ms(2, 2, 1)))
    assert code == EXIT_OK
    rows = out.splitlines()[2:]
    assert [row.split()[3] for row in rows] == ["2", "4", "6"]


def test_topology_sweep_needs_gamma_ms(capsys, write_desc):
    code, _, err = run(capsys, "topology", "--sweep", "3", write_desc(build_gamma_s(3)))
    assert code == EXIT_INPUT
    assert "--sweep" in err


def test_render(capsys, write_desc, tmp_path):
    target = tmp_path / "picture.svg"
    code, _, _ = run(
        capsys,
        "render",
        "--layers",
        "circles,intervals,box:1",
        "-o",
        str(target),
        write_desc(build_gamma_ms(2, 2, 1)),
    )
    assert code == EXIT_OK
    assert target.read_text(encoding="utf-8").count('class="circle"') == 10


def test_render_unknown_layer(capsys, write_desc):
    code, _, err = run(capsys, "render", "--layers", "hexagons", write_desc(build_gamma_s(2)))
    assert code == EXIT_INPUT
    assert "unknown layer" in err


def test_config_defaults(capsys, write_desc, tmp_path):
    config = tmp_path / "schottky.cfg"
    config.write_text("# defaults\nepsilon = 2\nmax-len = 3\n", encoding="utf-8")
    path = write_desc(build_gamma_ms(2, 2, 1))

    code, _, _ = run(capsys, "--config", str(config), "validate", path)
    assert code == EXIT_DOMAIN
    code, _, _ = run(capsys, "--config", str(config), "validate", "--epsilon", "1/4", path)
    assert code == EXIT_OK

    _, out, _ = run(capsys, "--config", str(config), "words", write_desc(build_gamma_s(2), "s2.txt"))
    assert len(out.splitlines()) == 7


def test_config_missing(capsys, tmp_path):
    code, _, err = run(capsys, "--config", str(tmp_path / "none.cfg"), "build", "--genus0", "--s", "2")
    assert code == EXIT_INPUT
    assert err.startswith("error:")


def test_load_config(tmp_path):
    config = tmp_path / "schottky.cfg"
    config.write_text("N = 4\nallow-long = yes\njson = off\n", encoding="utf-8")
    assert load_config(str(config)) == {"N": "4", "allow_long": True, "json": False}


def test_parse_point():
    assert parse_point("-1/2,3") == QPoint(Fraction(-1, 2), 3)
    assert parse_point("5,1/2").re == 5
    with pytest.raises(ParseError):
        parse_point("5;1")
    with pytest.raises(ParseError):
        parse_point("5,-1")
