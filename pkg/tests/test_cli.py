from __future__ import annotations

import os
import subprocess
import sys
import xml.etree.ElementTree as ET

import pytest

from conftest import OVERLAP_1XI
from hatmarkov import cli


def run(*args, env=None, stdin=None):
    full = dict(os.environ, **(env or {}))
    return subprocess.run([sys.executable, "-m", "hatmarkov", *args], capture_output=True, text=True,
                          env=full, input=stdin, timeout=600)


@pytest.fixture(scope="module")
def config_file(tmp_path_factory):
    path = tmp_path_factory.mktemp("cli") / "c.txt"
    r = run("generate", "--seed", "3", "--radius", "12", "-o", str(path))
    assert r.returncode == 0, r.stderr
    return path


def test_generate_is_deterministic(config_file, tmp_path):
    other = tmp_path / "d.txt"
    assert run("generate", "--seed", "3", "--radius", "12", "-o", str(other)).returncode == 0
    assert other.read_bytes() == config_file.read_bytes()


def test_generate_to_stdout():
    r = run("generate", "--offset", "1/3,0,2/7,0", "--radius", "2")
    assert r.returncode == 0
    assert r.stdout.startswith("hatmarkov-configuration 1\noffset 1/3 0 2/7 0\n")


def test_non_generic_offset_exit_code():
    r = run("generate", "--offset", "0,0,1,0", "--radius", "2")
    assert r.returncode == cli.EXIT_NONGENERIC
    assert "worm point 0 0" in r.stderr


def test_verify_passes(config_file):
    r = run("verify", str(config_file))
    assert r.returncode == 0, r.stdout
    assert "overlaps 0" in r.stdout and "gaps 0" in r.stdout
    assert "excluded_pairs 0" in r.stdout


def test_verify_detects_damage(config_file, tmp_path):
    lines = config_file.read_text().splitlines()
    body = lines[5:]
    k = next(i for i, ln in enumerate(body) if ln.split()[:2] == ["0", "0"])
    a, b, l = body[k].split()
    body[k] = f"{a} {b} {0 if l != '0' else 1}"
    bad = tmp_path / "bad.txt"
    bad.write_text("\n".join(lines[:5] + body) + "\n")
    assert run("verify", str(bad)).returncode == cli.EXIT_MISMATCH


def test_verify_missing_file(tmp_path):
    assert run("verify", str(tmp_path / "nope.txt")).returncode == cli.EXIT_IO


def test_verify_garbage(tmp_path):
    p = tmp_path / "g.txt"
    p.write_text("not a configuration\n")
    assert run("verify", str(p)).returncode == cli.EXIT_IO


def test_bad_arguments():
    assert run("generate", "--offset", "1,2").returncode == cli.EXIT_IO
    assert run("frobnicate").returncode == cli.EXIT_IO
    assert run("pairs", "--offset", "one").returncode == cli.EXIT_IO


def test_invalid_worker_count():
    r = run("pairs", "--offset", "2", env={"HATMARKOV_WORKERS": "zero"})
    assert r.returncode == cli.EXIT_IO
    assert "HATMARKOV_WORKERS" in r.stderr


def test_geometric_pairs():
    r = run("pairs", "--geometric", "--offset", "2", env={"HATMARKOV_WORKERS": "1"})
    assert r.returncode == 0, r.stdout + r.stderr
    rows = [ln.split() for ln in r.stdout.splitlines() if not ln.startswith("#")]
    assert {(int(a), int(b)) for a, b, _, _ in rows} == {(-1, 4), (1, -4)}
    assert all(status == "empty" for *_, status in rows)


def test_stats():
    r = run("stats", "--seed", "1", "--radius", "30")
    assert r.returncode == 0
    fields = dict(ln.split(maxsplit=1) for ln in r.stdout.splitlines() if not ln.startswith(("#", "+", "-")))
    assert abs(float(fields["white"]) - 0.25) < 0.01
    assert fields["component"] == "positive"


def test_minus_generation_verifies(tmp_path):
    p = tmp_path / "m.txt"
    assert run("generate", "--seed", "5", "--radius", "10", "--minus", "-o", str(p)).returncode == 0
    assert "partition minus" in p.read_text()
    r = run("verify", str(p))
    assert r.returncode == 0
    assert "component negative" in r.stdout


@pytest.mark.parametrize("what", ["blue", "red", "partition"])
def test_render_svg(what, tmp_path):
    p = tmp_path / f"{what}.svg"
    assert run("render", what, "--depth", "3", "-o", str(p)).returncode == 0
    root = ET.parse(p).getroot()
    assert root.tag.endswith("svg") and root.get("version") == "1.1"


def test_render_config(config_file, tmp_path):
    p = tmp_path / "c.svg"
    assert run("render", "config", str(config_file), "--kites", "--labels", "-o", str(p)).returncode == 0
    ET.parse(p)
    assert run("render", "config").returncode == cli.EXIT_IO


@pytest.mark.parametrize("text, expected", [("1", (1, 0)), ("2", (2, 0)), ("1+xi", (1, 1)), ("xi", (0, 1)),
                                            ("-xi", (0, -1)), ("3-2xi", (3, -2)), ("4,-1", (4, -1))])
def test_parse_grid_offset(text, expected):
    assert cli.parse_grid_offset(text) == expected
    assert cli.parse_grid_offset(cli.format_grid(expected)) == expected


def test_generate_example_is_byte_identical():
    a = run("generate", "--offset", "1/3,0,1/7,0", "--radius", "5")
    b = run("generate", "--offset", "1/3,0,1/7,0", "--radius", "5")
    assert a.returncode == 0
    assert a.stdout == b.stdout


def test_overlap_table_at_one_plus_xi():
    r = run("pairs", "--geometric", "--offset", "1+xi")
    assert r.returncode == 0, r.stderr
    rows = [ln.split() for ln in r.stdout.splitlines() if ln and not ln.startswith("#")]
    assert {(int(i), int(j)) for i, j, *_ in rows} == OVERLAP_1XI
    assert all(g == "overlap" and c == "empty" for _, _, g, c in rows)
