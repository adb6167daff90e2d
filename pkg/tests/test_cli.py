import json
import shutil
from pathlib import Path

import pytest

from hextet.cli import main

DATA = Path(__file__).resolve().parent.parent / "data"


@pytest.fixture()
def workdir(tmp_path, store):
    """Copy of the shipped store so CLI stages can run without re-enumerating."""
    out = tmp_path / "out"
    out.mkdir()
    manifest = json.loads((DATA / "manifest.json").read_text())
    shutil.copy(DATA / "manifest.json", out / "manifest.json")
    for name in manifest.values():
        shutil.copy(DATA / name, out / name)
    return out


def test_realize_single_class(workdir, capsys):
    rc = main(["--out", str(workdir), "realize", "--classes", "5_A"])
    assert rc == 0
    out = capsys.readouterr().out
    assert "realized: 1" in out


def test_realize_reruns_are_byte_identical(workdir):
    main(["--out", str(workdir), "realize", "--classes", "6_A", "--seed", "5"])
    manifest = json.loads((workdir / "manifest.json").read_text())
    first = (workdir / manifest["realizations-plain"]).read_bytes()
    first_name = manifest["realizations-plain"]
    main(["--out", str(workdir), "realize", "--classes", "6_A", "--seed", "5"])
    manifest = json.loads((workdir / "manifest.json").read_text())
    assert manifest["realizations-plain"] == first_name
    assert (workdir / manifest["realizations-plain"]).read_bytes() == first


def test_scan_writes_table(workdir, capsys):
    mesh = DATA / "meshes" / "cube-5tet.mesh"
    rc = main(["--out", str(workdir), "scan", str(mesh)])
    assert rc == 0
    manifest = json.loads((workdir / "manifest.json").read_text())
    table = (workdir / manifest["scan-table"]).read_text()
    lines = table.strip().split("\n")
    assert lines[0].startswith("Model,#vert,5,6,7")
    assert lines[1].split(",")[2] == "1"  # one 5-tet pattern


def test_scan_continues_past_malformed_mesh(workdir, tmp_path, capsys):
    bad = tmp_path / "broken.mesh"
    bad.write_text("MeshVersionFormatted 2\nGibberish\n")
    good = DATA / "meshes" / "cube-5tet.mesh"
    rc = main(["--out", str(workdir), "scan", str(bad), str(good)])
    assert rc == 1
    err = capsys.readouterr().err
    assert "broken.mesh" in err
    manifest = json.loads((workdir / "manifest.json").read_text())
    table = (workdir / manifest["scan-table"]).read_text()
    assert "cube-5tet" in table


def test_verify_shipped_artifacts(capsys):
    manifest = json.loads((DATA / "manifest.json").read_text())
    rc = main([
        "--out", str(DATA), "verify",
        str(DATA / manifest["catalog"]),
        str(DATA / manifest["witnesses"]),
        str(DATA / manifest["certificates-convex"]),
    ])
    assert rc == 0
    out = capsys.readouterr().out
    assert "FAIL" not in out


def test_verify_flags_corrupted_coordinate(workdir, tmp_path, capsys):
    manifest = json.loads((workdir / "manifest.json").read_text())
    data = json.loads((workdir / manifest["witnesses"]).read_text())
    data[0]["points"]["1"][0] = "999999/7"
    bad = tmp_path / "corrupt.json"
    bad.write_text(json.dumps(data[:1]))
    rc = main(["--out", str(workdir), "verify", str(bad)])
    assert rc == 1
    assert "FAIL" in capsys.readouterr().out


def test_missing_catalog_is_a_clean_error(tmp_path, capsys):
    rc = main(["--out", str(tmp_path / "fresh"), "realize"])
    assert rc == 2
    assert "catalog" in capsys.readouterr().err


def test_dimacs_dump(workdir, tmp_path):
    dump = tmp_path / "cnf"
    rc = main([
        "--out", str(workdir), "realize", "--classes", "5_A",
        "--dimacs-dump", str(dump),
    ])
    assert rc == 0
    cnf = (dump / "5_A-plain.cnf").read_text()
    assert cnf.splitlines()[1].startswith("c ") or cnf.startswith("c ")
    header = next(l for l in cnf.splitlines() if l.startswith("p cnf"))
    n_vars, n_clauses = map(int, header.split()[2:])
    assert n_vars == 70 + 28 * 15 * 3
    assert len([l for l in cnf.splitlines() if l.endswith(" 0")]) == n_clauses
    side = json.loads((dump / "5_A-plain.vars.json").read_text())
    assert side["basisVariables"]["70"] == [5, 6, 7, 8]


def test_witness_meshes_exported(workdir):
    main(["--out", str(workdir), "realize", "--classes", "5_A"])
    mesh_dir = workdir / "witness-meshes"
    found = sorted(p.name for p in mesh_dir.glob("*.mesh"))
    assert found  # every indexed witness gets a viewable MEDIT file
    from hextet.meshio import load_mesh

    mesh = load_mesh(mesh_dir / found[0])
    assert mesh.n_vertices == 8
