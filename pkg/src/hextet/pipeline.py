"""Stage orchestration with content-addressed, reproducible outputs.

Each stage writes files named <stem>-<sha12>.<ext> under the output
directory and records them in manifest.json; later stages consume only
manifest entries.  With a fixed seed every stage is byte-identical across
reruns.
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from multiprocessing import Pool
from pathlib import Path

from .catalog import (
    CatalogEntry,
    build_catalog,
    catalog_from_json,
    catalog_to_json,
    counts_csv,
)
from .finalpoly import FinalPolynomialCertificate, find_final_polynomial
from .realize import Budget, Realization, admissible_chirotopes, realize_class
from .sat import LimitExceeded
from .triangulation import canonical_key


def _sha12(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()[:12]


class OutputStore:
    def __init__(self, root):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self.manifest_path = self.root / "manifest.json"
        self.manifest = {}
        if self.manifest_path.exists():
            self.manifest = json.loads(self.manifest_path.read_text())

    def put(self, logical: str, stem: str, ext: str, text: str) -> Path:
        data = text.encode("utf-8")
        name = f"{stem}-{_sha12(data)}{ext}"
        path = self.root / name
        path.write_text(text, encoding="utf-8")
        self.manifest[logical] = name
        self._flush()
        return path

    def get(self, logical: str) -> Path | None:
        name = self.manifest.get(logical)
        if name is None:
            return None
        p = self.root / name
        return p if p.exists() else None

    def _flush(self):
        self.manifest_path.write_text(
            json.dumps(self.manifest, indent=1, sort_keys=True) + "\n",
            encoding="utf-8",
        )


# ----- serialization ---------------------------------------------------------


def realization_to_dict(r: Realization) -> dict:
    return {
        "classId": r.class_id,
        "tetCount": len(r.tets),
        "tets": [list(t) for t in r.tets],
        "chirotope": r.chirotope.to_string(),
        "convex": r.convex,
        "hullBoundary": r.hull_boundary,
        "points": {str(v): [str(c) for c in xyz] for v, xyz in sorted(r.points.items())},
    }


def realization_from_dict(d: dict) -> Realization:
    from .chirotope import Chirotope

    return Realization(
        class_id=d["classId"],
        tets=tuple(tuple(t) for t in d["tets"]),
        chirotope=Chirotope.from_string(d["chirotope"]),
        points={
            int(v): tuple(Fraction(c) for c in xyz) for v, xyz in d["points"].items()
        },
        convex=d.get("convex", False),
        hull_boundary=d.get("hullBoundary", False),
    )


# ----- stages ----------------------------------------------------------------


def stage_enumerate(store: OutputStore, max_tets: int = 15, workers: int = 1,
                    sphere_data=None) -> list[CatalogEntry]:
    entries = build_catalog(max_tets=max_tets, workers=workers)
    store.put("catalog", "catalog", ".json", catalog_to_json(entries))
    store.put("catalog-counts", "catalog-counts", ".csv", counts_csv(entries))
    if sphere_data is not None:
        from .spheres import catalog_keys_from_spheres, ingest_sphere_data

        spheres = ingest_sphere_data(sphere_data)
        keys = catalog_keys_from_spheres(spheres)
        ours = {canonical_key(e.tets) for e in entries}
        report = {
            "spheres": len(spheres),
            "classesFromSpheres": len(keys),
            "identicalToCatalog": keys == ours,
        }
        store.put("sphere-crosscheck", "sphere-crosscheck", ".json",
                  json.dumps(report, indent=1) + "\n")
        if not report["identicalToCatalog"]:
            raise AssertionError("sphere-data cross-check diverged from catalog")
    return entries


def load_catalog(store: OutputStore) -> list[CatalogEntry]:
    p = store.get("catalog")
    if p is None:
        raise FileNotFoundError("catalog not built; run the enumerate stage first")
    return catalog_from_json(p.read_text())


def _realize_one(args):
    e, convex, seed, budget = args
    return e.id, realize_class(e.id, e.tets, convex=convex, seed=seed, budget=budget)


def stage_realize(
    store: OutputStore,
    convex: bool = False,
    seed: int = 0,
    budget: Budget | None = None,
    dimacs_dump=None,
    classes: list[str] | None = None,
    workers: int = 1,
) -> dict:
    budget = budget or Budget()
    catalog = load_catalog(store)
    if classes:
        catalog = [e for e in catalog if e.id in set(classes)]
    mode = "convex" if convex else "plain"
    verdicts = {}
    realizations = {}
    certificates = {}
    hull_certificates = {}
    if dimacs_dump is not None:
        for e in catalog:
            _dump_dimacs(e, convex, dimacs_dump)
    if workers > 1:
        with Pool(workers) as pool:
            raw = dict(
                pool.map(_realize_one, [(e, convex, seed, budget) for e in catalog])
            )
    else:
        raw = dict(_realize_one((e, convex, seed, budget)) for e in catalog)
    for e in catalog:
        res = raw[e.id]
        if res.status == "undecided" and convex:
            certs = _certify_class(e, budget)
            if certs is not None:
                certificates[e.id] = certs
                res.status = "certified"
        if (
            convex
            and res.realization is not None
            and not res.realization.hull_boundary
        ):
            # convex-position witness only: certify that no witness can put
            # the boundary on the hull, so the volume defect is structural
            certs = _certify_class(e, budget, hull_boundary=True)
            if certs is not None:
                hull_certificates[e.id] = certs
        verdicts[e.id] = res.status
        if res.realization is not None:
            realizations[e.id] = res.realization

    summary = {
        "mode": mode,
        "seed": seed,
        "classes": len(catalog),
        "realized": sum(1 for s in verdicts.values() if s == "realized"),
        "satInfeasible": sorted(k for k, s in verdicts.items() if s == "sat-infeasible"),
        "certified": sorted(k for k, s in verdicts.items() if s == "certified"),
        "undecided": sorted(k for k, s in verdicts.items() if s == "undecided"),
        "verdicts": dict(sorted(verdicts.items())),
    }
    store.put(f"realize-{mode}-summary", f"realize-{mode}-summary", ".json",
              json.dumps(summary, indent=1, sort_keys=True) + "\n")
    body = json.dumps(
        [realization_to_dict(realizations[k]) for k in sorted(realizations)],
        indent=1,
    ) + "\n"
    store.put(f"realizations-{mode}", f"realizations-{mode}", ".json", body)
    if certificates:
        cert_body = json.dumps(
            [
                {"classId": cid, **c.to_dict()}
                for cid in sorted(certificates)
                for c in certificates[cid]
            ],
            indent=1,
        ) + "\n"
        store.put(f"certificates-{mode}", f"certificates-{mode}", ".json", cert_body)
    if hull_certificates:
        cert_body = json.dumps(
            [
                {"classId": cid, **c.to_dict()}
                for cid in sorted(hull_certificates)
                for c in hull_certificates[cid]
            ],
            indent=1,
        ) + "\n"
        store.put("certificates-hull-boundary", "certificates-hull-boundary",
                  ".json", cert_body)

    geometrical = None
    if not convex:
        geometrical = {}
        for e in catalog:
            if verdicts[e.id] == "realized":
                geometrical[e.tet_count] = geometrical.get(e.tet_count, 0) + 1
        store.put(
            "catalog-counts-geometrical", "catalog-counts", ".csv",
            counts_csv(catalog, geometrical),
        )
    _rebuild_witness_index(store)
    return summary


def _dump_dimacs(e: CatalogEntry, convex: bool, dump_dir):
    from .satenc import dimacs_sidecar, encode_instance, to_dimacs

    dump_dir = Path(dump_dir)
    dump_dir.mkdir(parents=True, exist_ok=True)
    inst = encode_instance(e.tets, convex=convex)
    tag = "convex" if convex else "plain"
    (dump_dir / f"{e.id}-{tag}.cnf").write_text(to_dimacs(inst), encoding="utf-8")
    (dump_dir / f"{e.id}-{tag}.vars.json").write_text(
        json.dumps(dimacs_sidecar(inst), indent=1) + "\n", encoding="utf-8"
    )


def _certify_class(e: CatalogEntry, budget: Budget, hull_boundary: bool = False):
    """Final polynomials for every admissible chirotope of one instance.

    Returns the certificate list only when every chirotope is certified
    non-realizable (which proves the class has no realization of that
    kind); None leaves the question undecided.
    """
    certs = []
    try:
        chis = list(
            admissible_chirotopes(
                e.tets, convex=True, hull_boundary=hull_boundary, limit=4096
            )
        )
    except LimitExceeded:
        return None
    for chi in chis:
        cert = find_final_polynomial(chi)
        if cert is None:
            # the float screen may misjudge feasibility; the class verdict
            # needs the exact simplex answer
            cert = find_final_polynomial(chi, prescreen=False)
        if cert is None:
            return None
        certs.append(cert)
    return certs


def _rebuild_witness_index(store: OutputStore):
    """One preferred witness per class: hull-boundary convex first, then
    any convex, then plain.  Each witness is also exported as an ASCII
    MEDIT mesh for external viewers."""
    from .meshio import write_medit

    best: dict[str, tuple[int, dict]] = {}
    for mode in ("plain", "convex"):
        p = store.get(f"realizations-{mode}")
        if p is None:
            continue
        for d in json.loads(p.read_text()):
            rank = 0 if d.get("hullBoundary") else (1 if d.get("convex") else 2)
            cur = best.get(d["classId"])
            if cur is None or rank < cur[0]:
                best[d["classId"]] = (rank, d)
    body = json.dumps([d for _, d in (best[k] for k in sorted(best))], indent=1) + "\n"
    store.put("witnesses", "witnesses", ".json", body)
    mesh_dir = store.root / "witness-meshes"
    mesh_dir.mkdir(exist_ok=True)
    for cid, (_, d) in sorted(best.items()):
        r = realization_from_dict(d)
        verts = [tuple(float(c) for c in r.points[v]) for v in range(1, 9)]
        tets = [tuple(v - 1 for v in t) for t in r.tets]
        write_medit(mesh_dir / f"{cid}.mesh", verts, tets)


def load_witnesses(store: OutputStore) -> list[Realization]:
    p = store.get("witnesses")
    if p is None:
        return []
    return [realization_from_dict(d) for d in json.loads(p.read_text())]


def stage_scan(store: OutputStore, mesh_paths, out_prefix: str = "scan") -> dict:
    import csv
    import io

    from .meshio import MeshParseError, load_mesh
    from .meshscan import classify_occurrences, find_hexahedra, pattern_table_row, validity_proxy

    catalog = load_catalog(store)
    rows = []
    dumps = []
    errors = {}
    for path in mesh_paths:
        try:
            mesh = load_mesh(path)
        except (MeshParseError, ValueError, OSError) as exc:
            errors[str(path)] = str(exc)
            continue
        occ = find_hexahedra(mesh)
        counts = classify_occurrences(occ, catalog)
        for o in occ:
            o.valid = validity_proxy(o, mesh)
        row = pattern_table_row(counts)
        rows.append((mesh.name or str(path), mesh.n_vertices, row))
        dumps.append(
            {
                "mesh": mesh.name or str(path),
                "vertices": mesh.n_vertices,
                "tets": mesh.n_tets,
                "occurrences": [
                    {
                        "corners": list(o.corners),
                        "tetIds": list(o.tet_ids),
                        "classId": o.class_id,
                        "validityProxy": o.valid,
                    }
                    for o in occ
                ],
                "classCounts": dict(sorted(counts.items())),
            }
        )
    out = io.StringIO()
    w = csv.writer(out)
    w.writerow(["Model", "#vert"] + [str(n) for n in range(5, 16)] + ["Total"])
    for name, nv, row in rows:
        vals = [row[n] for n in range(5, 16)]
        w.writerow([name, nv] + [str(v) for v in vals] + [str(sum(vals))])
    store.put(f"{out_prefix}-table", f"{out_prefix}-table", ".csv", out.getvalue())
    store.put(
        f"{out_prefix}-occurrences", f"{out_prefix}-occurrences", ".json",
        json.dumps(dumps, indent=1) + "\n",
    )
    return {"meshes": len(rows), "errors": errors}


def verify_artifact(path) -> list[tuple[str, bool, str]]:
    """Re-run exact verification on a catalog / realization / certificate
    file; returns (item, ok, detail) rows."""
    from .balls import ball_defect
    from .exactgeom import hull_volume, total_volume
    from .triangulation import boundary_triangles

    text = Path(path).read_text()
    data = json.loads(text)
    rows = []
    if isinstance(data, list) and data and "tetCount" in data[0] and "orbitSize" in data[0]:
        for d in data:
            e = d["id"]
            tets = tuple(tuple(t) for t in d["tets"])
            defect = ball_defect(tets, boundary_triangles(tets))
            rows.append((e, defect is None, "" if defect is None else str(defect)))
        return rows
    if isinstance(data, list) and data and "points" in data[0]:
        for d in data:
            r = realization_from_dict(d)
            ok, detail = r.verify()
            detail_s = "" if ok else str(detail)
            if ok and r.hull_boundary:
                vol_ok = total_volume(r.points, r.tets) == hull_volume(r.points)
                if not vol_ok:
                    ok, detail_s = False, "tet volume sum != hull volume"
            rows.append((d["classId"], ok, detail_s))
        return rows
    if isinstance(data, list) and data and "multipliers" in data[0]:
        for d in data:
            cert = FinalPolynomialCertificate.from_dict(d)
            ok = cert.verify()
            rows.append((d.get("classId", "?"), ok, "" if ok else "Farkas recheck failed"))
        return rows
    raise ValueError(f"unrecognized artifact schema in {path}")
