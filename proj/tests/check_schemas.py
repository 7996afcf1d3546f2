"""Validate the cstar --json outputs against the schemas in schemas/."""

import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema
import referencing

cstar, schema_dir, fixtures = sys.argv[1], pathlib.Path(sys.argv[2]), pathlib.Path(sys.argv[3])

resources = []
for path in schema_dir.glob("*.schema.json"):
    doc = json.loads(path.read_text())
    jsonschema.Draft202012Validator.check_schema(doc)
    resources.append((doc["$id"], referencing.Resource.from_contents(doc)))
registry = referencing.Registry().with_resources(resources)
base = resources[0][0].rsplit("/", 1)[0] + "/"


def validate(name, doc, what):
    validator = jsonschema.Draft202012Validator({"$ref": base + name + ".schema.json"}, registry=registry)
    errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.path))
    for e in errors:
        print(f"FAIL {what}: {list(e.path)}: {e.message[:200]}")
    return not errors


def cli(*args, env=None):
    run = subprocess.run([cstar, *args, "--json"], capture_output=True, text=True, env=env)
    return json.loads(run.stdout)


ok = True
with tempfile.TemporaryDirectory() as tmp:
    tmp = pathlib.Path(tmp)
    (tmp / "p2.json").write_text('{"rank":2,"rays":[[1,0],[0,1],[-1,-1]],"max_cones":[[0,1],[1,2],[0,2]]}')
    (tmp / "h.json").write_text('{"coeffs":[0,0,1]}')
    (tmp / "seg.json").write_text('{"rank":2,"vertices":[[0,0],[1,0]]}')
    (tmp / "pt.json").write_text('{"rank":2,"vertices":[[0,0]]}')
    cases = [
        ("bordism", ["bordism", "--type", "1,1,3"]),
        ("bordism", ["bordism", "--type", "2,1,5"]),
        ("atiyah", ["atiyah", "--type", "1,2,5", "--emit", str(tmp / "suite")]),
        ("atiyah", ["atiyah", "--sweep"]),
        ("bb_report", ["bb", "--fan", str(tmp / "p2.json"), "--v", "1,0", "--divisor", str(tmp / "h.json")]),
        ("bb_report", ["bb", "--fan", str(tmp / "p2.json"), "--v", "1,1"]),
        ("drum", ["drum", "--pminus", str(tmp / "seg.json"), "--pplus", str(tmp / "pt.json")]),
        ("drum", ["drum", "--index", "1,2"]),
        ("adjoint", ["adjoint", "--type", "E7", "--node", "7"]),
        ("adjoint", ["adjoint", "--type", "G2", "--node", "1"]),
        ("adjoint", ["adjoint", "--type", "E6", "--short"]),
        ("bw3_certificate", ["bw3", "--type", "C3"]),
        ("bw3_certificate", ["bw3", "--type", "E7"]),
        ("tables", ["tables"]),
        ("selftest", ["selftest", "--seed", "2"]),
    ]
    env = {"CSTAR_SWEEP": "3,4,0"}
    for name, args in cases:
        ok &= validate(name, cli(*args, env=env), " ".join(args))
    manifest = json.loads((tmp / "suite" / "manifest.json").read_text())
    ok &= validate("suite_manifest", manifest, "manifest.json")
    for entry in manifest["fans"]:
        ok &= validate("fan", json.loads((tmp / "suite" / entry["file"]).read_text()), entry["file"])
    for name in ["p2", "h", "seg"]:
        ok &= validate({"p2": "fan", "h": "divisor", "seg": "polytope"}[name], json.loads((tmp / f"{name}.json").read_text()), name)
ok &= validate("tables", json.loads((fixtures / "adjoint_tables.json").read_text()), "fixture")

print("all outputs match their schemas" if ok else "schema mismatches")
sys.exit(0 if ok else 1)
