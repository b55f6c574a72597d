"""Runs each subcommand on a small config and validates the JSON report."""
import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema

cli, schema_dir = sys.argv[1], pathlib.Path(sys.argv[2])
work = pathlib.Path(tempfile.mkdtemp())
csv = work / "u.csv"
with csv.open("w") as f:
    f.write("x1,t,value\n")
    for k in range(7):
        for i in range(9):
            x, t = i / 8, k / 6
            f.write(f"{x},{t},{x ** 4 + t * x}\n")

runs = {
    "eigen": ["--lmax", "3"],
    "decay": ["--u0", "single:l=2,m=0", "--tmax", "1", "--samples", "20"],
    "probe": ["--instances", "2", "--T", "1,2", "--lmax", "2"],
    "interp": ["--calibration", "20", "--test", "5", "--nx", "21", "--nt", "21"],
    "norms": ["--input", str(csv)],
    "cover": ["--V", "-1,1", "--Vp", "-2,2", "--T0", "1", "--T", "10", "--audit", "500"],
    "reflect": ["--trials", "5", "--spacing", "0.1"],
    "oracle1d": ["--points", "101", "--dt", "1e-3", "--tol", "1e-2", "--bc-tol", "1e-1"],
}

failures = 0
for command, args in runs.items():
    schema = json.loads((schema_dir / f"{command}.schema.json").read_text())
    outs = []
    for rep in range(2):
        out = work / f"{command}{rep}.json"
        proc = subprocess.run([cli, command, *args, "--out", str(out)], capture_output=True, text=True)
        if proc.returncode not in (0, 2):
            print(f"{command}: exit {proc.returncode}: {proc.stderr}")
            failures += 1
            break
        outs.append(out.read_bytes())
    if len(outs) != 2:
        continue
    if outs[0] != outs[1]:
        print(f"{command}: reports differ between identical runs")
        failures += 1
    report = json.loads(outs[0])
    try:
        jsonschema.validate(report, schema)
    except jsonschema.ValidationError as e:
        print(f"{command}: schema violation: {e.message} at {list(e.absolute_path)}")
        failures += 1
        continue
    if "seed" not in report["config"]:
        print(f"{command}: config lacks seed")
        failures += 1
    print(f"{command}: ok ({report['status']})")

# exit codes
def code(*args):
    return subprocess.run([cli, *args], capture_output=True).returncode

expect = [
    (("oracle1d", "--points", "101", "--dt", "1e-3", "--tol", "1e-12", "--out", str(work / "v.json")), 2),
    (("bogus",), 1),
    (("norms", "--input", str(work / "missing.csv")), 1),
    (("decay", "--u0", "single:l=2,m=1"), 1),
    (("eigen", "--lmax", "2", "--format", "csv", "--out", str(work / "e.csv")), 0),
]
for args, want in expect:
    got = code(*args)
    if got != want:
        print(f"{' '.join(args)}: exit {got}, expected {want}")
        failures += 1
if not (work / "v.json").exists():
    print("violation run did not write its report")
    failures += 1
lines = (work / "e.csv").read_text().splitlines()
if not (lines[0].startswith("# {") and lines[1] == "l,m,lambda,normalization" and len(lines) == 8):
    print("eigen csv malformed")
    failures += 1

sys.exit(1 if failures else 0)
