"""Runs every subcommand once and validates its JSON against schemas/."""
import json
import pathlib
import subprocess
import sys

import jsonschema

RUNS = [
    ["length", "--surface", "0,3", "--word", "aB"],
    ["length", "--surface", "1,1", "--multicurve", "1/0,2/3", "--aggregate", "max"],
    ["systole", "--surface", "2,0", "--budget", "4"],
    ["intersect", "--surface", "1,1", "--word", "aab", "--word", "abb"],
    ["intersect", "--surface", "1,1", "--multicurve", "1/2,3/1"],
    ["orbit-min", "--surface", "1,1", "--multicurve", "5/7"],
    ["orbit-min", "--surface", "1,1", "--multicurve", "0/1", "--objective", "length", "--lengths", "0.1"],
    ["criterion", "--surface", "1,1", "--family", "1/0,0/1;2/3"],
    ["pinch-probe", "--surface", "1,1", "--multicurve", "1/0,0/1", "--t-steps", "6"],
    ["bers", "--surface", "2,0"],
    ["homology-basis", "--surface", "2,0", "--pants-type", "dumbbell"],
    ["thick-sample", "--surface", "1,1", "--count", "3", "--seed", "4"],
    ["empirical-k", "--surface", "1,1", "--multicurve", "1/0", "--count", "3"],
    ["selftest"],
]


def main():
    exe, schema_dir = sys.argv[1], pathlib.Path(sys.argv[2])
    failures = 0
    for args in RUNS:
        proc = subprocess.run([exe, *args], capture_output=True, text=True)
        name = " ".join(args)
        if proc.returncode not in (0, 3):
            print(f"FAIL {name}: exit {proc.returncode}: {proc.stderr.strip()}")
            failures += 1
            continue
        schema = json.loads((schema_dir / f"{args[0]}.schema.json").read_text())
        try:
            jsonschema.validate(json.loads(proc.stdout), schema)
            print(f"ok   {name}")
        except jsonschema.ValidationError as e:
            print(f"FAIL {name}: {e.message}")
            failures += 1
    covered = {a[0] for a in RUNS}
    missing = {p.name.removesuffix(".schema.json") for p in schema_dir.glob("*.schema.json")} - covered
    if missing:
        print(f"FAIL schemas without a run: {sorted(missing)}")
        failures += 1
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
