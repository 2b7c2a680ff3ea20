"""Run CLI subcommands and validate their JSON against the shipped schemas."""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

import jsonschema


def main() -> int:
    cli, schema_dir, data_dir = sys.argv[1], Path(sys.argv[2]), Path(sys.argv[3])
    report = json.loads((schema_dir / "report.schema.json").read_text())
    checkpoint = json.loads((schema_dir / "checkpoint.schema.json").read_text())
    for s in (report, checkpoint):
        jsonschema.Draft202012Validator.check_schema(s)
    rv = jsonschema.Draft202012Validator(report)
    cv = jsonschema.Draft202012Validator(checkpoint)

    failures = []
    with tempfile.TemporaryDirectory() as tmp:
        cp = Path(tmp) / "cp.json"
        runs = {
            "report": ["report"],
            "roots": ["roots", "--dataset", "S2MINPOLY", "--p", "79"],
            "series": ["--timings", "series", "--max-a", "8", "--max-b", "2"],
            "verify-family": ["verify-family", "--primes", "79", "--samples", "2"],
            "fiber-sing": ["fiber-sing", "--dataset", "Y0_C20", "--p", "79", "--u0", "1", "--u1", "1"],
            "verify-surface": ["verify-surface", "--dataset", "Y0_C20", "--samples", "5", "--fibers", "2"],
            "lift-fail": ["lift", "--dataset", "S2MINPOLY", "--p", "79", "--root", "13"],
            "scan": ["scan", "--config", str(data_dir / "scan" / "toy_f5.json"), "--shards", "3",
                     "--checkpoint", str(cp)],
        }
        for name, args in runs.items():
            proc = subprocess.run([cli, *args], capture_output=True, text=True)
            if proc.returncode not in (0, 1):
                failures.append(f"{name}: exit {proc.returncode}: {proc.stderr.strip()}")
                continue
            errs = sorted(rv.iter_errors(json.loads(proc.stdout)), key=str)
            failures += [f"{name}: {e.message}" for e in errs]
            print(f"{name}: {'ok' if not errs else 'invalid'}")

        cdoc = json.loads(cp.read_text())
        errs = list(cv.iter_errors(cdoc))
        failures += [f"checkpoint: {e.message}" for e in errs]
        print(f"checkpoint: {'ok' if not errs else 'invalid'}")

        # negative controls
        bad = dict(cdoc, completed_shards=[0, 0])
        if cv.is_valid(bad):
            failures.append("duplicate completed shards accepted")
        if rv.is_valid({"provenance": {}, "status": "pass", "checks": [], "results": {}}):
            failures.append("empty provenance accepted")

    for f in failures:
        print("FAIL", f)
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
