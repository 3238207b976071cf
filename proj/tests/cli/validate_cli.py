"""Runs every subcommand of the biphoton CLI and validates its output.

Checks: JSON against the shipped schemas, exit codes, the error line on
stderr, and bit-identical output for identical inputs.
"""

import argparse
import json
import os
import subprocess
import sys
import tempfile
from pathlib import Path

import jsonschema

failures = []


def check(cond, what):
    print(("PASS " if cond else "FAIL ") + what)
    if not cond:
        failures.append(what)


def run(cli, args, env=None):
    return subprocess.run([cli, *args], capture_output=True, text=True, env=env)


def validate(doc, schema_dir, name, what):
    schema = json.loads((schema_dir / f"{name}.schema.json").read_text())
    try:
        jsonschema.validate(doc, schema, cls=jsonschema.Draft202012Validator)
        check(True, f"{what} matches {name} schema")
    except jsonschema.ValidationError as e:
        check(False, f"{what} matches {name} schema: {e.message} at {list(e.absolute_path)}")


def run_json(cli, args, schema_dir, name, env=None):
    r = run(cli, args, env)
    check(r.returncode == 0, f"{' '.join(args[:1])} exits 0 (stderr: {r.stderr.strip()})")
    if r.returncode != 0:
        return None, r
    doc = json.loads(r.stdout)
    validate(doc, schema_dir, name, " ".join(args[:3]))
    return doc, r


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--cli", required=True)
    ap.add_argument("--repo", required=True)
    a = ap.parse_args()
    cli, repo = a.cli, Path(a.repo)
    schemas = repo / "schemas"

    with tempfile.TemporaryDirectory() as tmp:
        tmp = Path(tmp)

        doc, _ = run_json(cli, ["materials", "--material", "BBO", "--ray", "e", "--theta-deg", "42.35",
                                "--lambda-nm", "400"], schemas, "materials")
        run_json(cli, ["materials", "--list"], schemas, "materials")
        dump, _ = run_json(cli, ["materials", "--dump-database"], schemas, "materials-db")
        bundled = json.loads((repo / "core" / "data" / "materials.json").read_text())
        validate(bundled, schemas, "materials-db", "bundled materials.json")
        check(dump == bundled, "bundled materials.json equals the builtin database")

        # Environment override of the database: a modified copy changes n.
        custom = json.loads(json.dumps(bundled))
        for m in custom["materials"]:
            if m["id"] == "BBO":
                m["ordinary"]["A"] += 0.1
        (tmp / "custom.json").write_text(json.dumps(custom))
        env = dict(os.environ, BIPHOTON_MATERIALS_PATH=str(tmp / "custom.json"))
        args = ["materials", "--material", "BBO", "--ray", "o", "--lambda-nm", "800"]
        base = json.loads(run(cli, args).stdout)["n"]
        over = json.loads(run(cli, args, env).stdout)["n"]
        check(over > base + 0.01, "BIPHOTON_MATERIALS_PATH overrides the bundled database")

        cfg = repo / "configs" / "kdp_asymmetric.json"
        validate(json.loads(cfg.read_text()), schemas, "analyze-config", "kdp_asymmetric.json")
        validate(json.loads((repo / "configs" / "ppktp_gvm.json").read_text()), schemas, "analyze-config",
                 "ppktp_gvm.json")
        out = tmp / "kdp"
        doc, r1 = run_json(cli, ["analyze", "--config", str(cfg), "--out", str(out)], schemas, "analyze")
        if doc:
            for f in ("jsa.bjsa", "jsa.csv", "jsi.csv", "jti.csv", "report.json"):
                check((out / f).is_file(), f"analyze writes {f}")
            check(doc["schmidt"]["K"] < 1.1, "analyze reports K < 1.1 for the KDP source")
            r2 = run(cli, ["analyze", "--config", str(cfg), "--out", str(out)])
            check(r1.stdout == r2.stdout, "identical config gives bit-identical JSON")

            s1, _ = run_json(cli, ["schmidt", "--input", str(out / "jsa.bjsa"), "--modes-csv",
                                   str(tmp / "modes.csv")], schemas, "schmidt")
            s2, _ = run_json(cli, ["schmidt", "--input", str(out / "jsa.csv")], schemas, "schmidt")
            if s1 and s2:
                check(abs(s1["K"] - doc["schmidt"]["K"]) < 1e-9, "schmidt on BJSA reproduces analyze K")
                check(abs(s1["K"] - s2["K"]) < 1e-9, "schmidt on CSV equals schmidt on BJSA")
                check((tmp / "modes.csv").is_file(), "schmidt writes the mode CSV")
            run_json(cli, ["schmidt", "--input", str(out / "jsa.bjsa"), "--filter", "gaussian",
                           "--filter-center-nm", "830", "--filter-width-nm", "2"], schemas, "schmidt")

        run_json(cli, ["design-gvm", "--material", "KTP"], schemas, "design-gvm")
        run_json(cli, ["design-gvm", "--material", "BBO", "--lambda-nm", "1514", "--length-mm", "5",
                       "--pump-fwhm-nm", "2"], schemas, "design-gvm")
        run_json(cli, ["design-asymmetric", "--material", "KDP", "--lambda-nm", "830", "--length-mm", "20",
                       "--pump-fwhm-nm", "5", "--out", str(tmp / "asym")], schemas, "design-asymmetric")
        run_json(cli, ["design-assembly", "--crystal", "BBO", "--spacer", "calcite", "--lambda-nm", "800",
                       "--n-crystals", "10", "--m", "10", "--export-grid", str(tmp / "asm"), "--grid-n", "128"],
                 schemas, "design-assembly")

        repro = tmp / "repro"
        doc, _ = run_json(cli, ["paper-repro", "--out", str(repro)], schemas, "paper-repro")
        check((repro / "summary.txt").is_file() and (repro / "summary.json").is_file(),
              "paper-repro writes the summary table")
        if doc:
            check(doc["total"] == 6 and len(doc["criteria"]) == 6, "paper-repro covers all six criteria")

        # Error paths: exit code and one-line error JSON on stderr.
        for args, code, what in [
            (["design-asymmetric", "--material", "KDP"], 2, "missing required flag"),
            (["materials", "--material", "KDP", "--ray", "o", "--lambda-nm", "10000"], 2, "out-of-range wavelength"),
            (["design-asymmetric", "--material", "BBO", "--lambda-nm", "800", "--length-mm", "20",
              "--pump-fwhm-nm", "5"], 2, "BBO has no asymmetric point"),
            (["design-assembly", "--crystal", "BBO", "--spacer", "BBO", "--lambda-nm", "800",
              "--n-crystals", "10", "--m", "10"], 2, "spacer with the same mismatch sign"),
            (["materials", "--material", "unobtainium", "--lambda-nm", "800"], 2, "unknown material"),
            (["bogus"], 2, "unknown subcommand"),
        ]:
            r = run(cli, args)
            check(r.returncode == code, f"{what}: exit {code} (got {r.returncode})")
            lines = r.stderr.strip().splitlines()
            ok = len(lines) == 1
            if ok:
                try:
                    validate(json.loads(lines[0]), schemas, "error", f"{what} stderr")
                except json.JSONDecodeError:
                    ok = False
            check(ok, f"{what}: single-line error JSON on stderr")

        # Numerical failure: a grid far too narrow for the state.
        bad = json.loads(cfg.read_text())
        bad["grid"] = {"n": 64, "half_span_rad_per_ps": 1e-3}
        (tmp / "bad.json").write_text(json.dumps(bad))
        r = run(cli, ["analyze", "--config", str(tmp / "bad.json")])
        check(r.returncode == 3, f"degenerate grid: exit 3 (got {r.returncode})")

    print(f"{len(failures)} failure(s)")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
