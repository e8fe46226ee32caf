"""Run dgeom with --json and validate the report against the schema.

usage: validate_json.py SCHEMA SOURCE_DIR DGEOM ARGS...
"""
import json
import subprocess
import sys

import jsonschema

schema_path, source_dir, exe, *args = sys.argv[1:]
with open(schema_path) as f:
    schema = json.load(f)
proc = subprocess.run([exe, *args], cwd=source_dir, capture_output=True, text=True)
if proc.returncode not in (0, 2):
    sys.exit(f"dgeom exited with {proc.returncode}: {proc.stderr}")
report = json.loads(proc.stdout)
jsonschema.validate(report, schema)
# Keys come out in a fixed order.
assert list(report) == ["command", "model", "results", "genericity"], list(report)
# Serializing again gives the same document.
assert json.loads(json.dumps(report)) == report
