import json
import subprocess
import sys
import tempfile

import jsonschema

cli, configs, schema_path = sys.argv[1:4]
schema = json.load(open(schema_path))

with tempfile.TemporaryDirectory() as tmp:
    for suite in ["ybe", "rtt", "sixteen", "lemma-audit", "bethe", "eigencheck", "partition", "action-angle"]:
        out = f"{tmp}/{suite}.json"
        rc = subprocess.run([cli, suite, "--config", f"{configs}/example_pass.json", "--out", out],
                            stderr=subprocess.DEVNULL).returncode
        if rc not in (0, 1):
            sys.exit(f"{suite}: exit {rc}")
        doc = json.load(open(out))
        jsonschema.validate(doc, schema)
        agg = doc["aggregate"]
        assert agg["case_count"] == len(doc["cases"])
        checks = [c for c in doc["cases"] if c["kind"] == "check"]
        assert agg["pass"] == all(c["pass"] for c in checks), suite
        print(f"{suite}: {len(doc['cases'])} cases valid")
