#!/usr/bin/env python3
"""Validate tuop JSON outputs against schema/output.schema.json."""
import json
import sys

import jsonschema


def main(argv):
    if len(argv) < 3:
        print("usage: validate_schema.py SCHEMA FILE...", file=sys.stderr)
        return 2
    with open(argv[1]) as f:
        schema = json.load(f)
    bad = 0
    for path in argv[2:]:
        with open(path) as f:
            doc = json.load(f)
        try:
            jsonschema.validate(doc, schema)
            print(f"ok   {path}")
        except jsonschema.ValidationError as e:
            print(f"BAD  {path}: {e.message}")
            bad += 1
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
