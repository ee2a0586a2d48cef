# Copyright 2026 The stoqsym Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Validates every JSON document the command line tool emits."""

import json
import subprocess
import sys

import jsonschema

exe, schema_path, data = sys.argv[1:4]
with open(schema_path) as f:
    schema = json.load(f)
jsonschema.Draft202012Validator.check_schema(schema)
validator = jsonschema.Draft202012Validator(schema)

h010 = f"{data}/h010.ham"
runs = [
    ["effective", h010, "--start", "100"],
    ["effective", f"{data}/hamming12.ham", "--seed", "3"],
    ["sample", h010, "--shots", "20", "--format", "json"],
    ["sample", h010, "--format", "json"],
    ["verify", h010],
    ["cheeger", h010, "--set", "000,110,011"],
    ["perturb", h010, "--delta", "1e-3"],
    ["gi-reduce", "--first", "3:0-1,1-2", "--second", "3:0-2,2-1"],
    ["gi-reduce", "--vertices", "5", "--seed", "2"],
    ["export-ctg", h010, "--format", "json"],
    ["export-ctg", h010, "--assignment", "100", "--format", "json"],
]
failures = 0
for args in runs:
    out = subprocess.run([exe, *args], capture_output=True, text=True, check=True).stdout
    errors = list(validator.iter_errors(json.loads(out)))
    status = "ok" if not errors else f"{len(errors)} errors: {errors[0].message}"
    print(" ".join(args[:1] + args[2:]), "->", status)
    failures += bool(errors)
sys.exit(failures)
