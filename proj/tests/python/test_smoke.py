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

import json
import math
import pathlib

import jsonschema
import pytest

import stoqsym

ROOT = pathlib.Path(__file__).resolve().parents[2]
H010 = (ROOT / "data" / "h010.ham").read_text()


@pytest.fixture(scope="module")
def validator():
    schema = json.loads((ROOT / "schema" / "stoqsym.schema.json").read_text())
    return jsonschema.Draft202012Validator(schema)


def test_normalize_round_trip():
    text = stoqsym.normalize(H010)
    assert stoqsym.normalize(text) == text
    assert text.startswith("n 3\n")


def test_violations():
    assert stoqsym.violations(H010) == []
    rules = [rule for rule, _ in stoqsym.violations("n 2\nX 11 1\nY 11 2\n")]
    assert rules == ["beta-exceeds-alpha"]
    with pytest.raises(ValueError):
        stoqsym.normalize("n 2\nX 11 -1\n")
    with pytest.raises(ValueError):
        stoqsym.normalize("n 2\nQ 11 1\n")


def test_effective_worked_example(validator):
    doc = stoqsym.effective(H010, start="100")
    validator.validate(doc)
    assert doc["reps"][0] == "100"
    assert sorted(doc["class_sizes"]) == [1, 1, 3, 3]
    assert doc["component_size"] == 8
    assert doc["energy"] == pytest.approx(-3 * math.sqrt(2), abs=1e-10)
    assert sum(doc["probabilities"]) == pytest.approx(1.0)


def test_sample_is_deterministic(validator):
    a = stoqsym.sample(H010, 50, seed=11)
    b = stoqsym.sample(H010, 50, seed=11, threads=3)
    validator.validate(a)
    assert a == b
    assert len(a["shots"]) == 50
    assert stoqsym.sample(H010, 50, seed=12)["shots"] != a["shots"]


def test_verify_and_equivalence():
    report = stoqsym.verify(H010)
    assert report["pass"]
    assert report["size_mismatches"] == 0
    assert stoqsym.equivalent(H010, "100", "001")
    assert not stoqsym.equivalent(H010, "100", "000")


def test_non_convergence():
    with pytest.raises(stoqsym.NonConvergence):
        stoqsym.effective(H010, max_iter=1)


def test_exports(validator):
    doc = json.loads(stoqsym.export_ctg(H010, assignment="100", format="json"))
    validator.validate(doc)
    assert len(doc["vertices"]) == 16
    assert stoqsym.export_ctg(H010).startswith("digraph")
    assert "graph" in stoqsym.export_gamma(H010)
