import json
import math

import numpy as np

from cotangent_kahler.report import Check, Report, dumps, format_real, write_atomic


class TestCheck:
    def test_upper_bound(self):
        c = Check("x.y", "identity", tolerance=1e-6)
        for r in (1e-9, 3e-7):
            c.add(r)
        assert c.passed and c.max_residual == 3e-7 and c.samples == 2

    def test_lower_bound_uses_minimum(self):
        c = Check("w", "witness", tolerance=1e-2, bound="lower")
        c.add(0.5)
        c.add(0.02)
        assert c.max_residual == 0.02 and c.passed
        c.add(1e-3)
        assert not c.passed

    def test_empty_check_fails(self):
        c = Check("e", "nothing", tolerance=1.0)
        assert not c.passed and math.isnan(c.max_residual)

    def test_dict_fields(self):
        c = Check("a.b", "claim", [0.1], 1.0, details={"k": 1})
        assert list(c.to_dict()) == ["name", "paper_ref", "max_residual", "mean_residual", "tolerance", "bound", "samples", "verdict", "details"]


class TestSerialisation:
    def test_reals_have_17_digits(self):
        assert format_real(0.1) == "0.10000000000000001"
        assert format_real(-4.0) == "-4"
        assert format_real(float("nan")) == "NaN"

    def test_roundtrip_through_json(self):
        rep = Report({"n": 3, "c": -1.0}, [Check("a", "b", [1e-12], 1e-10)], {"lambda": -4.0})
        text = dumps(rep.to_dict())
        assert text.endswith("}\n") and "\r" not in text
        back = json.loads(text)
        assert back["summary"]["verdict"] == "pass"
        assert back["checks"][0]["max_residual"] == 1e-12
        assert back["summary"]["lambda"] == -4.0

    def test_numpy_scalars(self):
        assert dumps({"a": np.float64(0.5), "b": np.int64(3), "c": np.bool_(True)}) == '{\n  "a": 0.5,\n  "b": 3,\n  "c": true\n}\n'

    def test_deterministic(self):
        obj = {"x": [1.0, 2.5, {"y": "z"}], "e": [], "d": {}}
        assert dumps(obj) == dumps(obj)

    def test_atomic_write(self, tmp_path):
        path = tmp_path / "sub" / "r.json"
        write_atomic(path, "abc\n")
        write_atomic(path, "def\n")
        assert path.read_bytes() == b"def\n"
        assert [p.name for p in path.parent.iterdir()] == ["r.json"]
