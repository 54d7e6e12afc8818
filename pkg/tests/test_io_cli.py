"""Parsing, serialization, sweeps, and the command-line surface."""

import json
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest

from daywatch import (
    InputParameters,
    ParseError,
    RunConfig,
    SweepSpec,
    ValidationError,
    emit_report,
    parse_records,
    run_watch,
    sweep,
)
from daywatch.cli import main
from daywatch.inputs import FIELD_ORDER
from daywatch.io import CSV_HEADER, sweep_rows

BLOCKS = ("input", "exponents", "grid_model", "potentials", "distances",
          "probabilities", "states", "watch", "flags")

WATCH_KEYS = ("trade_volume_pct", "r_small", "r_mid", "r_big",
              "p_false_alarm_raw", "p_false_alarm", "p1", "p2", "p3", "p4",
              "p_miss_raw", "p_miss", "errors")


def payload_of(record, **config):
    report = run_watch(record, RunConfig(**config) if config else None)
    return json.loads(emit_report(report))


class TestParseCsv:
    def test_happy_path(self):
        text = ("date,t6_1,t6_2,t16,t24,k_c,c_0,delta\n"
                "2026-01-01,6,6,16,24,4,50,0.035\n")
        (record,) = parse_records(text)
        assert record == InputParameters(
            t6_1=6.0, t6_2=6.0, t16=16.0, t24=24.0,
            k_c=4.0, c_0=50.0, delta=0.035, date="2026-01-01",
        )

    def test_corpus_parses(self, records_csv):
        records = parse_records(records_csv)
        assert len(records) == 7
        assert records[0].date == "2026-01-01"
        assert records[-1].date is None  # empty date cell

    def test_cells_may_carry_spaces(self):
        text = ("date,t6_1,t6_2,t16,t24,k_c,c_0,delta\n"
                " d , 6 ,6,16,24,4,50, 0.035 \n")
        (record,) = parse_records(text)
        assert record.date == "d"
        assert record.delta == 0.035

    @pytest.mark.parametrize("format", ["csv", "json"])
    def test_empty_text_is_an_empty_batch(self, format):
        assert parse_records("", format) == []
        assert parse_records("   \n  ", format) == []

    def test_header_only_is_an_empty_batch(self):
        assert parse_records(",".join(CSV_HEADER) + "\n") == []

    def test_wrong_header(self):
        with pytest.raises(ParseError) as excinfo:
            parse_records("t6_1,t6_2\n1,2\n")
        assert excinfo.value.row == 1
        assert "header" in str(excinfo.value)

    def test_wrong_field_count(self):
        text = ",".join(CSV_HEADER) + "\nd,1,2,3\n"
        with pytest.raises(ParseError) as excinfo:
            parse_records(text)
        assert excinfo.value.row == 1

    def test_non_numeric_field(self):
        text = (",".join(CSV_HEADER)
                + "\nd,6,6,16,24,4,50,0.035\nd,6,6,abc,24,4,50,0.035\n")
        with pytest.raises(ParseError) as excinfo:
            parse_records(text)
        assert excinfo.value.row == 2
        assert "'t16'" in str(excinfo.value)
        assert "'abc'" in str(excinfo.value)

    def test_inadmissible_record_carries_its_row(self):
        text = (",".join(CSV_HEADER)
                + "\nd,6,6,16,24,4,50,0.035\nd,-1,6,16,24,4,50,0.035\n")
        with pytest.raises(ValidationError) as excinfo:
            parse_records(text)
        assert excinfo.value.row == 2
        assert excinfo.value.fields == ("t6_1",)


class TestParseJson:
    def record(self, **overrides):
        entry = dict(t6_1=6, t6_2=6, t16=16, t24=24, k_c=4, c_0=50,
                     delta=0.035)
        entry.update(overrides)
        return entry

    def test_happy_path(self):
        text = json.dumps([self.record(date="2026-01-01"), self.record()])
        records = parse_records(text, "json")
        assert len(records) == 2
        assert records[0].date == "2026-01-01"
        assert records[1].date is None
        assert records[1].t16 == 16.0

    def test_null_date(self):
        (record,) = parse_records(json.dumps([self.record(date=None)]),
                                  "json")
        assert record.date is None

    def test_bool_is_rejected(self):
        with pytest.raises(ParseError) as excinfo:
            parse_records(json.dumps([self.record(k_c=True)]), "json")
        assert "'k_c'" in str(excinfo.value)

    def test_unknown_field(self):
        with pytest.raises(ParseError) as excinfo:
            parse_records(json.dumps([self.record(extra=1)]), "json")
        assert "extra" in str(excinfo.value)

    def test_missing_field(self):
        entry = self.record()
        del entry["c_0"]
        with pytest.raises(ParseError) as excinfo:
            parse_records(json.dumps([entry]), "json")
        assert "c_0" in str(excinfo.value)

    def test_top_level_must_be_an_array(self):
        with pytest.raises(ParseError):
            parse_records(json.dumps(self.record()), "json")

    def test_records_must_be_objects(self):
        with pytest.raises(ParseError) as excinfo:
            parse_records("[42]", "json")
        assert excinfo.value.row == 1

    def test_invalid_json(self):
        with pytest.raises(ParseError):
            parse_records("{not json", "json")

    def test_unknown_format_is_a_usage_error(self):
        with pytest.raises(ValueError):
            parse_records("x", "xml")


class TestSerialization:
    def test_block_and_watch_key_order(self, clean):
        payload = payload_of(clean)
        assert tuple(payload) == BLOCKS
        assert tuple(payload["watch"]) == WATCH_KEYS
        assert tuple(payload["input"]) == ("date",) + FIELD_ORDER
        assert tuple(payload["flags"]) == (
            "paper_gap_flag", "valid_percentage", "v1_in_unit_interval",
            "pf_out_of_range", "pm_out_of_range", "pg_undefined",
        )

    def test_input_block_round_trips_exactly(self, clean):
        payload = payload_of(clean)
        for name in FIELD_ORDER:
            assert payload["input"][name] == getattr(clean, name)
        assert payload["input"]["date"] is None

    def test_undefined_quantity_is_null_plus_explanation(self, baseline):
        payload = payload_of(baseline)
        assert payload["distances"]["r_e"] is None
        assert payload["probabilities"]["p_g"] is None
        assert payload["flags"]["pg_undefined"] is True
        quantities = {e["quantity"] for e in payload["watch"]["errors"]}
        assert quantities == {"r_e", "p_g"}

    def test_states_serialize_as_strings(self, clean, baseline):
        assert payload_of(clean)["states"] == {
            "market_state": "normal",
            "grid_state": "normal",
            "threat_level": "low",
        }
        assert payload_of(baseline)["states"] == {
            "market_state": None,
            "grid_state": None,
            "threat_level": None,
        }

    def test_every_corpus_report_satisfies_the_schema(self, records_csv):
        schema = json.loads(
            resources.files("daywatch").joinpath("data", "report_schema.json")
            .read_text(encoding="utf-8")
        )
        validator = jsonschema.Draft202012Validator(schema)
        for record in parse_records(records_csv):
            for mode in ("strict", "absolute"):
                validator.validate(payload_of(record, up_log_mode=mode))

    def test_emitted_json_is_strictly_finite(self, records_csv):
        for record in parse_records(records_csv):
            text = emit_report(run_watch(record))
            assert "NaN" not in text
            assert "Infinity" not in text

    def test_text_format(self, baseline):
        text = emit_report(run_watch(baseline), format="text")
        assert text.startswith("input")
        assert "  u_s" in text
        assert "undefined" in text
        assert ("NonPositiveGap in grid-analysis/r_e: "
                "u_s - u_p is not positive") in text
        assert text.endswith("degraded: True\n")

    def test_unknown_format_is_a_usage_error(self, clean):
        with pytest.raises(ValueError):
            emit_report(run_watch(clean), format="yaml")


class TestSweep:
    @pytest.mark.parametrize(
        ("kwargs", "fragment"),
        [
            (dict(parameter="bogus", start=0.0, stop=1.0, steps=3),
             "parameter"),
            (dict(parameter="delta", start=1.0, stop=1.0, steps=3), "start"),
            (dict(parameter="delta", start=2.0, stop=1.0, steps=3), "start"),
            (dict(parameter="delta", start=0.0, stop=1.0, steps=1), "steps"),
        ],
    )
    def test_spec_validation(self, kwargs, fragment):
        with pytest.raises(ValueError) as excinfo:
            SweepSpec(**kwargs)
        assert fragment in str(excinfo.value)

    def test_value_grid_hits_both_endpoints(self):
        spec = SweepSpec(parameter="delta", start=0.0, stop=1.0, steps=5)
        assert [spec.value_at(i) for i in range(5)] == [
            0.0, 0.25, 0.5, 0.75, 1.0
        ]

    def test_sweep_covers_every_point_in_order(self, clean):
        spec = SweepSpec(parameter="delta", start=0.0, stop=1.0, steps=101)
        entries = sweep(clean, spec)
        assert len(entries) == 101
        assert [e.value for e in entries] == [spec.value_at(i)
                                              for i in range(101)]
        assert entries[0].report.trace["l_p1"] == 1.0
        assert all(e.report is not None for e in entries)

    def test_inadmissible_points_become_error_entries(self, clean):
        spec = SweepSpec(parameter="t6_1", start=0.0, stop=1.0, steps=3)
        entries = sweep(clean, spec)
        assert entries[0].report is None
        assert "t6_1" in entries[0].error
        assert entries[1].report is not None
        assert entries[2].report is not None

    def test_rows_are_plot_ready(self, clean):
        spec = SweepSpec(parameter="t6_1", start=0.0, stop=1.0, steps=3)
        entries = sweep(clean, spec)
        rows = sweep_rows(entries)
        assert len(rows) == 3
        assert tuple(rows[0]) == (
            "value", "trade_volume_pct", "market_state", "grid_state",
            "threat_level", "p_false_alarm", "p_miss", "degraded", "error",
        )
        # point 0 is inadmissible: no report, only the validation failure
        assert rows[0]["degraded"] is True
        assert rows[0]["trade_volume_pct"] is None
        assert "t6_1" in rows[0]["error"]
        # later points carry reports; the error column then lists any
        # contained error records inline
        for entry, row in zip(entries[1:], rows[1:]):
            assert isinstance(row["trade_volume_pct"], float)
            if entry.report.errors:
                for record in entry.report.errors:
                    assert record.error in row["error"]
            else:
                assert row["error"] is None


class TestCli:
    def write(self, tmp_path, name, text):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)

    def baseline_csv(self, tmp_path):
        return self.write(
            tmp_path, "records.csv",
            "date,t6_1,t6_2,t16,t24,k_c,c_0,delta\n"
            "2026-01-01,6,6,16,24,4,50,0.035\n",
        )

    def test_run_reports_degradation_in_the_exit_code(self, tmp_path, capsys):
        code = main(["run", "--input", self.baseline_csv(tmp_path)])
        captured = capsys.readouterr()
        assert code == 2
        payload = json.loads(captured.out)
        assert payload["input"]["date"] == "2026-01-01"
        assert captured.err == ""

    def test_run_emits_one_document_per_record(self, tmp_path, capsys):
        path = self.write(
            tmp_path, "two.csv",
            "date,t6_1,t6_2,t16,t24,k_c,c_0,delta\n"
            "a,6,6,16,24,4,50,0.035\n"
            "b,5.7,5.7,15.2,22.8,1.0,38.0,1.0\n",
        )
        code = main(["run", "--input", path])
        out = capsys.readouterr().out
        assert code == 2
        decoder = json.JSONDecoder()
        documents, index = [], 0
        while index < len(out):
            payload, end = decoder.raw_decode(out, index)
            documents.append(payload)
            index = end + (1 if out[end:end + 1] == "\n" else 0)
        assert [d["input"]["date"] for d in documents] == ["a", "b"]

    def test_run_text_output(self, tmp_path, capsys):
        code = main(["run", "--input", self.baseline_csv(tmp_path),
                     "--output", "text"])
        assert code == 2
        assert "degraded: True" in capsys.readouterr().out

    def test_run_json_input(self, tmp_path, capsys):
        path = self.write(tmp_path, "records.json", json.dumps([{
            "t6_1": 6, "t6_2": 6, "t16": 16, "t24": 24,
            "k_c": 4, "c_0": 50, "delta": 0.035,
        }]))
        code = main(["run", "--input", path, "--format", "json"])
        assert code == 2
        assert json.loads(capsys.readouterr().out)["input"]["date"] is None

    def test_missing_file_is_unparseable(self, tmp_path, capsys):
        code = main(["run", "--input", str(tmp_path / "absent.csv")])
        assert code == 3
        assert "cannot read" in capsys.readouterr().err

    def test_garbage_is_unparseable(self, tmp_path, capsys):
        path = self.write(tmp_path, "garbage.csv", "not,a,header\n1,2,3\n")
        code = main(["run", "--input", path])
        assert code == 3
        assert "unparseable" in capsys.readouterr().err

    def test_inadmissible_record_degrades(self, tmp_path, capsys):
        path = self.write(
            tmp_path, "bad.csv",
            "date,t6_1,t6_2,t16,t24,k_c,c_0,delta\n"
            "d,-1,6,16,24,4,50,0.035\n",
        )
        code = main(["run", "--input", path])
        assert code == 2
        assert "inadmissible" in capsys.readouterr().err

    def test_bad_tolerance_degrades(self, tmp_path, capsys):
        code = main(["run", "--input", self.baseline_csv(tmp_path),
                     "--tolerance", "-1"])
        assert code == 2
        assert "tolerance" in capsys.readouterr().err

    def test_up_log_mode_flag_changes_the_report(self, tmp_path, capsys):
        path = self.baseline_csv(tmp_path)
        main(["run", "--input", path])
        strict_payload = json.loads(capsys.readouterr().out)
        main(["run", "--input", path, "--up-log-mode", "absolute"])
        absolute_payload = json.loads(capsys.readouterr().out)
        assert strict_payload["probabilities"]["p_g"] is None
        assert absolute_payload["probabilities"]["p_g"] is not None

    def test_sweep_writes_columnar_csv(self, tmp_path, capsys):
        code = main(["sweep", "--input", self.baseline_csv(tmp_path),
                     "--param", "delta", "--from", "0", "--to", "1",
                     "--steps", "5"])
        out = capsys.readouterr().out
        assert code == 2
        lines = out.splitlines()
        assert lines[0] == ("value,trade_volume_pct,market_state,grid_state,"
                            "threat_level,p_false_alarm,p_miss,degraded,"
                            "error")
        assert len(lines) == 6
        assert lines[1].startswith("0.0,")

    def test_sweep_rejects_a_bad_spec(self, tmp_path, capsys):
        code = main(["sweep", "--input", self.baseline_csv(tmp_path),
                     "--param", "delta", "--from", "0", "--to", "1",
                     "--steps", "1"])
        assert code == 2
        assert "steps" in capsys.readouterr().err

    def test_sweep_needs_a_base_record(self, tmp_path, capsys):
        path = self.write(tmp_path, "empty.csv",
                          "date,t6_1,t6_2,t16,t24,k_c,c_0,delta\n")
        code = main(["sweep", "--input", path, "--param", "delta",
                     "--from", "0", "--to", "1", "--steps", "3"])
        assert code == 3
        assert "base record" in capsys.readouterr().err

    def test_check_passes(self, capsys):
        code = main(["check"])
        out = capsys.readouterr().out
        assert code == 0
        assert out.count("PASS") == 3
        assert "FAIL" not in out
        for name in ("permanent-oracle", "polynomial-endpoints",
                     "golden-baseline"):
            assert name in out

    def test_module_entry_point(self):
        completed = subprocess.run(
            [sys.executable, "-m", "daywatch", "check"],
            capture_output=True, text=True,
        )
        assert completed.returncode == 0
        assert completed.stdout.count("PASS") == 3
