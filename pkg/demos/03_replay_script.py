#!/usr/bin/env python3
"""Replay the bundled Tokyo debate script and print every report format.

Equivalent to:  faf replay tests/fixtures/tokyo.json --format table
"""
from pathlib import Path

from faf import emit_report, load_script, run_replay

script_path = Path(__file__).resolve().parent.parent / "tests" / "fixtures" / "tokyo.json"
script = load_script(script_path)
print(f"replaying {script.question.id}: {script.question.text}")
print(f"{len(script.windows)} window(s), outcome={script.outcome}\n")

report = run_replay(script)
print(emit_report(report, "table"))
print("csv:\n" + emit_report(report, "csv"))
print("blocked forecasts were substituted with the nearest rational value "
      f"({report.follow_ups} follow-ups)")
