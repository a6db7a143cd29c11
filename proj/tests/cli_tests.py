#!/usr/bin/env python3
"""End-to-end tests for the command line tool.

Usage: cli_tests.py <path-to-binary> <path-to-data-dir>
"""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

BINARY = Path(sys.argv[1])
DATA = Path(sys.argv[2])
SAMPLE = DATA / "sample.graph"

failures = []


def run(*args, stdin=None):
    return subprocess.run(
        [str(BINARY), *args],
        input=stdin,
        capture_output=True,
        text=True,
        timeout=120,
    )


def check(name, condition, detail=""):
    tag = "ok" if condition else "FAIL"
    print(f"[{tag}] {name}")
    if not condition:
        failures.append(name)
        if detail:
            print(detail)


PLAIN_TEXT = "{a b}\n{c f g}\n{d e}\n"
COUNTING_TEXT = "{a}\n{b}\n{c f}\n{d e}\n{g}\n"

# --- run ---------------------------------------------------------------
r1 = run("run", "-i", str(SAMPLE))
r2 = run("run", "-i", str(SAMPLE))
check("run: plain partition on stdout", r1.returncode == 0 and r1.stdout == PLAIN_TEXT,
      r1.stdout + r1.stderr)
check("run: stdout byte-identical across runs", r1.stdout == r2.stdout)
check("run: stats go to stderr", "splits=2" in r1.stderr and "n=7" in r1.stderr,
      r1.stderr)

rc = run("run", "-i", str(SAMPLE), "--counting")
check("run: counting partition", rc.returncode == 0 and rc.stdout == COUNTING_TEXT,
      rc.stdout + rc.stderr)

rs = run("run", "-i", "-", stdin=SAMPLE.read_text())
check("run: reads stdin with -i -", rs.returncode == 0 and rs.stdout == PLAIN_TEXT)

j1 = run("run", "-i", str(SAMPLE), "--format", "json")
j2 = run("run", "-i", str(SAMPLE), "--format", "json")
check("run: json exits 0", j1.returncode == 0, j1.stderr)
try:
    doc1, doc2 = json.loads(j1.stdout), json.loads(j2.stdout)
    stats = doc1["stats"]
    ok = (
        doc1["partition"] == [["a", "b"], ["c", "f", "g"], ["d", "e"]]
        and stats["n"] == 7 and stats["m"] == 9 and stats["l"] == 3
        and stats["blocks"] == 3 and stats["split_calls"] == 2
        and stats["mode"] == "plain" and stats["time_ms"] >= 0
    )
    check("run: json payload", ok, j1.stdout)
    doc1["stats"].pop("time_ms")
    doc2["stats"].pop("time_ms")
    check("run: json deterministic except time_ms", doc1 == doc2)
except (json.JSONDecodeError, KeyError) as exc:
    check("run: json payload", False, f"{exc}: {j1.stdout}")

# --- gen ---------------------------------------------------------------
g1 = run("gen", "--n", "6", "--m", "12", "--l", "3", "--labels", "2", "--seed", "11")
g2 = run("gen", "--n", "6", "--m", "12", "--l", "3", "--labels", "2", "--seed", "11")
g3 = run("gen", "--n", "6", "--m", "12", "--l", "3", "--labels", "2", "--seed", "12")
check("gen: deterministic for a seed", g1.returncode == 0 and g1.stdout == g2.stdout)
check("gen: seed changes the graph", g1.stdout != g3.stdout)
check("gen: output declares 6 vertices",
      sum(1 for line in g1.stdout.splitlines() if line.startswith("v ")) == 6)

piped = run("run", "-i", "-", stdin=g1.stdout)
check("gen|run: generated graphs parse and run", piped.returncode == 0,
      piped.stderr)

with tempfile.TemporaryDirectory() as tmp:
    out_file = Path(tmp) / "g.graph"
    gf = run("gen", "--n", "4", "--m", "6", "--seed", "5", "--out", str(out_file))
    check("gen: --out writes the file",
          gf.returncode == 0 and out_file.read_text() == run(
              "gen", "--n", "4", "--m", "6", "--seed", "5").stdout)

# --- check -------------------------------------------------------------
c1 = run("check", "--cases", "40", "--seed", "123", "--n", "8", "--m", "20")
check("check: small corpus passes", c1.returncode == 0 and "40" in c1.stdout,
      c1.stdout + c1.stderr)
c0 = run("check", "--cases", "0")
check("check: zero cases warns and exits 0",
      c0.returncode == 0 and "warning" in c0.stderr, c0.stderr)

# --- bench -------------------------------------------------------------
b1 = run("bench", "--sizes", "64,128", "--l", "4", "--seed", "2")
lines = [ln for ln in b1.stdout.splitlines() if ln]
check("bench: header plus one row per size",
      b1.returncode == 0 and len(lines) == 3 and lines[0].startswith("n,m,l"),
      b1.stdout + b1.stderr)
if len(lines) == 3:
    row = lines[1].split(",")
    check("bench: rows carry finite ratios",
          row[0] == "64" and float(row[-1]) >= 0 and row[4] == "plain", b1.stdout)
b2 = run("bench", "--sizes", "64", "--counting")
check("bench: counting mode flagged in rows",
      b2.returncode == 0 and "counting" in b2.stdout.splitlines()[1], b2.stdout)

# --- error handling ----------------------------------------------------
e1 = run("run", "-i", "/nonexistent/g.graph")
check("errors: missing file exits 1", e1.returncode == 1 and "error" in e1.stderr)

e2 = run("run", "-i", "-", stdin="v a\ne a r z 1\n")
check("errors: parse failure reports the line and exits 1",
      e2.returncode == 1 and "line 2" in e2.stderr, e2.stderr)

e3 = run("frobnicate")
check("errors: unknown subcommand exits 1", e3.returncode == 1)

e4 = run()
check("errors: missing subcommand exits 1", e4.returncode == 1)

e5 = run("run", "-i", str(SAMPLE), "--format", "yaml")
check("errors: bad format value exits 1", e5.returncode == 1)

e6 = run("gen", "--n", "0")
check("errors: infeasible generator params exit 1",
      e6.returncode == 1 and "error" in e6.stderr, e6.stderr)

print()
if failures:
    print(f"{len(failures)} CLI test(s) failed")
    sys.exit(1)
print("all CLI tests passed")
