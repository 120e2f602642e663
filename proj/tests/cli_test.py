"""End-to-end checks of the catmod command line: exit codes, JSON schemas,
DOT shape, --out files and byte-identical reruns.

Usage: cli_test.py CATMOD_BINARY SCHEMA_DIR
"""

import json
import pathlib
import re
import subprocess
import sys
import tempfile

import jsonschema
from referencing import Registry, Resource

CLI = sys.argv[1]
SCHEMAS = pathlib.Path(sys.argv[2])

registry = Registry()
for path in SCHEMAS.glob("*.schema.json"):
    contents = json.loads(path.read_text())
    registry = registry.with_resource(path.name, Resource.from_contents(contents))

failures = []


def run(*args):
    return subprocess.run([CLI, *args], capture_output=True, text=True, timeout=300)


def check(cond, what):
    if not cond:
        failures.append(what)
        print("FAIL", what)


def validate(doc, schema):
    validator = jsonschema.Draft202012Validator(
        registry.contents(f"{schema}.schema.json"), registry=registry)
    errors = list(validator.iter_errors(doc))
    check(not errors, f"{schema} schema: {errors[:1]}")


def json_lines(text):
    return [json.loads(line) for line in text.splitlines() if line.strip()]


def dot_ok(text):
    if not text.startswith("digraph ") or text.count("{") != 1 or text.count("}") != 1:
        return False
    nodes = set(re.findall(r"^\s*(\w+)\s*\[", text, re.M)) - {"node", "edge", "graph"}
    edges = re.findall(r"^\s*(\w+)\s*->\s*(\w+)", text, re.M)
    return bool(nodes) and all(a in nodes and b in nodes for a, b in edges)


# Exit codes.
check(run("eval", "--p", "5", "--n", "29", "--method", "both").returncode == 0, "eval both exit 0")
check(run("eval", "--p", "4", "--n", "1").returncode == 2, "non-prime exit 2")
check(run("eval", "--p", "3", "--n", "1").returncode == 2, "p=3 exit 2")
check(run("eval", "--p", "5").returncode == 2, "missing --n exit 2")
check(run("bogus").returncode == 2, "unknown subcommand exit 2")
check(run("decompose", "--p", "5", "--r", "0").returncode == 2, "zero residue exit 2")
check(run("synth", "--p", "5", "--state-cap", "3").returncode == 1, "state cap exit 1")
check(run("coverage", "--p", "5", "--bound", "10").returncode == 1, "partial coverage exit 1")
check(run("density", "--p", "5", "--kmax", "0").returncode == 2, "kmax range exit 2")
check(run("synth", "--p", "5", "--p-list", "7").returncode == 2, "--p with --p-list exit 2")
check(run("coverage", "--p", "5", "--emit", "dot").returncode == 2, "coverage dot exit 2")
check(run("eval", "--p-list", "5,x", "--n", "1").returncode == 2, "malformed p-list exit 2")
check(run("eval", "--p-list", "5,9", "--n", "1").returncode == 2, "composite in p-list exit 2")
r = run("eval", "--p-list", "7,5,7", "--n", "29")
check(r.stdout.split() == ["3", "0"], f"eval p-list sorted and deduplicated {r.stdout!r}")

# Values.
r = run("eval", "--p", "5", "--n", "29", "--method", "both")
check(r.stdout.split() == ["automaton", "3", "oracle", "3"], f"eval text {r.stdout!r}")
r = run("eval", "--p", "7", "--n", "10", "--emit", "json")
doc = json.loads(r.stdout)
validate(doc, "eval")
check(doc["automaton"] == 3, "C_10 mod 7")
r = run("decompose", "--p", "5", "--r", "3", "--emit", "json")
doc = json.loads(r.stdout)
validate(doc, "decompose")
check(doc["d_list"] == [1, 1, 1, 2], "decompose p=5 r=3")

# Schemas over every JSON-emitting subcommand.
r = run("synth", "--p-list", "5,7,11", "--emit", "json")
docs = json_lines(r.stdout)
check([d["p"] for d in docs] == [5, 7, 11], "synth p-list order")
for d in docs:
    validate(d, "dfao")
for d in json_lines(run("coverage", "--p-list", "13,5", "--emit", "json").stdout):
    validate(d, "coverage")
    check(d["complete"] and d["verified"], f"coverage p={d['p']}")
for d in json_lines(run("graph", "--p-list", "5,7", "--walk", "--emit", "json").stdout):
    validate(d, "graph")
    validate(d["walk"], "walk")
    check(d["automaton_correspondence"], f"graph p={d['p']}")
d = json.loads(run("density", "--p", "5", "--kmax", "4", "--emit", "json").stdout)
validate(d, "density")
check([(f["num"], f["den"]) for f in d["fractions"][:2]] == [(1, 5), (13, 25)], "density p=5")

# DOT.
check(dot_ok(run("synth", "--p", "7", "--emit", "dot").stdout), "synth dot")
check(dot_ok(run("synth", "--p", "7", "--emit", "dot", "--minimize").stdout), "minimized dot")
check(dot_ok(run("graph", "--p", "11", "--emit", "dot").stdout), "graph dot")

# --out writes the same bytes as stdout.
with tempfile.TemporaryDirectory() as tmp:
    target = pathlib.Path(tmp) / "a.json"
    r = run("synth", "--p", "13", "--emit", "json", "--out", str(target))
    check(r.returncode == 0, "synth --out exit")
    check(target.read_text() == run("synth", "--p", "13", "--emit", "json").stdout, "--out contents")

# Byte-identical reruns.
for args in (["synth", "--p-list", "5,7,11,13", "--emit", "json"],
             ["synth", "--p", "11", "--emit", "csv", "--minimize"],
             ["selftest", "--seed", "20170110"],
             ["coverage", "--p", "17", "--emit", "csv"]):
    a, b = run(*args), run(*args)
    check(a.returncode == 0 and (a.stdout, a.stderr) == (b.stdout, b.stderr), "rerun " + " ".join(args))

print(f"{len(failures)} failures")
sys.exit(1 if failures else 0)
