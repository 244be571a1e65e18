"""Runs the CLI binary on the sample descriptors: outputs, exit codes, determinism."""

import json
import os
import subprocess
import sys

cli, data = sys.argv[1], sys.argv[2]
failures = []


def run(*args, stdin=None):
    return subprocess.run([cli, *args], input=stdin, capture_output=True, text=True)


def check(cond, what):
    print(("ok   " if cond else "FAIL ") + what)
    if not cond:
        failures.append(what)


we = os.path.join(data, "worked_example.json")
r = run("cycle-image", we)
check(r.returncode == 0, "cycle-image exits 0")
rep = json.loads(r.stdout)
check(rep["result"] == [2, 1, 1], "worked example gives [2,1,1]")
check([c["alpha"] for c in rep["report"]["components"]] == [0, 1, 1, 2], "component alphas 0,1,1,2")
check(run("cycle-image", we).stdout == r.stdout, "byte-identical reruns")

with open(we) as fh:
    stdin_out = run("cycle-image", stdin=fh.read()).stdout
check(stdin_out == r.stdout, "stdin and file input agree")

echo = run("cycle-image", stdin=json.dumps(rep["inputs"])).stdout
check(echo == r.stdout, "echoed inputs re-parse to the same report")

r = run("cycle-image", os.path.join(data, "split_split.json"))
check(json.loads(r.stdout)["result"] == [1], "split x split over Q_2 gives [1]")

r = run("grade-units", "--p", "2", "--e", "2", "--n", "1", "--oracle")
check(r.returncode == 0 and json.loads(r.stdout)["agree"], "grade-units oracle agrees")

r = run("hilbert-orders", "--p", "2", "--e", "1", "--n", "1")
h = json.loads(r.stdout)
check(h["agree"] and len(h["orders"]) == 4, "hilbert-orders matrix for s,t <= 3")

r = run("jumps", "--p", "2", "--e", "1", "--m", "1", "--eisenstein=-2,2")
j = json.loads(r.stdout)
check(j["lower"] == ["1"] and j["matches_first_lower"], "jumps for Q_2(sqrt 3)")

r = run("milnor", "--p", "3", "--e", "6", "--n", "2", "--q", "2", "--r", "2", "--window", "9")
check(all(row.get("shift_agrees", True) for row in json.loads(r.stdout)["rows"]), "milnor shift rows agree")

r = run("isogeny-grades", "--p", "2", "--e", "12", "--n", "2", "--v-a", "8")
check(json.loads(r.stdout)["chain"]["t"] == [2, 4], "isogeny-grades chain")

r = run("kummer-image", we)
check(json.loads(r.stdout)["E"]["mattuck"]["ok"], "kummer-image Mattuck sum")

r = run("--pretty", "cycle-image", we)
check(r.returncode == 0 and "result: [2,1,1]" in r.stdout, "pretty output")

r = run("sweep", os.path.join(data, "sweep.json"), "--jobs", "3")
check([x["result"] for x in json.loads(r.stdout)] == [[1, 1], [1], [], [2, 2]], "sweep keeps input order")

# exit codes
bad = '{"p": 3, "n": 1, "field": {"e": 1}, "curve_E": {"type": "split"}, "curve_E2": {"type": "split"}}'
r = run("cycle-image", stdin=bad)
check(r.returncode == 2 and "NonIntegralE0" in r.stderr, "validation error exits 2")
r = run("cycle-image", stdin='{"p": 2,\n "n": }')
check(r.returncode == 2 and "line 2" in r.stderr, "parse error exits 2 with a line number")
r = run("cycle-image", stdin='{"p": 2, "n": 1, "field": {"e": 1}, "curve_E": {"type": "cusp"}, "curve_E2": {"type": "split"}}')
check(r.returncode == 2 and "curve_E.type" in r.stderr, "unknown reduction type names the field")
r = run("isogeny-grades", "--p", "5", "--e", "600", "--t", "24,100", "--strict")
check(r.returncode == 3 and "ChainInvariant" in r.stderr, "chain invariant exits 3")
r = run("no-such-command")
check(r.returncode == 2, "unknown subcommand exits 2")

r = run("verify", "--only", "4")
check(r.returncode == 0 and json.loads(r.stdout)["passed"], "verify --only 4")

sys.exit(1 if failures else 0)
