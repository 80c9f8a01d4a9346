#!/usr/bin/env python3
"""CLI contract: exit codes, schema validity, determinism, stdin input."""

import json
import subprocess
import sys

import jsonschema

CLI = sys.argv[1]
SCHEMA = json.load(open(sys.argv[2]))
validator = jsonschema.Draft202012Validator(SCHEMA)
failures = []


def run(args, stdin=None):
    return subprocess.run([CLI, *args], input=stdin, capture_output=True, text=True, timeout=120)


def check(name, ok, detail=""):
    if not ok:
        failures.append(f"{name}: {detail}")


def report(name, args, code=0, stdin=None):
    p = run(args, stdin)
    check(name, p.returncode == code, f"exit {p.returncode}, expected {code}; stderr: {p.stderr.strip()}")
    if p.returncode not in (0, 1):
        return None
    try:
        doc = json.loads(p.stdout)
    except json.JSONDecodeError as e:
        check(name, False, f"stdout is not JSON: {e}")
        return None
    errors = sorted(validator.iter_errors(doc), key=str)
    check(name, not errors, "; ".join(e.message for e in errors[:3]))
    return doc


def total(doc):
    return doc["result"]["total"]


# kh
d = report("kh hopf Q", ["kh", "--link", "hopf", "--coeff", "Q", "--quiet"])
check("kh hopf Q", d and d["result"]["total_rank"] == 4)
d = report("kh trefoil braid", ["kh", "--braid", "s1 s1 s1", "--strands", "2", "--quiet"])
check("kh trefoil braid", d and d["result"]["torsion_summands"] == 1, d and total(d))
d = report("kh reduced", ["kh", "--link", "trefoil", "--reduced", "--coeff", "Q", "--quiet"])
check("kh reduced", d and d["result"]["total_rank"] == 3 and d["input"]["basepoint"] == {"arc": 1, "offset": 0})
d = report("kh mirror", ["kh", "--link", "trefoil-right", "--mirror", "--quiet", "--no-timings"])
left = report("kh left", ["kh", "--link", "trefoil-left", "--quiet", "--no-timings"])
check("kh mirror", d and left and d["result"] == left["result"])

# pointed
d = report("pointed doubled Z", ["pointed", "--link", "unknot", "--points", "1:0", "--variant", "doubled", "--quiet"])
check("pointed doubled Z", d and total(d) == "Z^2 + Z/2", d and total(d))
d = report("pointed standard Z", ["pointed", "--link", "unknot", "--points", "1:0", "--quiet"])
check("pointed standard Z", d and total(d) == "Z^2", d and total(d))
d = report("pointed doubled F3",
           ["pointed", "--link", "unknot", "--points", "1:0", "--variant", "doubled", "--coeff", "F3", "--quiet"])
check("pointed doubled F3", d and d["result"]["total_rank"] == 2)

# koszul
for link, rank in [("unlink:3", 8), ("hopf", 8), ("unknot", 2)]:
    args = ["koszul", "--link", link, "--points", "one-per-component" if link != "unknot" else "1:0", "--quiet"]
    d = report(f"koszul {link}", args)
    check(f"koszul {link}", d and d["result"]["total"]["text"] == f"Z^{rank}", d and d["result"]["total"])

# ss
d = report("ss unknot", ["ss", "--link", "unknot", "--points", "1:0", "--coeff", "Q", "--quiet"])
check("ss unknot", d and [p["total"] for p in d["result"]["pages"]] == [4, 2] and d["result"]["convergence"]["passed"])
d = report("ss hopf", ["ss", "--link", "hopf", "--points", "one-per-component", "--coeff", "Q", "--quiet"])
check("ss hopf", d and d["result"]["pages"][1]["total"] == 8 and d["result"]["infinity"]["total"] == 8)
d = report("ss no markings", ["ss", "--link", "figure-eight", "--coeff", "F5", "--quiet"])
check("ss no markings", d and len(d["result"]["pages"]) == 1 and d["result"]["convergence"]["passed"])
report("ss over Z", ["ss", "--link", "hopf", "--points", "1:0", "--coeff", "Z", "--quiet"], code=2)

# verify
for m in (1, 2, 3):
    d = report(f"verify unlink:{m}", ["verify", "--link", f"unlink:{m}", "--quiet"])
    check(f"verify unlink:{m}", d and d["result"]["verdict"] == "sharp")
d = report("verify hopf", ["verify", "--link", "hopf", "--quiet"])
check("verify hopf", d and d["result"]["verdict"] == "sharp"
      and [q["slack"] for q in d["result"]["inequalities"]] == [0, 0])
d = report("verify trefoil", ["verify", "--link", "trefoil", "--quiet"])
check("verify trefoil", d and d["result"]["verdict"] == "unknown")
d = report("verify override", ["verify", "--link", "trefoil", "--khi-dim", "2", "--quiet"])
check("verify override", d and d["result"]["verdict"] in ("sharp", "holds"))
d = report("verify violated", ["verify", "--link", "trefoil", "--khi-dim", "1000", "--quiet"], code=1)
check("verify violated", d and d["result"]["verdict"] == "violated" and d["status"] == "failed")

# input errors exit 2
for name, args in [
    ("bad pd", ["kh", "--pd", "X[1,2,3]"]),
    ("no input", ["kh"]),
    ("two inputs", ["kh", "--link", "hopf", "--braid", "s1"]),
    ("unknown link", ["kh", "--link", "borromean"]),
    ("bad coeff", ["kh", "--link", "hopf", "--coeff", "F4"]),
    ("bad marking", ["pointed", "--link", "hopf", "--points", "9:0"]),
    ("collision", ["pointed", "--link", "hopf", "--points", "1:0", "--reduced", "--basepoint", "1:0"]),
    ("koszul without points", ["koszul", "--link", "hopf"]),
    ("missing file", ["kh", "--diagram-json", "/nonexistent/diagram.json"]),
]:
    p = run(args + ["--quiet"])
    check(name, p.returncode == 2, f"exit {p.returncode}; stderr: {p.stderr.strip()}")
    check(name + " message", p.stderr.strip() != "", "no message on stderr")

# stdin JSON input, including free loops
diagram = json.dumps({"pd": [[1, 3, 2, 4], [3, 1, 4, 2]], "free_loops": 1})
d = report("stdin json", ["kh", "--diagram-json", "-", "--coeff", "Q", "--quiet"], stdin=diagram)
check("stdin json", d and d["result"]["total_rank"] == 8 and d["input"]["free_loops"] == 1)

# determinism and timings
a = run(["ss", "--link", "trefoil", "--points", "1:0,3:0", "--coeff", "F5", "--quiet", "--no-timings"])
b = run(["ss", "--link", "trefoil", "--points", "1:0,3:0", "--coeff", "F5", "--quiet", "--no-timings"])
check("deterministic", a.returncode == 0 and a.stdout == b.stdout)
check("no timings", "timings_ms" not in json.loads(a.stdout))
check("timings", "timings_ms" in json.loads(run(["kh", "--link", "hopf", "--quiet"]).stdout))

# text tables go to stderr unless --quiet
p = run(["kh", "--link", "hopf"])
check("tables on stderr", "total: Z^4" in p.stderr and p.stdout.lstrip().startswith("{"))
check("quiet", run(["kh", "--link", "hopf", "--quiet"]).stderr == "")

if failures:
    print("\n".join(failures))
    sys.exit(1)
print("cli contract: all checks passed")
