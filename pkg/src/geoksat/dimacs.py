"""DIMACS CNF interchange plus JSON serialization of sites and cores.

The emitted format is the standard one: comment lines ``c key = value``
carrying model parameters, a header ``p cnf n m``, then one clause per
line as signed 1-based integers in draw order terminated by 0.  Parsing
back an emitted file reproduces the formula literal-for-literal.
"""

import json

import numpy as np

from .generate import Formula
from .voronoi import WeightedSites


def emit_dimacs(f, destination, comments=None):
    """Write a formula as DIMACS CNF; ``comments`` is a mapping echoed as
    ``c key = value`` lines (model parameters, seed, ...)."""
    lines = []
    for key, value in (comments or {}).items():
        lines.append(f"c {key} = {value}")
    lines.append(f"p cnf {f.n} {f.m}")
    for row in f.literals:
        lines.append(" ".join(str(int(l)) for l in row) + " 0")
    text = "\n".join(lines) + "\n"
    if hasattr(destination, "write"):
        destination.write(text)
    else:
        with open(destination, "w") as fh:
            fh.write(text)


def parse_dimacs(source):
    """Parse DIMACS CNF into (Formula, comment lines).

    Only width-uniform formulas are supported (every clause must have the
    same number of literals).
    """
    if hasattr(source, "read"):
        text = source.read()
    else:
        with open(source) as fh:
            text = fh.read()
    comments = []
    n = m = None
    clauses = []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        if line.startswith("c"):
            comments.append(line[1:].strip())
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise ValueError(f"bad problem line: {line!r}")
            n, m = int(parts[2]), int(parts[3])
            continue
        lits = [int(tok) for tok in line.split()]
        if not lits or lits[-1] != 0:
            raise ValueError(f"clause line must end with 0: {line!r}")
        clauses.append(lits[:-1])
    if n is None:
        raise ValueError("missing 'p cnf' header")
    if len(clauses) != m:
        raise ValueError(f"header announces {m} clauses, found {len(clauses)}")
    widths = {len(cl) for cl in clauses}
    if len(widths) > 1:
        raise ValueError(f"mixed clause widths {sorted(widths)} unsupported")
    k = widths.pop() if widths else 0
    lits = np.asarray(clauses, dtype=np.int64).reshape(m, k)
    return Formula(n=n, k=k, literals=lits), comments


def core_certificate(core):
    """JSON-ready certificate of an unsatisfiable core."""
    return {
        "variables": list(core.variables),
        "clause_indices": list(core.clause_indices),
        "sign_patterns": list(core.patterns),
    }


def core_dimacs_fragment(f, core):
    """The core's clauses as a standalone DIMACS fragment string."""
    lines = [f"c unsat core over variables {' '.join(map(str, core.variables))}",
             f"p cnf {f.n} {len(core.clause_indices)}"]
    for c in core.clause_indices:
        lines.append(" ".join(str(int(l)) for l in f.literals[c]) + " 0")
    return "\n".join(lines) + "\n"


def write_core_certificate(f, core, json_path, fragment_path=None):
    with open(json_path, "w") as fh:
        json.dump(core_certificate(core), fh, indent=2, sort_keys=True)
        fh.write("\n")
    if fragment_path is not None:
        with open(fragment_path, "w") as fh:
            fh.write(core_dimacs_fragment(f, core))


def save_sites(sites, path):
    data = {"positions": sites.positions.tolist(),
            "weights": sites.weights.tolist()}
    with open(path, "w") as fh:
        json.dump(data, fh)
        fh.write("\n")


def load_sites(path):
    with open(path) as fh:
        data = json.load(fh)
    return WeightedSites(np.asarray(data["positions"], dtype=float),
                         np.asarray(data["weights"], dtype=float))
