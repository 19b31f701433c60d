"""SAT-competition style wrapper around a python-sat backend.

``python3 -m gallai.pysat_runner <cnf> [<proof>]`` prints ``s`` / ``v`` lines
and exits 10 (SAT) or 20 (UNSAT), so it can be plugged in as an external
solver command.  Needs the optional ``python-sat`` package.
"""
from __future__ import annotations

import os
import sys

from pysat.formula import CNF
from pysat.solvers import Solver

BACKEND = os.environ.get("GALLAI_PYSAT_BACKEND", "cadical153")


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    if not 1 <= len(argv) <= 2:
        print("usage: python3 -m gallai.pysat_runner <cnf> [<proof>]", file=sys.stderr)
        return 1
    cnf = CNF(from_file=argv[0])
    want_proof = len(argv) == 2
    with Solver(name=BACKEND, bootstrap_with=cnf.clauses, with_proof=want_proof) as s:
        sat = s.solve()
        if sat:
            model = s.get_model() or []
            print("s SATISFIABLE")
            # cover every declared variable, even ones absent from all clauses
            seen = {abs(v) for v in model}
            model = list(model) + [-v for v in range(1, cnf.nv + 1) if v not in seen]
            print("v " + " ".join(map(str, model)) + " 0")
            return 10
        if want_proof:
            with open(argv[1], "w") as fh:
                fh.writelines(line + "\n" for line in s.get_proof() or [])
        print("s UNSATISFIABLE")
        return 20


if __name__ == "__main__":
    sys.exit(main())
