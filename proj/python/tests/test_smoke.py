"""Smoke tests for the _vilab extension module."""
import json
import math
import sys

import _vilab as v


def check(name, cond):
    if not cond:
        print("FAIL", name)
        sys.exit(1)
    print("ok", name)


def main():
    p = v.scalar_projection_problem(0.0, 1.0, 2.0)
    rep = v.solve(p)
    check("projection solve", abs(rep["u"][0] - 1.0) <= 1e-10 and rep["converged"])

    # Residual of the feasible stall: derived supremum 1/4.
    ph = v.scalar_projection_problem(0.0, 1.0, 0.5)
    eps = v.epsilon_residual(ph, [0.0], "one_plus_norm")
    check("residual supremum", abs(eps - 0.25) <= 1e-6)
    check("norm-mode residual", abs(v.epsilon_residual(ph, [0.0], "norm") - 0.5) <= 1e-6)

    seq = [[1.0 - 1.0 / n] for n in range(1, 1025)]
    flags = v.classify_sequence(p, seq)
    check("interior harmonic classification",
          flags["t_approximating"] and not flags["tykhonov_approximating"])
    check("row count", len(flags["rows"]) == 1024)

    doc = json.loads(p.to_json())
    check("schema fields",
          set(doc) == {"inner_product", "operator", "set", "functional", "rhs"})
    q = v.load_problem(json.dumps(doc))
    check("round trip", q.dim == p.dim)
    check("slack sign", p.slack([0.5], [1.0]) > 0.0)

    bad = dict(doc)
    bad["operator"] = {"kind": "cubic"}
    try:
        v.load_problem(json.dumps(bad))
        check("validation error raised", False)
    except v.ValidationError:
        check("validation error raised", True)

    print("SMOKE PASS")


if __name__ == "__main__":
    main()
