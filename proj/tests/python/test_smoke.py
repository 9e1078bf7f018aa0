"""Smoke test for the python bindings.

Usage: test_smoke.py [dir-containing-built-module]
"""

import sys

if len(sys.argv) > 1:
    sys.path.insert(0, sys.argv[1])

import _liouville as pl  # noqa: E402


def main() -> None:
    # exact disk field: v = 1 - r^2, so v at the center node equals 1
    field = pl.exact_disk_v(1.0, 1 / 16)
    nx, ny, h = field["nx"], field["ny"], field["h"]
    ox, oy = field["origin"]
    ci = round(-ox / h)
    cj = round(-oy / h)
    v_center = field["values"][cj * nx + ci]
    assert abs(v_center - 1.0) < 1e-12, v_center

    dom = pl.Domain.circle(1.0)
    assert abs(dom.reach - 1.0) < 1e-6
    assert abs(dom.distance(0.5, 0.0) - 0.5) < 1e-9

    sol = pl.solve_trimmed(dom, 0.1, 2, 1 / 32)
    assert sol["converged"]
    # u at the center should match the closed form u = -ln(1 - r^2) = 0
    ci = round(-sol["origin"][0] / sol["h"])
    cj = round(-sol["origin"][1] / sol["h"])
    u_center = sol["values"][cj * sol["nx"] + ci]
    assert abs(u_center) < 5e-2, u_center

    tr = pl.w0_trace(dom, 0.0, 0.25)
    mism = max(abs(w + k) for w, k in zip(tr["trace"], tr["kappa"]))
    assert mism < 0.05, mism

    print("python smoke: ok")


if __name__ == "__main__":
    main()
