#!/usr/bin/env python3
"""Smoke test for the ramify_py extension module.

Build the module first:

    cargo build -p ramify-py            # or --release

then run this script from anywhere inside the repository:

    python3 python/smoke_test.py
"""

import shutil
import sys
import tempfile
from pathlib import Path


def load_module():
    repo = Path(__file__).resolve().parent.parent
    candidates = [
        repo / "target" / "release" / "libramify_py.so",
        repo / "target" / "debug" / "libramify_py.so",
    ]
    built = next((p for p in candidates if p.exists()), None)
    if built is None:
        sys.exit("build the extension first: cargo build -p ramify-py")
    staging = Path(tempfile.mkdtemp(prefix="ramify_py_"))
    shutil.copy(built, staging / "ramify_py.so")
    sys.path.insert(0, str(staging))
    import ramify_py

    return ramify_py


def main():
    ramify = load_module()

    # catalog and bundle calculus
    p2 = ramify.projective_space(2)
    assert p2.dimension() == 2
    tangent = ramify.tangent(p2)
    assert tangent.total_chern().render() == "1 + 3*h + 3*h^2"
    h = ramify.line_bundle(p2, [1]).chern(1)
    twisted = tangent.twist(h)
    assert twisted.chern(2).render() == "7*h^2"

    # discriminant degrees: the twisted tangent family and a defect case
    assert ramify.disc_degree(twisted) == 24
    assert ramify.disc_degree_jet(twisted) == 24
    o1 = ramify.line_bundle(p2, [1])
    assert ramify.disc_degree(o1.direct_sum(o1)) == 0

    # projective bundles: the Grothendieck relation on a Hirzebruch surface
    p1 = ramify.projective_space(1)
    e = ramify.line_bundle(p1, [0]).direct_sum(ramify.line_bundle(p1, [1]))
    pb = ramify.proj_bundle(e)
    assert pb.xi().__pow__(2).render() == "h*xi"
    assert pb.integral(pb.xi().__pow__(2)) == "1"

    # rank-2 surface machinery
    assert ramify.branch_class(3) == "6*D - 4*A"
    cubic = ramify.chi_cubic()
    assert cubic[3] == "1/3*D^2 - 4/3*c2E"
    assert ramify.bogomolov_check(0, 0, -1, 1, 0, -1, 0) == (True, True, True)

    # the script DSL end to end
    out = ramify.eval_script(
        "let X = P(3); print disc_degree(twist(tangent(X), line(X, [2])));"
    )
    assert out == ["324"], out
    assert ramify.eval_expr("2^10 - 24") == "1000"

    print("ramify_py smoke test: OK")


if __name__ == "__main__":
    main()
