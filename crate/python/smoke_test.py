#!/usr/bin/env python3
"""Smoke test for the fuzzpair Python extension.

Builds nothing itself: it locates the cdylib produced by
`cargo build -p fuzzpair-py` (release preferred), exposes it as an
importable module, and checks a handful of known values.
"""

import math
import shutil
import sys
import sysconfig
import tempfile
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent


def locate_extension() -> Path:
    names = ["libfuzzpair.so", "libfuzzpair.dylib", "fuzzpair.dll"]
    candidates = [
        REPO / "target" / profile / name
        for profile in ("release", "debug")
        for name in names
    ]
    for path in candidates:
        if path.exists():
            return path
    sys.exit(
        "fuzzpair extension not found; run `cargo build --release -p fuzzpair-py` first"
    )


def import_fuzzpair():
    lib = locate_extension()
    suffix = sysconfig.get_config_var("EXT_SUFFIX") or ".so"
    staging = Path(tempfile.mkdtemp(prefix="fuzzpair-py-"))
    shutil.copy2(lib, staging / f"fuzzpair{suffix}")
    sys.path.insert(0, str(staging))
    import fuzzpair

    return fuzzpair


def approx(a, b, tol=1e-12):
    assert abs(a - b) <= tol, f"{a} != {b} (tol {tol})"


def main():
    fp = import_fuzzpair()
    print(f"fuzzpair {fp.__version__} loaded from {fp.__file__}")

    # special functions
    approx(fp.spherical_j1(math.pi), 1.0 / math.pi, 1e-14)
    approx(fp.erf_real(1.0), 0.8427007929497149, 1e-14)
    approx(fp.window_integral(1.0, 1.0, 0.0).real, 0.7468241328124270, 1e-10)

    # ideal Fermi gas: singlet at contact, threshold near p_f d = 1.81
    singlet = fp.ideal_pair_state(1.0, 0.0)
    approx(singlet.negativity(), 1.0)
    approx(singlet.singlet_fraction(), 1.0)
    assert fp.ideal_pair_state(1.0, 1.8).entangled()
    assert not fp.ideal_pair_state(1.0, 1.83).entangled()

    # fuzzy detectors: spread restores entanglement
    f, g = fp.fuzzy_correlations(1.0, 1.0, 0.0)
    approx(f, g)
    approx(f, 0.7101446264380782, 1e-10)
    n1 = fp.fuzzy_negativity(1.0, 1.0, 2.0)
    n4 = fp.fuzzy_negativity(1.0, 4.0, 2.0)
    assert n4 > n1 > 0, (n1, n4)
    approx(fp.fuzzy_pair_state(1.0, 1.0, 2.0).negativity(), n1, 1e-10)

    # interferometer closed form and Bell weights
    approx(fp.hom_negativity(1.0, 1.0), math.exp(-1.0), 1e-15)
    wp, wm = fp.phi_weights(math.exp(-1.0))
    approx(wp + wm, 1.0)
    weights = fp.hom_state(1.0, 1.0).bell_weights()
    approx(weights[0], wp, 1e-13)
    approx(weights[1], wm, 1e-13)

    # oracles agree with the closed forms
    brute = fp.wick_fermi_state(256, 1.0, 1.0, sigma=1.0, geometry="1d")
    closed = fp.fuzzy_pair_state(1.0, 1.0, 1.0)
    assert brute.trace_distance(closed) < 1e-4
    fock = fp.fock_fermi_state(3, 1.0, 0.7, sigma=1.0)
    wick3 = fp.wick_fermi_state(3, 1.0, 0.7, sigma=1.0)
    assert fock.trace_distance(wick3) < 1e-12
    assert abs(fp.crossing_term(64, 1.0, 1.0)) < 1e-12
    assert fp.boson_brute_state(1.0, 1.0, 64).trace_distance(fp.hom_state(1.0, 1.0)) < 1e-4

    # matrices are well-formed and round-trip through the validator
    m = singlet.matrix()
    trace = sum(m[i][i].real for i in range(4))
    approx(trace, 1.0)
    assert singlet.basis() == ["↑↑", "↑↓", "↓↑", "↓↓"]
    assert fp.hom_state(1.0, 0.0).basis() == ["hh", "hv", "vh", "vv"]
    rebuilt = fp.two_qubit_state([[2 * v for v in row] for row in m])
    approx(rebuilt.trace_distance(singlet), 0.0, 1e-13)

    # a Werner state straddling the separability boundary
    def werner(lam):
        rows = []
        for i in range(4):
            rows.append([0j] * 4)
            rows[i][i] = complex((1 - lam) / 3, 0)
        rows[1][1] = rows[2][2] = complex(lam / 2 + (1 - lam) / 6, 0)
        rows[1][2] = rows[2][1] = complex(-lam / 2 + (1 - lam) / 6, 0)
        return fp.two_qubit_state(rows)

    approx(werner(0.7).negativity(), 0.4, 1e-12)
    assert werner(0.7).entangled()
    assert not werner(0.4).entangled()

    # domain errors surface as Python exceptions
    try:
        fp.phi_weights(1.5)
    except ValueError:
        pass
    else:
        sys.exit("phi_weights(1.5) should raise ValueError")

    print("all smoke tests passed")


if __name__ == "__main__":
    main()
