"""Self-check suite behind the verify command.

Each check returns its name, pass/fail, the tolerance it enforced, and a
short detail string.  The fault-injection flag flips one sign in the
dimension-3 edge matrix before the unitarity check; it exists purely as a
negative control for the suite itself.
"""

from dataclasses import dataclass

import numpy as np

from . import calculus, cube, ktheory, presets, spectral
from . import ifs as ifs_mod


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    tolerance: float
    detail: str


def _result(name, observed, tolerance, extra=""):
    detail = f"max residual {observed:.3g}"
    if extra:
        detail += f" ({extra})"
    return CheckResult(name=name, passed=observed <= tolerance, tolerance=tolerance, detail=detail)


def check_unitarity(max_n=8, inject_fault=False):
    worst = 0.0
    for n in range(1, max_n + 1):
        g = cube.g_matrix(n).astype(float)
        if inject_fault and n == 3:
            g = g.copy()
            g[0, 0] = -g[0, 0]
        u = g / np.sqrt(n)
        worst = max(worst, float(np.max(np.abs(u @ u.T - np.eye(u.shape[0])))))
    return _result("unitarity", worst, 1e-12, f"n<={max_n}")


def check_involution(max_n=8):
    worst = 0.0
    for n in range(1, max_n + 1):
        f = cube.f_matrix(n)
        eps = cube.grading(n)
        eye = np.eye(2**n)
        worst = max(worst, float(np.max(np.abs(f @ f - eye))))
        worst = max(worst, float(np.max(np.abs(f - f.T))))
        worst = max(worst, float(np.max(np.abs(f @ eps + eps @ f))))
    return _result("involution_grading", worst, 1e-12, f"n<={max_n}")


def check_sign_pattern(max_n=8):
    worst = 0
    for n in range(1, max_n + 1):
        diff = np.sign(cube.g_matrix(n)) - cube.oriented_edges(n).entries
        worst = max(worst, int(np.max(np.abs(diff))))
    return _result("edge_sign_pattern", float(worst), 0.0, f"n<={max_n}, exact")


def check_two_path(max_n=8, trials=20, seed=7):
    rng = np.random.default_rng(seed)
    worst = 0.0
    for n in range(1, max_n + 1):
        for _ in range(trials):
            f = rng.standard_normal(2**n) + 1j * rng.standard_normal(2**n)
            d = calculus.commutator_direct(n, f) - calculus.commutator_hadamard(n, f)
            worst = max(worst, float(np.max(np.abs(d))))
    return _result("two_path_commutator", worst, 1e-12, f"n<={max_n}, {trials} draws each")


def check_clifford(max_n=8):
    worst = 0.0
    for n in range(1, max_n + 1):
        worst = max(worst, calculus.clifford_check(n))
    return _result("clifford_relation", worst, 1e-11, f"n<={max_n}")


def check_volume_element(max_n=6):
    worst = 0.0
    for n in range(1, max_n + 1):
        for e in (1.0, 1.0 / 3.0, 3.0):
            block = calculus.volume_element_abs(n, e)
            expected = e**n / n ** (n / 2.0)
            worst = max(worst, float(np.max(np.abs(block - expected * np.eye(2**n)))))
    return _result("volume_element", worst, 1e-11, f"n<={max_n}, e in {{1, 1/3, 3}}")


def check_trace_convergence(depth=8):
    # the truncation gap equals the tail bound in exact arithmetic, so the
    # comparison carries a rounding allowance relative to the closed value
    worst = 0.0
    names = ["cantor_set", "cantor_dust2", "sierpinski_carpet", "menger_sponge", "rotation"]
    for name in names:
        ifs = presets.preset(name)
        p = ifs_mod.similarity_dimension(ifs) + 0.2
        trunc = spectral.zeta_truncated(ifs, p, depth)
        closed = spectral.zeta_closed(ifs, p)
        excess = abs(trunc.value - closed.value) - trunc.error_bound
        worst = max(worst, excess / (1.0 + closed.value))
    return _result("trace_tail_bound", worst, 1e-12, f"J={depth}, relative bound slack")


def check_rotation_blocks(depth=3):
    dev = spectral.abs_volume_block_deviation(presets.rotation(), depth)
    return _result("rotation_volume_blocks", dev, 1e-10, f"depth<={depth}")


def check_pairings():
    cs = presets.cantor_set()
    bad = 0
    for k in (1, 2, 3):
        got = ktheory.index_pairing(cs, ktheory.interval_projection(k), k + 3)
        if got.value != k or not got.stabilized:
            bad += 1
        if ktheory.connes_gap_pairing(k, k + 3) != 1:
            bad += 1
    cert = ktheory.nonvanish_certificate(presets.cantor_dust(2))
    if cert is None or not cert.pairing_matches:
        bad += 1
    if ktheory.nonvanish_certificate(presets.sierpinski_carpet()) is not None:
        bad += 1
    return _result("index_pairings", float(bad), 0.0, "integer checks")


def run_all(max_n=8, inject_fault=False):
    return [
        check_unitarity(max_n=max_n, inject_fault=inject_fault),
        check_involution(max_n=max_n),
        check_sign_pattern(max_n=max_n),
        check_two_path(max_n=min(max_n, 8)),
        check_clifford(max_n=min(max_n, 8)),
        check_volume_element(max_n=min(max_n, 6)),
        check_trace_convergence(),
        check_rotation_blocks(),
        check_pairings(),
    ]
