"""Zeta functions, Dixmier traces, quantized volumes, and quadrature.

The operator under study scales each word block by the reciprocal composed
ratio, so its trace powers reduce to geometric series over the per-level
ratio sums.  Closed formulas are primary; truncated word sums and sampled
residue limits provide independent verification paths.  The Hausdorff
probability measure is realized by the self-similar weights ratio^dim, which
is exact for systems satisfying the open set condition.
"""

import csv
import io
import json
import math
from dataclasses import dataclass, asdict

import numpy as np

from .calculus import matrix_abs, placed_coordinate_form
from .cube import adjacent_vertex_pairs
from .errors import BudgetExceededError, DivergenceError
from .ifs import (
    IfsSystem,
    default_budget,
    iter_placed,
    similarity_dimension,
    word_count,
)

EQUALITY_TOL = 1e-9  # |p - dim_s| below this counts as the critical exponent
PRE_TOL = 1e-12
WEIGHT_SUM_TOL = 1e-10

QUANTITIES = (
    "zeta_closed",
    "zeta_truncated",
    "dixmier_dirac",
    "quantized_volume",
    "weighted_functional",
)


@dataclass(frozen=True)
class TraceReport:
    """One numerical trace-type quantity with its truncation metadata."""

    quantity: str
    p: float
    value: float
    dim_s: float
    depth: int | None = None
    error_bound: float | None = None

    def __post_init__(self):
        if self.quantity not in QUANTITIES:
            raise ValueError(f"unknown quantity {self.quantity!r}")

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    @staticmethod
    def from_json(text: str) -> "TraceReport":
        return TraceReport(**json.loads(text))


CSV_FIELDS = ("quantity", "p", "value", "dim_s", "depth", "error_bound")


def reports_to_csv(reports) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
    writer.writeheader()
    for r in reports:
        writer.writerow({k: ("" if v is None else repr(v) if isinstance(v, float) else v)
                         for k, v in asdict(r).items()})
    return buf.getvalue()


def reports_from_csv(text: str):
    reader = csv.DictReader(io.StringIO(text))
    out = []
    for row in reader:
        out.append(
            TraceReport(
                quantity=row["quantity"],
                p=float(row["p"]),
                value=float(row["value"]),
                dim_s=float(row["dim_s"]),
                depth=int(row["depth"]) if row["depth"] else None,
                error_bound=float(row["error_bound"]) if row["error_bound"] else None,
            )
        )
    return out


@dataclass(frozen=True)
class QuadratureSpec:
    """How to sample the self-similar measure: fixed-depth nodes or random words."""

    depth: int
    mode: str = "deterministic"
    sample_count: int = 10000
    seed: int = 0

    def __post_init__(self):
        if self.mode not in ("deterministic", "chaos_game"):
            raise ValueError(f"unknown quadrature mode {self.mode!r}")
        if self.depth < 0:
            raise ValueError("depth must be >= 0")
        if self.mode == "chaos_game" and self.sample_count < 1:
            raise ValueError("sample_count must be positive")


def _ratio_power_sum(ifs, p):
    return float(np.sum(ifs.ratios ** p))


def zeta_closed(ifs: IfsSystem, p: float) -> TraceReport:
    """Closed geometric-series value of the trace at exponent p."""
    dim = similarity_dimension(ifs)
    c = _ratio_power_sum(ifs, p)
    if c >= 1.0:
        raise DivergenceError(
            f"trace diverges at p={p}: per-level ratio sum {c:.6g} >= 1 "
            f"(needs p > dim_s = {dim:.12g})"
        )
    value = 2**ifs.n / (1.0 - c)
    return TraceReport(quantity="zeta_closed", p=p, value=value, dim_s=dim)


def zeta_truncated(
    ifs: IfsSystem,
    p: float,
    depth: int,
    budget: int | None = None,
    enumeration: str = "auto",
) -> TraceReport:
    """Partial trace sum over words of length <= depth.

    The value is the per-level power form; when the word count fits the
    budget the same sum is recomputed from an actual enumeration of composed
    ratios and the two must agree (enumeration='require' insists on it,
    'skip' disables it).  error_bound is the exact geometric tail when the
    series converges.
    """
    if p <= 0:
        raise ValueError("exponent must be positive")
    if depth < 0:
        raise ValueError("depth must be >= 0")
    if enumeration not in ("auto", "require", "skip"):
        raise ValueError(f"unknown enumeration mode {enumeration!r}")
    dim = similarity_dimension(ifs)
    c = _ratio_power_sum(ifs, p)
    levels = [c**j for j in range(depth + 1)]
    value = 2**ifs.n * math.fsum(levels)
    if budget is None:
        budget = default_budget()
    total_words = word_count(ifs.num_maps, depth)
    if enumeration == "require" and total_words > budget:
        raise BudgetExceededError(
            f"enumeration of {total_words} words exceeds the budget of {budget}"
        )
    if enumeration != "skip" and total_words <= budget:
        enumerated = _zeta_enumerated(ifs, p, depth)
        if not math.isclose(enumerated, value, rel_tol=1e-9):
            raise AssertionError(
                f"enumerated word sum {enumerated!r} disagrees with power form {value!r}"
            )
    bound = None
    if c < 1.0:
        bound = 2**ifs.n * c ** (depth + 1) / (1.0 - c)
    return TraceReport(
        quantity="zeta_truncated", p=p, value=value, dim_s=dim, depth=depth, error_bound=bound
    )


def _zeta_enumerated(ifs, p, depth):
    """Level-vectorized sum of e_w^p over all words of length <= depth."""
    rp = ifs.ratios ** p
    level = np.array([1.0])
    total = 1.0
    for _ in range(depth):
        level = np.multiply.outer(level, rp).ravel()
        total += float(level.sum())
    return 2**ifs.n * total


def _residue_slope(ifs, dim):
    """Derivative scale of the per-level ratio sum at the critical exponent."""
    ratios = ifs.ratios
    slope = -dim * float(np.sum(ratios**dim * np.log(ratios)))
    if slope <= 0.0:
        raise ValueError(
            "degenerate system: the critical residue is undefined for a single contraction"
        )
    return slope


def dixmier_trace_dirac(ifs: IfsSystem, p: float) -> TraceReport:
    """Residue value of the singular trace at exponent p.

    Nonzero exactly at the critical exponent, where the simple pole of the
    closed zeta form has residue 2^n over the log-weighted ratio sum.
    """
    dim = similarity_dimension(ifs)
    if p < dim - PRE_TOL:
        raise DivergenceError(f"exponent p={p} below the critical value dim_s={dim:.12g}")
    if abs(p - dim) <= EQUALITY_TOL:
        value = 2**ifs.n / _residue_slope(ifs, dim)
    else:
        value = 0.0
    return TraceReport(quantity="dixmier_dirac", p=p, value=value, dim_s=dim)


def residue_limit_samples(ifs: IfsSystem, p: float, ks=(3, 4, 5, 6)):
    """Sampled (z-1) * zeta(z p) near z = 1, with polynomial extrapolation to 0.

    Returns (deltas, samples, extrapolated); the samples use the closed zeta
    form, so this is an independent route to the residue value.
    """
    deltas = [10.0**-k for k in ks]
    samples = []
    for d in deltas:
        z = 1.0 + d
        samples.append(d * zeta_closed(ifs, z * p).value)
    return deltas, samples, _extrapolate_to_zero(deltas, samples)


def _extrapolate_to_zero(xs, ys):
    """Neville polynomial extrapolation of (xs, ys) to x = 0."""
    tab = list(ys)
    m = len(xs)
    for k in range(1, m):
        for i in range(m - k):
            tab[i] = (xs[i] * tab[i + 1] - xs[i + k] * tab[i]) / (xs[i] - xs[i + k])
    return tab[0]


def quantized_volume(ifs: IfsSystem, p: float) -> TraceReport:
    """Residue value of the volume-measure trace at exponent p.

    Equals n^(-dim_s/2) times the critical residue of the reciprocal-ratio
    trace; nonzero exactly at p = dim_s / n.
    """
    dim = similarity_dimension(ifs)
    q = dim / ifs.n
    if p < q - PRE_TOL:
        raise DivergenceError(f"exponent p={p} below the critical value dim_s/n={q:.12g}")
    if abs(p - q) <= EQUALITY_TOL:
        value = ifs.n ** (-dim / 2.0) * (2**ifs.n / _residue_slope(ifs, dim))
    else:
        value = 0.0
    return TraceReport(quantity="quantized_volume", p=p, value=value, dim_s=dim)


def volume_residue_samples(ifs: IfsSystem, p: float, ks=(3, 4, 5, 6)):
    """Sampled residue route for the volume-measure trace at exponent p."""
    n = ifs.n
    deltas = [10.0**-k for k in ks]
    samples = []
    for d in deltas:
        z = 1.0 + d
        c = _ratio_power_sum(ifs, n * z * p)
        if c >= 1.0:
            raise DivergenceError(f"volume trace diverges at z*p={z * p}")
        samples.append(d * (2**n / n ** (n * z * p / 2.0)) / (1.0 - c))
    return deltas, samples, _extrapolate_to_zero(deltas, samples)


def quantized_volume_truncated(
    ifs: IfsSystem,
    p: float,
    depth: int,
    budget: int | None = None,
    block_tol: float = 1e-9,
) -> TraceReport:
    """Partial volume-trace sum built from actual per-word operator blocks.

    For every word the ordered product of placed coordinate commutators is
    formed and its operator absolute value must be scalar; the scalars feed
    the sum.  This exercises the matrix route rather than the closed scalar
    shortcut.
    """
    if depth < 0:
        raise ValueError("depth must be >= 0")
    dim = similarity_dimension(ifs)
    n = ifs.n
    total = 0.0
    for cube in iter_placed(ifs, depth, budget=budget):
        scal, dev = _abs_volume_block(cube)
        expected = cube.e_w**n / n ** (n / 2.0)
        if dev > block_tol * max(1.0, expected):
            raise AssertionError(
                f"volume block at word {cube.word} is not scalar within {block_tol:g}"
            )
        total += 2**n * scal**p
    c = _ratio_power_sum(ifs, n * p)
    bound = None
    if c < 1.0:
        bound = (2**n / n ** (n * p / 2.0)) * c ** (depth + 1) / (1.0 - c)
    return TraceReport(
        quantity="quantized_volume", p=p, value=total, dim_s=dim, depth=depth, error_bound=bound
    )


def _abs_volume_block(cube):
    placement = cube.placement()
    n = cube.n
    prod = np.eye(2**n)
    for alpha in range(1, n + 1):
        prod = prod @ placed_coordinate_form(placement, alpha)
    block = matrix_abs(prod)
    scal = float(block[0, 0])
    dev = float(np.max(np.abs(block - scal * np.eye(2**n))))
    return scal, dev


def abs_volume_block_deviation(ifs: IfsSystem, depth: int, budget: int | None = None) -> float:
    """Max deviation of per-word volume blocks from their predicted scalar."""
    n = ifs.n
    worst = 0.0
    for cube in iter_placed(ifs, depth, budget=budget):
        placement = cube.placement()
        prod = np.eye(2**n)
        for alpha in range(1, n + 1):
            prod = prod @ placed_coordinate_form(placement, alpha)
        block = matrix_abs(prod)
        expected = cube.e_w**n / n ** (n / 2.0)
        worst = max(worst, float(np.max(np.abs(block - expected * np.eye(2**n)))))
    return worst


def integrate_hausdorff(
    ifs: IfsSystem,
    f,
    spec: QuadratureSpec,
    override_osc: bool = False,
    budget: int | None = None,
) -> float:
    """Integral of f against the self-similar probability measure.

    Deterministic mode sums ratio^dim_s weights times f at depth-J cube
    centers; chaos-game mode averages f over randomly sampled depth-J words
    drawn with the same per-symbol weights.
    """
    if not ifs.osc and not override_osc:
        raise ValueError(
            "self-similar weights realize the Hausdorff measure only under the open "
            "set condition; pass override_osc=True to integrate anyway"
        )
    dim = similarity_dimension(ifs)
    weights = ifs.ratios**dim
    if abs(float(weights.sum()) - 1.0) > WEIGHT_SUM_TOL:
        raise AssertionError("per-symbol weights do not sum to 1")
    if spec.mode == "deterministic":
        total = 0.0
        wsum = 0.0
        for cube in iter_placed(ifs, spec.depth, budget=budget):
            if len(cube.word) != spec.depth:
                continue
            w = cube.e_w**dim
            wsum += w
            total += w * float(f(cube.center()))
        if abs(wsum - 1.0) > WEIGHT_SUM_TOL:
            raise AssertionError(f"depth-{spec.depth} weights sum to {wsum!r}, not 1")
        return total
    rng = np.random.default_rng(spec.seed)
    probs = weights / weights.sum()
    draws = rng.choice(ifs.num_maps, size=(spec.sample_count, spec.depth), p=probs)
    mats = np.stack([m.matrix for m in ifs.maps])
    trans = np.stack([m.translation for m in ifs.maps])
    ratios = ifs.ratios
    pts = np.full((spec.sample_count, ifs.n), 0.5)
    for col in range(spec.depth - 1, -1, -1):
        s = draws[:, col]
        pts = ratios[s, None] * np.einsum("kij,kj->ki", mats[s], pts) + trans[s]
    values = np.array([float(f(pt)) for pt in pts])
    return float(values.mean())


def weighted_functional(
    ifs: IfsSystem,
    f,
    p: float,
    depth: int,
    budget: int | None = None,
    ks=(3, 4, 5, 6),
) -> TraceReport:
    """Regularized trace of the function-weighted operator at the critical exponent.

    Per-level vertex sums of f weighted by e_w^{z p} are accumulated to the
    cutoff depth, completed by a geometric tail in the per-level ratio sum,
    multiplied by (z - 1), and extrapolated to z = 1.
    """
    dim = similarity_dimension(ifs)
    if abs(p - dim) > EQUALITY_TOL:
        raise ValueError(f"weighted functional is defined at p = dim_s = {dim:.12g}, got {p}")
    deltas = [10.0**-k for k in ks]
    zs = [1.0 + d for d in deltas]
    level_sums = np.zeros((len(zs), depth + 1))
    for cube in iter_placed(ifs, depth, budget=budget):
        tau = math.fsum(float(f(v)) for v in cube.vertices)
        j = len(cube.word)
        for m, z in enumerate(zs):
            level_sums[m, j] += cube.e_w ** (z * p) * tau
    samples = []
    for m, z in enumerate(zs):
        c = _ratio_power_sum(ifs, z * p)
        if c >= 1.0:
            raise DivergenceError("regularized sum requires z > 1")
        total = float(level_sums[m].sum()) + float(level_sums[m, depth]) * c / (1.0 - c)
        samples.append(deltas[m] * total)
    value = _extrapolate_to_zero(deltas, samples)
    err = abs(value - samples[-1])
    return TraceReport(
        quantity="weighted_functional", p=p, value=value, dim_s=dim, depth=depth, error_bound=err
    )


def weighted_factorization(
    ifs: IfsSystem,
    f,
    depth: int,
    quad_depth: int | None = None,
    budget: int | None = None,
    override_osc: bool = False,
):
    """Weighted functional next to its factorized prediction.

    Returns (report, predicted, rel_diff) where predicted is the critical
    residue value times the quadrature integral of f.
    """
    dim = similarity_dimension(ifs)
    report = weighted_functional(ifs, f, dim, depth, budget=budget)
    quad = QuadratureSpec(depth=depth if quad_depth is None else quad_depth)
    integral = integrate_hausdorff(ifs, f, quad, override_osc=override_osc, budget=budget)
    predicted = dixmier_trace_dirac(ifs, dim).value * integral
    scale = max(abs(predicted), 1e-300)
    return report, predicted, abs(report.value - predicted) / scale


def eigenvalue_counting(ifs: IfsSystem, depth: int, lam: float) -> int:
    """Number of reciprocal composed ratios <= lam over words of length <= depth.

    Each word carries a 2^n-dimensional block, so the count is 2^n times the
    number of qualifying words.  Words are grouped by their multiset of
    ratios, which keeps the count polynomial in depth.
    """
    if lam <= 0:
        raise ValueError("threshold must be positive")
    uniq, mult = np.unique(ifs.ratios, return_counts=True)
    logs = np.log(uniq)
    log_lam = math.log(lam)
    slack = 1e-9 * (1.0 + abs(log_lam))
    count = 0
    for j in range(depth + 1):
        for combo in _compositions(j, len(uniq)):
            log_e = float(np.dot(combo, logs))
            if -log_e <= log_lam + slack:
                count += _multinomial(j, combo) * int(
                    np.prod([int(m) ** k for m, k in zip(mult, combo)])
                )
    return 2**ifs.n * count


def _compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in _compositions(total - head, parts - 1):
            yield (head,) + rest


def _multinomial(total, combo):
    out = math.factorial(total)
    for k in combo:
        out //= math.factorial(k)
    return out


def spectral_dimension_slope(ifs: IfsSystem, depth: int = 10, base: float = 3.0, k_min: int = 3):
    """Least-squares slope of log counting function against log threshold."""
    ks = range(k_min, depth + 1)
    xs = np.array([k * math.log(base) for k in ks])
    ys = np.array([math.log(eigenvalue_counting(ifs, depth, base**k)) for k in ks])
    slope, _ = np.polyfit(xs, ys, 1)
    return float(slope)


@dataclass(frozen=True)
class NormCheckReport:
    blocks: int
    max_weak_ratio: float  # block norm over sqrt(n) * edge-Lipschitz * e_w
    max_sharp_ratio: float  # block norm over edge-Lipschitz * e_w (logged, not asserted)
    bound_holds: bool


def commutator_norm_check(ifs: IfsSystem, f, depth: int, budget: int | None = None) -> NormCheckReport:
    """Per-word operator norms of the function commutator against the Lipschitz bound.

    Asserts block_norm <= sqrt(n) * L_edge * e_w with L_edge the maximal edge
    difference quotient of f on the placed cube; the sharper constant without
    the sqrt(n) factor is reported but not enforced.
    """
    from .cube import g_matrix  # local import keeps module load light

    n = ifs.n
    g = g_matrix(n)
    pairs = adjacent_vertex_pairs(n)
    sqrt_n = math.sqrt(n)
    max_weak = 0.0
    max_sharp = 0.0
    blocks = 0
    for cube in iter_placed(ifs, depth, budget=budget):
        verts = cube.vertices
        values = np.array([float(f(v)) for v in verts])
        l_edge = max(abs(values[a] - values[b]) for a, b in pairs) / cube.e_w
        delta = values[0::2][None, :] - values[1::2][:, None]
        lower = (delta * g) / sqrt_n
        norm = float(np.linalg.norm(lower, 2))
        blocks += 1
        bound = l_edge * cube.e_w
        if bound == 0.0:
            if norm > 1e-14:
                max_weak = math.inf
            continue
        max_weak = max(max_weak, norm / (sqrt_n * bound))
        max_sharp = max(max_sharp, norm / bound)
    return NormCheckReport(
        blocks=blocks,
        max_weak_ratio=max_weak,
        max_sharp_ratio=max_sharp,
        bound_holds=max_weak <= 1.0 + 1e-12,
    )
