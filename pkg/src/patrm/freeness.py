"""Non-crossing pair-partition moment predictions and freeness diagnostics.

The prediction machinery evaluates mixed moments of a free semicircular
family against arbitrary marginals: decompose the monomial into guide
letters alternating with blocks, sum over color-respecting non-crossing
pair partitions of the guide letters, and multiply block marginals along
the cycles of the partition composed with the full cycle.  Wigner copies
play the semicircular role; the same machinery with another kind in that
role quantifies *non*-freeness.  Multi-copy guide families use the
colored partition filter; coverage beyond two copies is numerical
extrapolation, not a proved case.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from . import limits
from .algebra import Monomial
from .linkfns import LinkKind
from .sampler import InputDistribution, empirical_trace_moment, sample_matrix, trace_moment_samples

PairPartition = tuple[tuple[int, int], ...]
CyclePermutation = tuple[tuple[int, ...], ...]


def is_noncrossing(partition: PairPartition) -> bool:
    """No pairs (a, b), (c, d) with a < c < b < d."""
    for (a, b), (c, d) in itertools.combinations(partition, 2):
        if a < c < b < d or c < a < d < b:
            return False
    return True


def all_pair_partitions(m: int) -> list[PairPartition]:
    """Every perfect matching of {1..m}; empty for odd m."""
    if m % 2:
        return []
    out: list[PairPartition] = []

    def rec(avail: tuple[int, ...], acc: tuple[tuple[int, int], ...]):
        if not avail:
            out.append(acc)
            return
        a = avail[0]
        for j in range(1, len(avail)):
            b = avail[j]
            rec(avail[1:j] + avail[j + 1 :], acc + ((a, b),))

    rec(tuple(range(1, m + 1)), ())
    return out


def enumerate_nc2(m: int) -> list[PairPartition]:
    """All non-crossing perfect matchings of {1..m}; Catalan(m/2) of them."""
    if m < 0:
        raise ValueError("m must be >= 0")
    if m % 2:
        return []
    if m == 0:
        return [()]

    def rec(points: tuple[int, ...]) -> list[PairPartition]:
        if not points:
            return [()]
        a = points[0]
        out = []
        for j in range(1, len(points), 2):
            b = points[j]
            inner = points[1:j]
            outer = points[j + 1 :]
            for pi in rec(inner):
                for po in rec(outer):
                    out.append(((a, b),) + pi + po)
        return out

    return [tuple(sorted(p)) for p in rec(tuple(range(1, m + 1)))]


def filter_colored(partitions: Sequence[PairPartition], colors: Sequence[int]) -> list[PairPartition]:
    """Keep partitions that only pair equal colors (copy labels)."""
    return [
        p for p in partitions if all(colors[a - 1] == colors[b - 1] for a, b in p)
    ]


def sigma_gamma_cycles(sigma: PairPartition, m: int) -> CyclePermutation:
    """Cycles of r -> sigma(gamma(r)), gamma the full cycle (1 2 ... m).

    sigma acts as the involution swapping each pair.  For non-crossing
    sigma, and only then, the composition has 1 + m/2 cycles.
    """
    inv = {}
    for a, b in sigma:
        inv[a] = b
        inv[b] = a
    if sorted(inv) != list(range(1, m + 1)):
        raise ValueError("partition does not cover {1..m}")

    def step(r: int) -> int:
        g = r + 1 if r < m else 1
        return inv[g]

    cycles = []
    seen: set[int] = set()
    for start in range(1, m + 1):
        if start in seen:
            continue
        cyc = [start]
        seen.add(start)
        nxt = step(start)
        while nxt != start:
            cyc.append(nxt)
            seen.add(nxt)
            nxt = step(nxt)
        cycles.append(tuple(cyc))
    return tuple(cycles)


@dataclass(frozen=True)
class AlternatingMonomial:
    """Guide letters alternating with (possibly empty) blocks of other kinds.

    guide_indices[r] is the copy index of the r-th guide letter; blocks[r]
    holds the letters between guide letters r and r+1 (cyclically for the
    last).
    """

    guide_kind: LinkKind
    guide_indices: tuple[int, ...]
    blocks: tuple[tuple[tuple[LinkKind, int], ...], ...]

    @property
    def m(self) -> int:
        return len(self.guide_indices)


def alternating_decomposition(q: Monomial, guide_kind: LinkKind = LinkKind.WIGNER) -> AlternatingMonomial:
    """Rotate the monomial to start on a guide letter and split into blocks."""
    letters = q.letters
    shift = next((i for i, (kind, _) in enumerate(letters) if kind is guide_kind), None)
    if shift is None:
        raise ValueError(f"monomial has no {guide_kind.char} letter")
    letters = letters[shift:] + letters[:shift]
    guide_indices: list[int] = []
    blocks: list[tuple[tuple[LinkKind, int], ...]] = []
    for kind, idx in letters:
        if kind is guide_kind:
            guide_indices.append(idx)
            blocks.append(())
        else:
            blocks[-1] = blocks[-1] + ((kind, idx),)
    return AlternatingMonomial(guide_kind, tuple(guide_indices), tuple(blocks))


def default_marginal(
    method: str = "mc",
    samples: int = limits.DEFAULT_MC_SAMPLES,
    seed: int = 0,
) -> Callable[[tuple], float]:
    """Marginal limit functional: alpha on non-guide monomials, 1 on the empty word."""

    def marginal(letters: tuple) -> float:
        if not letters:
            return 1.0
        return limits.alpha(Monomial(letters), method, samples=samples, seed=seed)

    return marginal


def free_moment_prediction(
    q: Monomial,
    marginal: Optional[Callable[[tuple], float]] = None,
    guide_kind: LinkKind = LinkKind.WIGNER,
    **marginal_kwargs,
) -> float:
    """Mixed-moment value if the guide copies were a free semicircular family.

    Sum over color-respecting non-crossing pair partitions of the guide
    positions; each partition contributes the product, over cycles of the
    partition composed with the full cycle, of the marginal of the
    concatenated blocks visited by that cycle.
    """
    alt = alternating_decomposition(q, guide_kind)
    if marginal is None:
        marginal = default_marginal(**marginal_kwargs)
    total = 0.0
    for sigma in filter_colored(enumerate_nc2(alt.m), alt.guide_indices):
        prod = 1.0
        for cycle in sigma_gamma_cycles(sigma, alt.m):
            letters: tuple = ()
            for r in cycle:
                letters = letters + alt.blocks[r - 1]
            prod *= marginal(letters)
        total += prod
    return total


def semicircle_moment(k: int) -> float:
    """k-th moment of the semicircle law: Catalan(k/2) for even k, else 0."""
    if k < 0:
        raise ValueError("k must be >= 0")
    if k % 2:
        return 0.0
    h = k // 2
    return float(math.comb(2 * h, h) // (h + 1))


@dataclass(frozen=True)
class FreenessReport:
    """Limit-vs-prediction (and optional simulation) comparison for one monomial."""

    q: str
    alpha: float
    alpha_stderr: float
    free_prediction: float
    empirical: Optional[float]
    empirical_sd: Optional[float]
    deviation: float  # |alpha - prediction|
    empirical_deviation: Optional[float]  # |empirical - prediction|
    free_within_tol: bool
    tol: float

    def to_json_dict(self) -> dict:
        return {
            "q": self.q,
            "alpha": self.alpha,
            "alpha_stderr": self.alpha_stderr,
            "free_prediction": self.free_prediction,
            "empirical": self.empirical,
            "empirical_sd": self.empirical_sd,
            "deviation": self.deviation,
            "empirical_deviation": self.empirical_deviation,
            "free_within_tol": self.free_within_tol,
            "tol": self.tol,
        }


def freeness_report(
    q: Monomial,
    n: int = 0,
    dist: InputDistribution = InputDistribution.GAUSSIAN,
    reps: int = 0,
    tol: float = 0.03,
    method: str = "mc",
    samples: int = limits.DEFAULT_MC_SAMPLES,
    seed: int = 0,
) -> FreenessReport:
    """Compare the combinatorial limit with the free prediction for one monomial.

    The monomial must mix Wigner letters with at least one other kind (the
    freeness claim is specific to the Wigner role).  The empirical column
    is simulated only when reps >= 1 and n >= 1, and is advisory: the
    verdict compares limit against prediction.
    """
    kinds = {kind for kind, _ in q.letters}
    if LinkKind.WIGNER not in kinds:
        raise ValueError("freeness check requires at least one Wigner letter")
    if kinds == {LinkKind.WIGNER}:
        raise ValueError("freeness check requires at least one non-Wigner letter")
    a_val, a_err = limits.alpha_estimate(q, method, samples=samples, seed=seed)
    pred = free_moment_prediction(q, method=method, samples=samples, seed=seed)
    emp = emp_sd = emp_dev = None
    if reps >= 1 and n >= 1:
        est = empirical_trace_moment(q, n, dist, reps, seed)
        emp, emp_sd = est.mean, est.stddev
        emp_dev = abs(emp - pred)
    dev = abs(a_val - pred)
    return FreenessReport(
        str(q), a_val, a_err, pred, emp, emp_sd, dev, emp_dev, dev <= tol, tol
    )


@dataclass(frozen=True)
class DecayRow:
    n: int
    value: float


def trace_factorization_check(
    kind: LinkKind,
    powers: Sequence[int],
    n_list: Sequence[int],
    dist: InputDistribution,
    reps: int,
    seed: int = 0,
) -> list[DecayRow]:
    """Covariance-style gap E[prod tr X^k_i] - prod E[tr X^k_i] per size.

    All traces are of powers of one scaled matrix; the gap vanishes as n
    grows when the ensemble's spectral moments concentrate.
    """
    if len(powers) < 2:
        raise ValueError("need at least two powers")
    rows = []
    for n in n_list:
        per_power = np.empty((reps, len(powers)))
        for rep in range(reps):
            rng = np.random.default_rng(
                np.random.SeedSequence([seed & ((1 << 64) - 1), n, rep])
            )
            x = sample_matrix(kind, 1, n, dist, rng).entries
            acc = np.eye(n)
            traces = {}
            kmax = max(powers)
            for p in range(1, kmax + 1):
                acc = acc @ x
                traces[p] = np.trace(acc)
            for ci, p in enumerate(powers):
                per_power[rep, ci] = traces[p] / n ** (1 + p / 2)
        gap = float(per_power.prod(axis=1).mean() - per_power.mean(axis=0).prod())
        rows.append(DecayRow(int(n), gap))
    return rows


def concentration_check(
    q: Monomial,
    n_list: Sequence[int],
    dist: InputDistribution,
    reps: int,
    seed: int = 0,
) -> tuple[list[DecayRow], float]:
    """Fourth central moment of the normalized trace moment per size.

    Returns the per-size values and the fitted log-log slope against n
    (concentration at rate n^-2 shows up as a slope near -2).
    """
    if reps < 50:
        raise ValueError("need reps >= 50 for a usable fourth-moment estimate")
    rows = []
    for n in n_list:
        vals = trace_moment_samples(q, n, dist, reps, seed)
        m4 = float(((vals - vals.mean()) ** 4).mean())
        rows.append(DecayRow(int(n), m4))
    xs = np.log([r.n for r in rows])
    ys = np.log([max(r.value, 1e-300) for r in rows])
    slope = float(np.polyfit(xs, ys, 1)[0])
    return rows, slope
