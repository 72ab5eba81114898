"""Limit volumes of pair-matched words and monomial trace-moment limits.

The count of index circuits compatible with a word's match structure is,
per match, a finite union of affine-linear cases (sign choices for
Toeplitz, wrap offsets for the circulants, endpoint identifications for
Wigner).  Within one case every dependent vertex is an exact affine form
over the generating vertices; the normalized count then converges to the
volume of a box slice, which this module evaluates by Monte Carlo, and
cross-checks against exact circuit counts at finite size.

All affine arithmetic is exact (Fractions); the identity-or-measure-zero
dichotomy for closure and Wigner equalities is decided symbolically,
never by tolerance.
"""

from __future__ import annotations

import hashlib
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .algebra import (
    ColoredWord,
    Monomial,
    drop_indices,
    enumerate_pair_matched_words,
    match_pairs,
    pairing_count_estimate,
)
from .linkfns import LinkKind, branch_count, delta, solve_branch_grid

DEFAULT_MC_SAMPLES = 1_000_000
DEFAULT_BUDGET = 5_000_000_000
_MC_CHUNK = 1 << 21
_SEED_MASK = (1 << 64) - 1  # seeds are taken mod 2^64

# Per-match case domains: Toeplitz sign, Hankel trivial, Reverse Circulant
# wrap offset, Symmetric Circulant six sign/wrap combinations, Wigner
# straight (C1) or reversed (C2) endpoint identification.
_CASE_DOMAINS = {
    LinkKind.TOEPLITZ: (1, -1),
    LinkKind.HANKEL: (0,),
    LinkKind.REVERSE_CIRCULANT: (0, 1, -1),
    LinkKind.SYMMETRIC_CIRCULANT: (1, 2, 3, 4, 5, 6),
    LinkKind.WIGNER: ("C1", "C2"),
}

CaseLabel = tuple


class BudgetExceededError(RuntimeError):
    """Raised when an exact enumeration would exceed the work budget."""


@dataclass(frozen=True)
class AffineForm:
    """Exact affine form over the generating coordinates: coeffs . v + const."""

    coeffs: tuple[Fraction, ...]
    const: Fraction

    @staticmethod
    def coordinate(slot: int, dim: int) -> "AffineForm":
        c = [Fraction(0)] * dim
        c[slot] = Fraction(1)
        return AffineForm(tuple(c), Fraction(0))

    def __add__(self, other: "AffineForm") -> "AffineForm":
        return AffineForm(
            tuple(a + b for a, b in zip(self.coeffs, other.coeffs)),
            self.const + other.const,
        )

    def __sub__(self, other: "AffineForm") -> "AffineForm":
        return AffineForm(
            tuple(a - b for a, b in zip(self.coeffs, other.coeffs)),
            self.const - other.const,
        )

    def shift(self, c) -> "AffineForm":
        return AffineForm(self.coeffs, self.const + Fraction(c))

    def bare_coordinate(self) -> Optional[int]:
        """Slot index when the form is exactly one coordinate, else None."""
        if self.const != 0:
            return None
        nz = [(i, c) for i, c in enumerate(self.coeffs) if c != 0]
        if len(nz) == 1 and nz[0][1] == 1:
            return nz[0][0]
        return None

    def value_interval(self) -> tuple[Fraction, Fraction]:
        """Enclosing interval of the form over the half-open unit cube."""
        lo = self.const + sum((c for c in self.coeffs if c < 0), Fraction(0))
        hi = self.const + sum((c for c in self.coeffs if c > 0), Fraction(0))
        return lo, hi

    def float_vector(self) -> tuple[np.ndarray, float]:
        return np.array([float(c) for c in self.coeffs]), float(self.const)


@dataclass(frozen=True)
class ConstraintSystem:
    """One case's affine description of all circuit vertices.

    gen_positions lists the generating vertices (position 0 plus first
    occurrences).  dep_forms gives, for every other position, its affine
    form over the generating coordinates; equalities are the extra Wigner
    identifications; closure pairs the form of the final vertex with the
    coordinate form of vertex 0.
    """

    dim: int
    gen_positions: tuple[int, ...]
    dep_forms: tuple[tuple[int, AffineForm], ...]
    equalities: tuple[tuple[AffineForm, AffineForm], ...]
    closure: tuple[AffineForm, AffineForm]

    def identity_ok(self) -> bool:
        """True when closure and all equalities hold as exact form identities."""
        if self.closure[0] != self.closure[1]:
            return False
        return all(a == b for a, b in self.equalities)

    def inequality_forms(self) -> list[AffineForm]:
        """Dependent forms that need a unit-interval check under sampling.

        Bare generating coordinates are already uniform on [0,1) and are
        skipped; the final vertex is pinned to v0 by the closure identity.
        """
        last = max(pos for pos, _ in self.dep_forms) if self.dep_forms else -1
        out = []
        for pos, form in self.dep_forms:
            if pos == last:
                continue
            if form.bare_coordinate() is not None:
                continue
            out.append(form)
        return out

    def canonical_key(self):
        eq_key = sorted(
            ((a.coeffs, a.const, b.coeffs, b.const) for a, b in self.equalities)
        )
        return (self.gen_positions, self.dep_forms, tuple(eq_key))


@dataclass(frozen=True)
class VolumeEstimate:
    """A word-volume value with its uncertainty and provenance."""

    value: float
    stderr: float
    method: str  # "mc" | "exact"
    n_used: Optional[int] = None
    samples: Optional[int] = None

    def to_json_dict(self) -> dict:
        d = {"value": self.value, "stderr": self.stderr, "method": self.method}
        if self.n_used is not None:
            d["n_used"] = self.n_used
        if self.samples is not None:
            d["samples"] = self.samples
        return d


def match_case_domain(kind: LinkKind) -> tuple:
    return _CASE_DOMAINS[kind]


def build_cases(w: ColoredWord) -> list[CaseLabel]:
    """Cartesian product of per-match case sets, in match_pairs order."""
    pairs = match_pairs(w)
    domains = [match_case_domain(w.colors[i - 1]) for i, _ in pairs]
    return list(itertools.product(*domains))


def resolve_affine(w: ColoredWord, case: CaseLabel) -> ConstraintSystem:
    """Affine system of one case: walk positions, emitting dependent forms.

    At a second occurrence s matched to first occurrence f the new vertex
    v_s is determined from v_{s-1}, v_{f-1}, v_f by the case's relation;
    Wigner cases additionally pin v_{s-1} to an earlier form.
    """
    pairs = match_pairs(w)
    length = len(w)
    first_of = {s: f for f, s in pairs}
    case_of = {s: case[idx] for idx, (f, s) in enumerate(pairs)}
    gen_positions = tuple([0] + [f for f, _ in pairs])
    dim = len(gen_positions)
    slot = {pos: i for i, pos in enumerate(gen_positions)}

    forms: dict[int, AffineForm] = {0: AffineForm.coordinate(0, dim)}
    equalities: list[tuple[AffineForm, AffineForm]] = []
    dep: list[tuple[int, AffineForm]] = []

    for pos in range(1, length + 1):
        if pos not in first_of:
            forms[pos] = AffineForm.coordinate(slot[pos], dim)
            continue
        f = first_of[pos]
        c = case_of[pos]
        kind = w.colors[pos - 1]
        prev, va, vb = forms[pos - 1], forms[f - 1], forms[f]
        if kind is LinkKind.TOEPLITZ:
            diff = va - vb
            form = prev - diff if c == 1 else prev + diff
        elif kind is LinkKind.HANKEL:
            form = va + vb - prev
        elif kind is LinkKind.REVERSE_CIRCULANT:
            form = (va + vb - prev).shift(c)
        elif kind is LinkKind.SYMMETRIC_CIRCULANT:
            if c == 1:
                form = vb - va + prev
            elif c == 2:
                form = va - vb + prev
            elif c == 3:
                form = (va - vb + prev).shift(-1)
            elif c == 4:
                form = (vb - va + prev).shift(1)
            elif c == 5:
                form = (vb - va + prev).shift(-1)
            else:  # 6
                form = (va - vb + prev).shift(1)
        else:  # Wigner
            if c == "C1":
                equalities.append((prev, va))
                form = vb
            else:  # C2: reversed identification
                equalities.append((prev, vb))
                form = va
        forms[pos] = form
        dep.append((pos, form))

    closure = (forms[length], AffineForm.coordinate(0, dim))
    return ConstraintSystem(dim, gen_positions, tuple(dep), tuple(equalities), closure)


def case_volume_mc(cs: ConstraintSystem, samples: int, seed) -> VolumeEstimate:
    """Volume of one case by uniform sampling of the generating cube.

    A failed closure or Wigner identity means the case sits on a proper
    affine subspace: exact zero, no sampling.  A provably empty box check
    (form's range disjoint from [0,1)) also short-circuits to exact zero.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    if not cs.identity_ok():
        return VolumeEstimate(0.0, 0.0, "mc", samples=samples)
    forms = cs.inequality_forms()
    if not forms:
        return VolumeEstimate(1.0, 0.0, "mc", samples=samples)
    for form in forms:
        lo, hi = form.value_interval()
        if hi <= 0 or lo >= 1:
            return VolumeEstimate(0.0, 0.0, "mc", samples=samples)
    vectors = [f.float_vector() for f in forms]
    rng = np.random.default_rng(seed)
    hits = 0
    remaining = samples
    while remaining > 0:
        block = min(remaining, _MC_CHUNK)
        pts = rng.random((block, cs.dim))
        mask = np.ones(block, dtype=bool)
        for coeffs, const in vectors:
            y = pts @ coeffs + const
            mask &= (y >= 0.0) & (y < 1.0)
        hits += int(mask.sum())
        remaining -= block
    p = hits / samples
    stderr = float(np.sqrt(p * (1.0 - p) / samples))
    return VolumeEstimate(p, stderr, "mc", samples=samples)


def exact_count_work(w: ColoredWord, n: int) -> int:
    """Elementary-step estimate of the dynamic-construction enumeration."""
    pairs = match_pairs(w)
    patterns = 1
    for _, s in pairs:
        patterns *= branch_count(w.colors[s - 1])
    return n ** (len(pairs) + 1) * patterns


def count_circuits_exact(
    w: ColoredWord,
    n: int,
    *,
    budget: int = DEFAULT_BUDGET,
    wigner_c2_only: bool = False,
) -> int:
    """Exact number of circuits whose matched edges carry equal link values.

    Enumerates all assignments of generating vertices; each dependent
    vertex branches over the solutions of its link equation (at most
    delta(kind) per step), and the walk closes on the starting vertex.
    Duplicate-free by construction.  With wigner_c2_only, Wigner matches
    admit only the reversed endpoint identification.
    """
    if not w.is_pair_matched():
        raise ValueError("exact counting requires a pair-matched word")
    if not w.is_color_consistent():
        return 0
    if exact_count_work(w, n) > budget:
        raise BudgetExceededError(
            f"enumeration needs ~{exact_count_work(w, n):.2e} steps, budget is {budget:.2e}"
        )
    pairs = match_pairs(w)
    first_of = {s: f for f, s in pairs}
    length = len(w)
    k = len(pairs)
    gen_tail = sorted(f for f, _ in pairs)

    # one grid axis per generating vertex other than vertex 0
    axes: dict[int, np.ndarray] = {}
    for ax, pos in enumerate(gen_tail):
        shape = [1] * k
        shape[ax] = n
        axes[pos] = np.arange(n, dtype=np.int64).reshape(shape)

    seconds = [s for s in range(1, length + 1) if s in first_of]
    domains = []
    for s in seconds:
        kind = w.colors[s - 1]
        if kind is LinkKind.WIGNER and wigner_c2_only:
            domains.append((1,))
        else:
            domains.append(tuple(range(branch_count(kind))))

    total = 0
    for v0 in range(n):
        base = {0: np.int64(v0), **axes}
        for branches in itertools.product(*domains):
            vals = dict(base)
            mask: np.ndarray | bool = True
            dead = False
            for s, br in zip(seconds, branches):
                f = first_of[s]
                kind = w.colors[s - 1]
                prev, fa, fb = vals[s - 1], vals[f - 1], vals[f]
                if kind is LinkKind.WIGNER and wigner_c2_only:
                    x, valid = fa, prev == fb
                else:
                    x, valid = solve_branch_grid(kind, n, prev, fa, fb, br)
                vals[s] = x
                mask = mask & valid
                if mask is not True and not mask.any():
                    dead = True
                    break
            if dead:
                continue
            mask = mask & (vals[length] == v0)
            total += int(np.broadcast_to(mask, (n,) * k).sum())
    return total


_EXACT_SIZE_DEFAULTS = {1: (40, 80), 2: (40, 80), 3: (24, 48)}


def _default_sizes(k: int) -> tuple[int, int]:
    return _EXACT_SIZE_DEFAULTS.get(k, (16, 32))


def p_limit(
    w: ColoredWord,
    method: str = "mc",
    *,
    samples: int = DEFAULT_MC_SAMPLES,
    seed: int = 0,
    sizes: Optional[tuple[int, int]] = None,
    budget: int = DEFAULT_BUDGET,
) -> VolumeEstimate:
    """Limiting normalized circuit count of a pair-matched word.

    method "mc": sum of Monte-Carlo case volumes over deduplicated
    surviving constraint systems.  method "exact": exact counts at two
    sizes n < 2n combined by Richardson extrapolation 2 f(2n) - f(n),
    with stderr |f(2n) - f(n)|; falls back to "mc" when the enumeration
    would blow the work budget.
    """
    if not w.is_pair_matched():
        raise ValueError("p_limit requires a pair-matched word")
    k = len(w) // 2
    cap = float(max(delta(c) for c in set(w.colors)) ** k)
    if not w.is_color_consistent():
        # a letter pairs positions of different kinds: no circuit qualifies
        return VolumeEstimate(0.0, 0.0, method, samples=samples if method == "mc" else None)

    if method == "exact":
        n1, n2 = sizes if sizes is not None else _default_sizes(k)
        if exact_count_work(w, n2) > budget:
            return p_limit(w, "mc", samples=samples, seed=seed, budget=budget)
        f1 = count_circuits_exact(w, n1, budget=budget) / n1 ** (1 + k)
        f2 = count_circuits_exact(w, n2, budget=budget) / n2 ** (1 + k)
        value = min(max(2.0 * f2 - f1, 0.0), cap)
        return VolumeEstimate(value, abs(f2 - f1), "exact", n_used=n2)

    if method != "mc":
        raise ValueError(f"unknown method {method!r}")

    systems = []
    seen = set()
    for case in build_cases(w):
        cs = resolve_affine(w, case)
        if not cs.identity_ok():
            continue
        key = cs.canonical_key()
        if key in seen:
            continue
        seen.add(key)
        systems.append(cs)
    total, var = 0.0, 0.0
    for idx, cs in enumerate(systems):
        est = case_volume_mc(cs, samples, np.random.SeedSequence([seed & _SEED_MASK, idx]))
        total += est.value
        var += est.stderr ** 2
    value = min(max(total, 0.0), cap)
    return VolumeEstimate(value, float(np.sqrt(var)), "mc", samples=samples)


def alpha_bound(q: Monomial) -> float:
    """Universal bound on the monomial limit from the pairing count.

    Zero for odd length or when some copy index appears an odd number of
    times; otherwise k! Delta^{k/2} / ((k/2)! 2^{k/2}) with Delta the
    largest solution bound among the kinds present.
    """
    k = len(q)
    if k % 2:
        return 0.0
    counts: dict[int, int] = {}
    for _, idx in q.letters:
        counts[idx] = counts.get(idx, 0) + 1
    if any(c % 2 for c in counts.values()):
        return 0.0
    dmax = max(delta(kind) for kind, _ in q.letters)
    num = Fraction(1)
    for m in range(1, k + 1):
        num *= m
    den = Fraction(1)
    for m in range(1, k // 2 + 1):
        den *= m
    return float(num * dmax ** (k // 2) / (den * 2 ** (k // 2)))


_P_CACHE: dict = {}


def _word_seed(master: int, w: ColoredWord) -> int:
    tag = f"{master}|{w.letters}|{w.color_text}|{w.indices}".encode()
    return int.from_bytes(hashlib.sha256(tag).digest()[:8], "big")


def p_limit_cached(
    w: ColoredWord,
    method: str = "mc",
    *,
    samples: int = DEFAULT_MC_SAMPLES,
    seed: int = 0,
    budget: int = DEFAULT_BUDGET,
) -> VolumeEstimate:
    """p_limit memoized on the word, with per-word derived seeds.

    The derived seed makes results independent of enumeration order, so
    sweeps over many monomials can share work across repeated words.
    """
    key = (w.letters, w.colors, w.indices, method, samples, seed, budget)
    if key not in _P_CACHE:
        _P_CACHE[key] = p_limit(
            w, method, samples=samples, seed=_word_seed(seed, w), budget=budget
        )
    return _P_CACHE[key]


def alpha_estimate(
    q: Monomial,
    method: str = "mc",
    *,
    samples: int = DEFAULT_MC_SAMPLES,
    seed: int = 0,
    budget: int = DEFAULT_BUDGET,
) -> tuple[float, float]:
    """(value, stderr) of the limiting expected normalized trace moment."""
    est_words = pairing_count_estimate(q, respect_indices=True)
    if est_words * len(q) > budget:
        raise BudgetExceededError(
            f"monomial has ~{est_words:.2e} pair-matched words, budget is {budget:.2e}"
        )
    words = enumerate_pair_matched_words(q, respect_indices=True)
    total, var = 0.0, 0.0
    for w in words:
        est = p_limit_cached(
            drop_indices(w), method, samples=samples, seed=seed, budget=budget
        )
        total += est.value
        var += est.stderr ** 2
    return total, float(np.sqrt(var))


def alpha(
    q: Monomial,
    method: str = "mc",
    *,
    samples: int = DEFAULT_MC_SAMPLES,
    seed: int = 0,
    budget: int = DEFAULT_BUDGET,
) -> float:
    """Limiting expected normalized trace moment of the monomial.

    The sum of word volumes over all index-respecting pair matchings;
    exactly zero when no such matching exists.
    """
    return alpha_estimate(q, method, samples=samples, seed=seed, budget=budget)[0]
