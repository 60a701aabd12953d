"""Randomized verification harness.

Generates weighted pairs with a prescribed Drazin index, holds the fixed
fixtures, and runs one verification suite per supported theorem label,
producing a machine-readable :class:`VerificationReport`.

Determinism: each trial draws its randomness from a generator seeded by
(seed, trial_index), so a report is a pure function of
(suite, trials, seed, tolerances) and trials are order-independent.
Trials run sequentially here; the aggregation is an ordered reduction by
trial index, so a concurrent runner would produce the identical report.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import kernel
from .certificate import InverseCertificate
from .classic import core, core_ep, drazin, group, index, one_three, spectral_projection
from .matrix import (
    DEFAULT_TOL,
    ToleranceConfig,
    adjoint,
    eq_residual,
    fro,
    is_nilpotent,
    mats_close,
    min_singular_value,
    pinv,
    power,
    rank,
)
from .weighted import (
    PreconditionViolation,
    WeightedPair,
    _as_pair,
    _core_ep_index,
    _w_core_ep_certificate,
    annihilator_equivalence,
    bc_inverse,
    block_triangular_core_ep,
    core_ep_decompose,
    polar_projection,
    w_core,
    w_core_ep_13w_candidates,
    w_core_ep_direct,
    w_core_ep_gdrazin,
    w_gdrazin,
    w_one_three,
)

WEIGHT_MODES = ("identity", "random_invertible", "random_singular")


@dataclass(frozen=True)
class GeneratorSpec:
    """Recipe for one random weighted pair.

    For the invertible weight modes the measured Drazin index of WA equals
    ``target_index`` by construction; in singular mode the index is
    measured, not prescribed.  Deterministic for a fixed seed.
    """

    n: int
    target_index: int
    weight_mode: str
    seed: int
    condition_cap: float = 100.0

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("n must be positive")
        if not 0 <= self.target_index <= self.n:
            raise ValueError(f"target_index must lie in [0, n], got {self.target_index}")
        if self.weight_mode not in WEIGHT_MODES:
            raise ValueError(f"weight_mode must be one of {WEIGHT_MODES}")
        if not self.condition_cap >= 1.0:
            raise ValueError("condition_cap must be >= 1")


def _unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(z)
    d = np.diagonal(r).copy()
    d = np.where(np.abs(d) == 0.0, 1.0, d / np.abs(d))
    return q * d.conj()


def _conditioned(rng: np.random.Generator, n: int, cap: float) -> np.ndarray:
    """Random invertible matrix, singular values log-uniform in [1, cap**(1/4)].

    Keeps the condition number well under the cap so that k-th powers and
    three-factor products of generated matrices stay numerically benign.
    """
    u = _unitary(rng, n)
    v = _unitary(rng, n)
    sv = np.exp(rng.uniform(0.0, 0.25 * np.log(cap), size=n))
    return (u * sv) @ v.conj().T


def _core_nilpotent(rng: np.random.Generator, n: int, k: int, cap: float) -> np.ndarray:
    """Q (C + shift_k) Q^{-1}: invertible core of size n-k plus one shift
    block of exact nilpotency index k, conjugated by a random invertible Q."""
    j = np.zeros((n, n), dtype=np.complex128)
    m = n - k
    if m:
        j[:m, :m] = _conditioned(rng, m, cap)
    for i in range(m, n - 1):
        j[i, i + 1] = 1.0
    q = _conditioned(rng, n, cap)
    return q @ j @ np.linalg.inv(q)


def _weight(rng: np.random.Generator, n: int, mode: str, cap: float) -> np.ndarray:
    if mode == "identity":
        return np.eye(n, dtype=np.complex128)
    if mode == "random_invertible":
        return _conditioned(rng, n, cap)
    u = _unitary(rng, n)
    v = _unitary(rng, n)
    sv = np.exp(rng.uniform(0.0, 0.25 * np.log(cap), size=n))
    deficiency = int(rng.integers(1, max(2, n // 2 + 1)))
    sv[n - deficiency :] = 0.0
    return (u * sv) @ v.conj().T


def _element_for_weight(
    rng: np.random.Generator, n: int, k: int, mode: str, cap: float, w: np.ndarray
) -> np.ndarray:
    """Element A for a fixed weight: WA = Q J Q^{-1} in invertible modes,
    A = Q J Q^{-1} directly when the weight is singular."""
    base = _core_nilpotent(rng, n, k, cap)
    if mode == "random_singular":
        return base
    return np.linalg.solve(w, base)


def _smallest_effective_sv(m: np.ndarray, tol: ToleranceConfig) -> float:
    """Smallest singular value above the rank cutoff; +inf for the zero matrix."""
    s = kernel.singular_values(m)
    if s[0] == 0.0:
        return np.inf
    r = int(np.count_nonzero(s > tol.rank_cutoff(m.shape, float(s[0]))))
    return float(s[r - 1]) if r else np.inf


def generate_pair(spec: GeneratorSpec) -> WeightedPair:
    rng = np.random.default_rng(spec.seed)
    if spec.weight_mode != "random_singular":
        w = _weight(rng, spec.n, spec.weight_mode, spec.condition_cap)
        a = _element_for_weight(
            rng, spec.n, spec.target_index, spec.weight_mode, spec.condition_cap, w
        )
        return WeightedPair(a, w)
    # singular mode: a random null space can align badly with the element's
    # core and inflate the effective conditioning of wa / waw by orders of
    # magnitude; candidates are redrawn (deterministically) until the
    # nonzero singular values of both products stay above a healthy floor
    tol = DEFAULT_TOL
    best: WeightedPair | None = None
    best_score = -np.inf
    for _ in range(32):
        w = _weight(rng, spec.n, "random_singular", spec.condition_cap)
        a = _core_nilpotent(rng, spec.n, spec.target_index, spec.condition_cap)
        score = min(
            _smallest_effective_sv(w @ a, tol), _smallest_effective_sv(w @ a @ w, tol)
        )
        if score >= 0.25:
            return WeightedPair(a, w)
        if score > best_score:
            best, best_score = WeightedPair(a, w), score
    return best


def weighted_group(pair, tol: ToleranceConfig = DEFAULT_TOL) -> InverseCertificate:
    """Weighted group inverse, harness-only.

    Defined as the weighted g-Drazin inverse restricted to pairs with
    max(ind(AW), ind(WA)) <= 1; the general notion has no agreed defining
    system, so it stays out of the public inverse catalog.
    """
    p = _as_pair(pair)
    cert = w_gdrazin(p, tol)
    k = _core_ep_index(p.A, p.W, tol)
    return InverseCertificate("weighted_gdrazin", cert.value, cert.residuals, cert.exists and k <= 1)


@dataclass(frozen=True)
class VerificationReport:
    suite: str
    trials: int
    failures: int
    worst_residual: float
    seed: int
    notes: str

    def to_json(self) -> str:
        return json.dumps(
            {
                "suite": self.suite,
                "trials": self.trials,
                "failures": self.failures,
                "worst_residual": self.worst_residual,
                "seed": self.seed,
                "notes": self.notes,
            }
        )

    @property
    def passed(self) -> bool:
        return self.failures == 0


@dataclass(frozen=True)
class _Ctx:
    n: int
    target_index: int
    weight_mode: str
    rng: np.random.Generator
    tol: ToleranceConfig

    def pair(self, cap: float = 100.0) -> WeightedPair:
        seed = int(self.rng.integers(0, 2**63))
        return generate_pair(
            GeneratorSpec(self.n, self.target_index, self.weight_mode, seed, cap)
        )

    def complex_matrix(self, n: int | None = None) -> np.ndarray:
        n = self.n if n is None else n
        return self.rng.standard_normal((n, n)) + 1j * self.rng.standard_normal((n, n))


@dataclass(frozen=True)
class _Outcome:
    residual: float
    ok: bool
    tags: tuple[tuple[str, bool], ...] = ()


@dataclass(frozen=True)
class _Suite:
    fn: Callable[[_Ctx], _Outcome]
    indices: tuple[int, ...] = (0, 1, 2, 3)
    modes: tuple[str, ...] = WEIGHT_MODES
    fixed_trials: int | None = None
    note: str = ""
    finalize: Callable[[list[_Outcome]], tuple[str, int]] | None = None


def _cert_ok(cert: InverseCertificate) -> _Outcome:
    return _Outcome(cert.worst_residual, cert.exists)


def _max_eq(*residuals: float) -> float:
    return max(residuals) if residuals else 0.0


# ---------------------------------------------------------------------------
# suite bodies


def _suite_core_characterizations(ctx: _Ctx) -> _Outcome:
    """Equivalent characterizations of the w-core inverse: the five-equation
    system plus the column-space equalities R(X)=R(AW), R(X*)=R(WAW)."""
    pr = ctx.pair()
    a, w = pr.A, pr.W
    cert = w_core(pr, ctx.tol)
    k = index(a @ w, ctx.tol)
    if not cert.exists:
        return _Outcome(0.0, k > 1)
    x = cert.value
    aw, waw = a @ w, w @ a @ w
    r_aw = rank(aw, ctx.tol)
    ranks_ok = (
        rank(np.hstack([x, aw]), ctx.tol) == r_aw == rank(x, ctx.tol)
        and rank(np.hstack([adjoint(x), waw]), ctx.tol) == rank(waw, ctx.tol) == rank(x, ctx.tol)
    )
    return _Outcome(cert.worst_residual, cert.exists and ranks_ok and k <= 1)


def _suite_core_implies_core_ep(ctx: _Ctx) -> _Outcome:
    """When the w-core inverse exists it carries the full weighted core-EP
    certificate and equals the direct-route value."""
    pr = ctx.pair()
    cert = w_core(pr, ctx.tol)
    if not cert.exists:
        return _Outcome(0.0, index(pr.A @ pr.W, ctx.tol) > 1)
    k = _core_ep_index(pr.A, pr.W, ctx.tol)
    ep = _w_core_ep_certificate(pr.A, pr.W, cert.value, k, ctx.tol)
    direct = w_core_ep_direct(pr, ctx.tol)
    diff = eq_residual(cert.value, direct.value)
    ok = ep.exists and mats_close(cert.value, direct.value, ctx.tol)
    return _Outcome(_max_eq(ep.worst_residual, diff), ok)


def _suite_five_equations(ctx: _Ctx) -> _Outcome:
    """The five-equation system characterizing the w-core inverse."""
    pr = ctx.pair()
    cert = w_core(pr, ctx.tol)
    if not cert.exists:
        return _Outcome(0.0, index(pr.A @ pr.W, ctx.tol) > 1)
    return _cert_ok(cert)


def _suite_existence(ctx: _Ctx) -> _Outcome:
    """w-core existence is equivalent to ind(AW) <= 1, and the constructed
    value satisfies the defining system whenever it exists."""
    pr = ctx.pair()
    cert = w_core(pr, ctx.tol)
    k = index(pr.A @ pr.W, ctx.tol)
    if k <= 1:
        return _cert_ok(cert)
    return _Outcome(0.0, not cert.exists)


def _suite_group_projection(ctx: _Ctx) -> _Outcome:
    """XW(AW) equals the group projection AW(AW)^# for the w-core inverse."""
    pr = ctx.pair()
    a, w = pr.A, pr.W
    cert = w_core(pr, ctx.tol)
    if not cert.exists:
        return _Outcome(0.0, index(a @ w, ctx.tol) > 1)
    aw = a @ w
    g = group(aw, ctx.tol)
    r1 = eq_residual(cert.value @ w @ aw, aw @ g.value)
    wawx = w @ a @ w @ cert.value
    r2 = eq_residual(adjoint(wawx), wawx)
    ok = g.exists and mats_close(cert.value @ w @ aw, aw @ g.value, ctx.tol)
    return _Outcome(_max_eq(r1, r2), ok)


def _suite_bc_cross_check(ctx: _Ctx) -> _Outcome:
    """The w-core inverse is the ((AW)^D, ((WA)^D)*)-inverse of WAW."""
    pr = ctx.pair()
    a, w = pr.A, pr.W
    aw, wa, waw = a @ w, w @ a, w @ a @ w
    cert = w_core(pr, ctx.tol)
    bc = bc_inverse(waw, drazin(aw, ctx.tol).value, adjoint(drazin(wa, ctx.tol).value), ctx.tol)
    k = index(aw, ctx.tol)
    if k > 1 or not cert.exists:
        return _Outcome(0.0, not cert.exists)
    diff = eq_residual(bc.value, cert.value)
    return _Outcome(diff, bc.exists and mats_close(bc.value, cert.value, ctx.tol))


def _suite_bc_unweighted(ctx: _Ctx) -> _Outcome:
    """Unweighted reduction: the core inverse is the (A^#, (A^#)*)-inverse."""
    pr = ctx.pair()
    a = pr.A
    g = group(a, ctx.tol)
    c = core(a, ctx.tol)
    if not g.exists:
        return _Outcome(0.0, not c.exists)
    bc = bc_inverse(a, g.value, adjoint(g.value), ctx.tol)
    diff = eq_residual(bc.value, c.value)
    return _Outcome(diff, bc.exists and c.exists and mats_close(bc.value, c.value, ctx.tol))


def _decomposition_outcome(ctx: _Ctx, pr: WeightedPair) -> tuple[_Outcome, object]:
    dec = core_ep_decompose(pr, ctx.tol)
    res = dec.residuals
    eq_part = _max_eq(
        res["yWz=0"], res["(Wz)*(Wy)=0"], res["yW nilpotent"], res["w-core(z)=w-core-EP(A)"]
    )
    ok = (
        eq_part <= 1e-8
        and res["yW witness"] <= pr.n
        and res["z has w-core inverse"] == 0.0
    )
    return _Outcome(eq_part, ok), dec


def _suite_decomposition(ctx: _Ctx) -> _Outcome:
    out, _ = _decomposition_outcome(ctx, ctx.pair())
    return out


def _suite_perturbation(ctx: _Ctx) -> _Outcome:
    """Adding a nilpotent, W-quasinilpotent B with B W A = 0 leaves the
    weighted core-EP inverse unchanged.

    B = v u* with u orthogonal to range(WA) (so B W A = 0) and v orthogonal
    to both u and W* u (so B and B W are 2-step nilpotent).  Plain
    nilpotency of B alone is not enough: without (BW) nilpotent the
    perturbation can change the inverse, e.g. by making W(A+B) invertible.
    """
    pr = ctx.pair()
    a, w = pr.A, pr.W
    wa = w @ a
    proj = wa @ pinv(wa, ctx.tol)
    r1 = ctx.complex_matrix()[:, 0]
    u = (np.eye(pr.n) - proj) @ r1
    if np.linalg.norm(u) < 1e-8:
        b = np.zeros_like(a)
    else:
        r2 = ctx.complex_matrix()[:, 0]
        basis = np.linalg.qr(np.column_stack([u, adjoint(w) @ u]))[0]
        v = r2 - basis @ (basis.conj().T @ r2)
        b = np.outer(v, u.conj())
    x0 = w_core_ep_direct(pr, ctx.tol).value
    x1 = w_core_ep_direct(WeightedPair(a + b, w), ctx.tol).value
    diff = eq_residual(x0, x1)
    return _Outcome(diff, mats_close(x0, x1, ctx.tol))


def _suite_decomposition_unweighted(ctx: _Ctx) -> _Outcome:
    """W = I reduction of the decomposition; the core summand's core inverse
    is the core-EP inverse of A."""
    pr = ctx.pair()
    out, dec = _decomposition_outcome(ctx, pr)
    zc = core(dec.z, ctx.tol)
    ep = core_ep(pr.A, ctx.tol)
    diff = eq_residual(zc.value, ep.value)
    ok = out.ok and zc.exists and ep.exists and mats_close(zc.value, ep.value, ctx.tol)
    return _Outcome(_max_eq(out.residual, diff), ok)


def _suite_decomposition_nilpotent(ctx: _Ctx) -> _Outcome:
    """Exactly-nilpotent variant of the unweighted decomposition; in finite
    dimension quasinilpotent coincides with nilpotent, so this also checks
    the plain nilpotency witness of the y summand."""
    pr = ctx.pair()
    out, dec = _decomposition_outcome(ctx, pr)
    nilp, _ = is_nilpotent(dec.y, ctx.tol)
    ep = core_ep(pr.A, ctx.tol)
    zc = core(dec.z, ctx.tol)
    diff = eq_residual(zc.value, ep.value)
    ok = out.ok and nilp and zc.exists and mats_close(zc.value, ep.value, ctx.tol)
    return _Outcome(_max_eq(out.residual, diff), ok)


def fixture_pair() -> WeightedPair:
    """The 2 x 2 truncation fixture: shear-like A and diagonal weight."""
    s2 = np.sqrt(2.0)
    a = np.array([[1.0, 1.0], [0.0, s2]], dtype=np.complex128)
    w = np.diag([1.0, 1.0 / s2]).astype(np.complex128)
    return WeightedPair(a, w)


def fixture_expected() -> np.ndarray:
    s2 = np.sqrt(2.0)
    return np.array([[1.0, -1.0], [0.0, s2]], dtype=np.complex128)


def fixture_shift8() -> np.ndarray:
    """8 x 8 strictly upper shift with entries 1/3..1/9; quasinilpotent."""
    m = np.zeros((8, 8), dtype=np.complex128)
    for i in range(7):
        m[i, i + 1] = 1.0 / (i + 3)
    return m


def _suite_fixture(ctx: _Ctx) -> _Outcome:
    pr = fixture_pair()
    expected = fixture_expected()
    cert = w_core(pr, ctx.tol)
    worst = _max_eq(
        cert.worst_residual,
        eq_residual(cert.value, expected),
        eq_residual(pr.W @ pr.A @ pr.W @ cert.value, np.eye(2)),
    )
    direct = w_core_ep_direct(pr, ctx.tol)
    nilp, witness = is_nilpotent(fixture_shift8(), ctx.tol)
    ok = (
        cert.exists
        and eq_residual(cert.value, expected) <= 1e-10
        and all(v <= 1e-10 for v in cert.residuals.values())
        and eq_residual(pr.W @ pr.A @ pr.W @ cert.value, np.eye(2)) <= 1e-12
        and mats_close(direct.value, expected, ctx.tol)
        and nilp
        and witness <= 8
    )
    return _Outcome(worst, ok)


def _polar_outcome(ctx: _Ctx, pr: WeightedPair) -> _Outcome:
    # invertibility of (WA)^m + p is certified by the absolute margin; a
    # cutoff relative to sigma_max((WA)^m) would reject any O(1) margin
    # once the powers grow large
    cert = polar_projection(pr, pr.n, ctx.tol)
    wa = pr.W @ pr.A
    pwa = cert.p @ wa
    nilp, _ = is_nilpotent(pwa, ctx.tol)
    ok = (
        cert.projection_residual <= 1e-9
        and cert.commute_residual <= ctx.tol.eq_atol + ctx.tol.eq_rtol * fro(pwa)
        and nilp
        and cert.nilpotency_witness <= pr.n
        and all(m > 1e-8 for m in cert.invertibility_margins)
    )
    return _Outcome(_max_eq(cert.projection_residual, cert.commute_residual), ok)


def _suite_polar(ctx: _Ctx) -> _Outcome:
    return _polar_outcome(ctx, ctx.pair())


def _suite_polar_unweighted(ctx: _Ctx) -> _Outcome:
    return _polar_outcome(ctx, ctx.pair())


def _suite_invertibility_margin(ctx: _Ctx) -> _Outcome:
    """(WA)^m + I - WAW X stays invertible for m = 1..n."""
    pr = ctx.pair()
    a, w = pr.A, pr.W
    x = w_core_ep_direct(pr, ctx.tol).value
    p = np.eye(pr.n) - w @ a @ w @ x
    wa = w @ a
    ok = True
    worst = np.inf
    for m in range(1, pr.n + 1):
        margin = min_singular_value(power(wa, m) + p)
        worst = min(worst, margin)
        ok = ok and margin > 1e-8
    return _Outcome(0.0 if ok else float(worst), ok)


def _suite_eventual_power(ctx: _Ctx) -> _Outcome:
    """Defining equations plus the eventual-power condition in the form
    (AW)^(k+1) = (AW)(XW)(AW)^(k+1)."""
    pr = ctx.pair()
    a, w = pr.A, pr.W
    x = w_core_ep_direct(pr, ctx.tol).value
    k = _core_ep_index(a, w, ctx.tol)
    aw = a @ w
    awk1 = power(aw, k + 1)
    wx = w @ x
    wawx = w @ a @ w @ x
    r1 = eq_residual(a @ wx @ wx, x)
    r2 = eq_residual(adjoint(wawx), wawx)
    r3 = eq_residual(awk1, aw @ x @ w @ awk1)
    ok = (
        mats_close(a @ wx @ wx, x, ctx.tol)
        and mats_close(adjoint(wawx), wawx, ctx.tol)
        and mats_close(awk1, aw @ x @ w @ awk1, ctx.tol)
    )
    return _Outcome(_max_eq(r1, r2, r3), ok)


def _suite_gdrazin_route(ctx: _Ctx) -> _Outcome:
    """g-Drazin route agreement plus the inner identity
    (A^{D,W})-core = (AW)^2 X."""
    pr = ctx.pair()
    a, w = pr.A, pr.W
    direct = w_core_ep_direct(pr, ctx.tol)
    route = w_core_ep_gdrazin(pr, ctx.tol)
    diff = eq_residual(direct.value, route.value)
    g = w_gdrazin(pr, ctx.tol).value
    inner = w_core(WeightedPair(g, w), ctx.tol)
    inner_target = power(a @ w, 2) @ direct.value
    inner_diff = eq_residual(inner.value, inner_target)
    ok = (
        diff <= 1e-8
        and route.exists
        and inner.exists
        and mats_close(inner.value, inner_target, ctx.tol)
    )
    return _Outcome(_max_eq(diff, inner_diff), ok)


def _suite_gdrazin_formula(ctx: _Ctx) -> _Outcome:
    """Matrix-level restatement: X = [A^{D,W} W]^2 (A^{D,W})-core."""
    pr = ctx.pair()
    g = w_gdrazin(pr, ctx.tol).value
    inner = w_core(WeightedPair(g, pr.W), ctx.tol)
    if not inner.exists:
        return _Outcome(1.0, False)
    x = power(g @ pr.W, 2) @ inner.value
    direct = w_core_ep_direct(pr, ctx.tol)
    diff = eq_residual(x, direct.value)
    return _Outcome(diff, diff <= 1e-8)


def _suite_13w_variants(ctx: _Ctx) -> _Outcome:
    """Both candidate formulas built from a (1,3,w)-inverse of A^{D,W},
    compared against the direct route; at least one must match."""
    pr = ctx.pair()
    direct = w_core_ep_direct(pr, ctx.tol).value
    cands = w_core_ep_13w_candidates(pr, ctx.tol)
    d_weighted = eq_residual(cands["(GW)^2 T"], direct)
    d_plain = eq_residual(cands["G^2 T"], direct)
    ok_weighted = d_weighted <= 1e-8
    ok_plain = d_plain <= 1e-8
    return _Outcome(
        d_weighted,
        ok_weighted or ok_plain,
        tags=(("(GW)^2 T", ok_weighted), ("G^2 T", ok_plain)),
    )


def _finalize_13w(outcomes: list[_Outcome]) -> tuple[str, int]:
    all_weighted = all(dict(o.tags)["(GW)^2 T"] for o in outcomes)
    all_plain = all(dict(o.tags)["G^2 T"] for o in outcomes)
    plain_hits = sum(dict(o.tags)["G^2 T"] for o in outcomes)
    if all_weighted and all_plain:
        note = "both (GW)^2 T and G^2 T match the direct route on all trials"
    elif all_weighted:
        note = (
            f"(GW)^2 T matches the direct route on all trials; "
            f"G^2 T matches on {plain_hits}/{len(outcomes)} trials only"
        )
    elif all_plain:
        note = "G^2 T matches the direct route on all trials; (GW)^2 T does not"
    else:
        note = "neither variant matches the direct route on all trials"
    extra_failures = 0 if (all_weighted or all_plain) else len(outcomes)
    return note, extra_failures


def _suite_13w_unweighted(ctx: _Ctx) -> _Outcome:
    """W = I reduction: (A^D)^2 (A^D)^{(1,3)} equals the core-EP inverse."""
    pr = ctx.pair()
    g = drazin(pr.A, ctx.tol).value
    t = one_three(g, ctx.tol)
    x = g @ g @ t.value
    ep = core_ep(pr.A, ctx.tol)
    diff = eq_residual(x, ep.value)
    return _Outcome(diff, t.exists and ep.exists and mats_close(x, ep.value, ctx.tol))


def _suite_annihilators(ctx: _Ctx) -> _Outcome:
    """The three annihilation conditions agree, for b both inside and
    outside the range of (WA)(WA)^D."""
    pr = ctx.pair()
    wa = pr.W @ pr.A
    pi = spectral_projection(wa, ctx.tol)
    recon = wa @ drazin(wa, ctx.tol).value
    r = ctx.complex_matrix()
    b_in = recon @ r
    got_in = annihilator_equivalence(pr, b_in, ctx.tol)
    ok = got_in == (True, True, True)
    b_out = ctx.complex_matrix()
    got_out = annihilator_equivalence(pr, b_out, ctx.tol)
    ok = ok and (got_out[0] == got_out[1] == got_out[2])
    if fro(pi @ b_out) > 1e-4 * max(1.0, fro(b_out)):
        ok = ok and got_out == (False, False, False)
    return _Outcome(0.0, ok)


def _block_outcome(ctx: _Ctx, lower: bool) -> _Outcome:
    """Block-triangular formula against the direct 2n x 2n computation.

    The stated hypothesis gates b through the spectral projection of wa
    (wd for the lower variant) and is tested exactly as stated, with
    b = gate gate^D r.  The corrected hypothesis discovered by this
    harness, which gates b through the spectral projection of aw (dw)
    instead, is verified alongside and reported through the suite note;
    the two coincide for w = I.
    """
    cap = 100.0
    w = _weight(ctx.rng, ctx.n, ctx.weight_mode, cap)
    a = _element_for_weight(ctx.rng, ctx.n, ctx.target_index, ctx.weight_mode, cap, w)
    k_d = int(ctx.rng.integers(0, min(3, ctx.n) + 1))
    d = _element_for_weight(ctx.rng, ctx.n, k_d, ctx.weight_mode, cap, w)
    gate = (w @ d) if lower else (w @ a)
    recon = gate @ drazin(gate, ctx.tol).value
    b = recon @ ctx.complex_matrix()
    cert = block_triangular_core_ep(a, b, d, w, ctx.tol, lower=lower)
    diff = cert.residuals["X=M^(od,W2) formula"]
    ok_stated = cert.exists and diff <= 1e-8

    # corrected gate: spectral projection of aw (upper) / dw (lower)
    gate2 = (d @ w) if lower else (a @ w)
    recon2 = gate2 @ drazin(gate2, ctx.tol).value
    b2 = recon2 @ ctx.complex_matrix()
    xa = w_core_ep_direct(WeightedPair(a, w), ctx.tol).value
    xd = w_core_ep_direct(WeightedPair(d, w), ctx.tol).value
    zero = np.zeros_like(a)
    if lower:
        m2 = np.block([[a, zero], [b2, d]])
        x2 = np.block([[xa, zero], [-xd @ w @ b2 @ w @ xa, xd]])
    else:
        m2 = np.block([[a, b2], [zero, d]])
        x2 = np.block([[xa, -xa @ w @ b2 @ w @ xd], [zero, xd]])
    w2 = np.block([[w, zero], [zero, w]])
    direct2 = w_core_ep_direct(WeightedPair(m2, w2), ctx.tol).value
    ok_corrected = eq_residual(x2, direct2) <= 1e-8

    # precondition rejection: a generic b must be refused whenever the
    # spectral projection of the gate is nonzero
    ok_reject = True
    pi = np.eye(ctx.n) - recon
    b_bad = pi @ ctx.complex_matrix()
    if fro(pi @ b_bad) > 1e-4 * max(1.0, fro(b_bad)):
        try:
            block_triangular_core_ep(a, b_bad, d, w, ctx.tol, lower=lower)
            ok_reject = False
        except PreconditionViolation:
            pass
    return _Outcome(
        diff,
        ok_stated and ok_corrected and ok_reject,
        tags=(("stated", ok_stated and ok_reject), ("corrected", ok_corrected and ok_reject)),
    )


def _finalize_block(outcomes: list[_Outcome]) -> tuple[str, int]:
    stated_fails = sum(not dict(o.tags)["stated"] for o in outcomes)
    corrected_fails = sum(not dict(o.tags)["corrected"] for o in outcomes)
    if stated_fails == 0 and corrected_fails == 0:
        return "block formula holds under the stated hypothesis on all trials", 0
    note = (
        f"block formula FAILS under the stated hypothesis (b annihilated by the "
        f"spectral projection of wa) on {stated_fails}/{len(outcomes)} trials with a "
        f"non-identity weight; gating b through the spectral projection of aw instead "
        f"{'makes the formula match the direct computation on all trials' if corrected_fails == 0 else f'still fails on {corrected_fails} trials'} "
        f"(the two gates coincide for w = I)"
    )
    return note, 0


def _suite_block_upper(ctx: _Ctx) -> _Outcome:
    return _block_outcome(ctx, lower=False)


def _suite_block_lower(ctx: _Ctx) -> _Outcome:
    return _block_outcome(ctx, lower=True)


def _suite_block_unweighted(ctx: _Ctx) -> _Outcome:
    """w = 1 block formula cross-checked against the classic core-EP path."""
    w = np.eye(ctx.n, dtype=np.complex128)
    a = _element_for_weight(ctx.rng, ctx.n, ctx.target_index, "identity", 100.0, w)
    k_d = int(ctx.rng.integers(0, min(3, ctx.n) + 1))
    d = _element_for_weight(ctx.rng, ctx.n, k_d, "identity", 100.0, w)
    recon = a @ drazin(a, ctx.tol).value
    b = recon @ ctx.complex_matrix()
    cert = block_triangular_core_ep(a, b, d, w, ctx.tol)
    zero = np.zeros_like(a)
    m = np.block([[a, b], [zero, d]])
    classic = core_ep(m, ctx.tol)
    diff = eq_residual(cert.value, classic.value)
    ok = cert.exists and classic.exists and diff <= 1e-8
    return _Outcome(diff, ok)


SUITES: dict[str, _Suite] = {
    "Thm2.1": _Suite(_suite_core_characterizations, indices=(0, 1)),
    "Cor2.2": _Suite(_suite_core_implies_core_ep, indices=(0, 1)),
    "Cor2.3": _Suite(_suite_five_equations, indices=(0, 1)),
    "Thm2.4": _Suite(_suite_existence),
    "Cor2.5": _Suite(_suite_group_projection, indices=(0, 1)),
    "Thm2.7": _Suite(_suite_bc_cross_check, indices=(0, 1)),
    "Cor2.8": _Suite(_suite_bc_unweighted, indices=(0, 1), modes=("identity",)),
    "Thm3.1": _Suite(_suite_decomposition),
    "Cor3.2": _Suite(_suite_perturbation),
    "Cor3.3": _Suite(_suite_decomposition_unweighted, modes=("identity",)),
    "Cor3.4": _Suite(
        _suite_decomposition_nilpotent,
        modes=("identity",),
        note="finite dimension: g-Drazin and Drazin coincide, quasinilpotent means nilpotent",
    ),
    "Example3.5": _Suite(_suite_fixture, fixed_trials=1),
    "Thm3.6": _Suite(
        _suite_polar,
        note="feasibility of I-p=WU is recorded per certificate as informational only",
    ),
    "Cor3.7": _Suite(_suite_polar_unweighted, modes=("identity",)),
    "Cor3.8": _Suite(_suite_invertibility_margin),
    "Lemma4.1": _Suite(
        _suite_eventual_power,
        note=(
            "eventual-power condition implemented as (AW)^(k+1)=(AW)(XW)(AW)^(k+1); "
            "the variant reading with a leading (AX) factor is not used"
        ),
    ),
    "Thm4.2": _Suite(_suite_gdrazin_route),
    "Cor4.3": _Suite(_suite_gdrazin_formula),
    "Thm4.4": _Suite(_suite_13w_variants, finalize=_finalize_13w),
    "Cor4.5": _Suite(_suite_13w_unweighted, modes=("identity",)),
    "Lemma4.6": _Suite(_suite_annihilators),
    "Thm4.7": _Suite(_suite_block_upper, finalize=_finalize_block),
    "Cor4.8": _Suite(_suite_block_lower, finalize=_finalize_block),
    "Cor4.9": _Suite(_suite_block_unweighted, modes=("identity",)),
}

SUITE_LABELS: tuple[str, ...] = tuple(SUITES)

_SIZES = (2, 3, 4, 5, 6, 7, 8)


def _grid(t: int, indices: tuple[int, ...], modes: tuple[str, ...]) -> tuple[int, int, str]:
    n = _SIZES[t % len(_SIZES)]
    idx = indices[(t // len(_SIZES)) % len(indices)]
    mode = modes[(t // (len(_SIZES) * len(indices))) % len(modes)]
    return n, min(idx, n), mode


def run_suite(
    suite: str,
    trials: int = 100,
    seed: int = 0,
    tol: ToleranceConfig = DEFAULT_TOL,
) -> VerificationReport:
    """Run one theorem suite over the (size, index, weight-mode) grid."""
    if suite not in SUITES:
        raise KeyError(f"unknown suite {suite!r}; known: {', '.join(SUITE_LABELS)}")
    if trials < 1:
        raise ValueError("trials must be positive")
    sd = SUITES[suite]
    count = sd.fixed_trials if sd.fixed_trials is not None else trials
    outcomes: list[_Outcome] = []
    for t in range(count):
        n, idx, mode = _grid(t, sd.indices, sd.modes)
        rng = np.random.default_rng([seed, t])
        ctx = _Ctx(n, idx, mode, rng, tol)
        outcomes.append(sd.fn(ctx))
    failures = sum(1 for o in outcomes if not o.ok)
    worst = max((o.residual for o in outcomes), default=0.0)
    notes = sd.note
    if sd.finalize is not None:
        extra_note, extra_failures = sd.finalize(outcomes)
        failures += extra_failures
        notes = f"{notes}; {extra_note}" if notes else extra_note
    return VerificationReport(
        suite=suite,
        trials=count,
        failures=failures,
        worst_residual=float(worst),
        seed=seed,
        notes=notes,
    )


def run_all(
    trials: int = 100, seed: int = 0, tol: ToleranceConfig = DEFAULT_TOL
) -> list[VerificationReport]:
    return [run_suite(label, trials, seed, tol) for label in SUITE_LABELS]
