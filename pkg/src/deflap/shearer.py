"""Greedy caterpillar generation with certified error bounds.

Fix lam > (1 + |s|)^2 and s != 0. Walking the backbone left to right,
each leaf count r_j is chosen as the largest integer keeping the sweep
value b_j below the repelling fixed point theta'; the floor formula
places every b_j inside the window (theta' - delta, theta'), which
forces every output negative and hence rho(T_k) < lam for every k,
while rho(T_k) -> lam as k grows.

The b values are exquisitely noise-sensitive: a perturbation entering at
position j is amplified by roughly beta_j (the logarithmic derivative of
b_j with respect to the probe point), which grows geometrically. The
generator therefore runs on an internal precision ladder and only
accepts a run once its working precision exceeds the magnitude of
beta_k by a safe margin; inputs are re-materialized from their exact
specs (ints, decimal strings, or closures) at every rung.
"""

import math

from .scalar import (
    DomainError,
    PrecisionContext,
    PrecisionError,
    Scalar,
    infer_context,
    materialize,
)
from .trees import Caterpillar
from .diagonalize import approximate_radius
from .recurrence import recurrence_params


class InvalidRunError(DomainError):
    """A run whose b values are not all negative; bounds do not apply."""


class _NeedMorePrecision(Exception):
    pass


MAX_LADDER_ROUNDS = 8
BETA_MARGIN_DIGITS = 25


class ShearerRun:
    """One generated caterpillar with its sweep and diagnostic traces.

    counts are exact ints; b_trace and beta_trace are the backbone sweep
    values at the probe point lam and their noise amplification factors,
    rounded into the caller's context. generation_digits records the
    ladder rung that produced the counts; the exact input specs are kept
    so error certificates can re-materialize lam and s at any precision.
    """

    __slots__ = (
        "lam",
        "s",
        "counts",
        "b_trace",
        "beta_trace",
        "params",
        "ctx",
        "generation_digits",
        "lam_spec",
        "s_spec",
    )

    def __init__(self, lam, s, counts, b_trace, beta_trace, params, ctx, generation_digits, lam_spec, s_spec):
        self.lam = lam
        self.s = s
        self.counts = counts
        self.b_trace = b_trace
        self.beta_trace = beta_trace
        self.params = params
        self.ctx = ctx
        self.generation_digits = generation_digits
        self.lam_spec = lam_spec
        self.s_spec = s_spec

    @property
    def k(self):
        return len(self.counts)

    def caterpillar(self):
        return Caterpillar(self.counts)

    def __repr__(self):
        return "ShearerRun(k=%d, lam=%s, s=%s)" % (
            self.k,
            self.lam.to_decimal_string(10),
            self.s.to_decimal_string(10),
        )


class EpsilonBound:
    """A certified upper bound eps on lam - rho(T_k).

    certified means both bracket endpoints had verified signs at the
    working precision, so rho(T_k) > lam - eps rigorously.
    """

    __slots__ = ("k", "value", "certified")

    def __init__(self, k, value, certified):
        self.k = k
        self.value = value
        self.certified = certified

    def __repr__(self):
        return "EpsilonBound(k=%d, %s, certified=%r)" % (
            self.k,
            self.value.to_decimal_string(10),
            self.certified,
        )


def _guarded_floor(t, guard):
    # a floor taken within guard of an integer is one rounding error away
    # from being wrong; force a retry at higher precision instead
    f = t.floor()
    frac = t - f
    if frac < guard or frac > 1 - guard:
        raise _NeedMorePrecision()
    return f


def _generate_at(p, k, wctx):
    """One full generation pass at a fixed working precision.

    Returns (counts, b values) or raises _NeedMorePrecision when a floor
    argument is too close to an integer or a value leaves its window.
    """
    lam, s = p.lam, p.s
    s2 = s * s
    delta, thp = p.delta, p.theta_prime
    lo_window = thp - delta
    guard = wctx.power_of_ten(-wctx.digits + 10)

    def windowed(b):
        if not (lo_window < b and b < thp):
            raise _NeedMorePrecision()
        return b

    r1 = _guarded_floor((thp + lam - 1) / delta, guard)
    if r1 < 0:
        raise InvalidRunError("negative leaf count; parameters are inconsistent")
    b = windowed(1 - lam + r1 * delta)
    counts = [r1]
    bs = [b]
    for j in range(1, k):
        step = 1 + s2 - lam - s2 / b
        if j == k - 1:
            step = step - s2
        r = _guarded_floor((thp - step) / delta, guard)
        if r < 0:
            raise InvalidRunError("negative leaf count; parameters are inconsistent")
        b = windowed(step + r * delta)
        counts.append(r)
        bs.append(b)
    return counts, bs


def _betas_at(counts, bs, lam, s):
    """Noise amplification factors beta_1..beta_k for one run.

    beta_j is b_j'(0)/(-b_j(0)) for the probe family lam - eps: the
    relative growth a perturbation of the probe point suffers by the
    time it reaches position j. Computed by the first-order recurrence
    beta_j = c_j + g_j*beta_{j-1}.
    """
    s2 = s * s
    lm1 = lam - 1
    lm1_sq = lm1 * lm1
    out = []
    prev = None
    for j, (r, b) in enumerate(zip(counts, bs)):
        c = (1 + r * s2 / lm1_sq) / (-b)
        if j == 0:
            beta = c
        else:
            g = s2 / (bs[j - 1] * b)
            beta = c + g * prev
        out.append(beta)
        prev = beta
    return out


def generate(lam, s, k, ctx=None):
    """Generate the k-node caterpillar whose radius approaches lam.

    lam and s may be ints, decimal strings, Scalars, or callables
    ctx -> Scalar; strings and callables are re-materialized exactly at
    every internal precision, which matters because the counts depend on
    digits of s far beyond any fixed rounding. s = 0 is degenerate
    (delta vanishes) and s must be adapted to lam. Raises PrecisionError
    when the ladder cannot stabilize the run.
    """
    if ctx is None:
        ctx = infer_context(lam, s)
    k = int(k)
    if k < 2:
        raise DomainError("need a backbone of at least 2 nodes")
    lam_user = materialize(lam, ctx)
    s_user = materialize(s, ctx)
    if s_user.is_zero:
        raise DomainError("s = 0 is degenerate: leaves add nothing and no finite counts exist")
    params_user = recurrence_params(s_user, lam_user)
    if not params_user.adapted:
        raise DomainError(
            "s is not adapted to lam (need lam > (1+|s|)^2); generation undefined"
        )
    digits = max(ctx.digits, 60)
    need = None
    for _ in range(MAX_LADDER_ROUNDS):
        wctx = PrecisionContext(digits)
        lam_w = materialize(lam, wctx)
        s_w = materialize(s, wctx)
        p = recurrence_params(s_w, lam_w)
        if not p.adapted:
            raise DomainError("adaptedness is borderline at %d digits; refusing" % digits)
        try:
            counts, bs = _generate_at(p, k, wctx)
        except _NeedMorePrecision:
            digits *= 2
            continue
        betas = _betas_at(counts, bs, lam_w, s_w)
        need = betas[-1].decimal_magnitude() + BETA_MARGIN_DIGITS
        if need <= digits:
            return ShearerRun(
                lam_user,
                s_user,
                tuple(counts),
                [ctx.scalar(b) for b in bs],
                [ctx.scalar(b) for b in betas],
                params_user,
                ctx,
                digits,
                lam,
                s,
            )
        digits = need + 10
    raise PrecisionError(
        "generation did not stabilize in %d rounds; last round wanted %s digits"
        % (MAX_LADDER_ROUNDS, need)
    )


def beta_sequence(run, method="recurrence"):
    """Recompute the amplification factors from a run's stored trace.

    method "recurrence" uses the first-order pass; "sum" expands each
    beta_j as the weighted sum over all entry positions i <= j, which is
    algebraically identical and serves as a consistency check.
    """
    if any(b.sign() >= 0 for b in run.b_trace):
        raise InvalidRunError("run has a nonnegative b value; not a valid run")
    lam, s = run.lam, run.s
    if method == "recurrence":
        return _betas_at(run.counts, run.b_trace, lam, s)
    if method != "sum":
        raise DomainError("method must be 'recurrence' or 'sum'")
    s2 = s * s
    lm1_sq = (lam - 1) * (lam - 1)
    bs = run.b_trace
    cs = [(1 + r * s2 / lm1_sq) / (-b) for r, b in zip(run.counts, bs)]
    gs = [None] + [s2 / (bs[j - 1] * bs[j]) for j in range(1, len(bs))]
    out = []
    for j in range(len(bs)):
        total = cs[j]
        weight = None
        for i in range(j, 0, -1):
            weight = gs[i] if weight is None else weight * gs[i]
            total = total + weight * cs[i - 1]
        out.append(total)
    return out


def _prefix_value(counts, s2, m, delta, j, k):
    """Sweep value b_j of the full T_k run taken at probe point m.

    The terminal degree correction applies only at the true last
    backbone node, never at the truncation point j.
    """
    b = 1 - m + counts[0] * delta
    for i in range(1, j):
        if b.is_zero:
            raise PrecisionError("probe hit an intermediate zero; raise the precision")
        b = 1 + s2 - m - s2 / b + counts[i] * delta
        if i == k - 1:
            b = b - s2
    return b


def epsilon_k(run, target_digits=None):
    """Certified upper bound on lam - rho(T_k) via the nested root chain.

    Level j locates the zero eps_j of b_j(eps) (the full-run sweep value
    at probe lam - eps) inside (0, eps_{j-1}); each level's bracket low
    end seeds the next level's upper end, keeping every bisection on the
    near side of the pole that b_{j+1} has at eps_j. The last level's
    zero is exactly lam - rho(T_k), so the returned upper bracket end
    (padded by one width plus a rounding allowance) is a rigorous bound.
    """
    wd = run.generation_digits + 10
    if target_digits is not None:
        wd = max(wd, int(target_digits) + 10)
    wctx = PrecisionContext(wd)
    lam = materialize(run.lam_spec, wctx)
    s = materialize(run.s_spec, wctx)
    s2 = s * s
    counts = run.counts
    k = len(counts)
    # resolve each level to a relative 1e-25: comfortably inside the
    # ladder's noise floor (beta_k * 10^-wd is at worst 1e-35 relative)
    # and comfortably finer than the gap between consecutive levels
    level_digits = 25
    iters = int(math.ceil(level_digits * math.log2(10))) + 6

    def make_f(j):
        def f(eps):
            m = lam - eps
            delta = s2 * m / (m - 1)
            return _prefix_value(counts, s2, m, delta, j, k)

        return f

    zero = wctx.zero()
    inset = wctx.power_of_ten(-wd + 8)
    # the level-1 pole sits at eps = lam - 1 itself; start just inside
    upper = (lam - 1) * (1 - inset)
    lo = hi = None
    for j in range(1, k + 1):
        f = make_f(j)
        if f(zero).sign() >= 0:
            raise InvalidRunError("b_%d(0) is not negative; not a valid run" % j)
        if j == 1 and counts[0] == 0:
            # bare backbone end: b_1(eps) = eps - (lam - 1), its zero IS
            # the base bound lam - 1 exactly; seed level 2 from just
            # inside the pole, where b_1 is still (barely) negative
            lo, hi = upper, lam - 1
            continue
        fh = f(upper).sign()
        if fh == 0:
            upper = upper * (1 - inset)
            fh = f(upper).sign()
        if fh <= 0:
            raise PrecisionError(
                "chain level %d not separated at %d digits; raise the precision" % (j, wd)
            )
        lo_j, hi_j = zero, upper
        for _ in range(iters):
            mid = (lo_j + hi_j).halved()
            sg = f(mid).sign()
            if sg < 0:
                lo_j = mid
            elif sg > 0:
                hi_j = mid
            else:
                # an exact zero this deep is cancellation noise, not a
                # root hit; stop refining and keep the confirmed bracket
                break
        lo, hi = lo_j, hi_j
        upper = lo
    width = hi - lo
    padded = hi + width
    # round into the caller's context keeping the bound valid from above
    value = run.ctx.scalar(padded * (1 + wctx.power_of_ten(-run.ctx.digits + 2)))
    return EpsilonBound(k, value, True)


class ReportRow:
    __slots__ = ("k", "counts", "rho", "error")

    def __init__(self, k, counts, rho, error):
        self.k = k
        self.counts = counts
        self.rho = rho
        self.error = error


class ConvergenceReport:
    """Radius and gap lam - rho(T_k) for a family of generated runs."""

    __slots__ = ("lam", "s", "rows")

    def __init__(self, lam, s, rows):
        self.lam = lam
        self.s = s
        self.rows = rows

    def to_csv(self, rho_digits=25, error_digits=9):
        lines = ["k,counts,rho,error"]
        for row in self.rows:
            lines.append(
                "%d,%s,%s,%s"
                % (
                    row.k,
                    format_counts(row.counts),
                    row.rho.to_decimal_string(rho_digits),
                    row.error.to_decimal_string(error_digits),
                )
            )
        return "\n".join(lines) + "\n"


def format_counts(counts, head=None, tail=None):
    """Counts as a bracketed space-separated cell, CSV-safe (no commas).

    head/tail non-None abbreviates: first ``head``, a ``..`` marker, and
    the last ``tail`` entries.
    """
    items = [str(c) for c in counts]
    if head is not None and tail is not None and len(items) > head + tail:
        items = items[:head] + [".."] + items[-tail:]
    return "[%s]" % " ".join(items)


def convergence_report(lam, s, ks, target_digits=None, ctx=None):
    """Generate T_k for each k and measure rho(T_k) by bisection.

    The bisection runs at whatever precision the run's beta_k demands,
    re-materializing lam and s there, and resolves the gap lam - rho to
    a relative 1e-5 or to lam*10^-target_digits, whichever is finer.
    """
    if ctx is None:
        ctx = infer_context(lam, s)
    if target_digits is None:
        target_digits = ctx.digits
    rows = []
    lam_user = materialize(lam, ctx)
    s_user = materialize(s, ctx)
    for k in ks:
        run = generate(lam, s, k, ctx)
        beta_k = run.beta_trace[-1]
        probe_digits = max(ctx.digits, beta_k.decimal_magnitude() + BETA_MARGIN_DIGITS)
        pctx = PrecisionContext(probe_digits)
        lam_p = materialize(run.lam_spec, pctx)
        s_p = materialize(run.s_spec, pctx)
        alpha_k = 1 / pctx.scalar(beta_k)
        width_cap = lam_p * pctx.power_of_ten(-int(target_digits))
        width = alpha_k * pctx.power_of_ten(-5)
        if width_cap < width:
            width = width_cap
        span = (lam_p - 1).to_float()
        iters = max(1, int(math.ceil(math.log2(span) - width.decimal_magnitude() * math.log2(10))))
        est = approximate_radius(run.caterpillar(), s_p, 1, lam_p, iterations=iters)
        rho = est.value()
        rows.append(ReportRow(k, run.counts, ctx.scalar(rho), ctx.scalar(lam_p - rho)))
    return ConvergenceReport(lam_user, s_user, rows)


def counts_cell(counts, full_limit=12):
    """Table cell for a counts vector: full when short, else 6 .. 3."""
    if len(counts) <= full_limit:
        return format_counts(counts)
    return format_counts(counts, head=6, tail=3)
