"""Executable spectral-property checks for deformed Laplacians on trees.

Each check encodes one published inequality or characterization as a
predicate over a (tree, s) pair and returns a :class:`PropertyReport`.
Strict inequalities are certified by exact inertia probes (counting
eigenvalues beyond the stated bound with :func:`count_eigenvalues`, which
never rounds a sign decision); interval estimates with an explicit
tolerance appear only for the two upper bounds and the star equality
case, where the bound can actually be attained.

``holds`` is three-valued: True, False (with a witness), or None when the
property's hypotheses do not apply to the input. Summaries never count
None either way.

The check functions live in the :data:`PROPERTY_CHECKS` registry so a
test harness can swap one out and confirm that injected violations are
reported.
"""

from .diagonalize import approximate_radius, count_eigenvalues
from .scalar import DomainError, Scalar, infer_context
from .trees import Tree, dense_adjacency

PROPERTY_IDS = (
    "zero-eig-iff-unit-s",
    "posdef-iff-subunit-s",
    "radius-above-one",
    "pendant-pair-floor",
    "leaf-deletion-decreases",
    "branching-floor",
    "starlike-ceiling",
    "star-floor",
    "adjacency-ceiling",
    "adapted-super",
    "adapted-sub-deg4",
    "adapted-sub-deg3-deep",
)

# bisection resolution (decimal digits) used when the caller gives no
# tolerance; the reported tolerance is then ten times the final width
DEFAULT_WIDTH_DIGITS = 30


class PropertyReport:
    """Outcome of one property check.

    holds is True, False, or None (hypotheses not satisfied; distinct
    from a violation). A False report carries a witness dict with the
    tree in text form, the value of s, and the numbers that clash.
    """

    __slots__ = ("property_id", "holds", "witness")

    def __init__(self, property_id, holds, witness=None):
        self.property_id = property_id
        self.holds = holds
        self.witness = witness

    @property
    def applicable(self):
        return self.holds is not None

    def __repr__(self):
        state = {True: "holds", False: "VIOLATED", None: "n/a"}[self.holds]
        return "PropertyReport(%s: %s)" % (self.property_id, state)


def _fmt(x):
    if isinstance(x, Scalar):
        return x.to_decimal_string(20)
    return repr(x)


def _witness(tree, s, **values):
    return {
        "tree": tree.to_text(),
        "s": _fmt(s),
        "values": {k: _fmt(v) for k, v in values.items()},
    }


class _Shared:
    """Per-(tree, s) facts memoized across the checks of one sweep cell."""

    def __init__(self, tree, s, width_digits):
        self.tree = tree
        self.s = s
        self.ctx = s.ctx
        self.width_digits = width_digits
        self._bracket = None
        self._adj_radius = None

    def upper_cap(self):
        # Gershgorin row bound for M(s), plus one so the probe is strict
        s = self.s
        s2 = s * s
        best = None
        for v in range(self.tree.n):
            d = self.tree.degree[v]
            row = 1 + s2 * (d - 1) + abs(s) * d
            if best is None or row > best:
                best = row
        return best + 1

    def bracket(self, width_digits=None):
        """Radius bracket for the tree itself (n >= 2)."""
        if width_digits is not None and width_digits > self.width_digits:
            # a one-off finer estimate; do not overwrite the shared one
            return approximate_radius(
                self.tree, self.s, self.ctx.zero(), self.upper_cap(),
                target_digits=width_digits,
            )
        if self._bracket is None:
            self._bracket = approximate_radius(
                self.tree, self.s, self.ctx.zero(), self.upper_cap(),
                target_digits=self.width_digits,
            )
        return self._bracket

    def adjacency_radius(self):
        if self._adj_radius is None:
            eigs = dense_adjacency(self.tree, self.ctx).eigenvalues(self.ctx)
            self._adj_radius = eigs[-1]
        return self._adj_radius


def _exceeds(tree, s, c):
    # exact certificate that the largest eigenvalue is strictly above c
    pos, _, _ = count_eigenvalues(tree, s, c)
    return pos >= 1


def _stays_below(tree, s, c):
    # exact certificate that every eigenvalue is strictly below c
    pos, _, zero = count_eigenvalues(tree, s, c)
    return pos == 0 and zero == 0


def _is_unit(s):
    return abs(s) == 1


def _has_pendant_pair(tree):
    # a leaf whose unique neighbor has degree exactly two
    for v in tree.leaves():
        (u,) = tree.neighbors(v)
        if tree.degree[u] == 2:
            return True
    return False


def _branch_heights(tree, v):
    """Heights (in vertices) of the branches hanging off v, descending."""
    heights = []
    for u in tree.neighbors(v):
        depth = {u: 1}
        stack = [(u, v)]
        best = 1
        while stack:
            w, parent = stack.pop()
            for x in tree.neighbors(w):
                if x == parent:
                    continue
                depth[x] = depth[w] + 1
                if depth[x] > best:
                    best = depth[x]
                stack.append((x, w))
        heights.append(best)
    heights.sort(reverse=True)
    return heights


def _contains_deep_three_star(tree):
    # a vertex with three disjoint outgoing paths of 4, 4 and 1 vertices
    for v in range(tree.n):
        if tree.degree[v] < 3:
            continue
        h = _branch_heights(tree, v)
        if len(h) >= 3 and h[1] >= 4:
            return True
    return False


def _starlike_center(tree):
    """The unique vertex of degree >= 3, or None if not starlike."""
    centers = [v for v in range(tree.n) if tree.degree[v] >= 3]
    if len(centers) == 1:
        return centers[0]
    return None


def _check_zero_eig(tree, s, tol, shared):
    pid = "zero-eig-iff-unit-s"
    if tree.n == 1:
        return PropertyReport(pid, None)
    _, _, zero = count_eigenvalues(tree, s, s.ctx.zero())
    claimed = _is_unit(s)
    if (zero >= 1) == claimed:
        return PropertyReport(pid, True)
    return PropertyReport(pid, False, _witness(tree, s, zero_count=zero))


def _check_posdef(tree, s, tol, shared):
    pid = "posdef-iff-subunit-s"
    if tree.n == 1:
        return PropertyReport(pid, None)
    pos, neg, zero = count_eigenvalues(tree, s, s.ctx.zero())
    posdef = neg == 0 and zero == 0
    if posdef == (abs(s) < 1):
        return PropertyReport(pid, True)
    return PropertyReport(pid, False, _witness(tree, s, negative=neg, zero=zero))


def _check_radius_above_one(tree, s, tol, shared):
    pid = "radius-above-one"
    if tree.n == 1 or s.is_zero:
        return PropertyReport(pid, None)
    if _exceeds(tree, s, s.ctx.scalar(1)):
        return PropertyReport(pid, True)
    return PropertyReport(pid, False, _witness(tree, s, bound=s.ctx.scalar(1)))


def _check_pendant_pair_floor(tree, s, tol, shared):
    pid = "pendant-pair-floor"
    if tree.n == 1 or s.is_zero or not _has_pendant_pair(tree):
        return PropertyReport(pid, None)
    bound = 1 + s * s
    if _exceeds(tree, s, bound):
        return PropertyReport(pid, True)
    return PropertyReport(pid, False, _witness(tree, s, bound=bound))


def _check_leaf_deletion(tree, s, tol, shared):
    pid = "leaf-deletion-decreases"
    if tree.n == 1 or s.is_zero:
        return PropertyReport(pid, None)
    est = shared.bracket()
    for v in tree.leaves():
        smaller = tree.delete_leaf(v)
        if _stays_below(smaller, s, est.low):
            continue
        # the gap may be finer than the shared bracket; look closer once
        fine = shared.bracket(width_digits=shared.width_digits + 15)
        if _stays_below(smaller, s, fine.low):
            continue
        return PropertyReport(
            pid, False,
            _witness(tree, s, deleted_leaf=v, parent_radius_low=fine.low),
        )
    return PropertyReport(pid, True)


def _check_branching_floor(tree, s, tol, shared):
    pid = "branching-floor"
    if s.is_zero or tree.max_degree() < 3:
        return PropertyReport(pid, None)
    ctx = s.ctx
    a = abs(s)
    loose = 1 + ctx.scalar(3).sqrt() * a + s * s
    if not _exceeds(tree, s, loose):
        return PropertyReport(pid, False, _witness(tree, s, bound=loose))
    if tree.max_degree() >= 4:
        tight = (1 + a) ** 2
        if not _exceeds(tree, s, tight):
            return PropertyReport(pid, False, _witness(tree, s, bound=tight))
    return PropertyReport(pid, True)


def _check_starlike_ceiling(tree, s, tol, shared):
    pid = "starlike-ceiling"
    center = _starlike_center(tree)
    if center is None:
        return PropertyReport(pid, None)
    k = tree.degree[center]
    ctx = s.ctx
    bound = 1 + s * s * (k - 1) + abs(s) * k / ctx.scalar(k - 1).sqrt()
    est = shared.bracket()
    margin = tol if tol is not None else 10 * est.width()
    if est.high <= bound + margin:
        return PropertyReport(pid, True)
    return PropertyReport(
        pid, False, _witness(tree, s, bound=bound, radius_high=est.high)
    )


def _check_star_floor(tree, s, tol, shared):
    pid = "star-floor"
    if tree.n == 1:
        return PropertyReport(pid, None)
    if not (s.sign() <= 0 or s >= 1):
        return PropertyReport(pid, None)
    ctx = s.ctx
    delta = tree.max_degree()
    s2 = s * s
    inner = s2 * (delta - 1) ** 2 + 4 * delta
    bound = (s2 * (delta - 1) + 2 + abs(s) * inner.sqrt()).halved()
    if s.is_zero:
        # every radius and the bound both collapse to one
        return PropertyReport(pid, True)
    if tree.max_degree() == tree.n - 1:
        # the bound is attained exactly on stars
        est = shared.bracket()
        margin = tol if tol is not None else 10 * est.width()
        if est.low - margin <= bound <= est.high + margin:
            return PropertyReport(pid, True)
        return PropertyReport(
            pid, False,
            _witness(tree, s, bound=bound, radius_low=est.low, radius_high=est.high),
        )
    if _exceeds(tree, s, bound):
        return PropertyReport(pid, True)
    return PropertyReport(pid, False, _witness(tree, s, bound=bound))


def _check_adjacency_ceiling(tree, s, tol, shared):
    pid = "adjacency-ceiling"
    ctx = s.ctx
    delta = tree.max_degree()
    if tree.n == 1:
        lhs = 1 - s * s
        bound = ctx.scalar(1) + s * s * (delta - 1)
        holds = lhs <= bound + ctx.power_of_ten(-ctx.digits + 8)
        if holds:
            return PropertyReport(pid, True)
        return PropertyReport(pid, False, _witness(tree, s, bound=bound, radius=lhs))
    bound = 1 + s * s * (delta - 1) + abs(s) * shared.adjacency_radius()
    est = shared.bracket()
    margin = tol if tol is not None else 10 * est.width()
    if est.high <= bound + margin:
        return PropertyReport(pid, True)
    return PropertyReport(
        pid, False, _witness(tree, s, bound=bound, radius_high=est.high)
    )


def _adaptedness_probe(pid, tree, s):
    # rho > (1+|s|)^2 makes every lam >= rho satisfy lam > (1+|s|)^2
    bound = (1 + abs(s)) ** 2
    if _exceeds(tree, s, bound):
        return PropertyReport(pid, True)
    return PropertyReport(pid, False, _witness(tree, s, bound=bound))


def _check_adapted_super(tree, s, tol, shared):
    pid = "adapted-super"
    if tree.max_degree() < 3 or not abs(s) > 1:
        return PropertyReport(pid, None)
    return _adaptedness_probe(pid, tree, s)


def _check_adapted_sub_deg4(tree, s, tol, shared):
    pid = "adapted-sub-deg4"
    if tree.max_degree() < 4 or s.is_zero or not abs(s) < 1:
        return PropertyReport(pid, None)
    return _adaptedness_probe(pid, tree, s)


def _check_adapted_sub_deg3_deep(tree, s, tol, shared):
    pid = "adapted-sub-deg3-deep"
    if tree.max_degree() != 3 or s.is_zero or not abs(s) < 1:
        return PropertyReport(pid, None)
    if not _contains_deep_three_star(tree):
        return PropertyReport(pid, None)
    return _adaptedness_probe(pid, tree, s)


PROPERTY_CHECKS = {
    "zero-eig-iff-unit-s": _check_zero_eig,
    "posdef-iff-subunit-s": _check_posdef,
    "radius-above-one": _check_radius_above_one,
    "pendant-pair-floor": _check_pendant_pair_floor,
    "leaf-deletion-decreases": _check_leaf_deletion,
    "branching-floor": _check_branching_floor,
    "starlike-ceiling": _check_starlike_ceiling,
    "star-floor": _check_star_floor,
    "adjacency-ceiling": _check_adjacency_ceiling,
    "adapted-super": _check_adapted_super,
    "adapted-sub-deg4": _check_adapted_sub_deg4,
    "adapted-sub-deg3-deep": _check_adapted_sub_deg3_deep,
}


def _width_digits_for(tol, ctx):
    if tol is None:
        return DEFAULT_WIDTH_DIGITS
    tol = ctx.scalar(tol)
    if not tol > 0:
        raise DomainError("tol must be positive")
    # shrink the bracket until ten widths fit inside tol
    return max(8, -tol.decimal_magnitude() + 2)


def check_property(property_id, tree, s, tol=None, ctx=None):
    """Evaluate one named property on (tree, s).

    tol bounds the slack granted to equality cases and upper-bound
    checks; strict inequalities use exact eigenvalue counts and ignore
    it. When omitted, the slack is ten times the bisection width at
    DEFAULT_WIDTH_DIGITS.
    """
    if property_id not in PROPERTY_CHECKS:
        raise DomainError("unknown property id %r" % (property_id,))
    if not isinstance(tree, Tree):
        raise DomainError("check_property needs a Tree")
    if ctx is None:
        ctx = infer_context(s)
    s = ctx.scalar(s)
    if tol is not None:
        tol = ctx.scalar(tol)
    shared = _Shared(tree, s, _width_digits_for(tol, ctx))
    return PROPERTY_CHECKS[property_id](tree, s, tol, shared)


class SweepResult:
    """All reports from a sweep plus tallies that skip inapplicable ones."""

    __slots__ = ("reports",)

    def __init__(self, reports):
        self.reports = reports

    def violations(self):
        return [r for r in self.reports if r.holds is False]

    def summary(self):
        passed = sum(1 for r in self.reports if r.holds is True)
        failed = sum(1 for r in self.reports if r.holds is False)
        skipped = sum(1 for r in self.reports if r.holds is None)
        return {
            "checked": len(self.reports),
            "passed": passed,
            "failed": failed,
            "not_applicable": skipped,
        }


def sweep(property_ids, trees, s_grid, tol=None, ctx=None):
    """Run the named checks over every (tree, s) pair.

    trees is any iterable of Tree objects; s_grid a list of Scalar-likes.
    Shared per-pair work (the radius bracket, the adjacency radius) is
    computed once per pair, not once per property.
    """
    for pid in property_ids:
        if pid not in PROPERTY_CHECKS:
            raise DomainError("unknown property id %r" % (pid,))
    if ctx is None:
        ctx = infer_context(*[v for v in s_grid if isinstance(v, Scalar)])
    grid = [ctx.scalar(v) for v in s_grid]
    if tol is not None:
        tol = ctx.scalar(tol)
    reports = []
    for tree in trees:
        for s in grid:
            shared = _Shared(tree, s, _width_digits_for(tol, ctx))
            for pid in property_ids:
                reports.append(PROPERTY_CHECKS[pid](tree, s, tol, shared))
    return SweepResult(reports)
