"""Congruence diagonalization of M(s) = I - s*A + s^2*(D-I) on trees.

One bottom-up sweep produces a diagonal matrix congruent to M(s) + x*I,
so by Sylvester's law of inertia the sign counts of the output locate
eigenvalues relative to -x without ever forming the matrix. Everything
else in this package (radius bisection, caterpillar generation, error
certificates) reduces to this sweep or to its closed caterpillar form.
"""

import math

from .scalar import BracketingError, DomainError, Scalar
from .trees import Caterpillar, Tree


class ZeroPivot(Exception):
    """A backbone value hit exactly zero on the caterpillar fast path.

    The generic tree sweep handles zero pivots by edge surgery; the
    closed-form backbone recurrence cannot, so it signals and the caller
    falls back to the full sweep.
    """

    def __init__(self, index):
        self.index = index
        Exception.__init__(self, "zero pivot at backbone position %d" % index)


class DiagOutcome:
    """Final diagonal of one sweep plus its inertia.

    outputs[v] is the value attached to vertex v; inertia is the triple
    (positive, negative, zero). By congruence with M(s) + x*I these count
    eigenvalues of M(s) greater than, smaller than, and equal to -x.
    """

    __slots__ = ("outputs", "inertia")

    def __init__(self, outputs, inertia):
        self.outputs = outputs
        self.inertia = inertia

    def __repr__(self):
        return "DiagOutcome(inertia=%r)" % (self.inertia,)


def diagonalize_tree(tree, s, x):
    """Run the sweep on a tree: returns a DiagOutcome for M(s) + x*I.

    Processing order is the tree's postorder. A vertex whose children all
    carry nonzero values absorbs -s^2/d_c from each child c; a zero child
    instead forces the pair (d_v, d_c) := (-s^2/2, 2) and detaches v from
    its parent for the rest of the sweep.
    """
    if not isinstance(tree, Tree):
        raise DomainError("diagonalize_tree needs a Tree")
    if not isinstance(s, Scalar):
        raise DomainError("s must be a Scalar")
    ctx = s.ctx
    x = ctx.scalar(x)
    s2 = s * s
    d = [ctx.scalar(1) + s2 * (tree.degree[v] - 1) + x for v in range(tree.n)]
    if not s2.is_zero:
        cut = [False] * tree.n
        for v in tree.postorder:
            kids = [c for c in tree.children[v] if not cut[c]]
            if not kids:
                continue
            zero_kid = None
            for c in kids:
                if d[c].is_zero:
                    zero_kid = c
                    break
            if zero_kid is None:
                acc = ctx.zero()
                for c in kids:
                    acc = acc + 1 / d[c]
                d[v] = d[v] - s2 * acc
            else:
                d[v] = -s2.halved()
                d[zero_kid] = ctx.scalar(2)
                cut[v] = True
    pos = neg = zero = 0
    for val in d:
        sg = val.sign()
        if sg > 0:
            pos += 1
        elif sg < 0:
            neg += 1
        else:
            zero += 1
    return DiagOutcome(d, (pos, neg, zero))


def count_eigenvalues(tree, s, c):
    """How many eigenvalues of M(s) lie above / below / at the point c.

    Exact: the sweep never rounds a sign decision for probe points that
    are representable at the working precision.
    """
    c = s.ctx.scalar(c)
    out = diagonalize_tree(tree, s, -c)
    return out.inertia


def caterpillar_outputs(cat, s, lam):
    """Backbone outputs b_1..b_k of the sweep at probe point lam.

    Leaf pivots all equal 1 - lam, so their effect folds into a single
    per-node term and the whole sweep collapses to a scalar recurrence
    along the backbone. Raises DomainError at lam = 1 (leaf pivot
    vanishes, and the folded term has a pole there) and ZeroPivot when an
    intermediate b_j is exactly zero; callers then use the tree sweep.
    """
    if not isinstance(cat, Caterpillar):
        raise DomainError("caterpillar_outputs needs a Caterpillar")
    if not isinstance(s, Scalar):
        raise DomainError("s must be a Scalar")
    ctx = s.ctx
    lam = ctx.scalar(lam)
    if lam == 1:
        raise DomainError("probe point 1 is a pole of the leaf-folded sweep")
    counts = cat.counts
    k = cat.k
    s2 = s * s
    # each pendant leaf contributes -s^2/(1-lam), i.e. +delta per leaf
    delta = s2 * lam / (lam - 1)
    b = 1 - lam + counts[0] * delta
    outputs = [b]
    for j in range(1, k):
        if b.is_zero:
            raise ZeroPivot(j - 1)
        b = 1 + s2 - lam - s2 / b + counts[j] * delta
        if j == k - 1:
            b = b - s2
        outputs.append(b)
    return outputs


def _caterpillar_all_negative(cat, s, c):
    """(all_negative, early) for the fast probe at point c.

    The leaf pivot sign is checked before delta is formed, so the c = 1
    pole is never evaluated: a nonnegative leaf pivot already decides the
    probe. ``early`` reports a verdict reached before the last backbone
    node.
    """
    leaf_pivot = 1 - c
    counts = cat.counts
    k = cat.k
    if sum(counts) > 0 and leaf_pivot.sign() >= 0:
        return False, True
    if leaf_pivot.is_zero:
        # no leaves anywhere, backbone pivots start at zero
        return False, True
    s2 = s * s
    delta = s2 * c / (c - 1)
    b = 1 - c + counts[0] * delta
    if b.sign() >= 0:
        return False, k > 1
    for j in range(1, k):
        b = 1 + s2 - c - s2 / b + counts[j] * delta
        if j == k - 1:
            b = b - s2
        if b.sign() >= 0:
            return False, j < k - 1
    return True, False


def _tree_all_negative(tree, s, c):
    """(all_negative, early) via the full sweep, stopping at the first
    nonnegative value. Sound because a computed value can only change
    again by the zero-pivot surgery, which keeps it nonnegative.
    """
    ctx = s.ctx
    x = -c
    s2 = s * s
    if s2.is_zero:
        sg = (ctx.scalar(1) + x).sign()
        return sg < 0, False
    d = [ctx.scalar(1) + s2 * (tree.degree[v] - 1) + x for v in range(tree.n)]
    cut = [False] * tree.n
    last = tree.postorder[-1]
    for v in tree.postorder:
        kids = [ch for ch in tree.children[v] if not cut[ch]]
        if kids:
            zero_kid = None
            for ch in kids:
                if d[ch].is_zero:
                    zero_kid = ch
                    break
            if zero_kid is None:
                acc = ctx.zero()
                for ch in kids:
                    acc = acc + 1 / d[ch]
                d[v] = d[v] - s2 * acc
            else:
                # surgery makes the zero child positive; verdict is known
                return False, v != last
        if d[v].sign() >= 0:
            return False, v != last
    return True, False


class RadiusEstimate:
    """A bracket [low, high] around the largest eigenvalue.

    high - low equals the initial bracket width divided by 2^iterations
    (up to final-digit rounding). ``early_breaks`` counts probes decided
    before their sweep finished; it is diagnostic only.
    """

    __slots__ = ("low", "high", "iterations", "early_breaks")

    def __init__(self, low, high, iterations, early_breaks):
        self.low = low
        self.high = high
        self.iterations = iterations
        self.early_breaks = early_breaks

    def value(self):
        return (self.low + self.high).halved()

    def width(self):
        return self.high - self.low

    def __repr__(self):
        return "RadiusEstimate(%s, width=%s, iters=%d)" % (
            self.value().to_decimal_string(20),
            self.width().to_decimal_string(3),
            self.iterations,
        )


def _probe(obj, s, c):
    # the caterpillar probe checks each sign before dividing, so it never
    # needs the zero-pivot fallback that caterpillar_outputs does
    if isinstance(obj, Caterpillar):
        return _caterpillar_all_negative(obj, s, c)
    return _tree_all_negative(obj, s, c)


def approximate_radius(obj, s, lo, hi, iterations=None, target_digits=None):
    """Bisect for the largest eigenvalue of M(s) over [lo, hi].

    ``obj`` is a Tree or a Caterpillar (the latter probed by the folded
    backbone recurrence). The bracket must satisfy rho >= lo and
    rho < hi; both ends are probed and a bad bracket raises
    BracketingError. When ``iterations`` is omitted it is derived from
    ``target_digits`` (default: the context's digits) as the count needed
    to shrink the bracket below 10^-target_digits.
    """
    if not isinstance(obj, (Tree, Caterpillar)):
        raise DomainError("expected a Tree or a Caterpillar")
    if not isinstance(s, Scalar):
        raise DomainError("s must be a Scalar")
    ctx = s.ctx
    lo = ctx.scalar(lo)
    hi = ctx.scalar(hi)
    if not lo < hi:
        raise BracketingError("bracket is empty: lo must be strictly below hi")
    below_lo, _ = _probe(obj, s, lo)
    if below_lo:
        raise BracketingError("largest eigenvalue lies below lo already")
    below_hi, _ = _probe(obj, s, hi)
    if not below_hi:
        raise BracketingError("largest eigenvalue is not below hi")
    if iterations is None:
        if target_digits is None:
            target_digits = ctx.digits
        span = (hi - lo).to_float()
        iterations = max(1, int(math.ceil(math.log2(span) + target_digits * math.log2(10))))
    early_breaks = 0
    for _ in range(int(iterations)):
        mid = (lo + hi).halved()
        below, early = _probe(obj, s, mid)
        if below:
            hi = mid
        else:
            lo = mid
            if early:
                early_breaks += 1
    return RadiusEstimate(lo, hi, int(iterations), early_breaks)
