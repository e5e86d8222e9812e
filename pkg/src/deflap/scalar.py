"""Configurable-precision real arithmetic and monotone root bisection.

Every numerical quantity in this package is a ``Scalar``: a wrapper around
mpmath's raw bigfloat tuples with an explicit :class:`PrecisionContext`.
Unlike ``mpmath.mpf``, nothing here reads or mutates the global ``mp``
context, so computations at different precisions can coexist (the Shearer
generator raises its working precision internally while callers keep
50-digit values).

Values are exact dyadic rationals; only operations round. Comparisons are
exact and total. Mixing Scalars from contexts with different digit counts
is a programming error and raises :class:`PrecisionMixingError`.
"""

import math
import os

from mpmath.libmp import (
    ComplexResult,
    dps_to_prec,
    from_float,
    from_int,
    from_str,
    fzero,
    mpf_abs,
    mpf_add,
    mpf_cmp,
    mpf_div,
    mpf_mul,
    mpf_neg,
    mpf_nthroot,
    mpf_pow_int,
    mpf_shift,
    mpf_sqrt,
    mpf_sub,
    round_floor,
    round_nearest,
    to_int,
    to_str,
)

DIGITS_ENV_VAR = "DEFLAP_DIGITS"
MIN_DIGITS = 16
DEFAULT_DIGITS = 50

_RND = round_nearest


class ScalarError(Exception):
    pass


class DomainError(ScalarError, ValueError):
    """Input outside an operation's mathematical domain."""


class BracketingError(ScalarError, ValueError):
    """Bisection endpoints do not bracket a sign change."""


class PrecisionMixingError(ScalarError, TypeError):
    """Operands belong to contexts with different precisions."""


class NegativeRootError(DomainError):
    """Square root of a negative value (never returned as NaN)."""


class PrecisionError(ScalarError, RuntimeError):
    """A computation could not reach the precision it needs."""


class PrecisionContext:
    """Shared precision for one computation.

    digits: working decimal digits, at least 16 (default 50).
    default_bisection_iters: iteration count used by callers that do not
    derive one from a target width.
    """

    __slots__ = ("digits", "prec", "default_bisection_iters")

    def __init__(self, digits=DEFAULT_DIGITS, default_bisection_iters=None):
        digits = int(digits)
        if digits < MIN_DIGITS:
            raise DomainError(
                "precision must be at least %d digits, got %d" % (MIN_DIGITS, digits)
            )
        self.digits = digits
        self.prec = dps_to_prec(digits)
        if default_bisection_iters is None:
            # enough halvings to shrink a unit bracket below 10^-digits
            default_bisection_iters = int(digits * 3.33) + 8
        self.default_bisection_iters = int(default_bisection_iters)

    def scalar(self, value):
        """Lift ``value`` (Scalar, int, str, float) into this context.

        Strings are decimal literals, rounded once to this precision.
        Floats convert exactly (every binary float is dyadic). Scalars from
        another context are re-rounded here; this is the explicit way to
        move values between precisions.
        """
        if isinstance(value, Scalar):
            if value.ctx is self or value.ctx.digits == self.digits:
                return value
            # explicit re-round into this context
            return Scalar(mpf_add(value._v, fzero, self.prec, _RND), self)
        if isinstance(value, int):
            return Scalar(from_int(value, self.prec, _RND), self)
        if isinstance(value, str):
            try:
                return Scalar(from_str(value.strip(), self.prec, _RND), self)
            except ValueError:
                raise DomainError("not a decimal literal: %r" % (value,))
        if isinstance(value, float):
            return Scalar(from_float(value, self.prec, _RND), self)
        raise DomainError("cannot build a Scalar from %r" % (type(value).__name__,))

    def zero(self):
        return Scalar(fzero, self)

    def power_of_ten(self, e):
        """10^e, parsed as a decimal literal (rounded once)."""
        return Scalar(from_str("1e%d" % int(e), self.prec, _RND), self)

    def __repr__(self):
        return "PrecisionContext(digits=%d)" % self.digits

    def __eq__(self, other):
        return isinstance(other, PrecisionContext) and other.digits == self.digits

    def __hash__(self):
        return hash(("PrecisionContext", self.digits))


def context_from_env(digits=None):
    """Resolve a context from an explicit value or the environment."""
    if digits is None:
        digits = os.environ.get(DIGITS_ENV_VAR, DEFAULT_DIGITS)
    return PrecisionContext(int(digits))


def infer_context(*values):
    """Context of the first Scalar among ``values``, else the env default.

    Lets functions with an optional ``ctx`` parameter follow the caller's
    working precision instead of silently re-rounding Scalar arguments to
    the environment default.
    """
    for v in values:
        if isinstance(v, Scalar):
            return v.ctx
    return context_from_env()


class Scalar:
    """A real number bound to a :class:`PrecisionContext`.

    Arithmetic rounds to the context precision; the stored value itself is
    exact. Integers mix freely (they lift losslessly); everything else must
    share the context's precision.
    """

    __slots__ = ("_v", "ctx")

    def __init__(self, v, ctx):
        self._v = v
        self.ctx = ctx

    # -- plumbing ---------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Scalar):
            if other.ctx.digits != self.ctx.digits:
                raise PrecisionMixingError(
                    "mixing %d-digit and %d-digit scalars; convert explicitly "
                    "with ctx.scalar()" % (self.ctx.digits, other.ctx.digits)
                )
            return other._v
        if isinstance(other, int):
            return from_int(other, self.ctx.prec, _RND)
        return NotImplemented

    @property
    def is_zero(self):
        return self._v == fzero

    def sign(self):
        """-1, 0, or +1. Exact."""
        return mpf_cmp(self._v, fzero)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        w = self._coerce(other)
        if w is NotImplemented:
            return NotImplemented
        return Scalar(mpf_add(self._v, w, self.ctx.prec, _RND), self.ctx)

    __radd__ = __add__

    def __sub__(self, other):
        w = self._coerce(other)
        if w is NotImplemented:
            return NotImplemented
        return Scalar(mpf_sub(self._v, w, self.ctx.prec, _RND), self.ctx)

    def __rsub__(self, other):
        w = self._coerce(other)
        if w is NotImplemented:
            return NotImplemented
        return Scalar(mpf_sub(w, self._v, self.ctx.prec, _RND), self.ctx)

    def __mul__(self, other):
        w = self._coerce(other)
        if w is NotImplemented:
            return NotImplemented
        return Scalar(mpf_mul(self._v, w, self.ctx.prec, _RND), self.ctx)

    __rmul__ = __mul__

    def __truediv__(self, other):
        w = self._coerce(other)
        if w is NotImplemented:
            return NotImplemented
        if w == fzero:
            raise ZeroDivisionError("scalar division by zero")
        return Scalar(mpf_div(self._v, w, self.ctx.prec, _RND), self.ctx)

    def __rtruediv__(self, other):
        w = self._coerce(other)
        if w is NotImplemented:
            return NotImplemented
        if self._v == fzero:
            raise ZeroDivisionError("scalar division by zero")
        return Scalar(mpf_div(w, self._v, self.ctx.prec, _RND), self.ctx)

    def __neg__(self):
        return Scalar(mpf_neg(self._v), self.ctx)

    def __abs__(self):
        return Scalar(mpf_abs(self._v), self.ctx)

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0 and self._v == fzero:
            raise ZeroDivisionError("zero to a negative power")
        return Scalar(mpf_pow_int(self._v, n, self.ctx.prec, _RND), self.ctx)

    def sqrt(self):
        if mpf_cmp(self._v, fzero) < 0:
            raise NegativeRootError("square root of a negative scalar")
        return Scalar(mpf_sqrt(self._v, self.ctx.prec, _RND), self.ctx)

    def cbrt(self):
        """Real cube root (odd root: negative inputs allowed)."""
        if mpf_cmp(self._v, fzero) < 0:
            try:
                r = mpf_nthroot(mpf_neg(self._v), 3, self.ctx.prec, _RND)
            except ComplexResult:  # pragma: no cover - cannot happen for |x|
                raise NegativeRootError("cbrt failed")
            return Scalar(mpf_neg(r), self.ctx)
        return Scalar(mpf_nthroot(self._v, 3, self.ctx.prec, _RND), self.ctx)

    def halved(self):
        """Exact division by two (exponent shift, no rounding)."""
        return Scalar(mpf_shift(self._v, -1), self.ctx)

    def floor(self):
        """Exact floor of the stored value, as a Python int."""
        # to_int hands back gmpy2.mpz when that backend is loaded
        return int(to_int(self._v, round_floor))

    def decimal_magnitude(self):
        """ceil(log10 |x|) within one unit, from the binary exponent.

        Never overflows, unlike going through float. Zero maps to a
        huge negative sentinel.
        """
        sign, man, exp, bc = self._v
        if man == 0:
            if self._v == fzero:
                return -(10 ** 9)
            raise DomainError("magnitude of a non-finite scalar")
        return int(math.ceil((exp + bc) * 0.30102999566398120))

    # -- comparisons (exact, total) ----------------------------------------

    def _cmp(self, other):
        w = self._coerce(other)
        if w is NotImplemented:
            return NotImplemented
        return mpf_cmp(self._v, w)

    def __lt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is NotImplemented else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is NotImplemented else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is NotImplemented else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is NotImplemented else c >= 0

    def __eq__(self, other):
        if isinstance(other, (Scalar, int)):
            c = self._cmp(other)
            return c == 0
        return NotImplemented

    def __ne__(self, other):
        r = self.__eq__(other)
        return NotImplemented if r is NotImplemented else not r

    def __hash__(self):
        return hash(self._v)

    # -- output -----------------------------------------------------------

    def to_float(self):
        from mpmath.libmp import to_float as _tf

        return _tf(self._v)

    def to_decimal_string(self, digits=None):
        """Round-to-nearest decimal string with ``digits`` significant digits."""
        if digits is None:
            digits = self.ctx.digits
        return to_str(self._v, digits)

    def raw(self):
        """The underlying libmp tuple (sign, man, exp, bc). Exact."""
        return self._v

    def __repr__(self):
        return "Scalar(%s @%dd)" % (self.to_decimal_string(min(self.ctx.digits, 20)), self.ctx.digits)

    def __str__(self):
        return self.to_decimal_string()


def scalar_from_raw(v, ctx):
    """Wrap a raw libmp tuple, rounding once into ``ctx``."""
    return Scalar(mpf_add(v, fzero, ctx.prec, _RND), ctx)


def materialize(value, ctx):
    """Realize an exact value description at a given precision.

    Functions that raise precision internally cannot treat a 50-digit Scalar
    as the definition of its own input: extending it with zero bits is not
    the same number as, say, the closed-form s*(λ)/2 at 300 digits, and the
    caterpillar counts are sensitive to differences that small. So interfaces
    that elevate precision accept any of
      - int (exact at every precision),
      - decimal string (re-parsed per precision),
      - callable ctx -> Scalar (re-evaluated per precision),
      - Scalar (taken at face value; exact but precision-frozen),
    and call this at each working precision.
    """
    if callable(value) and not isinstance(value, Scalar):
        out = value(ctx)
        if not isinstance(out, Scalar):
            raise DomainError("value callable must return a Scalar")
        return ctx.scalar(out)
    return ctx.scalar(value)


def bisect_monotone_root(f, a, b, iters):
    """Bisect a sign change of a continuous strictly monotone ``f`` on [a, b].

    Returns the midpoint of the final bracket; the true root is within
    (b-a)/2^iters of it. An exact zero at a midpoint returns immediately.
    Raises BracketingError when f(a), f(b) do not have strictly opposite
    signs, DomainError when a >= b.
    """
    if not isinstance(a, Scalar) or not isinstance(b, Scalar):
        raise DomainError("bisection endpoints must be Scalars")
    if not a < b:
        raise DomainError("empty bracket: a must be strictly below b")
    fa = f(a).sign()
    fb = f(b).sign()
    if fa == 0:
        return a
    if fb == 0:
        return b
    if fa == fb:
        raise BracketingError("f has the same sign at both endpoints")
    lo, hi = a, b
    for _ in range(int(iters)):
        mid = (lo + hi).halved()
        s = f(mid).sign()
        if s == 0:
            return mid
        if s == fa:
            lo = mid
        else:
            hi = mid
    return (lo + hi).halved()
