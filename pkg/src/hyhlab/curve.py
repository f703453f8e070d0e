"""Short-Weierstrass group arithmetic over prime fields, in affine coordinates.

Points are plain ``(x, y)`` tuples; the point at infinity is ``None``. The
addition law is total and never checks whether its inputs satisfy the curve
equation: the chord/tangent formulas do not involve the coefficient ``b``, so
they act identically on every curve ``y^2 = x^3 + a*x + b'`` over the same
field. Validation is a separate, explicit step (``validate_public_key``).
That separation is the whole point of this module: it lets the rest of the
lab feed carefully crafted invalid points to code that forgot to check.
"""

import functools
import random
from dataclasses import dataclass

from . import numtheory
from .numtheory import mod_inverse, sqrt_mod, is_prime

Point = tuple[int, int] | None

INFINITY: Point = None

DEFAULT_COUNT_BOUND = 1 << 24


class CurveTooLarge(ValueError):
    """Field too big for exhaustive point counting."""


class OrderMismatch(ValueError):
    """Supplied group order does not annihilate the point."""


class SearchBudgetExceeded(RuntimeError):
    """A randomized point/curve search ran out of retries."""


@dataclass(frozen=True)
class CurveParams:
    """Domain parameters (q, a, b, G, n, h).

    Only basic shape is enforced here (odd q >= 5, coefficients reduced).
    Claims like "n is prime" or "n*G = O" are exactly that -- claims -- and
    are checked by the domain-parameter validator, never assumed.
    """

    q: int
    a: int
    b: int
    G: Point
    n: int
    h: int

    def __post_init__(self):
        if self.q < 5 or self.q % 2 == 0:
            raise ValueError(f"field modulus must be odd and >= 5, got {self.q}")
        if not (0 <= self.a < self.q and 0 <= self.b < self.q):
            raise ValueError("curve coefficients must be reduced mod q")

    def with_b(self, new_b: int, G: Point, n: int, h: int) -> "CurveParams":
        return CurveParams(self.q, self.a, new_b % self.q, G, n, h)


@dataclass(frozen=True)
class ValidationVerdict:
    """Outcome of public-key validation; lists every failed condition."""

    failed: tuple[str, ...] = ()
    #: condition labels: "a" = not identity, "b" = field-element format,
    #: "c" = satisfies the curve equation

    @property
    def ok(self) -> bool:
        return not self.failed


def negate(params: CurveParams, P: Point) -> Point:
    if P is None:
        return None
    x, y = P
    return (x, (-y) % params.q)


def point_add(params: CurveParams, P: Point, Q: Point) -> Point:
    """Chord/tangent addition. Total; happily adds off-curve points."""
    q = params.q
    if P is None:
        return Q
    if Q is None:
        return P
    x1, y1 = P
    x2, y2 = Q
    if x1 == x2:
        if (y1 + y2) % q == 0:
            return None
        if y1 != y2:
            # Two points sharing x without being negatives can't lie on any
            # common curve; treating the sum as O keeps the law total.
            return None
        lam = (3 * x1 * x1 + params.a) * mod_inverse(2 * y1 % q, q) % q
    else:
        lam = (y2 - y1) * mod_inverse((x2 - x1) % q, q) % q
    x3 = (lam * lam - x1 - x2) % q
    y3 = (lam * (x1 - x3) - y1) % q
    return (x3, y3)


def scalar_mul(params: CurveParams, k: int, P: Point) -> Point:
    """k-fold sum of P by double-and-add. No reduction of k is performed."""
    if k < 0:
        raise ValueError("scalar must be non-negative")
    R: Point = None
    acc = P
    while k:
        if k & 1:
            R = point_add(params, R, acc)
        acc = point_add(params, acc, acc)
        k >>= 1
    return R


def is_on_curve(params: CurveParams, P: Point) -> bool:
    if P is None:
        return True
    x, y = P
    return (y * y - (x * x * x + params.a * x + params.b)) % params.q == 0


def validate_public_key(params: CurveParams, U: Point) -> ValidationVerdict:
    """The three-part public key check: U != O, coordinate format, curve
    equation. All failures are reported, none raises."""
    failed = []
    if U is None:
        return ValidationVerdict(failed=("a",))
    x, y = U
    if not (isinstance(x, int) and isinstance(y, int)
            and 0 <= x < params.q and 0 <= y < params.q):
        failed.append("b")
    if not is_on_curve(params, U):
        failed.append("c")
    return ValidationVerdict(failed=tuple(failed))


@functools.lru_cache(maxsize=256)
def count_points(params: CurveParams, bound: int = DEFAULT_COUNT_BOUND) -> int:
    """#E(F_q) including O, by exhaustive enumeration over x.

    A multiplicity table of squares makes this a linear pass: for each x the
    number of y with y^2 = x^3 + ax + b is looked up directly. Results are
    cached; the table costs about half a second at q near 2^20.
    """
    q = params.q
    if q >= bound:
        raise CurveTooLarge(f"q = {q} exceeds enumeration bound {bound}")
    sq_mult = bytearray(q)
    for y in range(q):
        sq_mult[(y * y) % q] += 1
    a, b = params.a, params.b
    total = 1  # O
    for x in range(q):
        total += sq_mult[(x * x % q * x + a * x + b) % q]
    return total


def point_order(params: CurveParams, P: Point, group_order: int) -> int:
    """Least m >= 1 with m*P = O, given an ambient group order."""
    if scalar_mul(params, group_order, P) is not None:
        raise OrderMismatch(f"group order {group_order} does not annihilate {P}")
    m = group_order
    for p in numtheory.factor(group_order):
        while m % p == 0 and scalar_mul(params, m // p, P) is None:
            m //= p
    return m


def random_point(params: CurveParams, rng: random.Random,
                 max_tries: int = 4096) -> Point:
    """Uniform-ish random affine point on the curve, by x-lifting."""
    for _ in range(max_tries):
        x = rng.randrange(params.q)
        rhs = (x * x % params.q * x + params.a * x + params.b) % params.q
        y = sqrt_mod(rhs, params.q)
        if y is None:
            continue
        if y != 0 and rng.getrandbits(1):
            y = params.q - y
        return (x, y)
    raise SearchBudgetExceeded("could not sample a point on the curve")


def find_point_of_order(params: CurveParams, g: int, group_order: int,
                        rng_seed: int, max_tries: int = 4096) -> Point:
    """Point of exact prime order g, via cofactor multiplication.

    The cofactor strips every other prime, landing in the g-Sylow subgroup;
    multiplying by g then walks down to order exactly g. The walk matters
    when g divides the order more than once and the Sylow subgroup is not
    cyclic (full torsion), where the naive group_order/g multiplier would
    annihilate everything.
    """
    if not is_prime(g):
        raise ValueError(f"target order {g} must be prime")
    if group_order % g != 0:
        raise ValueError(f"{g} does not divide the group order {group_order}")
    cofactor = group_order
    while cofactor % g == 0:
        cofactor //= g
    rng = random.Random(rng_seed)
    for _ in range(max_tries):
        W = scalar_mul(params, cofactor, random_point(params, rng))
        while W is not None:
            lower = scalar_mul(params, g, W)
            if lower is None:
                return W
            W = lower
    raise SearchBudgetExceeded(f"no point of order {g} found in {max_tries} tries")


@dataclass(frozen=True)
class InvalidCurveHit:
    """One curve y^2 = x^3 + a*x + b' (b' != b) with a small-order point."""

    params: CurveParams
    point: Point
    order: int


def find_invalid_curves(params: CurveParams, min_product: int, rng_seed: int,
                        small_order_bound: int = 1 << 14,
                        max_candidates: int = 64,
                        count_bound: int = DEFAULT_COUNT_BOUND) -> list[InvalidCurveHit]:
    """Curves differing from params only in b, each carrying a point of small
    prime order, orders pairwise coprime with product above min_product.

    Candidates are scanned deterministically (b+1, b+2, ...) so a fixed seed
    reproduces the same list; at most one small-order point is taken per
    curve. Every returned point fails validation against the original curve.
    """
    if min_product < 2:
        raise ValueError("min_product must be >= 2")
    rng = random.Random(rng_seed)
    hits: list[InvalidCurveHit] = []
    used_orders: set[int] = set()
    product = 1
    for step in range(1, max_candidates + 1):
        if product > min_product:
            return hits
        b2 = (params.b + step) % params.q
        if b2 == params.b:
            continue
        if (4 * params.a ** 3 + 27 * b2 * b2) % params.q == 0:
            continue
        candidate = params.with_b(b2, G=None, n=0, h=0)
        order2 = count_points(candidate, bound=count_bound)
        usable = [
            g for g in numtheory.factor(order2)
            if g <= small_order_bound and g not in used_orders
        ]
        if not usable:
            continue
        g = max(usable)
        W = find_point_of_order(candidate, g, order2, rng.getrandbits(64))
        assert not is_on_curve(params, W)
        hits.append(InvalidCurveHit(candidate.with_b(b2, G=W, n=g, h=order2 // g),
                                    W, g))
        used_orders.add(g)
        product *= g
    if product > min_product:
        return hits
    raise SearchBudgetExceeded(
        f"product of small orders only reached {product} after {max_candidates} curves"
    )
