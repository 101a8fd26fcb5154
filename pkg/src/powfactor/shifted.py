"""Values of shifted factorials H(X)H(X+1)...H(X+k-1) along a progression.

For a monic linear ``H = X + c`` and ``k = 2**e`` the fast route computes
``H_k(beta), H_k(2 beta), ..., H_k(k beta)`` by doubling. We keep the values
of ``H_d`` at ``0, beta, ..., d beta`` and use ``H_2d(X) = H_d(X) H_d(X + d)``;
the values of ``H_d`` at the shifted points come from Lagrange interpolation
on the equally spaced samples, which turns into one convolution.

Every inverse the shifts need is an element of one of the windows
``h(2^i, beta, 2^i)`` and ``h((2^i + 1) beta, beta, 2^i)``. The plan checks
them all at once and keeps their inverses.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

from . import instrument
from .batch import Witness, batch_invert, find_noninvertible
from .poly import multipoint_eval, poly_from_roots_shifted, poly_mul


@dataclass(frozen=True)
class LinearPoly:
    """The monic polynomial ``X + c`` over Z/NZ."""

    c: int
    N: int

    def __post_init__(self):
        object.__setattr__(self, "c", self.c % self.N)

    def __call__(self, x: int) -> int:
        return (x + self.c) % self.N


@dataclass(frozen=True)
class WindowCondition:
    alpha: int
    beta: int
    d: int
    N: int

    def elements(self) -> list[int]:
        """``beta, 2, ..., d, alpha - d beta, ..., alpha + d beta`` reduced mod N (3d + 1 items)."""
        if self.d < 1:
            raise ValueError("window size must be >= 1")
        N, a, b, d = self.N, self.alpha, self.beta, self.d
        return [b % N] + [i % N for i in range(2, d + 1)] + [(a + t * b) % N for t in range(-d, d + 1)]

    def holds(self) -> bool:
        return not isinstance(find_noninvertible(self.elements(), self.N), Witness)


def window_product(w: WindowCondition) -> int:
    acc = 1
    for x in w.elements():
        acc = acc * x % w.N
    instrument.count(mulmods=3 * w.d + 1)
    return acc


def plan_windows(e: int, beta: int, N: int) -> list[tuple[WindowCondition, WindowCondition]]:
    out = []
    for i in range(e):
        d = 1 << i
        out.append((WindowCondition(d, beta, d, N), WindowCondition((d + 1) * beta, beta, d, N)))
    return out


@dataclass(frozen=True)
class EvalPlan:
    """Checked configuration for evaluating ``H_k`` at ``beta, ..., k beta``.

    ``D`` is the product of all window elements and ``D_inv`` its inverse.
    ``window_inverses[i]`` holds the elementwise inverses of the two windows
    of doubling step ``i``, in :meth:`WindowCondition.elements` order.
    """

    e: int
    beta: int
    N: int
    D: int
    D_inv: int
    window_inverses: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...] = field(repr=False)

    @property
    def k(self) -> int:
        return 1 << self.e


def build_eval_plan(e: int, beta: int, N: int) -> EvalPlan | Witness:
    """Check ``H(2^e, beta)`` and precompute what the doubling steps need.

    A non-unit among the window elements comes back as a :class:`Witness`
    whose ``g`` is ``gcd(element, N)``; it may be a factor of N.
    """
    if e < 0:
        raise ValueError("e must be nonnegative")
    beta %= N
    windows = plan_windows(e, beta, N)
    if not windows:
        return EvalPlan(0, beta, N, 1, 1, ())
    elements: list[int] = []
    sizes = []
    for w1, w2 in windows:
        for w in (w1, w2):
            el = w.elements()
            elements.extend(el)
            sizes.append(len(el))
    res = find_noninvertible(elements, N)
    if isinstance(res, Witness):
        return res
    D_inv = res.inverse_of_product
    D = pow(D_inv, -1, N)
    invs = batch_invert(elements, N, product_inverse=D_inv)
    chunks = []
    pos = 0
    for s in sizes:
        chunks.append(tuple(invs[pos : pos + s]))
        pos += s
    paired = tuple((chunks[2 * i], chunks[2 * i + 1]) for i in range(len(windows)))
    return EvalPlan(e, beta, N, D, D_inv, paired)


def shift_values(
    vals: Sequence[int], alpha: int, beta: int, inverses: Sequence[int], N: int
) -> list[int]:
    """From ``P(0), P(beta), ..., P(d beta)`` of a degree-d polynomial P, get
    ``P(alpha), P(alpha + beta), ..., P(alpha + d beta)``.

    ``inverses`` are the inverses of the window ``h(alpha, beta, d)`` in
    :meth:`WindowCondition.elements` order.
    """
    d = len(vals) - 1
    inv_beta = inverses[0]
    inv_small = inverses[1:d]  # 1/2, ..., 1/d
    inv_s = inverses[d:]  # 1/(alpha + t beta) for t = -d..d
    s = [(alpha + t * beta) % N for t in range(-d, d + 1)]

    inv_fact = [1] * (d + 1)
    for i in range(2, d + 1):
        inv_fact[i] = inv_fact[i - 1] * inv_small[i - 2] % N
    scale = pow(inv_beta, d, N)

    # Lagrange weight of sample i: 1 / (beta^d i! (d-i)! (-1)^(d-i))
    a = []
    for i, v in enumerate(vals):
        w = v * scale % N * inv_fact[i] % N * inv_fact[d - i] % N
        a.append(w if (d - i) % 2 == 0 else (-w) % N)
    conv = poly_mul(a, list(inv_s), N)

    out = [0] * (d + 1)
    delta = 1
    for t in range(0, d + 1):  # s_{-d} .. s_0
        delta = delta * s[t] % N
    for j in range(d + 1):
        if j:
            delta = delta * s[j + d] % N * inv_s[j - 1] % N
        out[j] = delta * conv[j + d] % N
    instrument.count(mulmods=8 * d + 2 * (d.bit_length()))
    return out


def eval_shifted_factorials(
    H: LinearPoly,
    plan: EvalPlan,
    *,
    _shift: Callable[..., list[int]] = shift_values,
) -> list[int]:
    """``[H_k(beta), H_k(2 beta), ..., H_k(k beta)]`` with ``k = plan.k``."""
    N, beta = plan.N, plan.beta
    if H.N != N:
        raise ValueError("polynomial and plan use different moduli")
    vals = [H.c, (beta + H.c) % N]
    for i, (inv1, inv2) in enumerate(plan.window_inverses):
        d = 1 << i
        alpha2 = (d + 1) * beta % N
        ahead = _shift(vals, d, beta, inv1, N)
        upper = _shift(vals, alpha2, beta, inv2, N)
        upper_ahead = _shift(upper, d, beta, inv1, N)
        vals = [x * y % N for x, y in zip(vals, ahead)] + [
            x * y % N for x, y in zip(upper[:d], upper_ahead[:d])
        ]
        instrument.count(mulmods=2 * d + 1)
    return vals[1:]


def naive_eval(H: LinearPoly, k: int, points: Sequence[int]) -> list[int]:
    """Direct products ``H(x) H(x+1) ... H(x+k-1)`` at each point."""
    N = H.N
    out = []
    for x in points:
        acc = 1
        base = x + H.c
        for l in range(k):
            acc = acc * (base + l) % N
        out.append(acc)
    instrument.count(mulmods=k * len(points))
    return out


def tree_eval(H: LinearPoly, k: int, points: Sequence[int]) -> list[int]:
    """Expand ``H_k`` explicitly and evaluate it with a subproduct tree.

    Needs no invertibility condition and accepts any ``k``; slower than the
    doubling route by a log factor.
    """
    N = H.N
    coeffs = poly_from_roots_shifted([H.c + l for l in range(k)], N)
    return multipoint_eval(coeffs, [x % N for x in points], N)
