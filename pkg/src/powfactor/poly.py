"""Dense polynomial arithmetic over Z/NZ.

Polynomials are lists of ints, constant term first. Multiplication packs the
coefficients into one big integer (Kronecker substitution) so the heavy work
is a single big-int product; gmpy2 is used for that product when installed.
"""

from __future__ import annotations

from typing import Sequence

from . import instrument

try:
    import gmpy2
except ImportError:  # pragma: no cover - exercised only without gmpy2
    gmpy2 = None

_GMP_THRESHOLD_BITS = 20_000


def _pack(coeffs: Sequence[int], width: int) -> int:
    return int.from_bytes(b"".join(c.to_bytes(width, "little") for c in coeffs), "little")


def _bigmul(x: int, y: int) -> int:
    if gmpy2 is not None and min(x.bit_length(), y.bit_length()) > _GMP_THRESHOLD_BITS:
        return int(gmpy2.mpz(x) * gmpy2.mpz(y))
    return x * y


def poly_mul(f: Sequence[int], g: Sequence[int], N: int) -> list[int]:
    """Product of two polynomials with reduced coefficients."""
    if not f or not g:
        return []
    out_len = len(f) + len(g) - 1
    instrument.count(mulmods=out_len)
    if min(len(f), len(g)) <= 2:
        out = [0] * out_len
        for i, a in enumerate(f):
            if a:
                for j, b in enumerate(g):
                    out[i + j] += a * b
        return [c % N for c in out]
    # every product coefficient is a sum of at most min(len) terms below N^2
    bits = 2 * (N - 1).bit_length() + min(len(f), len(g)).bit_length()
    width = bits // 8 + 1
    prod = _bigmul(_pack(f, width), _pack(g, width))
    raw = prod.to_bytes(width * out_len, "little")
    return [int.from_bytes(raw[i : i + width], "little") % N for i in range(0, width * out_len, width)]


def poly_eval(f: Sequence[int], x: int, N: int) -> int:
    acc = 0
    for c in reversed(f):
        acc = (acc * x + c) % N
    instrument.count(mulmods=len(f))
    return acc


def poly_from_roots_shifted(shifts: Sequence[int], N: int) -> list[int]:
    """Expand ``prod (X + s)`` over ``shifts`` by a balanced product tree."""
    layer = [[s % N, 1] for s in shifts]
    if not layer:
        return [1]
    while len(layer) > 1:
        nxt = [poly_mul(layer[i], layer[i + 1], N) for i in range(0, len(layer) - 1, 2)]
        if len(layer) % 2:
            nxt.append(layer[-1])
        layer = nxt
    return layer[0]


def _inverse_series(f: Sequence[int], n: int, N: int) -> list[int]:
    """First ``n`` coefficients of ``1/f``; requires ``f[0] == 1``."""
    g = [1]
    prec = 1
    while prec < n:
        prec = min(2 * prec, n)
        # Newton step: g <- g * (2 - f*g)  (mod X^prec)
        fg = poly_mul(f[:prec], g, N)[:prec]
        corr = [(-c) % N for c in fg]
        corr[0] = (corr[0] + 2) % N
        g = poly_mul(g, corr, N)[:prec]
    return g


def poly_rem_monic(f: Sequence[int], d: Sequence[int], N: int) -> list[int]:
    """Remainder of ``f`` modulo the monic polynomial ``d``."""
    n, m = len(f) - 1, len(d) - 1
    if d[-1] % N != 1:
        raise ValueError("divisor must be monic")
    if n < m:
        return list(f)
    qlen = n - m + 1
    rev_d = list(reversed(d))
    inv = _inverse_series(rev_d, qlen, N)
    rev_q = poly_mul(list(reversed(f))[:qlen], inv, N)[:qlen]
    q = list(reversed(rev_q))
    qd = poly_mul(q, d, N)
    return [(f[i] - qd[i]) % N for i in range(m)]


def multipoint_eval(f: Sequence[int], points: Sequence[int], N: int) -> list[int]:
    """Evaluate ``f`` at every point via a subproduct tree and a remainder tree."""
    if not points:
        return []
    tree = [[[(-x) % N, 1] for x in points]]
    while len(tree[-1]) > 1:
        layer = tree[-1]
        nxt = [poly_mul(layer[i], layer[i + 1], N) for i in range(0, len(layer) - 1, 2)]
        if len(layer) % 2:
            nxt.append(layer[-1])
        tree.append(nxt)
    rems = [poly_rem_monic(list(f), tree[-1][0], N)]
    for depth in range(len(tree) - 2, -1, -1):
        layer = tree[depth]
        nxt = []
        for i, node in enumerate(layer):
            nxt.append(poly_rem_monic(rems[i // 2], node, N))
        rems = nxt
    return [r[0] % N if r else 0 for r in rems]
