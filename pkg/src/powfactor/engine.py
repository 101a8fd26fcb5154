"""Factorization drivers.

:func:`factor_with_residue` runs the doubling bound schedule ``B = 4^e m``
over :func:`~powfactor.sieve.find_factor_below`. :func:`special_form_factor`
splits ``a^n +- b^n`` by the multiplicative order of ``a/b``: a prime whose
order is ``d`` is ``1 mod d``, which is exactly the residue information the
schedule can exploit.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from math import gcd, isqrt
from typing import Callable, Optional, Union

from . import instrument
from .arith import factor_small, remove_prime_power, trial_division, trial_division_in_progression
from .errors import InvariantError, ResiduePromiseError
from .forms import MINUS, PLUS, RawInteger, RawWithResidue, SpecialForm, parse_special_form
from .instrument import OpStats
from .primality import primality
from .sieve import FoundPrime, LuckyFactor, NoneBelow, ResidueInfo, find_factor_below

SMALL_PRIME_LIMIT = 400

EventSink = Optional[Callable[[dict], None]]


@dataclass(frozen=True)
class OrderBranch:
    """One nontrivial ``G_j`` of the special-form loop and the primes it gave."""

    d: int
    G: int
    primes: tuple[int, ...]


@dataclass
class Factorization:
    input: int
    factors: list[tuple[int, int]]
    certification: dict[int, str] = field(default_factory=dict)
    stats: OpStats = field(default_factory=OpStats)
    schedule: list[dict] = field(default_factory=list)
    branches: list[OrderBranch] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {p: e for p, e in self.factors}

    def verify(self) -> None:
        prod = 1
        for p, e in self.factors:
            prod *= p**e
        if prod != self.input:
            raise InvariantError(f"factors of {self.input} multiply to {prod}")
        ps = [p for p, _ in self.factors]
        if ps != sorted(set(ps)):
            raise InvariantError("factor list is not strictly increasing")
        for p in ps:
            ok, level = primality(p)
            if not ok:
                raise InvariantError(f"{p} is listed as a factor of {self.input} but is composite")
            self.certification[p] = level


class _Run:
    """Mutable bookkeeping for one factorization job."""

    def __init__(self, on_event: EventSink):
        self.on_event = on_event
        self.schedule: list[dict] = []
        self.branches: list[OrderBranch] = []

    def emit(self, **event) -> None:
        self.schedule.append(event)
        if self.on_event is not None:
            self.on_event(event)


def _finish(N: int, factors: Counter, stats: OpStats, run: _Run) -> Factorization:
    f = Factorization(
        input=N,
        factors=sorted(factors.items()),
        stats=stats,
        schedule=run.schedule,
        branches=run.branches,
    )
    f.verify()
    return f


# -- schedule ---------------------------------------------------------------


def _finish_in_progression(N: int, info: ResidueInfo, out: Counter, run: _Run) -> None:
    while N > 1:
        p = trial_division_in_progression(N, info.r, info.m, isqrt(N) + 1)
        if p is None:
            ok, _ = primality(N)
            if not ok or N % info.m != info.r:
                raise ResiduePromiseError(None, info.m, info.r, f"{N} has a factor outside the class")
            p = N
        e, N = remove_prime_power(N, p)
        out[p] += e
        run.emit(stage="progression", m=info.m, p=p)


def _factor_with_residue(N: int, info: ResidueInfo, run: _Run) -> Counter:
    m, r = info.m, info.r
    out: Counter = Counter()
    if N < SMALL_PRIME_LIMIT:
        out.update(factor_small(N))
        return out

    instrument.count(gcds=1)
    g = gcd(N, m)
    if g > 1:
        for p in factor_small(g):
            e, N = remove_prime_power(N, p)
            out[p] += e
            run.emit(stage="modulus_gcd", m=m, p=p)

    def accept(p: int) -> None:
        if p % m != r:
            raise ResiduePromiseError(p, m, r)

    e = 1
    while N > 1:
        if N < SMALL_PRIME_LIMIT:
            for p, x in factor_small(N).items():
                accept(p)
                out[p] += x
            break
        if primality(N)[0]:
            accept(N)
            out[N] += 1
            run.emit(stage="prime_cofactor", m=m, p=N)
            break
        B = 4**e * m
        if 5 * B > N:
            _finish_in_progression(N, info, out, run)
            break
        res = find_factor_below(N, info, e)
        if isinstance(res, FoundPrime):
            accept(res.p)
            x, N = remove_prime_power(N, res.p)
            out[res.p] += x
            run.emit(stage="search", m=m, r=r, e=e, B=B, outcome="found", p=res.p)
        elif isinstance(res, LuckyFactor):  # pragma: no cover - gcd(N, m) already removed
            for p in factor_small(res.g):
                x, N = remove_prime_power(N, p)
                out[p] += x
            run.emit(stage="search", m=m, r=r, e=e, B=B, outcome="lucky", g=res.g)
        else:
            run.emit(stage="search", m=m, r=r, e=e, B=B, outcome="none")
            if B * B >= N:
                raise ResiduePromiseError(
                    None, m, r, f"composite {N} has no prime factor <= {B} in the class"
                )
            e += 1
    return out


def factor_with_residue(N: int, info: ResidueInfo, on_event: EventSink = None) -> Factorization:
    """Factor N knowing every prime divisor is ``info.r mod info.m``.

    Runs the search at ``B = 4^e m`` for ``e = 1, 2, ...``, staying at the
    same ``e`` while it keeps finding primes, until ``B^2`` reaches the
    cofactor. Raises :class:`ResiduePromiseError` if a factor falls outside
    the promised class.
    """
    if N < 1:
        raise ValueError("N must be positive")
    run = _Run(on_event)
    with instrument.track() as stats:
        out = _factor_with_residue(N, info, run)
    return _finish(N, out, stats, run)


# -- special forms ----------------------------------------------------------


def divisor_set(n: int, sign: str) -> list[int]:
    """Divisors of n for ``a^n - b^n``; doubled divisors for ``a^n + b^n``."""
    if n < 1:
        raise ValueError("n must be positive")
    divs = set()
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            divs.update((d, n // d))
    if sign == PLUS:
        divs = {2 * d for d in divs}
    elif sign != MINUS:
        raise ValueError(f"unknown sign {sign!r}")
    return sorted(divs)


def order_gcd(a: int, base_b: int, d: int, N: int) -> int:
    """``gcd((a/b)^d - 1 mod N, N)``."""
    instrument.count(gcds=1)
    if gcd(base_b, N) != 1:
        raise ValueError(f"{base_b} is not invertible modulo {N}")
    if N == 1:
        return 1
    x = a * pow(base_b, -1, N) % N
    instrument.count(inversions=1, mulmods=2 * d.bit_length())
    instrument.count(gcds=1)
    return gcd((pow(x, d, N) - 1) % N, N)


def _check_size_bound(f: SpecialForm, d: int, G: int, N: int) -> None:
    if f.sign == MINUS and d < f.n and G * G > N:
        raise InvariantError(f"G={G} at d={d} exceeds sqrt({N})")
    if f.sign == PLUS and d < 2 * f.n and G**3 >= N * N:
        raise InvariantError(f"G={G} at d={d} is not below {N}^(2/3)")


def special_form_factor(f: SpecialForm, on_event: EventSink = None) -> Factorization:
    """Factor ``a^n +- b^n`` by peeling off primes grouped by the order of ``a/b``."""
    N = f.value
    run = _Run(on_event)
    with instrument.track() as stats:
        out: Counter = Counter()
        partial, cur = trial_division(N, SMALL_PRIME_LIMIT)
        out.update(dict(partial))
        run.emit(stage="trial", limit=SMALL_PRIME_LIMIT, removed=[p for p, _ in partial])
        if f.sign == MINUS:
            for p in factor_small(f.a - f.base_b):
                if cur % p == 0:
                    e, cur = remove_prime_power(cur, p)
                    out[p] += e
                    run.emit(stage="a_minus_b", p=p)

        for d in divisor_set(f.n, f.sign):
            if cur == 1:
                break
            G = order_gcd(f.a, f.base_b, d, cur)
            run.emit(stage="order_gcd", d=d, G=G)
            if f.sign == PLUS and d == f.n and G != 1:
                raise InvariantError(f"G at d=n={d} is {G}, expected 1 for a sum")
            if G == 1:
                continue
            _check_size_bound(f, d, G, N)
            if d < 2:
                raise InvariantError(f"nontrivial G={G} at d={d}")
            found = _factor_with_residue(G, ResidueInfo(d, 1), run)
            for p in sorted(found):
                if p % d != 1:
                    raise InvariantError(f"prime {p} from G at d={d} is not 1 mod {d}")
                e, cur = remove_prime_power(cur, p)
                out[p] += e
            run.branches.append(OrderBranch(d, G, tuple(sorted(found))))
        if cur != 1:
            raise InvariantError(f"cofactor {cur} left after the divisor loop")
    return _finish(N, out, stats, run)


def factor(
    x: Union[int, str, SpecialForm, RawInteger, RawWithResidue],
    info: Optional[ResidueInfo] = None,
    on_event: EventSink = None,
) -> Factorization:
    """Factor an integer, a parsed input, or an expression like ``"2^32+1"``.

    Plain integers go through the residue schedule with ``m = 2, r = 1``
    after primes below 400 are stripped; pass ``info`` to supply a sharper
    residue class for the remaining primes.
    """
    if isinstance(x, str):
        x = parse_special_form(x)
    if isinstance(x, SpecialForm):
        return special_form_factor(x, on_event)
    if isinstance(x, RawWithResidue):
        x, info = x.N, ResidueInfo(x.m, x.r)
    elif isinstance(x, RawInteger):
        x = x.N
    N = int(x)
    if N < 1:
        raise ValueError("N must be positive")
    if info is None:
        info = ResidueInfo(2, 1)
    run = _Run(on_event)
    with instrument.track() as stats:
        partial, cur = trial_division(N, SMALL_PRIME_LIMIT)
        out: Counter = Counter(dict(partial))
        run.emit(stage="trial", limit=SMALL_PRIME_LIMIT, removed=[p for p, _ in partial])
        if cur > 1:
            out.update(_factor_with_residue(cur, info, run))
    return _finish(N, out, stats, run)
