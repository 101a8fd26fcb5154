from __future__ import annotations


class PowFactorError(Exception):
    """Base class for errors raised by powfactor."""


class InvariantError(PowFactorError):
    """A certified result failed one of its own checks (recomposition, primality, order argument)."""


class ResiduePromiseError(PowFactorError):
    """A caller-supplied residue class (m, r) does not hold for some prime factor."""

    def __init__(self, p: int | None, m: int, r: int, detail: str = ""):
        if p is not None:
            msg = f"prime factor {p} is {p % m} mod {m}, but the residue promise was {r} mod {m}"
        else:
            msg = f"residue promise {r} mod {m} does not hold: {detail}"
        super().__init__(msg)
        self.p, self.m, self.r = p, m, r
