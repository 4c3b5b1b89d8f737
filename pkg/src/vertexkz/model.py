"""Model parameters, rational vertex weights, and genericity guards.

The rational six-vertex weights are a(x) = x + eta, b(x) = x, c = eta, so
a = b + c identically and the weights sit on the anisotropy-2 curve
a^2 + b^2 - c^2 = 2ab.  The per-column inhomogeneities mu_j and the parameter
eta are fixed inputs: nothing ever differentiates or varies them.

A spectral point is "generic" when it avoids every pole that can appear in a
coefficient formula downstream: coincident rapidities, rapidity differences
equal to +-eta, and rapidities hitting mu_k or mu_k - eta.  One predicate
covers all modules so every formula is well defined simultaneously.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import NonGenericPointError
from .rational import rat

# Anisotropy of the rational model: a^2 + b^2 - c^2 = DELTA * a * b.
DELTA = Fraction(2)


@dataclass(frozen=True)
class ModelParams:
    """Lattice size L, parameter eta (nonzero), and the L inhomogeneities mu."""

    L: int
    eta: Fraction
    mu: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if self.L < 1:
            raise ValueError("L must be at least 1")
        if Fraction(self.eta) == 0:
            raise ValueError("eta must be nonzero (c = eta is a vertex weight)")
        mu = tuple(Fraction(m) for m in self.mu)
        if len(mu) != self.L:
            raise ValueError(f"expected {self.L} inhomogeneities, got {len(mu)}")
        object.__setattr__(self, "eta", Fraction(self.eta))
        object.__setattr__(self, "mu", mu)

    @classmethod
    def make(cls, L: int, eta, mu) -> "ModelParams":
        return cls(L, rat(eta), tuple(rat(m) for m in mu))


def default_params(L: int, eta: Fraction | str = Fraction(1, 3)) -> ModelParams:
    """Documented defaults: eta = 1/3 and mu_j = j + 1/5."""
    return ModelParams.make(L, eta, [Fraction(j) + Fraction(1, 5) for j in range(1, L + 1)])


@dataclass(frozen=True)
class SpectralPoint:
    """Values for lambda_1..lambda_L, plus the optional auxiliary lambda_0."""

    lam: tuple[Fraction, ...]
    lambda0: Fraction | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "lam", tuple(Fraction(x) for x in self.lam))
        if self.lambda0 is not None:
            object.__setattr__(self, "lambda0", Fraction(self.lambda0))

    @property
    def L(self) -> int:
        return len(self.lam)

    def value(self, i: int) -> Fraction:
        """Entry lambda_i, 1-based; i = 0 returns lambda_0."""
        if i == 0:
            if self.lambda0 is None:
                raise ValueError("point carries no lambda_0")
            return self.lambda0
        return self.lam[i - 1]

    def with_value(self, i: int, value: Fraction) -> "SpectralPoint":
        """Copy with lambda_i (1-based) replaced; i = 0 replaces lambda_0."""
        if i == 0:
            return SpectralPoint(self.lam, Fraction(value))
        lam = list(self.lam)
        lam[i - 1] = Fraction(value)
        return SpectralPoint(tuple(lam), self.lambda0)

    def without_lambda0(self) -> "SpectralPoint":
        return SpectralPoint(self.lam, None)


# ---------------------------------------------------------------------------
# Statistical weights
# ---------------------------------------------------------------------------


def weight_a(x: Fraction, params: ModelParams) -> Fraction:
    return Fraction(x) + params.eta


def weight_b(x: Fraction, params: ModelParams) -> Fraction:
    return Fraction(x)


def weight_c(params: ModelParams) -> Fraction:
    return params.eta


# ---------------------------------------------------------------------------
# Genericity
# ---------------------------------------------------------------------------


def is_generic(
    point: SpectralPoint, params: ModelParams, include_lambda0: bool = False
) -> bool:
    """True iff the point avoids every coefficient pole.

    Checks, for all involved rapidities u != v: u - v not in {0, +eta, -eta};
    and for every rapidity u and column k: u != mu_k and u - mu_k != -eta.
    With `include_lambda0`, lambda_0 joins the rapidity list.
    """
    values = list(point.lam)
    if include_lambda0:
        if point.lambda0 is None:
            return False
        values.append(point.lambda0)
    eta = params.eta
    for i in range(len(values)):
        for j in range(i + 1, len(values)):
            diff = values[i] - values[j]
            if diff == 0 or diff == eta or diff == -eta:
                return False
    for u in values:
        for m in params.mu:
            d = u - m
            if d == 0 or d + eta == 0:
                return False
    return True


def require_generic(
    point: SpectralPoint, params: ModelParams, include_lambda0: bool = False
) -> None:
    if not is_generic(point, params, include_lambda0=include_lambda0):
        raise NonGenericPointError()


def sample_generic_point(
    params: ModelParams, seed: int, include_lambda0: bool = False
) -> SpectralPoint:
    """Deterministic pseudo-random generic point; same seed, same point.

    Rejection sampling over rationals with small denominators.  For nondegenerate
    parameters the accept probability is near one, so the loop terminates fast;
    the attempt cap is a safety net, not a reachable code path in practice.
    """
    rng = random.Random(seed)
    span = 10 * params.L + 10

    def draw() -> Fraction:
        return Fraction(rng.randint(-span, span), rng.randint(1, 7))

    for _ in range(1000):
        lam = tuple(draw() for _ in range(params.L))
        lam0 = draw() if include_lambda0 else None
        point = SpectralPoint(lam, lam0)
        if is_generic(point, params, include_lambda0=include_lambda0):
            return point
    raise RuntimeError("could not sample a generic point; parameters degenerate?")
