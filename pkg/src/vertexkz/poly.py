"""Sparse multivariate polynomials over exact rationals.

A polynomial is a map from exponent tuples to nonzero Fraction coefficients,
together with an ordered variable list and a per-variable degree bound.  The
bounds are part of the contract: tensor-grid interpolation with ``bound + 1``
nodes per variable is unique within them, which is what turns point evaluation
of the partition function into an exact polynomial reconstruction.

Everything here is pure and exact: no floats, no tolerances.  Differentiation
is formal, interpolation uses divided differences, and the univariate gcd is
plain Euclid over Q[x] (monic result).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .errors import DegenerateGridError, GridEvaluationError
from .rational import format_rat, parse_rat

Exponents = tuple[int, ...]

# Signature of a point evaluator handed to interpolate_multivariate: it
# receives one value per variable, in variable order.
Evaluator = Callable[[tuple[Fraction, ...]], Fraction]


@dataclass(frozen=True)
class MultiPoly:
    """Sparse polynomial: variables, exponent->coefficient map, degree bounds.

    Invariants (enforced on construction): no stored zero coefficients, every
    exponent within the declared per-variable bound.
    """

    variables: tuple[str, ...]
    terms: dict[Exponents, Fraction]
    degree_bounds: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.variables) != len(self.degree_bounds):
            raise ValueError("one degree bound per variable is required")
        cleaned: dict[Exponents, Fraction] = {}
        for exps, coeff in self.terms.items():
            if len(exps) != len(self.variables):
                raise ValueError(f"exponent tuple {exps} has wrong arity")
            for e, bound in zip(exps, self.degree_bounds):
                if e < 0 or e > bound:
                    raise ValueError(
                        f"exponent {e} outside declared bound {bound} in {exps}"
                    )
            value = Fraction(coeff)
            if value != 0:
                cleaned[tuple(int(e) for e in exps)] = value
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "terms", cleaned)
        object.__setattr__(self, "degree_bounds", tuple(int(b) for b in self.degree_bounds))

    # -- constructors ------------------------------------------------------

    @classmethod
    def constant(
        cls,
        variables: Sequence[str],
        degree_bounds: Sequence[int],
        value: Fraction | int,
    ) -> "MultiPoly":
        zero_exp = (0,) * len(tuple(variables))
        return cls(tuple(variables), {zero_exp: Fraction(value)}, tuple(degree_bounds))

    @classmethod
    def zero(
        cls, variables: Sequence[str], degree_bounds: Sequence[int]
    ) -> "MultiPoly":
        return cls(tuple(variables), {}, tuple(degree_bounds))

    # -- queries -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, exponents: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(exponents), Fraction(0))

    def degree_in(self, variable: str) -> int:
        """Largest exponent of `variable` actually present; -1 for the zero polynomial."""
        idx = self._var_index(variable)
        if not self.terms:
            return -1
        return max(exps[idx] for exps in self.terms)

    def evaluate(self, values: Sequence[Fraction]) -> Fraction:
        if len(values) != len(self.variables):
            raise ValueError(
                f"expected {len(self.variables)} values, got {len(values)}"
            )
        vals = [Fraction(v) for v in values]
        # Power tables keep repeated grid evaluation cheap.
        powers: list[list[Fraction]] = []
        for v, bound in zip(vals, self.degree_bounds):
            row = [Fraction(1)]
            for _ in range(bound):
                row.append(row[-1] * v)
            powers.append(row)
        total = Fraction(0)
        for exps, coeff in self.terms.items():
            term = coeff
            for axis, e in enumerate(exps):
                if e:
                    term *= powers[axis][e]
            total += term
        return total

    # -- algebra -----------------------------------------------------------

    def differentiate(self, variable: str) -> "MultiPoly":
        """Exact formal partial derivative; the bound in `variable` drops by one."""
        idx = self._var_index(variable)
        out: dict[Exponents, Fraction] = {}
        for exps, coeff in self.terms.items():
            e = exps[idx]
            if e == 0:
                continue
            lowered = exps[:idx] + (e - 1,) + exps[idx + 1 :]
            out[lowered] = out.get(lowered, Fraction(0)) + coeff * e
        bounds = list(self.degree_bounds)
        bounds[idx] = max(bounds[idx] - 1, 0)
        return MultiPoly(self.variables, out, tuple(bounds))

    def __add__(self, other: "MultiPoly | Fraction | int") -> "MultiPoly":
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.constant(self.variables, self.degree_bounds, other)
        if self.variables != other.variables:
            raise ValueError("cannot add polynomials over different variables")
        bounds = tuple(
            max(a, b) for a, b in zip(self.degree_bounds, other.degree_bounds)
        )
        out = dict(self.terms)
        for exps, coeff in other.terms.items():
            out[exps] = out.get(exps, Fraction(0)) + coeff
        return MultiPoly(self.variables, out, bounds)

    def __radd__(self, other: "Fraction | int") -> "MultiPoly":
        return self.__add__(other)

    def __mul__(self, scalar: Fraction | int) -> "MultiPoly":
        k = Fraction(scalar)
        return MultiPoly(
            self.variables,
            {exps: coeff * k for exps, coeff in self.terms.items()},
            self.degree_bounds,
        )

    __rmul__ = __mul__

    def same_terms(self, other: "MultiPoly") -> bool:
        """Mathematical equality, ignoring possibly different declared bounds."""
        return self.variables == other.variables and self.terms == other.terms

    # -- serialization -----------------------------------------------------

    def to_records(self) -> list[dict]:
        """Term list with exponents in declared variable order, coeffs as "p/q"."""
        return [
            {"exponents": list(exps), "coeff": format_rat(coeff)}
            for exps, coeff in sorted(self.terms.items())
        ]

    def to_json_dict(self) -> dict:
        return {
            "variables": list(self.variables),
            "degree_bounds": list(self.degree_bounds),
            "terms": self.to_records(),
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "MultiPoly":
        terms = {
            tuple(rec["exponents"]): parse_rat(rec["coeff"])
            for rec in data["terms"]
        }
        return cls(tuple(data["variables"]), terms, tuple(data["degree_bounds"]))

    def _var_index(self, variable: str) -> int:
        try:
            return self.variables.index(variable)
        except ValueError:
            raise ValueError(f"unknown variable {variable!r}") from None


# ---------------------------------------------------------------------------
# Interpolation
# ---------------------------------------------------------------------------


def interpolate_univariate(
    samples: Sequence[tuple[Fraction, Fraction]],
    degree_bound: int,
    variable: str = "x",
) -> MultiPoly:
    """Unique polynomial of degree <= degree_bound through the given samples.

    Exactly ``degree_bound + 1`` samples with pairwise-distinct nodes are
    required.  Newton's divided differences, all arithmetic exact.
    """
    if degree_bound < 0:
        raise ValueError("degree bound must be nonnegative")
    if len(samples) != degree_bound + 1:
        raise ValueError(
            f"need exactly {degree_bound + 1} samples for degree bound "
            f"{degree_bound}, got {len(samples)}"
        )
    nodes = [Fraction(x) for x, _ in samples]
    values = [Fraction(y) for _, y in samples]
    if len(set(nodes)) != len(nodes):
        raise DegenerateGridError()

    # Divided-difference table, in place.
    dd = list(values)
    for level in range(1, len(nodes)):
        for k in range(len(nodes) - 1, level - 1, -1):
            dd[k] = (dd[k] - dd[k - 1]) / (nodes[k] - nodes[k - level])

    # Expand the Newton form into monomial coefficients.
    coeffs = [Fraction(0)] * (degree_bound + 1)
    basis = [Fraction(1)]  # coefficients of prod_{m<k} (x - x_m)
    for k, c in enumerate(dd):
        for power, b in enumerate(basis):
            coeffs[power] += c * b
        if k < degree_bound:
            # basis *= (x - nodes[k])
            nxt = [Fraction(0)] * (len(basis) + 1)
            for power, b in enumerate(basis):
                nxt[power + 1] += b
                nxt[power] -= b * nodes[k]
            basis = nxt

    terms = {(p,): c for p, c in enumerate(coeffs) if c != 0}
    return MultiPoly((variable,), terms, (degree_bound,))


def interpolate_multivariate(
    evaluator: Evaluator,
    degree_bounds: Sequence[int],
    grid: Sequence[Sequence[Fraction]],
    variables: Sequence[str] | None = None,
) -> MultiPoly:
    """Unique polynomial within the bounds matching `evaluator` on the tensor grid.

    `grid` gives one node list per variable, of length ``bound + 1``.  The
    evaluator is called once per tensor point; any exception it raises is
    re-raised as GridEvaluationError with the offending point attached.
    """
    bounds = tuple(int(b) for b in degree_bounds)
    if variables is None:
        variables = tuple(f"x{k + 1}" for k in range(len(bounds)))
    variables = tuple(variables)
    if not (len(variables) == len(bounds) == len(grid)):
        raise ValueError("variables, degree_bounds and grid must align")
    node_lists = [[Fraction(x) for x in axis] for axis in grid]
    for axis, bound in zip(node_lists, bounds):
        if len(axis) != bound + 1:
            raise ValueError("each axis needs exactly bound + 1 nodes")
        if len(set(axis)) != len(axis):
            raise DegenerateGridError()

    def run(value_prefix: tuple[Fraction, ...], depth: int) -> MultiPoly:
        tail_vars = variables[depth:]
        tail_bounds = bounds[depth:]
        if depth == len(variables) - 1:
            samples = []
            for node in node_lists[depth]:
                point = value_prefix + (node,)
                samples.append((node, _call(evaluator, point)))
            return interpolate_univariate(samples, tail_bounds[0], tail_vars[0])
        slices = [run(value_prefix + (node,), depth + 1) for node in node_lists[depth]]
        monomials: set[Exponents] = set()
        for sl in slices:
            monomials.update(sl.terms)
        out: dict[Exponents, Fraction] = {}
        for mono in monomials:
            samples = [
                (node, sl.terms.get(mono, Fraction(0)))
                for node, sl in zip(node_lists[depth], slices)
            ]
            head = interpolate_univariate(samples, tail_bounds[0], tail_vars[0])
            for (e0,), c in head.terms.items():
                out[(e0,) + mono] = c
        return MultiPoly(tail_vars, out, tail_bounds)

    return run((), 0)


def _call(evaluator: Evaluator, point: tuple[Fraction, ...]) -> Fraction:
    try:
        return Fraction(evaluator(point))
    except GridEvaluationError:
        raise
    except Exception as exc:
        raise GridEvaluationError(point, exc) from exc


# ---------------------------------------------------------------------------
# Univariate gcd (used by the degree/no-common-zero report)
# ---------------------------------------------------------------------------


def univariate_gcd(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    """Monic gcd of two univariate polynomials over the same variable."""
    if len(p.variables) != 1 or p.variables != q.variables:
        raise ValueError("gcd requires univariate polynomials over one variable")
    var = p.variables[0]
    a = _coeff_list(p)
    b = _coeff_list(q)
    while b:
        a, b = b, _poly_mod(a, b)
    if not a:
        return MultiPoly.zero((var,), (0,))
    lead = a[-1]
    monic = [c / lead for c in a]
    terms = {(k,): c for k, c in enumerate(monic) if c != 0}
    return MultiPoly((var,), terms, (len(monic) - 1,))


def _coeff_list(p: MultiPoly) -> list[Fraction]:
    """Dense ascending coefficient list, trailing zeros trimmed ([] = zero)."""
    if not p.terms:
        return []
    deg = max(e for (e,) in p.terms)
    out = [Fraction(0)] * (deg + 1)
    for (e,), c in p.terms.items():
        out[e] = c
    while out and out[-1] == 0:
        out.pop()
    return out


def _poly_mod(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    run = list(a)
    while len(run) >= len(b) and run:
        factor = run[-1] / b[-1]
        shift = len(run) - len(b)
        for k, c in enumerate(b):
            run[shift + k] -= factor * c
        while run and run[-1] == 0:
            run.pop()
    return run
