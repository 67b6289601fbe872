"""Polynomial ODE systems over a canonical monomial basis.

A system (ground truth or fitted model) is a coefficient matrix over the
graded-lexicographic monomial basis: column ``j`` of the matrix gives the
expansion of ``dx_j/dt``. The module also ships a registry of chaotic
benchmark systems and a JSON loader for external definitions.
"""

from __future__ import annotations

import functools
import json
import math
import os
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .errors import EvaluationError, ParseError

Exponents = tuple[int, ...]


def _degree_terms(dimension: int, degree: int):
    """Exponent vectors of exact total degree, lexicographic with x1 > x2 > ..."""
    if dimension == 1:
        yield (degree,)
        return
    for first in range(degree, -1, -1):
        for rest in _degree_terms(dimension - 1, degree - first):
            yield (first,) + rest


@dataclass(frozen=True)
class MonomialBasis:
    """Ordered monomial library for a fixed dimension and maximum degree.

    Terms are sorted by total degree, then lexicographically with the
    first state variable ranked highest, so for two states the order is
    1, x, y, x^2, xy, y^2, ...
    """

    dimension: int
    max_degree: int
    terms: tuple[Exponents, ...]

    def __len__(self) -> int:
        return len(self.terms)

    def index_of(self, exponents: Sequence[int]) -> int:
        return self.terms.index(tuple(int(e) for e in exponents))

    def term_degrees(self) -> np.ndarray:
        return np.array([sum(t) for t in self.terms], dtype=int)

    def term_names(self, variables: Sequence[str] | None = None) -> list[str]:
        """Human-readable monomial names, for printed models."""
        if variables is None:
            variables = [f"x{i + 1}" for i in range(self.dimension)]
        names = []
        for term in self.terms:
            parts = []
            for var, e in zip(variables, term):
                if e == 1:
                    parts.append(var)
                elif e > 1:
                    parts.append(f"{var}^{e}")
            names.append(" ".join(parts) if parts else "1")
        return names


@functools.lru_cache(maxsize=None)
def monomial_basis(dimension: int, max_degree: int) -> MonomialBasis:
    """Build the canonical monomial basis for ``dimension`` states.

    The term count is C(dimension + max_degree, max_degree); the constant
    monomial always comes first.
    """
    if not 1 <= dimension <= 8:
        raise ValueError(f"dimension must be in [1, 8], got {dimension}")
    if not 1 <= max_degree <= 6:
        raise ValueError(f"max_degree must be in [1, 6], got {max_degree}")
    terms = tuple(
        term
        for degree in range(max_degree + 1)
        for term in _degree_terms(dimension, degree)
    )
    assert len(terms) == math.comb(dimension + max_degree, max_degree)
    return MonomialBasis(dimension=dimension, max_degree=max_degree, terms=terms)


def evaluate_terms(basis: MonomialBasis, states: np.ndarray) -> np.ndarray:
    """Evaluate every monomial at every row of an (M, d) state matrix."""
    states = np.asarray(states, dtype=float)
    if states.ndim != 2 or states.shape[1] != basis.dimension:
        raise ValueError(
            f"states must be (M, {basis.dimension}), got {states.shape}"
        )
    exps = np.array(basis.terms, dtype=float)  # (p, d)
    # states[:, None, :] ** exps broadcasts to (M, p, d); 0**0 == 1.
    return np.prod(states[:, None, :] ** exps[None, :, :], axis=2)


@dataclass(frozen=True, eq=False)
class PolynomialSystem:
    """A d-dimensional polynomial ODE, ground truth or fitted model."""

    name: str
    basis: MonomialBasis
    coefficients: np.ndarray  # (p, d); column j expands dx_j/dt
    reference_ics: np.ndarray  # (n_ics, d); points on or near the attractor
    dominant_period: float
    citation: str = ""

    def __post_init__(self):
        coeffs = np.array(self.coefficients, dtype=float)
        ics = np.atleast_2d(np.array(self.reference_ics, dtype=float))
        p, d = len(self.basis.terms), self.basis.dimension
        if coeffs.shape != (p, d):
            raise ValueError(
                f"coefficients must be ({p}, {d}), got {coeffs.shape}"
            )
        if ics.shape[0] < 1 or ics.shape[1] != d:
            raise ValueError("at least one length-d reference IC is required")
        if not self.dominant_period > 0:
            raise ValueError("dominant_period must be positive")
        coeffs.setflags(write=False)
        ics.setflags(write=False)
        object.__setattr__(self, "coefficients", coeffs)
        object.__setattr__(self, "reference_ics", ics)
        object.__setattr__(self, "dominant_period", float(self.dominant_period))

    @property
    def dimension(self) -> int:
        return self.basis.dimension

    def nonzero_count(self) -> int:
        return int(np.count_nonzero(self.coefficients))

    def equations(self) -> list[str]:
        """Pretty-printed right-hand sides, one string per state."""
        names = self.basis.term_names()
        out = []
        for j in range(self.dimension):
            parts = []
            for k, c in enumerate(self.coefficients[:, j]):
                if c != 0.0:
                    parts.append(f"{c:+.6g} {names[k]}".replace("+", "+ ").replace("-", "- "))
            out.append(" ".join(parts) if parts else "0")
        return out


def rhs_eval(system: PolynomialSystem, state: Sequence[float]) -> np.ndarray:
    """Evaluate the right-hand side f(state) exactly."""
    state = np.asarray(state, dtype=float)
    if state.shape != (system.dimension,):
        raise ValueError(f"state must have length {system.dimension}")
    if not np.all(np.isfinite(state)):
        raise EvaluationError("state contains non-finite entries")
    features = evaluate_terms(system.basis, state[None, :])
    return (features @ system.coefficients)[0]


def jacobian_eval(system: PolynomialSystem, state: Sequence[float]) -> np.ndarray:
    """Jacobian df_i/dx_j at ``state`` by exact monomial differentiation."""
    state = np.asarray(state, dtype=float)
    if state.shape != (system.dimension,):
        raise ValueError(f"state must have length {system.dimension}")
    if not np.all(np.isfinite(state)):
        raise EvaluationError("state contains non-finite entries")
    d = system.dimension
    exps = np.array(system.basis.terms, dtype=float)  # (p, d)
    jac = np.zeros((d, d))
    for j in range(d):
        mask = exps[:, j] > 0
        if not np.any(mask):
            continue
        lowered = exps[mask].copy()
        lowered[:, j] -= 1.0
        dvals = exps[mask, j] * np.prod(state[None, :] ** lowered, axis=1)
        jac[:, j] = system.coefficients[mask, :].T @ dvals
    return jac


# ---------------------------------------------------------------------------
# Compiled evaluators
#
# Integrators call the right-hand side hundreds of thousands of times, so
# the generic broadcast evaluation is generated down to scalar arithmetic
# (the same trick symbolic toolkits use for lambdified expressions).
# ---------------------------------------------------------------------------

def _monomial_expr(coefficient: float, exponents: Exponents) -> str:
    factors = [repr(float(coefficient))]
    for i, e in enumerate(exponents):
        factors.extend([f"x{i}"] * int(e))
    return "*".join(factors)


def _compile_tuple_function(name: str, dimension: int, exprs: list[str]):
    args = ", ".join(f"x{i}" for i in range(dimension))
    trailing = "," if len(exprs) == 1 else ""
    src = f"def {name}({args}):\n    return ({', '.join(exprs)}{trailing})\n"
    namespace: dict = {}
    exec(src, namespace)  # noqa: S102 - generated from numeric data only
    return namespace[name]


@functools.lru_cache(maxsize=512)
def compiled_rhs(system: PolynomialSystem):
    """Fast ``f(x) -> ndarray`` closure equivalent to :func:`rhs_eval`."""
    d = system.dimension
    exprs = []
    for j in range(d):
        parts = [
            _monomial_expr(c, system.basis.terms[k])
            for k, c in enumerate(system.coefficients[:, j])
            if c != 0.0
        ]
        exprs.append(" + ".join(parts) if parts else "0.0")
    f = _compile_tuple_function("_rhs", d, exprs)

    def rhs(x):
        return np.array(f(*x))

    return rhs


@functools.lru_cache(maxsize=512)
def compiled_jacobian(system: PolynomialSystem):
    """Fast ``J(x) -> (d, d) ndarray`` closure matching :func:`jacobian_eval`."""
    d = system.dimension
    exprs = []
    for i in range(d):
        for j in range(d):
            parts = []
            for k, c in enumerate(system.coefficients[:, i]):
                e = system.basis.terms[k]
                if c == 0.0 or e[j] == 0:
                    continue
                lowered = list(e)
                lowered[j] -= 1
                parts.append(_monomial_expr(c * e[j], tuple(lowered)))
            exprs.append(" + ".join(parts) if parts else "0.0")
    f = _compile_tuple_function("_jac", d, exprs)

    def jacobian(x):
        return np.array(f(*x)).reshape(d, d)

    return jacobian


# ---------------------------------------------------------------------------
# Registry of chaotic benchmark systems
# ---------------------------------------------------------------------------

def coefficients_from_equations(
    basis: MonomialBasis,
    equations: Sequence[Mapping[Exponents, float]],
) -> np.ndarray:
    """Assemble a coefficient matrix from per-equation monomial dicts."""
    if len(equations) != basis.dimension:
        raise ValueError("one equation dict per state variable is required")
    index = {term: k for k, term in enumerate(basis.terms)}
    coeffs = np.zeros((len(basis.terms), basis.dimension))
    for j, eq in enumerate(equations):
        for exponents, value in eq.items():
            key = tuple(int(e) for e in exponents)
            if key not in index:
                raise ValueError(f"monomial {key} not in basis")
            coeffs[index[key], j] = float(value)
    return coeffs


@dataclass(frozen=True)
class _SystemDef:
    name: str
    dimension: int
    equations: tuple
    seed_ic: tuple
    citation: str
    # extra sampling refinement applied on top of the automatic
    # scale-separation rule (strong cubic curvature needs a denser grid)
    period_scale: float = 1.0


def _lorenz63() -> _SystemDef:
    sigma, rho, beta = 10.0, 28.0, 8.0 / 3.0
    return _SystemDef(
        name="Lorenz63",
        dimension=3,
        equations=(
            {(1, 0, 0): -sigma, (0, 1, 0): sigma},
            {(1, 0, 0): rho, (0, 1, 0): -1.0, (1, 0, 1): -1.0},
            {(1, 1, 0): 1.0, (0, 0, 1): -beta},
        ),
        seed_ic=(-9.7869288, -15.03852, 20.533978),
        citation="Lorenz (1963), J. Atmos. Sci. 20, 130",
    )


def _rossler() -> _SystemDef:
    a, b, c = 0.2, 0.2, 5.7
    return _SystemDef(
        name="Rossler",
        dimension=3,
        equations=(
            {(0, 1, 0): -1.0, (0, 0, 1): -1.0},
            {(1, 0, 0): 1.0, (0, 1, 0): a},
            {(0, 0, 0): b, (1, 0, 1): 1.0, (0, 0, 1): -c},
        ),
        seed_ic=(-9.0, 0.0, 0.0),
        citation="Rossler (1976), Phys. Lett. A 57, 397",
    )


def _chen() -> _SystemDef:
    a, b, c = 35.0, 3.0, 28.0
    return _SystemDef(
        name="Chen",
        dimension=3,
        equations=(
            {(1, 0, 0): -a, (0, 1, 0): a},
            {(1, 0, 0): c - a, (0, 1, 0): c, (1, 0, 1): -1.0},
            {(1, 1, 0): 1.0, (0, 0, 1): -b},
        ),
        seed_ic=(-10.0, 0.0, 37.0),
        citation="Chen & Ueta (1999), Int. J. Bifurcat. Chaos 9, 1465",
    )


def _lu_chen() -> _SystemDef:
    a, b, c = 36.0, 3.0, 20.0
    return _SystemDef(
        name="LuChen",
        dimension=3,
        equations=(
            {(1, 0, 0): -a, (0, 1, 0): a},
            {(0, 1, 0): c, (1, 0, 1): -1.0},
            {(1, 1, 0): 1.0, (0, 0, 1): -b},
        ),
        seed_ic=(0.1, 0.3, -0.6),
        citation="Lu & Chen (2002), Int. J. Bifurcat. Chaos 12, 659",
    )


def _halvorsen() -> _SystemDef:
    a = 1.89
    return _SystemDef(
        name="Halvorsen",
        dimension=3,
        equations=(
            {(1, 0, 0): -a, (0, 1, 0): -4.0, (0, 0, 1): -4.0, (0, 2, 0): -1.0},
            {(0, 1, 0): -a, (0, 0, 1): -4.0, (1, 0, 0): -4.0, (0, 0, 2): -1.0},
            {(0, 0, 1): -a, (1, 0, 0): -4.0, (0, 1, 0): -4.0, (2, 0, 0): -1.0},
        ),
        seed_ic=(-5.0, 0.0, 0.0),
        citation="Sprott (2010), Elegant Chaos, Sec. 4.2",
    )


def _nose_hoover() -> _SystemDef:
    a = 1.5
    return _SystemDef(
        name="NoseHoover",
        dimension=3,
        equations=(
            {(0, 1, 0): 1.0},
            {(1, 0, 0): -1.0, (0, 1, 1): 1.0},
            {(0, 0, 0): a, (0, 2, 0): -1.0},
        ),
        seed_ic=(0.0, 5.0, 0.0),
        citation="Posch, Hoover & Vesely (1986), Phys. Rev. A 33, 4253",
    )


def _rucklidge() -> _SystemDef:
    kappa, lam = 2.0, 6.7
    return _SystemDef(
        name="Rucklidge",
        dimension=3,
        equations=(
            {(1, 0, 0): -kappa, (0, 1, 0): lam, (0, 1, 1): -1.0},
            {(1, 0, 0): 1.0},
            {(0, 0, 1): -1.0, (0, 2, 0): 1.0},
        ),
        seed_ic=(1.0, 0.0, 4.5),
        citation="Rucklidge (1992), J. Fluid Mech. 237, 209",
    )


def _genesio_tesi() -> _SystemDef:
    a, b, c = 0.44, 1.1, 1.0
    return _SystemDef(
        name="GenesioTesi",
        dimension=3,
        equations=(
            {(0, 1, 0): 1.0},
            {(0, 0, 1): 1.0},
            {(1, 0, 0): -c, (0, 1, 0): -b, (0, 0, 1): -a, (2, 0, 0): 1.0},
        ),
        seed_ic=(0.1, 0.1, 0.1),
        citation="Genesio & Tesi (1992), Automatica 28, 531",
    )


def _burke_shaw() -> _SystemDef:
    s, v = 10.0, 4.272
    return _SystemDef(
        name="BurkeShaw",
        dimension=3,
        equations=(
            {(1, 0, 0): -s, (0, 1, 0): -s},
            {(0, 1, 0): -1.0, (1, 0, 1): -s},
            {(0, 0, 0): v, (1, 1, 0): s},
        ),
        seed_ic=(0.6, 0.0, 0.0),
        citation="Shaw (1981), Z. Naturforsch. A 36, 80",
    )


def _dadras() -> _SystemDef:
    a, b, c, d, e = 3.0, 2.7, 1.7, 2.0, 9.0
    return _SystemDef(
        name="Dadras",
        dimension=3,
        equations=(
            {(0, 1, 0): 1.0, (1, 0, 0): -a, (0, 1, 1): b},
            {(0, 1, 0): c, (1, 0, 1): -1.0, (0, 0, 1): 1.0},
            {(1, 1, 0): d, (0, 0, 1): -e},
        ),
        seed_ic=(1.1, 2.1, -2.0),
        citation="Dadras & Momeni (2009), Phys. Lett. A 373, 3637",
    )


def _sprott_b() -> _SystemDef:
    return _SystemDef(
        name="SprottB",
        dimension=3,
        equations=(
            {(0, 1, 1): 1.0},
            {(1, 0, 0): 1.0, (0, 1, 0): -1.0},
            {(0, 0, 0): 1.0, (1, 1, 0): -1.0},
        ),
        seed_ic=(0.05, 0.05, 0.05),
        citation="Sprott (1994), Phys. Rev. E 50, R647",
    )


def _lorenz96_4d() -> _SystemDef:
    """Cyclic advection-forcing lattice at its smallest chaotic size."""
    forcing = 14.0
    equations = []
    for i in range(4):
        eq: dict = {}

        def quad(a, b):
            v = [0, 0, 0, 0]
            v[a] += 1
            v[b] += 1
            return tuple(v)

        key = quad((i + 1) % 4, (i - 1) % 4)
        eq[key] = eq.get(key, 0.0) + 1.0
        key = quad((i - 2) % 4, (i - 1) % 4)
        eq[key] = eq.get(key, 0.0) - 1.0
        linear = [0, 0, 0, 0]
        linear[i] = 1
        eq[tuple(linear)] = eq.get(tuple(linear), 0.0) - 1.0
        eq[(0, 0, 0, 0)] = forcing
        equations.append(eq)
    return _SystemDef(
        name="Lorenz96_4D",
        dimension=4,
        equations=tuple(equations),
        seed_ic=(2.0, 14.0, -3.0, 5.0),
        citation="Lorenz (1996), Predictability: ECMWF Seminar, Vol. 1",
        period_scale=0.5,
    )


_SYSTEM_DEFS = (
    _lorenz63(),
    _rossler(),
    _chen(),
    _lu_chen(),
    _halvorsen(),
    _nose_hoover(),
    _rucklidge(),
    _genesio_tesi(),
    _burke_shaw(),
    _dadras(),
    _sprott_b(),
    _lorenz96_4d(),
)

REGISTRY_MAX_DEGREE = 4


@functools.lru_cache(maxsize=1)
def builtin_registry() -> tuple[PolynomialSystem, ...]:
    """All built-in chaotic systems, in stable name order.

    Every system uses the degree-4 basis of its dimension so fitted and
    true coefficient matrices align entry for entry. Dominant periods and
    on-attractor reference ICs are precomputed constants (see
    ``_registry_data``).
    """
    from ._registry_data import REGISTRY_DATA

    out = []
    for spec in _SYSTEM_DEFS:
        if spec.name not in REGISTRY_DATA:
            continue
        data = REGISTRY_DATA[spec.name]
        basis = monomial_basis(spec.dimension, REGISTRY_MAX_DEGREE)
        out.append(
            PolynomialSystem(
                name=spec.name,
                basis=basis,
                coefficients=coefficients_from_equations(basis, spec.equations),
                reference_ics=np.array(data["reference_ics"]),
                dominant_period=data["dominant_period"],
                citation=spec.citation,
            )
        )
    return tuple(sorted(out, key=lambda s: s.name))


def get_system(name: str) -> PolynomialSystem:
    for system in builtin_registry():
        if system.name == name:
            return system
    known = ", ".join(s.name for s in builtin_registry())
    raise KeyError(f"unknown system {name!r}; built-ins: {known}")


# ---------------------------------------------------------------------------
# File interchange
# ---------------------------------------------------------------------------

def save_system(system: PolynomialSystem, path: str | os.PathLike) -> None:
    """Write a system-definition JSON file (round-trips bit-exactly)."""
    payload = {
        "name": system.name,
        "dimension": system.dimension,
        "max_degree": system.basis.max_degree,
        "coefficients": [[float(v) for v in row] for row in system.coefficients],
        "reference_ics": [[float(v) for v in ic] for ic in system.reference_ics],
        "dominant_period": float(system.dominant_period),
        "citation": system.citation,
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=1)
        fh.write("\n")


def load_system(path: str | os.PathLike) -> PolynomialSystem:
    """Load a system-definition JSON file, validating its schema."""
    with open(path, "r", encoding="utf-8") as fh:
        try:
            payload = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}: not valid JSON ({exc})") from exc

    def require(key):
        if key not in payload:
            raise ParseError(f"{path}: missing field {key!r}")
        return payload[key]

    name = require("name")
    dimension = int(require("dimension"))
    max_degree = int(require("max_degree"))
    basis = monomial_basis(dimension, max_degree)
    coefficients = np.array(require("coefficients"), dtype=float)
    if coefficients.ndim != 2 or coefficients.shape != (len(basis.terms), dimension):
        raise ParseError(
            f"{path}: coefficient rows must be {len(basis.terms)}x{dimension} "
            f"for dimension {dimension} degree {max_degree}, "
            f"got {coefficients.shape}"
        )
    ics = np.array(require("reference_ics"), dtype=float)
    if ics.size == 0 or ics.ndim != 2 or ics.shape[1] != dimension:
        raise ParseError(
            f"{path}: reference_ics must be a nonempty list of length-"
            f"{dimension} vectors"
        )
    period = float(require("dominant_period"))
    if not period > 0:
        raise ParseError(f"{path}: dominant_period must be positive")
    return PolynomialSystem(
        name=str(name),
        basis=basis,
        coefficients=coefficients,
        reference_ics=ics,
        dominant_period=period,
        citation=str(payload.get("citation", "")),
    )
