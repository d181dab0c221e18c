"""Projection of empirical distributions onto causal-model support sets.

The pipeline embeds the observational joint and the interventional marginals
as equality constraints over the model's product space, maximizes the mass the
embedded distribution places on the model support by linear programming, and
re-weights the optimum onto the support. The lost mass determines the global
approximation error; the divergence between the observed-variable marginals
before and after re-weighting is the local approximation error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, Sequence

import numpy as np

from .distributions import (
    DiscreteDistribution,
    Shape,
    kl_divergence,
    marginalize,
)
from .exceptions import (
    InfeasibleConstraintsError,
    InsufficientDataError,
    SolverFailureError,
    UnsupportedModelError,
)
from .models import (
    CausalModelSpec,
    ModelSpace,
    ModelVariant,
    SupportSet,
    build_support,
    model_space,
)
from .simplex import LpProblem, LpStatus, solve

ErrorMode = Literal["global", "local"]

# Mass below this on the support counts as "no fit": errors become infinite
# instead of amplifying rounding noise through the re-weighting.
DEGENERATE_MASS = 1e-12

MAX_BIVARIATE_RANGE = 4


@dataclass(frozen=True)
class EmpiricalInputs:
    """Cause-first empirical inputs for a bivariate approximation.

    ``joint`` is the observational distribution over (cause, effect);
    ``interventional[a]`` is the effect distribution observed under the
    intervention fixing the cause to ``a``. ``fallback_used[a]`` marks
    interventions for which no data existed and a uniform stand-in was
    substituted.
    """

    joint: DiscreteDistribution
    interventional: tuple[DiscreteDistribution, ...]
    fallback_used: tuple[bool, ...] = ()

    def __post_init__(self):
        if self.joint.shape.ndim != 2:
            raise ValueError("joint must be a two-axis distribution")
        b_cause, b_effect = self.joint.shape.axis_sizes
        if len(self.interventional) != b_cause:
            raise ValueError(
                f"need {b_cause} interventional distributions, "
                f"got {len(self.interventional)}"
            )
        for dist in self.interventional:
            if dist.shape.axis_sizes != (b_effect,):
                raise ValueError(
                    "interventional distributions must range over the effect"
                )
        flags = self.fallback_used or tuple(False for _ in self.interventional)
        if len(flags) != b_cause:
            raise ValueError("one fallback flag per intervention value")
        object.__setattr__(self, "fallback_used", tuple(bool(f) for f in flags))

    @property
    def b_cause(self) -> int:
        return self.joint.shape.axis_sizes[0]

    @property
    def b_effect(self) -> int:
        return self.joint.shape.axis_sizes[1]


@dataclass(frozen=True)
class TrivariateInputs:
    """Empirical inputs for a three-variable approximation.

    ``joint`` ranges over the model's observed axes ((x, y, z) for observed-z
    variants, (x, y) for hidden-z variants); ``copy_marginals`` align with the
    model space's interventional copies in axis order.
    """

    joint: DiscreteDistribution
    copy_marginals: tuple[DiscreteDistribution, ...]
    fallback_used: tuple[bool, ...] = ()

    def __post_init__(self):
        flags = self.fallback_used or tuple(False for _ in self.copy_marginals)
        if len(flags) != len(self.copy_marginals):
            raise ValueError("one fallback flag per interventional copy")
        object.__setattr__(self, "fallback_used", tuple(bool(f) for f in flags))


@dataclass(frozen=True)
class ApproximationResult:
    """Projection outcome for one model variant.

    ``s_value`` is the LP objective at the optimum (equal to the support mass
    for plain variants, possibly larger for the reweighted ANM objectives).
    ``global_error`` is the relative entropy from the projection to the
    optimum, ``-log`` of the support mass; ``local_error`` is the divergence
    of the observed-variable marginals. A degenerate fit (no mass reachable on
    the support) reports both errors as infinity and no projection.
    """

    model: CausalModelSpec
    p_hat: DiscreteDistribution
    p_tilde: DiscreteDistribution | None
    s_value: float
    global_error: float
    local_error: float
    error_mode: ErrorMode
    degenerate: bool

    @property
    def error(self) -> float:
        """The approximation error selected by ``error_mode``."""
        return self.local_error if self.error_mode == "local" else self.global_error


def create_constraint_matrix(b_x: int, b_y: int) -> np.ndarray:
    """0/1 constraint matrix of the bivariate embedding.

    Shape is b_x(2 b_y - 1) rows by b_x * b_y^(b_x + 1) columns: a leading
    all-ones normalization row, then one row per interventional marginal entry
    (per intervention value, dropping each block's last entry), then one row
    per observational joint cell (lexicographic, dropping the last).
    """
    _check_bivariate_ranges(b_x, b_y)
    space = model_space(CausalModelSpec(ModelVariant.X_TO_Y, b_x, b_y))
    return _constraint_rows(space)


def get_constraint_distribution(inputs: EmpiricalInputs) -> np.ndarray:
    """Right-hand side aligned with :func:`create_constraint_matrix`."""
    _check_bivariate_ranges(inputs.b_cause, inputs.b_effect)
    return _constraint_rhs(
        inputs.joint, inputs.interventional
    )


def _check_bivariate_ranges(b_cause: int, b_effect: int) -> None:
    if not (2 <= b_cause <= MAX_BIVARIATE_RANGE
            and 2 <= b_effect <= MAX_BIVARIATE_RANGE):
        raise UnsupportedModelError(
            f"range sizes must lie in [2, {MAX_BIVARIATE_RANGE}], "
            f"got ({b_cause}, {b_effect})"
        )


def _constraint_rows(space: ModelSpace) -> np.ndarray:
    coords = space.shape.coordinates()
    n = len(coords)
    rows = [np.ones(n)]
    for copy in space.copies:
        for v in range(copy.size - 1):
            rows.append((coords[:, copy.axis] == v).astype(float))
    obs = space.observed_axes
    obs_sizes = tuple(space.shape.axis_sizes[a] for a in obs)
    obs_cells = Shape(obs_sizes).coordinates()
    for cell in obs_cells[:-1]:
        mask = np.ones(n, dtype=bool)
        for axis, value in zip(obs, cell):
            mask &= coords[:, axis] == value
        rows.append(mask.astype(float))
    return np.vstack(rows)


def _constraint_rhs(
    joint: DiscreteDistribution,
    copy_marginals: Sequence[DiscreteDistribution],
) -> np.ndarray:
    rhs = [1.0]
    for marg in copy_marginals:
        rhs.extend(marg.mass[:-1])
    rhs.extend(joint.mass[:-1])
    return np.asarray(rhs, dtype=float)


def _as_generic(
    inputs: EmpiricalInputs | TrivariateInputs, space: ModelSpace
) -> tuple[DiscreteDistribution, tuple[DiscreteDistribution, ...]]:
    if isinstance(inputs, EmpiricalInputs):
        joint, marginals = inputs.joint, inputs.interventional
    else:
        joint, marginals = inputs.joint, inputs.copy_marginals
    obs_sizes = tuple(space.shape.axis_sizes[a] for a in space.observed_axes)
    if joint.shape.axis_sizes != obs_sizes:
        raise ValueError(
            f"joint ranges over {joint.shape.axis_sizes}, model observes "
            f"{obs_sizes}"
        )
    if len(marginals) != len(space.copies):
        raise ValueError(
            f"model has {len(space.copies)} interventional copies, "
            f"got {len(marginals)} marginals"
        )
    for marg, copy in zip(marginals, space.copies):
        if marg.shape.axis_sizes != (copy.size,):
            raise ValueError(
                f"marginal for copy {copy} must range over {copy.size} values"
            )
    return joint, tuple(marginals)


def approximate(
    inputs: EmpiricalInputs | TrivariateInputs,
    spec: CausalModelSpec,
    error_mode: ErrorMode = "local",
) -> ApproximationResult:
    """Project empirical inputs onto a model's support set.

    Builds the equality constraints from the inputs, maximizes the model
    objective by linear programming, and re-weights the optimum onto the
    support. Inputs are cause-first: for y-cause variants, build them from
    column-swapped data.

    Raises:
        InfeasibleConstraintsError: the constraints admit no distribution
            (cannot happen for normalized inputs; signals corrupted data).
        SolverFailureError: the LP solver broke down.
    """
    if error_mode not in ("global", "local"):
        raise ValueError(f"unknown error mode {error_mode!r}")
    support = build_support(spec)
    space = support.space
    if not spec.is_trivariate:
        sizes = space.shape.axis_sizes
        _check_bivariate_ranges(sizes[0], sizes[1])
    joint, marginals = _as_generic(inputs, space)

    a = _constraint_rows(space)
    c = _constraint_rhs(joint, marginals)
    solution = solve(LpProblem(a, c, support.objective_coeffs))
    if solution.status is LpStatus.INFEASIBLE:
        raise InfeasibleConstraintsError(
            "empirical marginals admit no joint distribution"
        )
    if solution.status is not LpStatus.OPTIMAL:
        raise SolverFailureError(f"LP solver returned {solution.status.value}")

    p_hat = DiscreteDistribution(space.shape, solution.p)
    s_value = float(support.objective_coeffs @ p_hat.mass)
    support_mass = float(support.member_flags.astype(float) @ p_hat.mass)
    if support_mass < DEGENERATE_MASS:
        return ApproximationResult(
            model=spec,
            p_hat=p_hat,
            p_tilde=None,
            s_value=s_value,
            global_error=math.inf,
            local_error=math.inf,
            error_mode=error_mode,
            degenerate=True,
        )
    tilde = np.where(support.member_flags, p_hat.mass, 0.0) / support_mass
    p_tilde = DiscreteDistribution(space.shape, tilde)
    observed = space.observed_axes
    local = kl_divergence(
        marginalize(p_tilde, observed), marginalize(p_hat, observed)
    )
    return ApproximationResult(
        model=spec,
        p_hat=p_hat,
        p_tilde=p_tilde,
        s_value=s_value,
        global_error=-math.log(support_mass) + 0.0,  # avoid -0.0
        local_error=local,
        error_mode=error_mode,
        degenerate=False,
    )


def shift_for_time_lag(x, y, lag: int) -> tuple[np.ndarray, np.ndarray]:
    """Re-pair ordered samples as (x_t, y_{t+lag}), dropping the overhang."""
    if lag < 0:
        raise ValueError("lag must be nonnegative")
    xs = np.asarray(x)
    ys = np.asarray(y)
    if xs.shape != ys.shape or xs.ndim != 1:
        raise ValueError("x and y must be 1-d arrays of equal length")
    if lag >= xs.size:
        raise InsufficientDataError(
            f"lag {lag} leaves no rows out of {xs.size}"
        )
    if lag == 0:
        return xs.copy(), ys.copy()
    return xs[:-lag].copy(), ys[lag:].copy()
