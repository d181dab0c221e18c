"""Catalog of causal-model variants and their support sets.

Each variant identifies a set of joint distributions over an embedded product
space: the observed variables followed by one interventional copy per
intervention value. Membership of a cell in the support is decided by a
zero-pattern predicate; supports are materialized as dense boolean vectors
because every supported space is small enough for that to be cheap.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .distributions import Shape
from .exceptions import UnsupportedModelError


class ModelVariant(enum.Enum):
    """Stable variant names; the values double as CLI-facing strings."""

    X_TO_Y = "x_to_y"
    Y_TO_X = "y_to_x"
    X_TO_Y_MONO_INC = "x_to_y_mono_inc"
    X_TO_Y_MONO_DEC = "x_to_y_mono_dec"
    Y_TO_X_MONO_INC = "y_to_x_mono_inc"
    Y_TO_X_MONO_DEC = "y_to_x_mono_dec"
    ANM_S1 = "anm_s1"
    ANM_S2 = "anm_s2"
    ANM_S3 = "anm_s3"
    ANM_S4 = "anm_s4"
    Z_CONFOUNDER = "z_confounder"
    Z_CONFOUNDER_HIDDEN = "z_confounder_hidden"
    Z_CHAIN = "z_chain"
    Z_CHAIN_HIDDEN = "z_chain_hidden"
    Z_COLLIDER = "z_collider"
    Z_COLLIDER_HIDDEN = "z_collider_hidden"


_BIVARIATE = {
    ModelVariant.X_TO_Y,
    ModelVariant.Y_TO_X,
    ModelVariant.X_TO_Y_MONO_INC,
    ModelVariant.X_TO_Y_MONO_DEC,
    ModelVariant.Y_TO_X_MONO_INC,
    ModelVariant.Y_TO_X_MONO_DEC,
    ModelVariant.ANM_S1,
    ModelVariant.ANM_S2,
    ModelVariant.ANM_S3,
    ModelVariant.ANM_S4,
}

_BINARY_ONLY = {
    ModelVariant.X_TO_Y_MONO_INC,
    ModelVariant.X_TO_Y_MONO_DEC,
    ModelVariant.Y_TO_X_MONO_INC,
    ModelVariant.Y_TO_X_MONO_DEC,
    ModelVariant.ANM_S1,
    ModelVariant.ANM_S2,
    ModelVariant.ANM_S3,
    ModelVariant.ANM_S4,
}

_ANM_VARIANTS = {
    ModelVariant.ANM_S1: 1,
    ModelVariant.ANM_S2: 2,
    ModelVariant.ANM_S3: 3,
    ModelVariant.ANM_S4: 4,
}

_Y_CAUSE = {
    ModelVariant.Y_TO_X,
    ModelVariant.Y_TO_X_MONO_INC,
    ModelVariant.Y_TO_X_MONO_DEC,
}

_MONO_INC = {ModelVariant.X_TO_Y_MONO_INC, ModelVariant.Y_TO_X_MONO_INC}
_MONO_DEC = {ModelVariant.X_TO_Y_MONO_DEC, ModelVariant.Y_TO_X_MONO_DEC}


@dataclass(frozen=True)
class CausalModelSpec:
    """A model variant plus the range sizes of the involved variables.

    ``b_x`` and ``b_y`` always refer to the data columns x and y; for
    y-cause variants the embedding swaps their roles internally. ``b_z`` is
    required exactly for the trivariate variants.
    """

    variant: ModelVariant
    b_x: int
    b_y: int
    b_z: int | None = None

    def __post_init__(self):
        if self.b_x < 2 or self.b_y < 2:
            raise UnsupportedModelError(
                f"range sizes must be at least 2, got b_x={self.b_x}, b_y={self.b_y}"
            )
        if self.variant in _BINARY_ONLY and (self.b_x != 2 or self.b_y != 2):
            raise UnsupportedModelError(
                f"{self.variant.value} requires b_x = b_y = 2"
            )
        if self.is_trivariate:
            if self.b_z is None:
                raise UnsupportedModelError(
                    f"{self.variant.value} needs b_z"
                )
            if self.b_z < 2:
                raise UnsupportedModelError("b_z must be at least 2")
            if max(self.b_x, self.b_y, self.b_z) > 3:
                raise UnsupportedModelError(
                    "trivariate variants support range sizes up to 3"
                )
        elif self.b_z is not None:
            raise UnsupportedModelError(
                f"{self.variant.value} takes no b_z"
            )

    @property
    def is_trivariate(self) -> bool:
        return self.variant not in _BIVARIATE

    @property
    def anm_objective(self) -> int | None:
        return _ANM_VARIANTS.get(self.variant)

    @classmethod
    def from_name(
        cls, name: str, b_x: int, b_y: int, b_z: int | None = None
    ) -> "CausalModelSpec":
        try:
            variant = ModelVariant(name)
        except ValueError:
            known = ", ".join(v.value for v in ModelVariant)
            raise UnsupportedModelError(
                f"unknown model {name!r}; known models: {known}"
            ) from None
        return cls(variant, b_x, b_y, b_z)


@dataclass(frozen=True)
class CopySpec:
    """One interventional copy axis of the embedded space.

    ``intervened`` names the variable the intervention fixes, ``value`` the
    value it is fixed to, and ``measures`` the variable whose response the
    copy records.
    """

    axis: int
    intervened: str
    value: int
    measures: str
    size: int


@dataclass(frozen=True)
class ModelSpace:
    """Embedded product space of a model: observed axes then copy axes."""

    shape: Shape
    observed_names: tuple[str, ...]
    copies: tuple[CopySpec, ...]

    @property
    def observed_axes(self) -> tuple[int, ...]:
        return tuple(range(len(self.observed_names)))


@dataclass(frozen=True)
class SupportSet:
    """Dense membership flags of a model's support plus LP objective weights.

    For plain variants the objective coefficients are exactly the 0/1
    indicator of the support; the ANM objectives reweight support cells.
    """

    space: ModelSpace
    member_flags: np.ndarray
    objective_coeffs: np.ndarray

    @property
    def shape(self) -> Shape:
        return self.space.shape

    def member_indices(self) -> np.ndarray:
        return np.flatnonzero(self.member_flags)


def model_space(spec: CausalModelSpec) -> ModelSpace:
    """Axis layout of the embedded space for a model variant."""
    v = spec.variant
    if not spec.is_trivariate:
        if v in _Y_CAUSE:
            b_cause, b_effect = spec.b_y, spec.b_x
            cause, effect = "y", "x"
        else:
            b_cause, b_effect = spec.b_x, spec.b_y
            cause, effect = "x", "y"
        sizes = [b_cause, b_effect] + [b_effect] * b_cause
        copies = tuple(
            CopySpec(axis=2 + a, intervened=cause, value=a, measures=effect,
                     size=b_effect)
            for a in range(b_cause)
        )
        return ModelSpace(Shape(sizes), (cause, effect), copies)

    b_x, b_y, b_z = spec.b_x, spec.b_y, spec.b_z
    observed = ("x", "y") if _is_hidden(v) else ("x", "y", "z")
    sizes = [b_x, b_y] if _is_hidden(v) else [b_x, b_y, b_z]
    copies: list[CopySpec] = []
    base = len(sizes)
    if v in (ModelVariant.Z_CONFOUNDER, ModelVariant.Z_CONFOUNDER_HIDDEN):
        for a in range(b_z):
            copies.append(CopySpec(base + 2 * a, "z", a, "x", b_x))
            copies.append(CopySpec(base + 2 * a + 1, "z", a, "y", b_y))
            sizes.extend([b_x, b_y])
    elif v in (ModelVariant.Z_CHAIN, ModelVariant.Z_CHAIN_HIDDEN):
        for a in range(b_z):
            copies.append(CopySpec(base + a, "z", a, "x", b_x))
            sizes.append(b_x)
        for b in range(b_x):
            copies.append(CopySpec(base + b_z + b, "x", b, "y", b_y))
            sizes.append(b_y)
    else:  # collider
        for a in range(b_z):
            copies.append(CopySpec(base + a, "z", a, "y", b_y))
            sizes.append(b_y)
        for b in range(b_x):
            copies.append(CopySpec(base + b_z + b, "x", b, "y", b_y))
            sizes.append(b_y)
    return ModelSpace(Shape(sizes), observed, tuple(copies))


def _is_hidden(v: ModelVariant) -> bool:
    return v in (
        ModelVariant.Z_CONFOUNDER_HIDDEN,
        ModelVariant.Z_CHAIN_HIDDEN,
        ModelVariant.Z_COLLIDER_HIDDEN,
    )


def _member_flags(spec: CausalModelSpec, space: ModelSpace) -> np.ndarray:
    """Evaluate the variant's zero-pattern predicate on every cell."""
    coords = space.shape.coordinates()
    v = spec.variant

    if not spec.is_trivariate:
        cause = coords[:, 0]
        effect = coords[:, 1]
        # copy recorded at the observed cause value must agree with the effect
        at_cause = np.take_along_axis(
            coords[:, 2:], cause[:, None], axis=1
        ).reshape(-1)
        flags = at_cause == effect
        if v in _MONO_INC:
            flags &= ~((coords[:, 2] == 1) & (coords[:, 3] == 0))
        elif v in _MONO_DEC:
            flags &= ~((coords[:, 2] == 0) & (coords[:, 3] == 1))
        return flags

    x = coords[:, 0]
    y = coords[:, 1]
    b_z = spec.b_z
    if v is ModelVariant.Z_CONFOUNDER:
        z = coords[:, 2]
        x_copy = np.take_along_axis(coords[:, 3::2], z[:, None], axis=1).reshape(-1)
        y_copy = np.take_along_axis(coords[:, 4::2], z[:, None], axis=1).reshape(-1)
        return (x_copy == x) == (y_copy == y)
    if v is ModelVariant.Z_CONFOUNDER_HIDDEN:
        flags = np.ones(len(coords), dtype=bool)
        for a in range(b_z):
            x_copy = coords[:, 2 + 2 * a]
            y_copy = coords[:, 3 + 2 * a]
            flags &= (x_copy == x) == (y_copy == y)
        return flags
    if v is ModelVariant.Z_CHAIN:
        z = coords[:, 2]
        x_cols = coords[:, 3:3 + b_z]
        y_cols = coords[:, 3 + b_z:]
        x_copy = np.take_along_axis(x_cols, z[:, None], axis=1).reshape(-1)
        y_copy = np.take_along_axis(y_cols, x[:, None], axis=1).reshape(-1)
        return (x_copy == x) == (y_copy == y)
    if v is ModelVariant.Z_CHAIN_HIDDEN:
        x_cols = coords[:, 2:2 + b_z]
        y_cols = coords[:, 2 + b_z:]
        y_copy = np.take_along_axis(y_cols, x[:, None], axis=1).reshape(-1)
        flags = np.ones(len(coords), dtype=bool)
        for a in range(b_z):
            flags &= (x_cols[:, a] == x) == (y_copy == y)
        return flags
    if v is ModelVariant.Z_COLLIDER:
        z = coords[:, 2]
        z_cols = coords[:, 3:3 + b_z]
        x_cols = coords[:, 3 + b_z:]
        v_z = np.take_along_axis(z_cols, z[:, None], axis=1).reshape(-1)
        v_x = np.take_along_axis(x_cols, x[:, None], axis=1).reshape(-1)
        return _collider_pair_ok(v_z, v_x, y)
    if v is ModelVariant.Z_COLLIDER_HIDDEN:
        z_cols = coords[:, 2:2 + b_z]
        x_cols = coords[:, 2 + b_z:]
        v_x = np.take_along_axis(x_cols, x[:, None], axis=1).reshape(-1)
        flags = np.ones(len(coords), dtype=bool)
        for a in range(b_z):
            flags &= _collider_pair_ok(z_cols[:, a], v_x, y)
        return flags
    raise UnsupportedModelError(f"no support predicate for {v.value}")


def _collider_pair_ok(v_z: np.ndarray, v_x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Allowed combinations of the two effect copies given the observed effect.

    A cell is zeroed when exactly one copy agrees with the observed effect, or
    when both copies disagree with it while being equal to each other.
    """
    both_agree = (v_z == y) & (v_x == y)
    both_differ = (v_z != y) & (v_x != y) & (v_z != v_x)
    return both_agree | both_differ


def build_support(spec: CausalModelSpec) -> SupportSet:
    """Materialize the support set of a model variant.

    For plain variants the objective coefficients equal the membership
    indicator; ANM variants carry the reweighted coefficients of
    :func:`build_objective`.
    """
    space = model_space(spec)
    flags = _member_flags(spec, space)
    coeffs = _objective_from_flags(spec, space, flags)
    return SupportSet(space, flags, coeffs)


def build_objective(spec: CausalModelSpec) -> np.ndarray:
    """LP objective coefficients for a model variant."""
    space = model_space(spec)
    flags = _member_flags(spec, space)
    return _objective_from_flags(spec, space, flags)


def _objective_from_flags(
    spec: CausalModelSpec, space: ModelSpace, flags: np.ndarray
) -> np.ndarray:
    coeffs = flags.astype(float)
    k = spec.anm_objective
    if k is None:
        return coeffs
    # Reweighting that penalizes reversible additive-noise patterns: each
    # objective adds +1/-1 on the support cells of one observed (x, y) pair.
    coords = space.shape.coordinates()
    pair_plus, pair_minus = {
        1: ((0, 0), (1, 1)),
        2: ((1, 1), (0, 0)),
        3: ((0, 1), (1, 0)),
        4: ((1, 0), (0, 1)),
    }[k]
    on = coords[:, 0], coords[:, 1]
    coeffs[flags & (on[0] == pair_plus[0]) & (on[1] == pair_plus[1])] += 1.0
    coeffs[flags & (on[0] == pair_minus[0]) & (on[1] == pair_minus[1])] -= 1.0
    return coeffs


@dataclass(frozen=True)
class RoleSwap:
    """Recipe for evaluating a mirrored bivariate model by column exchange."""

    model: CausalModelSpec

    def apply(self, x, y):
        """Swap the data columns; feeding them to the mirrored model's
        opposite-role machinery reproduces the original model."""
        return y, x

    def apply_pairs(self, pairs):
        arr = np.asarray(pairs).reshape(-1, 2)
        return arr[:, ::-1].copy()


_MIRROR = {
    ModelVariant.X_TO_Y: ModelVariant.Y_TO_X,
    ModelVariant.Y_TO_X: ModelVariant.X_TO_Y,
    ModelVariant.X_TO_Y_MONO_INC: ModelVariant.Y_TO_X_MONO_INC,
    ModelVariant.Y_TO_X_MONO_INC: ModelVariant.X_TO_Y_MONO_INC,
    ModelVariant.X_TO_Y_MONO_DEC: ModelVariant.Y_TO_X_MONO_DEC,
    ModelVariant.Y_TO_X_MONO_DEC: ModelVariant.X_TO_Y_MONO_DEC,
}


def swap_roles(spec: CausalModelSpec) -> RoleSwap:
    """Mirror a bivariate model across the cause/effect roles.

    Running the mirrored model on column-swapped data is equivalent to
    running the original model on the original data.
    """
    if spec.is_trivariate:
        raise UnsupportedModelError("role swap is defined for bivariate models only")
    mirrored = _MIRROR.get(spec.variant, spec.variant)
    return RoleSwap(CausalModelSpec(mirrored, spec.b_x, spec.b_y))
