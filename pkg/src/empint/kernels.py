"""Kernels: functions of several atom-valued arguments, as dense tensors.

A kernel of arity k on a space with A atoms is stored as an (A, ..., A)
tensor, one axis per argument.  Axes carry integer *labels* (strictly
increasing, by convention 1..k for standalone kernels); labels, not
positions, identify arguments across contraction steps, so an operation
that drops an argument leaves the remaining labels untouched.

Exact-mode kernels hold Fractions in an object-dtype array and every
operation below is closed over the rationals.  Float-mode kernels use
IEEE doubles with the same code paths.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import ArityMismatch, NoSuchAxis, NotCanonical, SameAxis, SpaceMismatch
from .scalars import FLOAT_TOL, Scalar, format_scalar, parse_scalar
from .space import AtomSpace

__all__ = [
    "Kernel", "constant_kernel", "indicator_kernel", "kernel_from_values",
    "sup_norm", "l1_norm", "l2_norm_sq", "l2_norm",
    "tensor_product", "integrate_axis", "substitute_axis", "center_axis",
    "symmetrize", "canonical_project", "is_canonical", "require_canonical",
    "compact_relabel", "relabel", "random_kernel", "kernel_to_json",
    "kernel_from_json",
]


@dataclass(frozen=True, eq=False)
class Kernel:
    """A dense kernel.  Identity-hashable so evaluators can memoize on it."""

    space: AtomSpace
    values: np.ndarray
    axis_labels: tuple[int, ...]

    def __post_init__(self):
        v = np.asarray(self.values)
        object.__setattr__(self, "values", v)
        if v.ndim != len(self.axis_labels):
            raise ArityMismatch(f"{v.ndim} tensor axes for {len(self.axis_labels)} labels")
        if any(d != self.space.n_atoms for d in v.shape):
            raise ArityMismatch(f"tensor shape {v.shape} does not match {self.space.n_atoms} atoms")
        if list(self.axis_labels) != sorted(set(self.axis_labels)):
            raise ValueError(f"axis labels must be strictly increasing, got {self.axis_labels}")

    @property
    def arity(self) -> int:
        return len(self.axis_labels)

    @property
    def exact(self) -> bool:
        return self.values.dtype == object and self.space.exact

    def axis_position(self, label: int) -> int:
        try:
            return self.axis_labels.index(label)
        except ValueError:
            raise NoSuchAxis(f"no axis labeled {label} in {self.axis_labels}") from None

    def value_at(self, atoms: tuple[int, ...]) -> Scalar:
        if len(atoms) != self.arity:
            raise ArityMismatch(f"{len(atoms)} arguments for arity {self.arity}")
        return self.values[atoms] if atoms else self.values[()]

    def scale(self, c: Scalar) -> "Kernel":
        return Kernel(self.space, self.values * c, self.axis_labels)

    def add(self, other: "Kernel") -> "Kernel":
        _check_same_frame(self, other)
        return Kernel(self.space, self.values + other.values, self.axis_labels)

    def abs(self) -> "Kernel":
        return Kernel(self.space, np.abs(self.values), self.axis_labels)

    def pointwise_product(self, other: "Kernel") -> "Kernel":
        _check_same_frame(self, other)
        return Kernel(self.space, self.values * other.values, self.axis_labels)

    def as_float(self) -> "Kernel":
        if not self.exact:
            return self
        return Kernel(self.space.as_float(), self.values.astype(float), self.axis_labels)


def _check_same_frame(f: Kernel, g: Kernel):
    if f.space != g.space:
        raise SpaceMismatch("kernels live on different spaces")
    if f.axis_labels != g.axis_labels:
        raise ArityMismatch(f"axis labels differ: {f.axis_labels} vs {g.axis_labels}")


def _zeros_like_mode(space: AtomSpace, shape):
    if space.exact:
        out = np.empty(shape, dtype=object)
        out[...] = Fraction(0)
        return out
    return np.zeros(shape, dtype=float)


def constant_kernel(space: AtomSpace, value) -> Kernel:
    v = parse_scalar(value) if not isinstance(value, float) else value
    dtype = object if space.exact else float
    return Kernel(space, np.array(v if dtype is object else float(v), dtype=dtype), ())


def indicator_kernel(space: AtomSpace, atom: int, label: int = 1) -> Kernel:
    """The arity-1 kernel 1{x = atom}."""
    v = _zeros_like_mode(space, (space.n_atoms,))
    v[atom] = Fraction(1) if space.exact else 1.0
    return Kernel(space, v, (label,))


def kernel_from_values(space: AtomSpace, values, labels: tuple[int, ...] | None = None) -> Kernel:
    """Build a kernel from a nested list / array of scalars ("p/q" ok)."""
    arr = np.asarray(values, dtype=object)
    flat = [parse_scalar(x) for x in arr.flat]
    exact = all(not isinstance(x, float) for x in flat)
    if exact and space.exact:
        out = np.empty(arr.shape, dtype=object)
        for i, x in zip(np.ndindex(arr.shape), flat):
            out[i] = Fraction(x)
    else:
        out = np.array([float(x) for x in flat], dtype=float).reshape(arr.shape)
    if labels is None:
        labels = tuple(range(1, arr.ndim + 1))
    return Kernel(space, out, labels)


# -- norms ------------------------------------------------------------------

def sup_norm(f: Kernel) -> Scalar:
    return max(abs(x) for x in f.values.flat)


def l1_norm(f: Kernel) -> Scalar:
    """Integral of |f| against the product measure."""
    return _full_contraction(np.abs(f.values), f.space)


def l2_norm_sq(f: Kernel) -> Scalar:
    """Integral of f^2 against the product measure; rational in exact mode."""
    return _full_contraction(f.values * f.values, f.space)


def l2_norm(f: Kernel) -> float:
    return math.sqrt(float(l2_norm_sq(f)))


def _full_contraction(values: np.ndarray, space: AtomSpace) -> Scalar:
    w = space.weight_vector
    v = np.asarray(values)
    while v.ndim > 0:
        v = np.asarray(np.tensordot(v, w, axes=([v.ndim - 1], [0])))
    return v[()]


# -- operators --------------------------------------------------------------

def tensor_product(f: Kernel, g: Kernel) -> Kernel:
    """f and g as functions of disjoint argument groups; g's labels are
    shifted past f's so the product carries f's labels then g's."""
    if f.space != g.space:
        raise SpaceMismatch("kernels live on different spaces")
    shift = max(f.axis_labels, default=0)
    new_labels = f.axis_labels + tuple(j + shift for j in g.axis_labels)
    vals = np.multiply.outer(f.values, g.values)
    return Kernel(f.space, vals, new_labels)


def integrate_axis(f: Kernel, label: int) -> Kernel:
    """Integrate the argument with this label against the base measure."""
    pos = f.axis_position(label)
    vals = np.tensordot(f.values, f.space.weight_vector, axes=([pos], [0]))
    labels = f.axis_labels[:pos] + f.axis_labels[pos + 1:]
    return Kernel(f.space, vals, labels)


def substitute_axis(f: Kernel, keep: int, drop: int) -> Kernel:
    """Identify the 'drop' argument with the 'keep' argument (diagonal
    restriction); the result no longer depends on 'drop'."""
    if keep == drop:
        raise SameAxis(f"substitute needs two distinct axes, got {keep}")
    pk, pd = f.axis_position(keep), f.axis_position(drop)
    diag = np.diagonal(f.values, 0, pk, pd)
    labels = tuple(j for j in f.axis_labels if j != drop)
    new_pos = labels.index(keep)
    vals = np.moveaxis(diag, -1, new_pos)
    return Kernel(f.space, np.ascontiguousarray(vals), labels)


def center_axis(f: Kernel, label: int) -> Kernel:
    """Subtract the one-argument marginal: (I - P) along this axis."""
    pos = f.axis_position(label)
    marg = np.tensordot(f.values, f.space.weight_vector, axes=([pos], [0]))
    return Kernel(f.space, f.values - np.expand_dims(marg, pos), f.axis_labels)


def symmetrize(f: Kernel) -> Kernel:
    """Average over all permutations of the arguments."""
    k = f.arity
    if k <= 1:
        return f
    acc = _zeros_like_mode(f.space, f.values.shape)
    for perm in itertools.permutations(range(k)):
        acc = acc + np.transpose(f.values, perm)
    inv = Fraction(1, math.factorial(k)) if f.exact else 1.0 / math.factorial(k)
    return Kernel(f.space, acc * inv, f.axis_labels)


def canonical_project(f: Kernel) -> Kernel:
    """Apply (I - P) along every axis; the result has vanishing marginals."""
    out = f
    for j in f.axis_labels:
        out = center_axis(out, j)
    return out


def is_canonical(f: Kernel, tol: float = FLOAT_TOL) -> bool:
    """True when integrating out any single argument yields the zero kernel."""
    for j in f.axis_labels:
        m = integrate_axis(f, j)
        if f.exact:
            if any(x != 0 for x in m.values.flat):
                return False
        else:
            if any(abs(x) > tol for x in m.values.flat):
                return False
    return True


def require_canonical(f: Kernel, tol: float = FLOAT_TOL):
    if not is_canonical(f, tol):
        raise NotCanonical("kernel has a nonvanishing single-argument marginal")


# -- relabeling -------------------------------------------------------------

def relabel(f: Kernel, mapping: dict[int, int]) -> Kernel:
    """Rename axis labels; the map must be injective and order-preserving."""
    new = tuple(mapping.get(j, j) for j in f.axis_labels)
    if list(new) != sorted(set(new)):
        raise ValueError(f"relabeling {mapping} does not preserve strict order")
    return Kernel(f.space, f.values, new)


def compact_relabel(f: Kernel) -> Kernel:
    """Rename surviving labels to 1..arity, preserving their order."""
    return Kernel(f.space, f.values, tuple(range(1, f.arity + 1)))


# -- generation and serialization ------------------------------------------

def random_kernel(space: AtomSpace, arity: int, rng: np.random.Generator,
                  max_den: int = 6, bound: Scalar = Fraction(1)) -> Kernel:
    """A random exact kernel with |values| <= bound and denominators <= max_den."""
    shape = (space.n_atoms,) * arity
    out = np.empty(shape, dtype=object)
    b = Fraction(bound)
    for idx in np.ndindex(*shape) if arity else [()]:
        den = int(rng.integers(1, max_den + 1))
        num = int(rng.integers(-den, den + 1))
        out[idx] = b * Fraction(num, den)
    return Kernel(space, out, tuple(range(1, arity + 1)))


def kernel_to_json(f: Kernel) -> dict:
    """Wire form: arity plus the row-major flat value list."""
    flat = f.values.reshape(-1) if f.arity else f.values.reshape(1)
    return {"arity": f.arity, "values": [format_scalar(x) for x in flat]}


def kernel_from_json(space: AtomSpace, doc: dict) -> Kernel:
    arity = int(doc["arity"])
    vals = [parse_scalar(v) for v in doc["values"]]
    want = space.n_atoms**arity
    if len(vals) != want:
        raise ArityMismatch(f"expected {want} values for arity {arity}, got {len(vals)}")
    arr = np.empty((space.n_atoms,) * arity, dtype=object)
    for idx, v in zip(np.ndindex(*arr.shape) if arity else [()], vals):
        arr[idx] = v
    k = Kernel(space, arr, tuple(range(1, arity + 1)))
    if all(not isinstance(v, float) for v in vals) and space.exact:
        return k
    return Kernel(space, arr.astype(float), k.axis_labels)
