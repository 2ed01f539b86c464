"""
Finite spaces, kernels, and the exact-arithmetic toolkit
========================================================

Everything downstream (statistics, identities, certificates) runs on a
finite probability space with rational weights, so every identity can be
checked with Fractions instead of floats.
"""
from fractions import Fraction

import numpy as np

from empint import (canonical_project, integrate_axis, is_canonical,
                    kernel_from_values, l1_norm, l2_norm_sq, make_space,
                    random_kernel, sup_norm, symmetrize, tensor_product,
                    uniform_space)

# a three-point space with weights 1/2, 1/3, 1/6
space = make_space(["1/2", "1/3", "1/6"])
print("weights:", space.weights)

# kernels are labeled tensors; a 1-argument kernel is just a vector of values
f = kernel_from_values(space, ["1", "-1", "2"])
print("sup norm:", sup_norm(f))
print("L1 norm :", l1_norm(f))
print("L2^2    :", l2_norm_sq(f))

# tensor products stack axis labels; integrate_axis removes one of them
g = tensor_product(f, f)
print("g arity:", g.arity, "labels:", g.axis_labels)
m = integrate_axis(g, 2)
print("after integrating axis 2:", m.arity, "value at atom 0:", m.value_at((0,)))

# canonical projection kills every marginal; this is what makes the
# U-statistic degenerate later on
rng = np.random.default_rng(7)
h = random_kernel(uniform_space(3), 2, rng)
hc = canonical_project(h)
print("canonical before/after:", is_canonical(h), is_canonical(hc))
for label in hc.axis_labels:
    assert all(x == 0 for x in integrate_axis(hc, label).values.flat)

# symmetrization averages over axis permutations and never grows the L2 mass
hs = symmetrize(h)
print("L2^2 before/after symmetrize:", l2_norm_sq(h), l2_norm_sq(hs))
assert l2_norm_sq(hs) <= l2_norm_sq(h)

# everything above stayed in exact rationals
assert isinstance(l2_norm_sq(hc), Fraction)
print("all values exact:", hc.exact)
