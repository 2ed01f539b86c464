from fractions import Fraction as F

import numpy as np
import pytest

from empint.diagrams import ColoredDiagram, DiagramClass, contract, enumerate_diagrams
from empint.dominance import (DominanceCertificate, collapse_certificate,
                              contract_certificate, product_certificate,
                              random_dominated_pair, relax_sigma,
                              tensor_certificate, unit_certificate,
                              verify_certificate)
from empint.errors import BlockMismatch, RankTooSmall, SigmaMismatch
from empint.kernels import (Kernel, compact_relabel, kernel_from_values,
                            l2_norm_sq, random_kernel, tensor_product)
from empint.space import uniform_space


@pytest.fixture
def sp():
    return uniform_space(3)


def _random_cert(space, blocks, seed):
    return random_dominated_pair(space, blocks, np.random.default_rng(seed))


def test_certificate_structural_validation(sp):
    h = kernel_from_values(sp, ["1/2", "1/2", "0"])
    with pytest.raises(BlockMismatch):
        DominanceCertificate(F(1, 2), ((1,), (2,)), (h,))
    with pytest.raises(BlockMismatch):
        DominanceCertificate(F(1, 2), ((2,),), (h,))  # labels disagree
    with pytest.raises(RankTooSmall):
        DominanceCertificate(F(1, 2), (), ())


def test_unit_certificate_round_trip(sp):
    rng = np.random.default_rng(41)
    f = random_kernel(sp, 2, rng)
    cert = unit_certificate(f)
    assert cert.rank == 1
    assert cert.sigma_sq == l2_norm_sq(f)
    assert verify_certificate(f, cert)


def test_verify_rejects_wrong_partition(sp):
    f = kernel_from_values(sp, ["1", "0", "0"])
    cert = unit_certificate(f)
    g = tensor_product(f, f)
    with pytest.raises(BlockMismatch):
        verify_certificate(g, cert)


def test_verify_numeric_clauses(sp):
    f = kernel_from_values(sp, ["1/2", "0", "0"])
    good = unit_certificate(f)
    assert verify_certificate(f, good)
    # budget larger than 1 fails the sigma clause
    assert not verify_certificate(f, DominanceCertificate(F(3, 2), good.blocks,
                                                          good.factors))
    # envelope too small pointwise
    small = kernel_from_values(sp, ["1/4", "0", "0"])
    bad = DominanceCertificate(F(1, 2), ((1,),), (small,))
    assert not verify_certificate(f, bad)
    # negative factor values are rejected even if the product still dominates
    signed = kernel_from_values(sp, ["-1/2", "1/2", "1/2"])
    assert not verify_certificate(f, DominanceCertificate(F(1, 2), ((1,),),
                                                          (signed,)))
    # factor sup above 1
    tall = kernel_from_values(sp, ["2", "0", "0"])
    assert not verify_certificate(f, DominanceCertificate(F(1), ((1,),), (tall,)))
    # factor L2 mass above the budget
    wide = kernel_from_values(sp, ["1", "1", "1"])
    assert not verify_certificate(f, DominanceCertificate(F(1, 2), ((1,),), (wide,)))


def test_product_certificate_multi_block(sp):
    rng = np.random.default_rng(42)
    f, cert = _random_cert(sp, ((1, 2), (3,)), 42)
    assert cert.rank == 2
    assert verify_certificate(f, cert)
    assert rng is not None


def test_random_dominated_pair_various_shapes(sp):
    for seed, blocks in enumerate([((1,),), ((1,), (2,)), ((1, 2),),
                                   ((1, 3), (2,)), ((1,), (2,), (3,))]):
        f, cert = _random_cert(sp, blocks, 100 + seed)
        assert verify_certificate(f, cert)
        assert cert.rank == len(blocks)


def test_relax_sigma(sp):
    f, cert = _random_cert(sp, ((1,), (2,)), 43)
    relaxed = relax_sigma(cert, F(1))
    assert verify_certificate(f, relaxed)
    with pytest.raises(SigmaMismatch):
        relax_sigma(cert, cert.sigma_sq / 2)


def test_tensor_certificate(sp):
    f, cf = _random_cert(sp, ((1,), (2,)), 44)
    g, cg = _random_cert(sp, ((1,),), 45)
    sig = max(cf.sigma_sq, cg.sigma_sq)
    cf, cg = relax_sigma(cf, sig), relax_sigma(cg, sig)
    both = tensor_certificate(cf, cg, shift=2)
    fg = tensor_product(f, g)
    assert both.rank == 3
    assert verify_certificate(fg, both)
    with pytest.raises(SigmaMismatch):
        tensor_certificate(cf, relax_sigma(cg, F(1)), shift=2)


def test_collapse_budget_hand_value(sp):
    # two rank-1 certificates with sigma^2 = 1/4 collapse to budget
    # sigma^{1+1} = 1/4, kept exact because the total rank is even
    env = kernel_from_values(sp, ["1/2", "0", "0"])
    f = kernel_from_values(sp, ["1/2", "0", "0"])
    g = kernel_from_values(sp, ["-1/4", "0", "0"])
    cf = DominanceCertificate(F(1, 4), ((1,),), (env,))
    cg = DominanceCertificate(F(1, 4), ((1,),), (env,))
    assert verify_certificate(f, cf) and verify_certificate(g, cg)
    d = ColoredDiagram(1, 1, ((1, 2),), frozenset({1}))
    h = contract(f, g, d)
    out = collapse_certificate(h, cf, cg)
    assert out.sigma_sq == F(1, 4)
    assert out.rank == 1
    assert verify_certificate(h, out)
    with pytest.raises(SigmaMismatch):
        collapse_certificate(h, cf, relax_sigma(cg, F(1, 2)))


def test_contract_certificate_plain_edge(sp):
    f, cf = _random_cert(sp, ((1,), (2,)), 48)
    g, cg = _random_cert(sp, ((1,), (2,)), 49)
    sig = max(cf.sigma_sq, cg.sigma_sq)
    cf, cg = relax_sigma(cf, sig), relax_sigma(cg, sig)
    d = ColoredDiagram(2, 2, ((1, 3),), frozenset())
    h = compact_relabel(contract(f, g, d))
    out = contract_certificate(cf, cg, d)
    # target rank r1 + r2 - (l - p) = 2 + 2 - 1
    assert out.rank == 3
    assert verify_certificate(h, out)


def test_contract_certificate_colored_edge(sp):
    f, cf = _random_cert(sp, ((1, 2),), 50)
    g, cg = _random_cert(sp, ((1, 2),), 51)
    sig = max(cf.sigma_sq, cg.sigma_sq)
    cf, cg = relax_sigma(cf, sig), relax_sigma(cg, sig)
    d = ColoredDiagram(2, 2, ((1, 3),), frozenset({1}))
    h = compact_relabel(contract(f, g, d))
    out = contract_certificate(cf, cg, d)
    # colored edges do not reduce the target rank
    assert out.rank == 2
    assert verify_certificate(h, out)


def test_contract_certificate_rank_too_small(sp):
    # single-block certificates with two plain edges would need rank zero
    f, cf = _random_cert(sp, ((1, 2),), 52)
    g, cg = _random_cert(sp, ((1, 2),), 53)
    sig = max(cf.sigma_sq, cg.sigma_sq)
    cf, cg = relax_sigma(cf, sig), relax_sigma(cg, sig)
    d = ColoredDiagram(2, 2, ((1, 3), (2, 4)), frozenset())
    with pytest.raises(RankTooSmall):
        contract_certificate(cf, cg, d)


def test_contract_certificate_full_sweep_small():
    # every diagram with k1, k2 <= 2 and compatible block shapes verifies
    space = uniform_space(2)
    shapes = {1: [((1,),)], 2: [((1, 2),), ((1,), (2,))]}
    seed = 60
    for k1 in (1, 2):
        for k2 in (1, 2):
            for bf in shapes[k1]:
                for bg in shapes[k2]:
                    for l in range(min(k1, k2) + 1):
                        for p in range(l + 1):
                            cls = DiagramClass(k1, k2, l, p)
                            for d in enumerate_diagrams(cls):
                                seed += 1
                                f, cf = _random_cert(space, bf, seed)
                                g, cg = _random_cert(space, bg, seed + 7000)
                                sig = max(cf.sigma_sq, cg.sigma_sq)
                                cf = relax_sigma(cf, sig)
                                cg = relax_sigma(cg, sig)
                                h = contract(f, g, d)
                                target = cf.rank + cg.rank - (l - p)
                                if target < 1:
                                    with pytest.raises(RankTooSmall):
                                        contract_certificate(cf, cg, d)
                                    out = collapse_certificate(h, cf, cg)
                                else:
                                    h = compact_relabel(h)
                                    out = contract_certificate(cf, cg, d)
                                    assert out.rank == target
                                assert verify_certificate(h, out)


def test_collapse_certificate_float_budget_odd_rank(sp):
    f, cf = _random_cert(sp, ((1,), (2,)), 70)
    g, cg = _random_cert(sp, ((1,),), 71)
    sig = max(cf.sigma_sq, cg.sigma_sq)
    cf, cg = relax_sigma(cf, sig), relax_sigma(cg, sig)
    d = ColoredDiagram(2, 1, ((1, 3),), frozenset())
    h = contract(f, g, d)
    out = collapse_certificate(h, cf, cg)
    # odd total rank forces a float budget sigma^3
    assert out.sigma_sq == pytest.approx(float(sig) ** 1.5)
    assert verify_certificate(h, out)
