import random
from fractions import Fraction

import pytest

from holant3.dichotomy import FP, classify_ternary
from holant3.errors import HardnessRefusal, NotDegenerate, WrongCase
from holant3.grid import bipartite_grid, disjoint_union, holant
from holant3.signatures import SymSig
from holant3.tractable import (
    TractableInstance,
    solve,
    solve_affine,
    solve_degenerate,
    solve_gen_equality,
)
from conftest import rand_pure_grid

PAIRS_2x2 = [(0, 0), (0, 0), (0, 1), (1, 0), (1, 1), (1, 1)]
TRIPLE = [(0, 0)] * 3


def _inst(f, pairs):
    return TractableInstance(bipartite_grid(SymSig(f), pairs), SymSig(f))


def test_degenerate_examples():
    assert solve_degenerate(_inst([1, 1, 1, 1], TRIPLE)) == 2
    assert solve_degenerate(_inst([1, 2, 4, 8], PAIRS_2x2)) == 81
    assert solve_degenerate(_inst([1, 0, 0, 0], PAIRS_2x2)) == 1
    with pytest.raises(NotDegenerate):
        solve_degenerate(_inst([0, 1, 1, 0], TRIPLE))


def test_gen_equality_examples():
    assert solve_gen_equality(_inst([5, 0, 0, 7], TRIPLE)) == 12
    assert solve_gen_equality(_inst([5, 0, 0, 7], PAIRS_2x2)) == 74
    two = disjoint_union(bipartite_grid(SymSig([5, 0, 0, 7]), TRIPLE),
                         bipartite_grid(SymSig([5, 0, 0, 7]), TRIPLE))
    assert solve_gen_equality(TractableInstance(two, SymSig([5, 0, 0, 7]))) == 144
    with pytest.raises(WrongCase):
        solve_gen_equality(_inst([1, 1, 1, 1], TRIPLE))


def test_affine_examples():
    assert solve_affine(_inst([1, 0, 1, 0], TRIPLE)) == 1
    assert solve_affine(_inst([0, 1, 0, 1], TRIPLE)) == 1
    inst = _inst([3, 0, 3, 0], PAIRS_2x2)
    assert solve_affine(inst) == holant(inst.grid) == 9
    with pytest.raises(WrongCase):
        solve_affine(_inst([1, 2, 3, 4], TRIPLE))


def test_dispatcher_and_refusal():
    value, cls = solve(_inst([1, 2, 4, 8], PAIRS_2x2))
    assert value == 81 and cls.matched_case == 1
    with pytest.raises(HardnessRefusal) as exc:
        solve(_inst([0, 1, 1, 0], TRIPLE))
    assert exc.value.classification.verdict == "#P-hard"
    # opt-in brute force still answers
    value, cls = solve(_inst([0, 1, 1, 0], TRIPLE), allow_brute_force=True)
    assert value == 0 and cls.verdict == "#P-hard"


def test_zero_signature_gives_zero():
    value, _ = solve(_inst([0, 0, 0, 0], PAIRS_2x2))
    assert value == 0


def test_overlap_consistency():
    """[x0,0,0,x3] that is also degenerate (an end entry 0): both
    solvers must agree."""
    rng = random.Random(60)
    for _ in range(20):
        x = Fraction(rng.randint(1, 9), rng.randint(1, 4))
        f = [x, 0, 0, 0] if rng.random() < 0.5 else [0, 0, 0, x]
        inst = _inst(f, PAIRS_2x2)
        assert solve_degenerate(inst) == solve_gen_equality(inst)


def test_solve_total_on_nonnegative():
    rng = random.Random(61)
    for _ in range(60):
        f = SymSig([Fraction(rng.randint(0, 4), rng.randint(1, 3)) for _ in range(4)])
        inst = TractableInstance(rand_pure_grid(rng, f, rng.randint(1, 2)), f)
        cls = classify_ternary(f)
        if cls.verdict == FP:
            value, got_cls = solve(inst)
            assert got_cls.verdict == FP
            assert value == holant(inst.grid)
        else:
            with pytest.raises(HardnessRefusal):
                solve(inst)


def test_instance_validation():
    g = bipartite_grid(SymSig([1, 2, 3, 4]), TRIPLE)
    with pytest.raises(WrongCase):
        TractableInstance(g, SymSig([9, 9, 9, 9]))


def test_polynomial_path_beyond_brute_force_cap():
    """The solvers stay exact far above the oracle's edge cap; expected
    values follow from the component product law, which the small-scale
    suites verify against brute force."""
    k = 30
    # 30 disjoint triple edges, affine signature: 3 per component
    grids = [bipartite_grid(SymSig([3, 0, 3, 0]), TRIPLE) for _ in range(k)]
    big = disjoint_union(*grids)
    assert len(big.edges) == 90
    value, cls = solve(TractableInstance(big, SymSig([3, 0, 3, 0])))
    assert cls.matched_case == 3 and value == Fraction(3) ** k

    # one long doubled cycle, generalized equality: x0^k + x3^k
    pairs = []
    for i in range(k):
        pairs += [(i, i), (i, i), (i, (i - 1) % k)]
    cyc = bipartite_grid(SymSig([2, 0, 0, 5]), pairs)
    value, cls = solve(TractableInstance(cyc, SymSig([2, 0, 0, 5])))
    assert cls.matched_case == 2 and value == Fraction(2) ** k + Fraction(5) ** k

    # degenerate closed form on the same topology
    value, cls = solve(TractableInstance(bipartite_grid(SymSig([1, 2, 4, 8]), pairs),
                                         SymSig([1, 2, 4, 8])))
    assert cls.matched_case == 1 and value == Fraction(9) ** k
