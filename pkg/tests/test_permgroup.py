import math

import numpy as np
import pytest
import sympy.combinatorics as sc

from k3mono.errors import DegreeMismatch, NotInClassification, NotPrimitive
from k3mono.permgroup import (
    FACT_12,
    FACT_24,
    BlockSystem,
    Permutation,
    adjacent_transpositions,
    block_systems,
    brute_force_order,
    certify_s24,
    embed_f,
    embed_g,
    generate,
    identify_primitive_deg24,
    is_block_system,
    is_k_transitive,
    is_primitive,
    is_transitive,
    minimal_block_system,
    parity,
    projective_line_maps,
)

IM_F = [embed_f(t) for t in adjacent_transpositions(12)]
IM_G = [embed_g(t) for t in adjacent_transpositions(8)]


def random_perm(rng, n):
    return Permutation(rng.permutation(n).tolist())


def test_composition_is_left_to_right():
    p = Permutation.from_cycles(3, [[0, 1]])
    q = Permutation.from_cycles(3, [[1, 2]])
    # apply p, then q
    assert [(p * q)(i) for i in range(3)] == [q(p(i)) for i in range(3)]
    assert (p * q).images == (2, 0, 1)


def test_inverse_power_conjugate(rng):
    for _ in range(20):
        p, c = random_perm(rng, 9), random_perm(rng, 9)
        assert (p * p.inverse()).is_identity()
        assert p**3 == p * p * p and p**-2 == (p.inverse()) ** 2
        assert p.conjugate(c) == c.inverse() * p * c
        assert p.conjugate(c).cycle_type() == p.cycle_type()


def test_cycles_and_cycle_type():
    p = Permutation.from_cycles(7, [[0, 3], [1, 4, 5]])
    assert p.cycle_type() == (3, 2)
    assert sorted(map(sorted, p.cycles())) == [[0, 3], [1, 4, 5]]


def test_parity():
    assert parity(Permutation.identity(24)) == 1
    assert parity(Permutation.from_cycles(24, [[0, 1], [2, 3], [4, 5]])) == -1
    assert parity(Permutation.from_cycles(24, [[0, 1], [2, 3]])) == 1


def test_known_orders():
    assert generate(adjacent_transpositions(24)).order() == FACT_24 == 620448401733239439360000
    assert generate(IM_F).order() == FACT_12 == 479001600
    assert generate(IM_G).order() == math.factorial(8)


def test_degree_mismatch():
    with pytest.raises(DegreeMismatch):
        generate([Permutation.identity(3), Permutation.identity(4)])


def test_membership(rng):
    G = generate(IM_F)
    for _ in range(10):
        x = Permutation.identity(24)
        for _ in range(5):
            x = x * IM_F[rng.integers(len(IM_F))]
        assert x in G
    assert Permutation.from_cycles(24, [[0, 12]]) not in G


@pytest.mark.parametrize("trial", range(30))
def test_order_matches_brute_force(trial):
    rng = np.random.default_rng(trial)
    while True:
        n = int(rng.integers(4, 9))
        gens = [random_perm(rng, n) for _ in range(int(rng.integers(1, 3)))]
        bf = brute_force_order(gens, n)
        if bf <= 10**4:
            break
    assert generate(gens, n).order() == bf


@pytest.mark.parametrize("trial", range(10))
def test_order_matches_sympy(trial):
    rng = np.random.default_rng(100 + trial)
    n = 24
    gens = [random_perm(rng, n) for _ in range(2)]
    if trial % 2:
        gens = [embed_f(Permutation(rng.permutation(12).tolist())) for _ in range(2)]
    ref = sc.PermutationGroup([sc.Permutation(list(g.images)) for g in gens]).order()
    assert generate(gens, n).order() == ref


def test_psl_and_pgl_2_23():
    psl = generate(projective_line_maps(23, [((1, 1), (0, 1)), ((0, -1), (1, 0))]))
    assert psl.order() == 6072 and identify_primitive_deg24(psl) == "PSL2(23)"
    pgl = generate(projective_line_maps(23, [((1, 1), (0, 1)), ((0, 1), (1, 0))]))
    assert pgl.order() == 12144 and identify_primitive_deg24(pgl) == "PGL2(23)"


def test_transitivity():
    assert not is_transitive(generate(IM_F))
    S = generate(adjacent_transpositions(24))
    assert is_transitive(S) and is_k_transitive(S, 2) and is_k_transitive(S, 3)
    A5 = generate([Permutation.from_cycles(5, [[0, 1, 2]]), Permutation.from_cycles(5, [[0, 1, 2, 3, 4]])])
    assert is_k_transitive(A5, 3)
    D5 = generate([Permutation.from_cycles(5, [[0, 1, 2, 3, 4]]), Permutation([0, 4, 3, 2, 1])])
    assert is_transitive(D5) and not is_k_transitive(D5, 2)


def test_interleaved_group_is_transitive_and_primitive():
    c = Permutation([(5 * i + 3) % 24 for i in range(24)])
    G = generate(IM_F + [g.conjugate(c) for g in IM_G])
    assert is_transitive(G) and is_primitive(G) and G.order() == FACT_24


def test_block_systems_of_f_extended_by_swap():
    swap = Permutation([(i + 12) % 24 for i in range(24)])
    G = generate(IM_F + [swap])
    halves = BlockSystem.from_blocks(24, [range(12), range(12, 24)])
    pairs = BlockSystem.from_blocks(24, [[i, i + 12] for i in range(12)])
    assert is_block_system(G, halves) and is_block_system(G, pairs)
    found = {bs.canonical() for bs in block_systems(G)}
    assert pairs.canonical() in found
    assert minimal_block_system(G, (0, 12)).canonical() == pairs.canonical()
    assert minimal_block_system(G, (0, 1)).canonical() == halves.canonical()
    assert not is_primitive(G)


def test_block_systems_of_g():
    G = generate(IM_G + [Permutation([(i + 8) % 24 for i in range(24)])])
    thirds = BlockSystem.from_blocks(24, [range(0, 8), range(8, 16), range(16, 24)])
    triples = BlockSystem.from_blocks(24, [[i, i + 8, i + 16] for i in range(8)])
    assert is_block_system(G, thirds) and is_block_system(G, triples)
    assert minimal_block_system(G, (0, 8)).canonical() == triples.canonical()


def test_block_system_invariance_matches_sympy(rng):
    for _ in range(5):
        gens = [random_perm(rng, 12) for _ in range(2)]
        G = generate(gens)
        ours = is_primitive(G)
        ref = sc.PermutationGroup([sc.Permutation(list(g.images)) for g in gens])
        if ref.is_transitive():
            assert ours == ref.is_primitive()


def test_identify_errors():
    with pytest.raises(NotPrimitive):
        identify_primitive_deg24(generate(IM_F))
    C23 = generate([Permutation.from_cycles(24, [list(range(23))])])  # fixes point 23
    with pytest.raises(NotPrimitive):
        identify_primitive_deg24(C23)
    with pytest.raises(NotPrimitive):
        identify_primitive_deg24(generate(adjacent_transpositions(12)))


def test_identify_symmetric_and_alternating():
    G = generate([Permutation.from_cycles(24, [list(range(24))]), Permutation.from_cycles(24, [[0, 1]])])
    assert identify_primitive_deg24(G) == "S24"
    A = generate([Permutation.from_cycles(24, [[i, i + 1, i + 2]]) for i in range(22)])
    assert identify_primitive_deg24(A) == "A24"


def test_not_in_classification(monkeypatch):
    # every primitive group of degree 24 is listed, so feed an impossible order
    G = generate(adjacent_transpositions(24))
    monkeypatch.setattr(G, "order", lambda: 1234)
    with pytest.raises(NotInClassification) as info:
        identify_primitive_deg24(G)
    assert info.value.order == 1234


def test_certificate():
    rep = certify_s24(generate(IM_F))
    assert not rep.transitive and rep.conclusion == "not S24"
    A = generate([Permutation.from_cycles(24, [[i, i + 1, i + 2]]) for i in range(22)])
    rep = certify_s24(A)
    assert rep.primitive and not rep.has_odd and rep.conclusion == "not S24"
    rep = certify_s24(generate(adjacent_transpositions(24)))
    assert rep.conclusion == "S24" and rep.to_json()["order"] == str(FACT_24)


def test_elements_enumeration():
    G = generate([Permutation.from_cycles(4, [[0, 1, 2, 3]]), Permutation.from_cycles(4, [[0, 1]])])
    els = list(G.elements())
    assert len(els) == 24 and len(set(els)) == 24
