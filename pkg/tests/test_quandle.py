from itertools import permutations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from braidlab import automata, quandle
from braidlab.errors import SizeGuardError, ValidationError
from braidlab.states import all_words


def conjugation_quandle_s3():
    """a > b = a^{-1} b a over the six permutations of three symbols."""
    elems = list(permutations(range(3)))
    index = {p: i for i, p in enumerate(elems)}

    def mul(p, r):
        return tuple(p[r[i]] for i in range(3))

    def inv(p):
        out = [0] * 3
        for i, v in enumerate(p):
            out[v] = i
        return tuple(out)

    op = tuple(tuple(index[mul(mul(inv(a), b), a)] for b in elems) for a in elems)
    return quandle.QuandleTable(6, op)


def test_validate_dihedral_and_trivial():
    assert quandle.validate(quandle.dihedral(3)) == {
        "shelf": True, "rack": True, "quandle": True}
    trivial = quandle.QuandleTable(4, tuple(tuple(range(4)) for _ in range(4)))
    assert quandle.validate(trivial)["quandle"] is True


def test_validate_conjugation_quandle():
    assert quandle.validate(conjugation_quandle_s3())["quandle"] is True


def test_validate_shelf_but_not_rack():
    constant = quandle.QuandleTable(3, ((0, 0, 0), (0, 0, 0), (0, 0, 0)))
    flags = quandle.validate(constant)
    assert flags["shelf"] is True and flags["rack"] is False


def test_validate_rejects_out_of_range():
    with pytest.raises(ValidationError):
        quandle.QuandleTable(2, ((0, 1), (2, 0)))


def test_dihedral_table_matches_paper():
    t = quandle.dihedral(3)
    assert t.op == ((0, 2, 1), (2, 1, 0), (1, 0, 2))


def test_dihedral_two_is_trivial():
    t = quandle.dihedral(2)
    assert t.op == ((0, 1), (0, 1))


def test_tetrahedron_table_matches_paper():
    t = quandle.tetrahedron()
    assert t.op == ((0, 2, 3, 1),
                    (3, 1, 0, 2),
                    (1, 3, 2, 0),
                    (2, 0, 1, 3))


def test_self_distributivity_exhaustive():
    for n in range(2, 16):
        assert quandle.validate(quandle.dihedral(n))["quandle"], n
    assert quandle.validate(quandle.tetrahedron())["quandle"]


def test_braid_solution_examples():
    t = quandle.dihedral(3)
    braid = quandle.braid_solution(t)
    # r(x1 ox x2) = x2 ox (x2 > x1) = x2 ox x3
    assert braid.pair_map(0, 1) == (1, 2)
    for a in range(3):
        assert braid.pair_map(a, a) == (a, a)
    assert np.array_equal(braid.matrix @ quandle.inverse_solution(t), np.eye(9, dtype=int))


def test_braid_solution_requires_rack():
    constant = quandle.QuandleTable(3, ((0, 0, 0), (0, 0, 0), (0, 0, 0)))
    with pytest.raises(ValidationError):
        quandle.braid_solution(constant)


def test_braid_relation_exact_on_all_words():
    tables = [quandle.dihedral(n) for n in (3, 4, 5)] + [quandle.tetrahedron()]
    for t in tables:
        for w in all_words(t.n, 3):
            lhs = quandle.braid_on_word(
                t, quandle.braid_on_word(t, quandle.braid_on_word(t, w, 1), 2), 1)
            rhs = quandle.braid_on_word(
                t, quandle.braid_on_word(t, quandle.braid_on_word(t, w, 2), 1), 2)
            assert lhs == rhs, (t.n, w)


def test_dihedral_spectrum_three():
    spec = quandle.dihedral_spectrum(3)
    assert spec.dimensions == [2, 2, 5]
    roots = [np.exp(2j * np.pi * k / 3) for k in (1, 2, 3)]
    assert np.allclose(spec.eigenvalues, roots)
    # the unit eigenspace contains every diagonal word
    unit_block = spec.eigenvectors[-1]
    for m in range(3):
        e = np.zeros(9); e[m * 3 + m] = 1.0
        proj = unit_block @ (unit_block.conj().T @ e)
        assert np.abs(proj - e).max() < 1e-12


def test_dihedral_spectrum_eigen_equation_and_phase():
    for n in (3, 5, 7):
        spec = quandle.dihedral_spectrum(n)
        r = quandle.braid_solution(quandle.dihedral(n)).matrix.astype(complex)
        assert spec.dimensions == [n - 1] * (n - 1) + [2 * n - 1]
        assert sum(spec.dimensions) == n * n
        for lam, cols in zip(spec.eigenvalues, spec.eigenvectors):
            assert np.abs(r @ cols - lam * cols).max() < 1e-12
            gram = cols.conj().T @ cols
            assert np.abs(gram - np.eye(gram.shape[0])).max() < 1e-12
            # seed coefficient convention: the first nonzero entry (the
            # cycle's lexicographically least word) is real positive
            for col in cols.T:
                lead = col[np.nonzero(np.abs(col) > 1e-12)[0][0]]
                assert abs(lead.imag) < 1e-12 and lead.real > 0


def test_dihedral_spectrum_matches_dense_oracle():
    for n in (3, 5, 7, 9):
        spec = quandle.dihedral_spectrum(n)
        dense = np.linalg.eigvals(
            quandle.braid_solution(quandle.dihedral(n)).matrix.astype(float))
        ours = []
        for lam, d in zip(spec.eigenvalues, spec.dimensions):
            ours.extend([lam] * d)
        key = lambda z: (round(np.angle(z), 9), round(abs(z), 9))
        assert sorted(map(key, ours)) == sorted(map(key, np.round(dense, 10)))


def test_dihedral_spectrum_composite_odd_differs_from_prime_pattern():
    # n = 9 has short cycles (step divisible by 3), so the prime-n dimension
    # pattern does not hold; the cycle-exact computation is still correct
    spec = quandle.dihedral_spectrum(9)
    assert sorted(spec.dimensions) != sorted([8] * 8 + [17])
    assert sum(spec.dimensions) == 81


def test_dihedral_spectrum_rejects_even():
    with pytest.raises(ValidationError):
        quandle.dihedral_spectrum(4)


def test_quandle_group_rep_examples():
    t = quandle.dihedral(3)
    m1 = quandle.quandle_group_rep(t, 0)
    assert np.array_equal(m1, [[1, 0, 0], [0, 0, 1], [0, 1, 0]])
    for a in range(3):
        ma = quandle.quandle_group_rep(t, a)
        assert np.array_equal(ma @ ma, np.eye(3, dtype=int))
    trivial = quandle.QuandleTable(3, tuple(tuple(range(3)) for _ in range(3)))
    for a in range(3):
        assert np.array_equal(quandle.quandle_group_rep(trivial, a), np.eye(3, dtype=int))


def test_rack_group_relations_exact():
    for t in (quandle.dihedral(3), quandle.dihedral(5), quandle.tetrahedron(),
              conjugation_quandle_s3()):
        mats = [quandle.quandle_group_rep(t, a) for a in range(t.n)]
        for a in range(t.n):
            for b in range(t.n):
                assert np.array_equal(mats[a] @ mats[b], mats[b] @ mats[t.op[b][a]])


def test_centralizer_residual_zero():
    assert quandle.centralizer_residual(quandle.dihedral(3), 2) == 0
    trivial = quandle.QuandleTable(3, tuple(tuple(range(3)) for _ in range(3)))
    assert quandle.centralizer_residual(trivial, 2) == 0
    assert quandle.centralizer_residual(quandle.tetrahedron(), 3) == 0


def test_orbit_automaton_dihedral3():
    t = quandle.dihedral(3)
    graph = quandle.orbit_automaton(t, 2)
    cycles = graph.cycles[1]
    lengths = sorted(len(c) for c in cycles)
    assert lengths == [1, 1, 1, 3, 3]
    assert graph.order == 3
    three_cycles = [set(c) for c in cycles if len(c) == 3]
    assert {(1, 2), (2, 3), (3, 1)} in three_cycles
    assert {(1, 3), (3, 2), (2, 1)} in three_cycles
    assert sorted(graph.fixed_points(1)) == [(1, 1), (2, 2), (3, 3)]


def test_orbit_automaton_trivial_quandle_is_flip():
    trivial = quandle.QuandleTable(3, tuple(tuple(range(3)) for _ in range(3)))
    graph = quandle.orbit_automaton(trivial, 2)
    lengths = sorted(len(c) for c in graph.cycles[1])
    assert lengths == [1, 1, 1, 2, 2, 2]
    assert graph.order == 2


def test_orbit_automaton_guard():
    with pytest.raises(SizeGuardError):
        quandle.orbit_automaton(quandle.dihedral(11), 5)


def test_orbit_dot_export():
    t = quandle.dihedral(3)
    graph = quandle.orbit_automaton(t, 2)
    dot = automata.to_dot(quandle.orbit_to_automaton(graph, t))
    assert dot.count("->") == 9 + 1     # one edge per word plus start marker
    assert "x1x2" in dot


def test_unit_eigenspace_splits_under_group_action():
    # the 5-dim unit eigenspace of the n=3 braid splits into a 3-dim orbit
    # (diagonal words) and a 2-dim orbit under the diagonal group action
    t = quandle.dihedral(3)
    spec = quandle.dihedral_spectrum(3)
    unit_block = spec.eigenvectors[-1]          # 9 x 5
    reps = [np.kron(quandle.quandle_group_rep(t, a), quandle.quandle_group_rep(t, a))
            for a in range(3)]
    support = np.zeros((5, 5), dtype=bool)
    for rep in reps:
        induced = unit_block.conj().T @ (rep @ unit_block)
        assert np.abs(unit_block @ induced - rep @ unit_block).max() < 1e-12
        support |= np.abs(induced) > 1e-9
    # connected components of the support graph
    comps = []
    seen = set()
    for i in range(5):
        if i in seen:
            continue
        stack, comp = [i], set()
        while stack:
            v = stack.pop()
            if v in comp:
                continue
            comp.add(v)
            stack.extend(j for j in range(5) if support[v, j] or support[j, v])
        seen |= comp
        comps.append(comp)
    assert sorted(len(c) for c in comps) == [2, 3]


@st.composite
def random_tables(draw):
    n = draw(st.integers(min_value=1, max_value=4))
    rows = tuple(tuple(draw(st.integers(min_value=0, max_value=n - 1))
                       for _ in range(n)) for _ in range(n))
    return quandle.QuandleTable(n, rows)


@given(random_tables())
@settings(max_examples=60, deadline=None)
def test_validate_flags_are_consistent(table):
    flags = quandle.validate(table)
    if flags["quandle"]:
        assert flags["rack"]
    if flags["rack"]:
        assert flags["shelf"]
        # a rack always yields an invertible braid solution
        braid = quandle.braid_solution(table)
        assert np.array_equal(braid.matrix @ quandle.inverse_solution(table),
                              np.eye(table.n ** 2, dtype=int))


def test_table_json_round_trip():
    for t in (quandle.dihedral(5), quandle.tetrahedron()):
        back = quandle.table_from_json(quandle.table_to_json(t))
        assert back == t
    with pytest.raises(ValidationError):
        quandle.table_from_json('{"n": 2, "op": [1, 2, 3]}')
