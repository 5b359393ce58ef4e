import pytest

import knotcol as kc
from knotcol.coloring import cnf_var


@pytest.fixture(scope="module")
def trefoil():
    return kc.parse_gauss("O1+ U2+ O3+ U1+ O2+ U3+", name="trefoil")


@pytest.fixture(scope="module")
def fig8():
    return kc.parse_gauss("O1+ U2- O4- U1+ O3+ U4- O2- U3+", name="fig8")


class TestBrute:
    def test_trefoil_d3(self, trefoil):
        assert kc.color_brute(trefoil, kc.dihedral(3)) == 6

    def test_fig8_d3(self, fig8):
        assert kc.color_brute(fig8, kc.dihedral(3)) == 0

    def test_unknot_any(self, library):
        for quandle in library:
            assert kc.color_brute(kc.UNKNOT, quandle) == 0

    def test_budget(self, fig8):
        with pytest.raises(kc.BudgetExceeded):
            kc.color_brute(fig8, kc.dihedral(5), budget=kc.Budget(max_assignments=100))


class TestBacktrack:
    def test_matches_oracle(self, knots, small_library):
        for diagram in knots.values():
            for quandle in small_library:
                if quandle.size ** diagram.arc_count > 10 ** 6:
                    continue
                assert kc.color_backtrack(diagram, quandle) == \
                    kc.color_brute(diagram, quandle)

    def test_trefoil_d5(self, trefoil):
        assert kc.color_backtrack(trefoil, kc.dihedral(5)) == 0

    def test_fig8_d5(self, fig8):
        assert kc.color_backtrack(fig8, kc.dihedral(5)) == 20

    def test_node_budget(self, fig8):
        with pytest.raises(kc.BudgetExceeded):
            kc.color_backtrack(fig8, kc.dihedral(5), budget=kc.Budget(max_nodes=2))


class TestBraidEngine:
    def test_trefoil_d3(self):
        assert kc.color_braid(kc.torus_braid(2, 3), kc.dihedral(3)) == 6

    def test_2_11_torus_d11(self):
        braid = kc.torus_braid(2, 11)
        assert kc.color_braid(braid, kc.dihedral(11), mode="decide") is True
        assert kc.color_braid(braid, kc.dihedral(3), mode="decide") is False

    def test_matches_diagram_engines(self, braids, small_library):
        for braid in braids.values():
            diagram = kc.braid_to_diagram(braid)
            for quandle in small_library:
                assert kc.color_braid(braid, quandle) == \
                    kc.color_backtrack(diagram, quandle)

    def test_link_rejected(self):
        with pytest.raises(kc.KnotFormatError):
            kc.color_braid(kc.parse_braid("3: 1"), kc.dihedral(3))


class TestEncodeCnf:
    def test_trefoil_d3_shape(self, trefoil):
        instance = kc.encode_cnf(trefoil, kc.dihedral(3))
        assert instance.num_vars == 9
        assert len(instance.clauses) == 43

    def test_clause_order(self, trefoil):
        d3 = kc.dihedral(3)
        instance = kc.encode_cnf(trefoil, d3)
        clauses = instance.clauses
        # (a) arc 1: at-least-one then the three at-most-one pairs
        assert clauses[0] == (1, 2, 3)
        assert clauses[1] == (-1, -2)
        assert clauses[2] == (-1, -3)
        assert clauses[3] == (-2, -3)
        # (b) nontriviality for color 1 spans all arcs
        assert clauses[12] == (-cnf_var(1, 1, 3), -cnf_var(2, 1, 3), -cnf_var(3, 1, 3))
        # (d) symmetry break is last
        assert clauses[-1] == (1,)

    def test_crossing_clause_instance(self):
        # over arc 1 color 2, under_in arc 2 color 3, under_out arc 3
        d3 = kc.dihedral(3)
        diagram = kc.KnotDiagram(
            (kc.Crossing(1, 2, 3, 1), kc.Crossing(2, 3, 1, 1), kc.Crossing(3, 1, 2, 1)),
            3)
        instance = kc.encode_cnf(diagram, d3, symmetry_break=False, nontrivial=False)
        want = (-cnf_var(1, 2, 3), -cnf_var(2, 3, 3), cnf_var(3, d3.op(2, 3), 3))
        assert want in instance.clauses

    def test_toggles(self, trefoil):
        d3 = kc.dihedral(3)
        assert len(kc.encode_cnf(trefoil, d3, symmetry_break=False).clauses) == 42
        assert len(kc.encode_cnf(trefoil, d3, nontrivial=False).clauses) == 40

    def test_unknot_nontrivial_unsat(self):
        instance = kc.encode_cnf(kc.UNKNOT, kc.dihedral(3), symmetry_break=False)
        assert kc.sat_decide(instance) is None


class TestSatRoute:
    def test_trefoil_model_decodes(self, trefoil):
        d3 = kc.dihedral(3)
        instance = kc.encode_cnf(trefoil, d3)
        model = kc.sat_decide(instance)
        coloring = kc.decode_model(model, trefoil, d3)
        assert coloring.is_nontrivial
        assert coloring.satisfies(trefoil, d3)
        assert coloring.assignment[1] == 1  # symmetry break pins arc 1

    def test_fig8_d3_unsat(self, fig8):
        assert kc.sat_decide(kc.encode_cnf(fig8, kc.dihedral(3))) is None

    def test_matches_oracle(self, knots, small_library):
        for diagram in knots.values():
            for quandle in small_library:
                if quandle.size ** diagram.arc_count > 10 ** 6:
                    continue
                assert kc.colorable(diagram, quandle) == \
                    kc.color_brute(diagram, quandle, mode="decide")


class TestCounting:
    def test_symmetry_factor(self, knots, small_library):
        connected = [q for q in small_library if q.is_connected]
        for name in ("trefoil_gauss", "fig8_gauss", "t25", "unknot_kink"):
            diagram = knots[name]
            for quandle in connected:
                pinned = kc.color_backtrack(diagram, quandle, pin_first=1)
                full = kc.color_backtrack(diagram, quandle)
                assert full == pinned * quandle.size

    def test_count_colorings_trefoil(self, trefoil):
        assert kc.count_colorings(trefoil, kc.dihedral(3)) == 6

    def test_count_colorings_fig8(self, fig8):
        assert kc.count_colorings(fig8, kc.dihedral(5)) == 20

    def test_count_colorings_non_connected(self, trefoil):
        d9 = kc.dihedral(9)
        d6 = kc.dihedral(6)
        assert kc.count_colorings(trefoil, d9) == kc.color_brute(trefoil, d9)
        assert kc.count_colorings(trefoil, d6) == kc.color_brute(trefoil, d6)

    def test_kink_never_colorable(self, library):
        kink = kc.parse_gauss("O1+ U1+")
        for quandle in library:
            assert kc.colorable(kink, quandle) is False


class TestStructuralProperties:
    def test_subquandle_colorings_lift(self, fig8):
        # a coloring by a subquandle is a coloring by the parent
        d5 = kc.dihedral(5)
        sub, embedding = kc.subquandle_generated(d5, {1, 2})
        assert sub.size == 5  # 1,2 generate everything
        for coloring in kc.all_colorings(fig8, sub):
            lifted = kc.Coloring({arc: embedding[c - 1]
                                  for arc, c in coloring.assignment.items()})
            assert lifted.satisfies(fig8, d5)

    def test_factor_projection_pushes_colorings(self):
        # (2,9) torus knot has mod-9 colorings surviving projection to mod 3
        d9 = kc.dihedral(9)
        theta = next(c for c in kc.congruences(d9)
                     if not c.is_diagonal and not c.is_total)
        quotient, projection = kc.factor(d9, theta)
        diagram = kc.braid_to_diagram(kc.torus_braid(2, 9))
        pushed_nontrivial = 0
        for coloring in kc.all_colorings(diagram, d9):
            pushed = kc.Coloring({arc: projection[c - 1]
                                  for arc, c in coloring.assignment.items()})
            assert pushed.satisfies(diagram, quotient)
            if pushed.is_nontrivial:
                pushed_nontrivial += 1
        assert pushed_nontrivial > 0
