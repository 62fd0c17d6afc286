"""Witness certificates, coset graphs, paths, trimming, and blow-ups."""

import pytest

from chainlab.contexts import (
    EqualityVerdict,
    battery_context,
    free_context,
)
from chainlab.coset import todd_coxeter
from chainlab.errors import (
    FactorizationNotFoundError,
    InputError,
    TruncationTooSmallError,
    UndecidableContextError,
)
from chainlab.fixtures import (
    golden_chain,
    plane_connectors,
    plane_context,
    plane_inner_ball,
    plane_line_ball,
    plane_line_solver,
    plane_outer_graph,
    plane_presentation,
    plane_rewriter,
)
from chainlab.qnormal import (
    AbelianCosetSolver,
    ParabolicCosetSolver,
    QNormalChainCertificate,
    QNormalStatus,
    QNormalWitness,
    QNormalWitnessSet,
    blow_up,
    build_coset_graph,
    chain_from_dict,
    chain_to_dict,
    compare_blowup_with_direct,
    connectedness_path,
    graph_to_dict,
    infer_solver,
    iota,
    trim_cocompact,
    verify_chain,
    verify_qnormal,
    weakest,
    witness_set_from_dict,
    witness_set_to_dict,
)
from chainlab.words import presentation, raag_graph

S3 = presentation(("s", "t"), [(1, 1), (2, 2), (1, 2, 1, 2, 1, 2)])


def witness(w, expr):
    return QNormalWitness(w=w, expr_in_subgroup=expr, expr_in_conjugate=expr)


# ------------------------------------------------------------- witness checks


class TestWitnessSets:
    def test_iota_substitutes_subgroup_generators(self):
        sub = ((1,), (2, 2))
        assert iota((1, 2), sub) == (1, 2, 2)
        assert iota((-2, 1), sub) == (-2, -2, 1)
        assert iota((), sub) == ()

    def test_witness_count_must_match_generating_set(self):
        p = plane_presentation()
        with pytest.raises(InputError):
            QNormalWitnessSet(
                ambient=p,
                subgroup_words=((1,),),
                generating_set=((1,), (2,)),
                witnesses=(witness((1,), (1,)),),
            )

    def test_expression_letters_must_index_subgroup_generators(self):
        p = plane_presentation()
        with pytest.raises(InputError):
            QNormalWitnessSet(
                ambient=p,
                subgroup_words=((1,),),
                generating_set=((1,),),
                witnesses=(witness((1,), (2,)),),
            )

    def test_empty_generating_set_rejected(self):
        p = plane_presentation()
        with pytest.raises(InputError):
            QNormalWitnessSet(
                ambient=p, subgroup_words=((1,),), generating_set=(), witnesses=()
            )

    def test_normal_subgroup_certifies_as_qnormal(self):
        # <x^2, y> is normal in Z^2; y witnesses both generators.
        p = plane_presentation()
        ws = QNormalWitnessSet(
            ambient=p,
            subgroup_words=((1, 1), (2,)),
            generating_set=((1,), (2,)),
            witnesses=(witness((2,), (2,)), witness((2,), (2,))),
        )
        report = verify_qnormal(ws, plane_context())
        assert report.status is QNormalStatus.PROVEN
        assert report.generating_set_spans_abelianization

    def test_spans_abelianization_flag_sees_small_generating_sets(self):
        p = plane_presentation()
        ws = QNormalWitnessSet(
            ambient=p,
            subgroup_words=((1,),),
            generating_set=((1,),),
            witnesses=(witness((1,), (1,)),),
        )
        report = verify_qnormal(ws, plane_context())
        assert report.status is QNormalStatus.PROVEN
        assert not report.generating_set_spans_abelianization

    def test_context_presentation_must_match(self):
        ws = QNormalWitnessSet(
            ambient=plane_presentation(),
            subgroup_words=((1,),),
            generating_set=((1,),),
            witnesses=(witness((1,), (1,)),),
        )
        with pytest.raises(InputError):
            verify_qnormal(ws, free_context(2))

    def test_battery_refutes_false_witness_claim(self):
        # In <a, b | b^2>, the claim a = b a b^-1 is false; the symmetric-group
        # quotient a -> (123), b -> (12) refutes it.
        amb = presentation(("a", "b"), [(2, 2)])
        s3 = presentation(("a", "b"), [(1, 1, 1), (2, 2), (1, 2, 1, 2)])
        probe = todd_coxeter(s3, [], max_cosets=30)
        assert probe.index == 6
        ws = QNormalWitnessSet(
            ambient=amb,
            subgroup_words=((1,),),
            generating_set=((1,), (2,)),
            witnesses=(witness((1,), (1,)), witness((1,), (1,))),
        )
        refuting = verify_qnormal(ws, battery_context(amb, [probe]))
        assert refuting.status is QNormalStatus.FAILED
        assert refuting.witness_reports[1].in_conjugate is EqualityVerdict.UNEQUAL
        # Without probes nothing is refuted, but nothing is proven either.
        lenient = verify_qnormal(ws, battery_context(amb))
        assert lenient.status is QNormalStatus.CONSISTENT
        assert lenient.witness_reports[0].status is QNormalStatus.PROVEN

    def test_weakest_status_ordering(self):
        assert weakest([QNormalStatus.PROVEN, QNormalStatus.CONSISTENT]) is QNormalStatus.CONSISTENT
        assert weakest([QNormalStatus.CONSISTENT, QNormalStatus.FAILED]) is QNormalStatus.FAILED
        assert weakest([]) is QNormalStatus.PROVEN


class TestChains:
    def test_golden_chain_is_proven(self):
        cert, contexts = golden_chain()
        report = verify_chain(cert, contexts)
        assert report.status is QNormalStatus.PROVEN
        assert report.base_is_subgroup_generator
        assert report.base_certificate.proven
        assert report.failure_reasons == ()
        assert [r.composable_with_previous for r in report.step_reports] == [None, True, True]
        assert all(r.report.generating_set_spans_abelianization for r in report.step_reports)
        # The generator b^2 of the middle group is witnessed by c, not by a power of b.
        middle = report.step_reports[1].report.witness_reports[1]
        assert middle.s == (2,)
        assert middle.w == (3,)
        assert middle.status is QNormalStatus.PROVEN

    def test_chain_composability_mismatch_fails(self):
        cert, contexts = golden_chain()
        broken_step1 = QNormalWitnessSet(
            ambient=cert.steps[1].ambient,
            subgroup_words=cert.steps[1].subgroup_words[:2],  # drops d
            generating_set=cert.steps[1].generating_set,
            witnesses=tuple(
                QNormalWitness(
                    w=wit.w,
                    expr_in_subgroup=(1,),
                    expr_in_conjugate=(1,),
                )
                for wit in cert.steps[1].witnesses
            ),
        )
        broken = QNormalChainCertificate(
            steps=(cert.steps[0], broken_step1, cert.steps[2]), base=cert.base
        )
        report = verify_chain(broken, contexts)
        assert report.status is QNormalStatus.FAILED
        assert report.step_reports[1].composable_with_previous is False
        assert any("step 1" in reason for reason in report.failure_reasons)

    def test_chain_base_must_generate_bottom_subgroup(self):
        cert, contexts = golden_chain()
        wrong_base = QNormalChainCertificate(steps=cert.steps, base=(2,))
        report = verify_chain(wrong_base, contexts)
        assert not report.base_is_subgroup_generator
        assert report.status is QNormalStatus.FAILED

    def test_chain_requires_one_context_per_step(self):
        cert, contexts = golden_chain()
        with pytest.raises(InputError):
            verify_chain(cert, contexts[:2])

    def test_chain_json_roundtrip(self):
        cert, _ = golden_chain()
        again = chain_from_dict(chain_to_dict(cert))
        assert again == cert

    def test_witness_set_json_roundtrip(self):
        cert, _ = golden_chain()
        ws = cert.steps[1]
        assert witness_set_from_dict(witness_set_to_dict(ws)) == ws

    def test_malformed_chain_dict_rejected(self):
        with pytest.raises(InputError):
            chain_from_dict({"base": [1]})


# --------------------------------------------------------------- coset graphs


class TestCompleteGraphs:
    def test_index_two_line_quotient(self):
        # Z / <a^2>: two cosets, a single edge in a single orbit.
        p = presentation(("a",), [])
        g = build_coset_graph(p, [(1, 1)], [(1,)])
        assert g.kind == "complete"
        assert len(g.vertices) == 2
        assert g.edges == ((0, 1, 0),)
        assert g.edge_orbits() == (0,)
        assert g.is_connected()

    def test_symmetric_group_edge_family_is_full_orbit(self):
        # S3 over <t>: the s-edges form a triangle even though left
        # multiplication by s alone moves only two of the three cosets.
        g = build_coset_graph(S3, [(2,)], [(1,), (2,)])
        assert len(g.vertices) == 3
        s_edges = {(u, v) for u, v, label in g.edges if label == 0}
        assert s_edges == {(0, 1), (0, 2), (1, 2)}
        t_edges = {(u, v) for u, v, label in g.edges if label == 1}
        assert t_edges == {(0, 0), (1, 1), (2, 2)}  # t lies in the subgroup
        assert g.left_action_closed()

    def test_vertex_of_traces_left_cosets(self):
        g = build_coset_graph(S3, [(2,)], [(1,), (2,)])
        assert g.vertex_of(()) == 0
        assert g.vertex_of((2,)) == 0  # t is in the subgroup
        assert g.vertex_of((1,)) == g.vertex_of((1, 2))  # sL = stL
        assert len({g.vertex_of(()), g.vertex_of((1,)), g.vertex_of((2, 1))}) == 3

    def test_budget_must_be_positive(self):
        with pytest.raises(InputError):
            build_coset_graph(plane_presentation(), [(1,)], [(1,)], budget=0)

    def test_generating_set_must_be_nonempty(self):
        with pytest.raises(InputError):
            build_coset_graph(plane_presentation(), [(1,)], [])


class TestBallGraphs:
    def test_line_ball_shape(self):
        g = plane_line_ball()
        assert g.kind == "ball"
        assert g.radius == 3
        assert len(g.vertices) == 7
        assert len(g.edges) == 13
        assert g.edge_orbits() == (0, 1)
        loops = [e for e in g.edges if e[0] == e[1]]
        assert len(loops) == 7 and all(label == 0 for _, _, label in loops)
        assert len(g.frontier) == 2
        assert g.vertices[0] == ()

    def test_vertex_lookup_and_truncation(self):
        g = plane_line_ball()
        assert g.vertex_of((1,)) == 0  # x lies in the subgroup
        assert g.vertex_of((2, 1, 2, -1)) == g.vertex_of((2, 2))
        with pytest.raises(TruncationTooSmallError):
            g.vertex_of((2, 2, 2, 2))

    def test_solver_inference_refuses_unknown_shapes(self):
        # A non-graph-group relator with an infinite-index subgroup: no
        # canonicalizer is inferred and the build refuses to guess.
        p = presentation(("a", "b"), [(1, 2, 1, 2)])
        with pytest.raises(UndecidableContextError):
            build_coset_graph(p, [(1, 1, 2)], [(1,)], budget=40)

    def test_parabolic_inference_needs_single_letter_words(self):
        p = free_context(2).presentation
        assert infer_solver(p, [(1, 2)]) is None
        solver = infer_solver(p, [(1,)])
        assert isinstance(solver, ParabolicCosetSolver)

    def test_abelian_solver_accepts_arbitrary_words(self):
        solver = infer_solver(plane_presentation(), [(1, 2, 2)])
        assert isinstance(solver, AbelianCosetSolver)
        assert solver.canonical((1, 2, 2)) == ()
        assert solver.canonical((1,)) == solver.canonical((-2, -2))

    def test_parabolic_canonical_forms(self):
        c4 = raag_graph(4, [(1, 3), (1, 4), (2, 3), (2, 4)])
        solver = ParabolicCosetSolver(c4, frozenset({1}))
        assert solver.canonical((1,)) == ()
        assert solver.canonical((1, 3)) == (3,)  # the subgroup letter commutes out
        assert solver.canonical((2, 1)) == (2,)
        assert solver.canonical((1, 2)) == (1, 2)  # blocked: 1 and 2 do not commute
        # Coset invariance under right multiplication by subgroup letters.
        for w in [(), (2,), (1, 2), (3, 2, -4)]:
            assert solver.canonical(tuple(w) + (1,)) == solver.canonical(w)
            assert solver.canonical(tuple(w) + (-1,)) == solver.canonical(w)

    def test_parabolic_ball_builds(self):
        c4 = raag_graph(4, [(1, 3), (1, 4), (2, 3), (2, 4)])
        p = c4.presentation()
        g = build_coset_graph(p, [(1,)], [(1,), (2,), (3,), (4,)], budget=10, radius=2)
        assert g.kind == "ball"
        assert g.vertices[0] == ()
        assert g.vertex_of((1,)) == 0
        assert g.vertex_of((3,)) == g.vertex_of((1, 3))


class TestPathsAndTrim:
    def test_path_along_the_line(self):
        g = plane_line_ball()
        ctx = plane_context()
        path = connectedness_path((2, 2, 2), g, ctx)
        assert path.factorization == (2, 2, 2)
        assert path.vertices == ((), (2,), (2, 2), (2, 2, 2))
        assert all(path.edges_in_graph)

    def test_path_with_subgroup_detour_has_loop(self):
        g = plane_line_ball()
        path = connectedness_path((1, 2), g, plane_context())
        assert len(path.vertex_indices) == 3
        assert path.vertex_indices[0] == path.vertex_indices[1] == 0
        assert path.edges[0] == (0, 0, 0)

    def test_supplied_factorization_is_checked(self):
        g = plane_line_ball()
        ctx = plane_context()
        path = connectedness_path((2, 2), g, ctx, factorization=[2, 2])
        assert path.vertices[-1] == (2, 2)
        with pytest.raises(InputError):
            connectedness_path((2, 2), g, ctx, factorization=[2])
        with pytest.raises(InputError):
            connectedness_path((2, 2), g, ctx, factorization=[5])

    def test_path_leaving_the_ball_reports_truncation(self):
        g = plane_line_ball()
        with pytest.raises(TruncationTooSmallError):
            connectedness_path((2, 2, 2, 2), g, plane_context())

    def test_unreachable_target_exhausts_the_search(self):
        p = plane_presentation()
        g = build_coset_graph(p, [(1,)], [(1,)], budget=3, radius=2)
        with pytest.raises(FactorizationNotFoundError):
            connectedness_path((2,), g, plane_context(), bound=4)

    def test_stabilizer_witnesses_fix_both_endpoints(self):
        g = plane_line_ball()
        checks = g.check_stabilizer_witnesses()
        assert len(checks) == len(g.edges)
        assert all(checks)

    def test_stabilizer_witnesses_require_witness_data(self):
        g = build_coset_graph(plane_presentation(), [(1,)], [(1,), (2,)], budget=5)
        with pytest.raises(InputError):
            g.check_stabilizer_witnesses()

    def test_trim_keeps_only_used_orbits(self):
        p = plane_presentation()
        g = build_coset_graph(
            p, [(1,)], [(1,), (2,), (1, 2)], budget=5, radius=3
        )
        assert g.edge_orbits() == (0, 1, 2)
        trimmed, kept = trim_cocompact(g, [(1,), (2,)], plane_context())
        assert kept == (0, 1)
        assert trimmed.edge_orbits() == (0, 1)
        assert trimmed.vertices == g.vertices
        assert set(trimmed.edges) == {e for e in g.edges if e[2] != 2}

    def test_trim_of_minimal_generating_set_keeps_everything(self):
        g = plane_line_ball()
        trimmed, kept = trim_cocompact(g, [(1,), (2,)], plane_context())
        assert kept == (0, 1)
        assert set(trimmed.edges) == set(g.edges)


# -------------------------------------------------------------------- blow-up


class TestBlowUp:
    def build(self, inner_radius=3):
        outer = plane_outer_graph()
        inner = plane_inner_ball(inner_radius)
        return blow_up(
            outer,
            inner,
            plane_connectors(),
            plane_context(),
            [(1,)],
            plane_rewriter(),
            solver=plane_line_solver(),
        )

    def test_vertices_are_the_product_cosets(self):
        b = self.build()
        assert b.vertex_count_identity()
        assert len(b.vertices) == 2 * 7
        assert len(set(b.canonical_words)) == 14

    def test_blow_up_reproduces_the_direct_graph(self):
        b = self.build()
        direct = build_coset_graph(
            plane_presentation(),
            [(1,)],
            [(1,), (2, 2), (2,)],
            budget=3,
            radius=3,
        )
        comparison = compare_blowup_with_direct(b, direct)
        assert comparison.common_vertices == 13
        assert comparison.matches

    def test_connector_images_leaving_the_truncation_are_counted(self):
        b = self.build()
        assert b.dropped_edges >= 1

    def test_missing_connector_is_refused(self):
        outer = plane_outer_graph()
        inner = plane_inner_ball()
        with pytest.raises(InputError, match="missing connector"):
            blow_up(
                outer,
                inner,
                plane_connectors()[:1],
                plane_context(),
                [(1,)],
                plane_rewriter(),
            )

    def test_unproven_connector_witness_is_refused(self):
        from chainlab.qnormal import Connector

        outer = plane_outer_graph()
        inner = plane_inner_ball()
        bad = (
            plane_connectors()[0],
            Connector(
                outer_label=1,
                g_f=(2,),
                witness=(2,),  # y is not in <x>: the membership equality fails
                witness_in_subgroup=(1,),
                witness_in_conjugate=(1,),
            ),
        )
        with pytest.raises(InputError, match="witness"):
            blow_up(outer, inner, bad, plane_context(), [(1,)], plane_rewriter())

    def test_outer_graph_must_be_complete(self):
        inner = plane_inner_ball()
        ball = plane_line_ball()
        with pytest.raises(InputError, match="complete"):
            blow_up(
                ball,
                inner,
                plane_connectors(),
                plane_context(),
                [(1,)],
                plane_rewriter(),
            )


class TestGraphJson:
    def test_graph_dict_shape(self):
        g = plane_line_ball()
        d = graph_to_dict(g)
        assert d["completeness"] == "ball(3)"
        assert len(d["vertices"]) == 7
        assert len(d["edges"]) == 13
        assert {e["orbit"] for e in d["edges"]} == {0, 1}

    def test_complete_graph_dict(self):
        g = build_coset_graph(S3, [(2,)], [(1,), (2,)])
        d = graph_to_dict(g)
        assert d["completeness"] == "complete"
        assert d["radius"] is None
        assert d["frontier"] == []
