import pytest

from app.exceptions import ViolationError
from app.models.lines import Line, LineLabel, LineSet
from app.models.tableau import Composition, compositions_of
from app.models.verification import CheckStatus, RankCertificate
from app.services.rank import rank_service
from app.services.verification import verification_service

from tests.conftest import WORKED, WORKED_ONES, WORKED_STARS, analyze


def covers_by_pair(analysis):
    covers = verification_service.chain_cover_check(analysis.diagram, analysis.tableau, analysis.lines)
    return {(c.pair.left, c.pair.right): c for c in covers}


def status(summary, name):
    return next(check.status for check in summary.checks if check.name == name)


def one_line(analysis, i, j):
    return Line(
        left_entry=i,
        right_entry=j,
        label=LineLabel.ONE,
        left_box=analysis.tableau.box_of(i),
        right_box=analysis.tableau.box_of(j),
    )


# ---- chain covers --------------------------------------------------------


def test_worked_example_chain_cover(worked):
    cover = covers_by_pair(worked)[(3, 7)]
    assert cover.chains == [[4, 8, 11, 13, 16], [5, 9, 19], [6, 10, 12, 14, 17], [7, 15, 18]]
    assert cover.star_line == (9, 19)


def test_worked_example_has_a_cover_per_pair(worked):
    assert sorted(covers_by_pair(worked)) == [(1, 8), (2, 5), (3, 7), (4, 6), (5, 10), (8, 9)]


@pytest.mark.parametrize(
    "parts, pair, chains, star",
    [
        ((2, 2, 1, 1), (1, 2), [[1, 3], [2, 4]], (2, 4)),
        ((2, 2, 1, 1), (3, 4), [[5, 6]], (5, 6)),
        ((2, 1, 1, 2, 2), (1, 4), [[1, 3, 6], [2, 4, 5]], (3, 6)),
        ((2, 1, 1, 2, 2), (4, 5), [[5, 7], [6, 8]], (6, 8)),
    ],
)
def test_small_chain_covers(parts, pair, chains, star):
    cover = covers_by_pair(analyze(*parts))[pair]
    assert cover.chains == chains
    assert cover.star_line == star


def test_chain_cover_fails_without_window_line():
    analysis = analyze(2, 2, 1, 1)
    with pytest.raises(ViolationError) as info:
        verification_service.chain_cover_check(
            analysis.diagram, analysis.tableau, analysis.lines.without((1, 3))
        )
    assert info.value.clause == "cover count"


def test_chain_cover_reports_ambiguity():
    analysis = analyze(2, 2, 1, 1)
    lines = LineSet(lines=analysis.lines.lines + [one_line(analysis, 1, 4), one_line(analysis, 2, 3)])
    with pytest.raises(ViolationError) as info:
        verification_service.chain_cover_check(analysis.diagram, analysis.tableau, lines)
    assert info.value.details["covers"] == 2
    assert len(info.value.covers) == 2


# ---- structural audit ----------------------------------------------------


def test_audit_records_hop_over():
    analysis = analyze(1, 1, 1)
    report = verification_service.structural_audit(
        analysis.diagram, analysis.tableau, analysis.extended, analysis.lines
    )
    assert [h.line for h in report.hop_overs] == [(1, 3)]
    assert report.pairs_checked == 2


def test_audit_worked_example(worked):
    report = verification_service.structural_audit(
        worked.diagram, worked.tableau, worked.extended, worked.lines
    )
    assert report.columns_checked == 10
    assert report.lines_checked == 24


def test_audit_catches_deleted_line_outside_windows(worked):
    with pytest.raises(ViolationError) as info:
        verification_service.structural_audit(
            worked.diagram, worked.tableau, worked.extended, worked.lines.without((18, 23))
        )
    assert info.value.check == "structural_audit"


@pytest.mark.parametrize("pair", sorted(WORKED_ONES | WORKED_STARS))
def test_suite_fails_on_every_single_deletion(worked, pair):
    summary = verification_service.run_suite(
        worked.composition, rank=False, lines=worked.lines.without(pair)
    )
    assert not summary.passed
    assert summary.failed


# ---- line invariants -------------------------------------------------------


def test_line_invariants_reject_second_right_line():
    analysis = analyze(2, 2, 1, 1)
    lines = LineSet(lines=analysis.lines.lines + [one_line(analysis, 1, 4)])
    with pytest.raises(ViolationError) as info:
        verification_service.check_line_invariants(
            analysis.diagram, analysis.tableau, lines, analysis.section
        )
    assert info.value.clause == "degree bound"


def test_line_invariants_reject_missing_star(worked):
    with pytest.raises(ViolationError) as info:
        verification_service.check_line_invariants(
            worked.diagram, worked.tableau, worked.lines.without((9, 19)), worked.section
        )
    assert info.value.clause == "star count"


# ---- equivalence and shape -------------------------------------------------


@pytest.mark.parametrize("parts", [WORKED, (2, 1, 1, 2, 1), (3, 1, 2, 1, 2, 1, 2)])
def test_equivalence(parts):
    assert verification_service.equivalence_check(Composition.of(*parts))


def test_propagation_shape_rejects_tampered_grid():
    analysis = analyze(2, 2, 1, 1)
    broken = analysis.extended.with_swapped((1, 1), (1, 2))
    with pytest.raises(ViolationError) as info:
        verification_service.check_propagation_shape(analysis.diagram, analysis.tableau, broken)
    assert info.value.clause == "restriction"


# ---- suite -----------------------------------------------------------------


def test_suite_passes_on_worked_example():
    summary = verification_service.run_suite(Composition.of(*WORKED), rank=False)
    assert summary.passed
    assert [c.name for c in summary.checks] == [
        "semistandard",
        "propagation_shape",
        "line_invariants",
        "chain_covers",
        "structural_audit",
        "composition_map",
        "equivalence",
        "rank",
    ]
    assert status(summary, "rank") == CheckStatus.SKIPPED


def test_suite_with_rank():
    summary = verification_service.run_suite(Composition.of(2, 1, 1, 2), trials=2)
    assert status(summary, "rank") == CheckStatus.PASS


def test_rank_skipped_above_matrix_cap(mocker):
    mocker.patch("app.services.verification.settings.rank_max_cells", 10)
    check_rank = mocker.spy(rank_service, "rank_check")
    summary = verification_service.run_suite(Composition.of(2, 1, 3), trials=1)
    result = next(c for c in summary.checks if c.name == "rank")
    assert result.status == CheckStatus.SKIPPED
    assert result.clause == "matrix too large"
    assert result.details == {"dim_m": 11, "dim_p": 22, "max_cells": 10}
    assert summary.passed
    check_rank.assert_not_called()


def test_suite_negative_control_single_deletion(worked):
    summary = verification_service.run_suite(
        worked.composition, rank=False, lines=worked.lines.without((18, 23))
    )
    assert not summary.passed
    assert status(summary, "structural_audit") == CheckStatus.FAIL
    assert status(summary, "chain_covers") == CheckStatus.PASS


def test_suite_negative_control_window_deletion(worked):
    summary = verification_service.run_suite(
        worked.composition, rank=False, lines=worked.lines.without((5, 9))
    )
    assert status(summary, "chain_covers") == CheckStatus.FAIL


def test_suite_negative_control_swapped_cells():
    analysis = analyze(2, 2, 1, 1)
    summary = verification_service.run_suite(
        analysis.composition,
        rank=False,
        extended=analysis.extended.with_swapped((1, 1), (1, 2)),
    )
    assert status(summary, "semistandard") == CheckStatus.FAIL


def test_rank_mismatch_is_investigated_not_failed(mocker):
    certificate = RankCertificate(
        composition=[1, 1, 1],
        prime=11,
        seed=1,
        trials=1,
        dim_m=3,
        dim_p=3,
        ranks=[2],
        expected_defect=2,
    )
    mocker.patch.object(rank_service, "rank_check", return_value=certificate)
    summary = verification_service.run_suite(Composition.of(1, 1, 1), trials=1)
    assert status(summary, "rank") == CheckStatus.INVESTIGATE
    assert summary.passed


@pytest.mark.parametrize("m", range(1, 9))
def test_exhaustive_small(m):
    for composition in compositions_of(m):
        summary = verification_service.run_suite(composition, rank=False)
        assert summary.passed, (composition.parts, [c.model_dump() for c in summary.failed])


@pytest.mark.slow
@pytest.mark.parametrize("m", range(9, 12))
def test_exhaustive_larger(m):
    for composition in compositions_of(m):
        summary = verification_service.run_suite(composition, rank=False)
        assert summary.passed, (composition.parts, [c.model_dump() for c in summary.failed])
