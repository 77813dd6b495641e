import pytest
from hypothesis import given, settings as hsettings

from app.models.lines import CellLabel, LineLabel
from app.services.extraction import extraction_service

from tests.conftest import WORKED_ONES, WORKED_STARS, analyze, compositions


def line_pairs(analysis, label):
    return set(analysis.lines.pairs(label))


def test_worked_example_lines(worked):
    assert line_pairs(worked, LineLabel.ONE) == WORKED_ONES
    assert line_pairs(worked, LineLabel.STAR) == WORKED_STARS


def test_worked_example_quadruplets(worked):
    quadruplets = [q.as_tuple() for q in worked.section.quadruplets]
    assert quadruplets == [(5, 9, 12, 14), (5, 9, 15, 18), (17, 20, 21, 22)]
    assert worked.section.evs_extras == [(9, 14), (9, 18), (20, 22)]


@pytest.mark.parametrize(
    "parts, ones, stars",
    [
        ((2, 2, 1, 1), {(1, 3), (3, 5), (4, 6)}, {(2, 4), (5, 6)}),
        ((1, 1), set(), {(1, 2)}),
        ((2, 1, 1, 2), {(1, 3), (2, 4), (4, 5)}, {(3, 4), (3, 6)}),
        ((2, 1, 1, 2, 2), {(1, 3), (2, 4), (3, 8), (4, 5), (5, 7)}, {(3, 4), (3, 6), (6, 8)}),
        ((2, 1, 3), {(1, 3), (2, 5), (3, 4)}, set()),
        ((2, 1, 2), {(3, 4), (1, 3)}, {(2, 5)}),
        ((2, 1, 1), {(2, 4), (1, 3)}, {(3, 4)}),
        (
            (3, 1, 2, 1, 2),
            {(7, 8), (6, 7), (4, 5), (1, 4), (2, 6), (3, 9)},
            {(5, 7), (5, 9)},
        ),
        (
            (1, 2, 1, 1, 1, 2, 3),
            {(1, 2), (3, 4), (6, 7), (7, 9), (8, 10), (2, 5), (4, 6), (5, 11)},
            {(2, 4), (4, 5), (5, 6), (5, 8)},
        ),
    ],
)
def test_line_families(parts, ones, stars):
    analysis = analyze(*parts)
    assert line_pairs(analysis, LineLabel.ONE) == ones
    assert line_pairs(analysis, LineLabel.STAR) == stars


@pytest.mark.parametrize("parts", [(1, 2, 3), (3, 1, 2), (4, 2), (2, 4, 1, 3)])
def test_distinct_heights_have_no_star_lines(parts):
    analysis = analyze(*parts)
    assert analysis.pairs == []
    assert line_pairs(analysis, LineLabel.STAR) == set()
    assert analysis.section.quadruplets == []


def test_three_single_boxes():
    analysis = analyze(1, 1, 1)
    assert analysis.section.e_coords == [(1, 3)]
    assert analysis.section.v_coords == [(1, 2), (2, 3)]
    assert analysis.section.quadruplets == []


def test_line_boxes_are_numbered_boxes(worked):
    for line in worked.lines.lines:
        assert worked.tableau.box_of(line.left_entry) == line.left_box
        assert worked.tableau.box_of(line.right_entry) == line.right_box


def test_star_line_targets_step_above_landing(worked):
    # 9 descends into columns 5, 6 and 7
    targets = [line.right_entry for line in worked.lines.right_going(9, LineLabel.STAR)]
    assert targets == [12, 15, 19]


def test_vs_diagnostic(worked):
    diagnostics = extraction_service.vs_diagnostic(worked.section)
    assert [d.extra for d in diagnostics] == [(9, 14), (9, 18), (20, 22)]
    assert all(d.enlarges_span for d in diagnostics)
    assert diagnostics[0].shares_leading_line_with == [(5, 9, 15, 18)]
    assert diagnostics[2].shares_leading_line_with == []


def test_evs_span(worked):
    span = worked.section.evs_span
    assert len(span) == 21
    assert (9, 14) in span and (21, 22) in span


def test_matrix_pattern(worked):
    pattern = extraction_service.matrix_pattern(worked.section, worked.composition)
    assert pattern.blocks == [1, 2, 4, 3, 2, 3, 4, 1, 1, 2]
    assert pattern.at(9, 12) == CellLabel.STAR
    assert pattern.at(9, 14) == CellLabel.ONE_VS
    assert pattern.at(21, 22) == CellLabel.ONE
    assert pattern.at(1, 1) == CellLabel.ZERO
    assert len(pattern.nonzero()) == 18 + 6 + 3

    plain = extraction_service.matrix_pattern(worked.section, worked.composition, include_vs=False)
    assert plain.at(9, 14) == CellLabel.ZERO
    assert len(plain.nonzero()) == 24


@hsettings(max_examples=80, deadline=None)
@given(compositions)
def test_line_family_shape(composition):
    analysis = analyze(*composition.parts)
    ones = analysis.lines.pairs(LineLabel.ONE)
    stars = analysis.lines.pairs(LineLabel.STAR)
    assert not set(ones) & set(stars)
    assert len(stars) == len(analysis.pairs)
    assert len(analysis.section.quadruplets) <= len(stars)
    for entry in range(1, composition.n + 1):
        assert len(analysis.lines.right_going(entry, LineLabel.ONE)) <= 1
        assert len(analysis.lines.left_going(entry, LineLabel.ONE)) <= 1
        assert len(analysis.lines.left_going(entry, LineLabel.STAR)) <= 1


@hsettings(max_examples=60, deadline=None)
@given(compositions)
def test_prefix_lines_are_the_lines_ending_inside_the_prefix(composition):
    full = analyze(*composition.parts).lines
    for j in range(1, composition.k + 1):
        prefix = analyze(*composition.prefix(j).parts).lines
        expected = {(line.pair, line.label) for line in full.lines if line.right_box.col <= j}
        assert {(line.pair, line.label) for line in prefix.lines} == expected
