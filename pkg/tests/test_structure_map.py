import numpy as np
import pytest

from duelqr.errors import UnsupportedVersion
from duelqr.qr_core import function_template
from duelqr.structure_map import (
    StructureMode, alignment_centers, is_in_finder, is_structural, stolen_cells,
    stolen_data_census, structural_map,
)
from duelqr.tables import EcLevel, block_structure, side_length

from oracles import ALIGN, is_function_slow, zigzag_slow

BOXES, TIGHT = StructureMode.BOXES, StructureMode.TIGHT

# frozen from the brute-force scans below
V7_STOLEN_MODULES = 135
V7H_BLOCK_OVERLAPS = (5, 5, 4, 7, 7)


@pytest.mark.parametrize("x,y,expected", [(0, 0, True), (11, 11, True), (12, 22, False),
                                          (12, 0, False), (34, 0, True), (44, 11, True),
                                          (0, 34, True), (11, 44, True), (33, 5, False)])
def test_is_in_finder(x, y, expected):
    assert is_in_finder(x, y, 45) is expected


def test_timing_lines():
    for mode in StructureMode:
        assert all(is_structural(6, i, 7, mode) and is_structural(i, 6, 7, mode) for i in range(45))


def test_classifier_examples():
    assert is_structural(6, 20, 7, BOXES)
    for mode in StructureMode:
        assert is_structural(22, 22, 7, mode)
    assert not is_structural(20, 15, 7, TIGHT)
    assert not is_function_slow(15, 20, 7)


@pytest.mark.parametrize("version,expected", [(1, []), (2, [6, 18]), (7, [6, 22, 38])])
def test_alignment_centers(version, expected):
    assert alignment_centers(version) == expected == ALIGN[version]


def test_alignment_centers_unsupported():
    with pytest.raises(UnsupportedVersion):
        alignment_centers(11)


@pytest.mark.parametrize("version", range(1, 11))
def test_boxes_superset_of_tight(version):
    boxes = structural_map(version, BOXES)
    tight = structural_map(version, TIGHT)
    assert not np.any(tight & ~boxes)


@pytest.mark.parametrize("version", range(1, 11))
def test_tight_is_exact_function_map(version):
    size = side_length(version)
    oracle = np.array([[is_function_slow(r, c, version) for c in range(size)] for r in range(size)])
    assert np.array_equal(structural_map(version, TIGHT), oracle)


@pytest.mark.parametrize("version", [4, 7, 10])
def test_finder_box_shapes(version):
    size = side_length(version)
    box = np.array([[is_in_finder(x, y, size) for x in range(size)] for y in range(size)])
    # top-right and bottom-left boxes are transposes of each other
    assert np.array_equal(box, box.T)
    # anchors sit at each finder's top-left corner, so the clamped boxes are
    # 12 wide at the top-left but only 11 columns at the top-right
    assert box[:12, :12].all() and not box[12:size - 11, :].any()
    assert box[:12, size - 11:].all() and not box[:12, 12:size - 11].any()
    assert np.array_equal(box[:12, size - 11:], box[:12, 1:12][:, ::-1])


def _census_oracle(version, ec):
    size = side_length(version)
    stolen = [(r, c) for r in range(size) for c in range(size)
              if is_structural(c, r, version, BOXES) and not is_function_slow(r, c, version)]
    bs = block_structure(version, ec)
    lengths = bs.data_lengths()
    # rebuild the interleave order independently
    origin = [(b, i) for i in range(max(lengths)) for b, n in enumerate(lengths) if i < n]
    origin += [(b, n + i) for i in range(bs.ec_codewords_per_block) for b, n in enumerate(lengths)]
    order = zigzag_slow(version)
    touched = {origin[k // 8] for k, cell in enumerate(order) if k // 8 < len(origin) and cell in set(stolen)}
    per_block = [sum(1 for b, _ in touched if b == blk) for blk in range(len(lengths))]
    return len(stolen), per_block


def test_v7h_census_against_brute_force():
    count, per_block = _census_oracle(7, EcLevel.H)
    census = stolen_data_census(7, EcLevel.H)
    assert census.stolen_modules == count == V7_STOLEN_MODULES
    assert census.block_overlaps == tuple(per_block) == V7H_BLOCK_OVERLAPS
    assert census.worst_block_codeword_overlap == 7
    assert census.worst_block_codeword_overlap <= block_structure(7, EcLevel.H).ec_codewords_per_block // 2
    assert census.within_budget


@pytest.mark.parametrize("version,ec", [(1, EcLevel.H), (5, EcLevel.Q), (10, EcLevel.L)])
def test_census_matches_brute_force_elsewhere(version, ec):
    count, per_block = _census_oracle(version, ec)
    census = stolen_data_census(version, ec)
    assert (census.stolen_modules, list(census.block_overlaps)) == (count, per_block)


@pytest.mark.parametrize("version", range(1, 11))
def test_tight_steals_nothing(version):
    for ec in EcLevel:
        census = stolen_data_census(version, ec, TIGHT)
        assert census.stolen_modules == 0
        assert census.worst_block_codeword_overlap == 0
    assert not stolen_cells(version, TIGHT).any()


def test_small_versions_exceed_budget():
    # the 12x12 corner boxes swallow most of a version-1 symbol's data
    assert not stolen_data_census(1, EcLevel.H).within_budget


def test_census_text():
    text = stolen_data_census(7, "H").to_text()
    assert "stolen_modules=135" in text and "mode=boxes" in text


def test_out_of_grid():
    with pytest.raises(IndexError):
        is_structural(45, 0, 7)


def test_function_template_unchanged_by_classification():
    before = function_template(7)[1].copy()
    structural_map.cache_clear()
    structural_map(7, BOXES)
    assert np.array_equal(function_template(7)[1], before)
