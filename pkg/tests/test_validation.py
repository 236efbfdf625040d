import math
from fractions import Fraction
from itertools import combinations

import pytest

from schottky.description import (
    DescriptionEntry,
    IntervalOnR,
    LabelKind,
    SchottkyDescription,
    build_f_family,
    build_gamma_ms,
    build_gamma_s,
)
from schottky.moebius import HalfCircle, MoebiusMap
from schottky.validation import pairwise_distances, separation_check, validate


GRID = [(2, 2, 6), (2, 3, 6), (3, 5, 4)]


def replace(desc: SchottkyDescription, index: int, **changes) -> SchottkyDescription:
    "Copy of desc with some fields of one entry replaced"
    entries = []
    for entry in desc:
        if entry.index == index:
            fields = dict(
                index=entry.index,
                label=entry.label,
                map=entry.map,
                circle=entry.circle,
                interval=entry.interval,
            )
            fields.update(changes)
            entry = DescriptionEntry(**fields)
        entries.append(entry)
    return SchottkyDescription(entries, desc.params)


@pytest.mark.parametrize("m, s, N", GRID)
def test_built_groups_pass(m, s, N):
    report = validate(build_gamma_ms(m, s, N), Fraction(1, 4))
    assert report.passed
    assert all(report.condition(i).passed for i in range(1, 6))
    assert report.min_inversive_distance == 7
    assert report.certified_epsilon == pytest.approx(math.acosh(7) / 2)
    assert report.failures == []


def test_gamma_s_passes():
    report = validate(build_gamma_s(4), "1/4")
    assert report.passed
    # C(f_1) and C(f_2) are the closest pair
    assert report.min_inversive_distance == Fraction(23, 2)


def test_f_family_passes():
    assert validate(build_f_family(5), Fraction(1, 4)).passed


def test_min_distance_scale_invariant():
    desc = build_gamma_ms(2, 2, 6)
    for entry in desc:
        if entry.label.kind is LabelKind.G and entry.index > 0:
            partner = next(
                e
                for e in desc
                if e.label.kind is LabelKind.H
                and e.index > 0
                and (e.label.k, e.label.n) == (entry.label.k, entry.label.n)
            )
            check = separation_check(entry.circle, partner.circle)
            assert check.neighborhoods_disjoint_for == pytest.approx(math.acosh(7) / 2)


def test_epsilon_too_large():
    report = validate(build_gamma_ms(2, 2, 2), 2)
    assert not report.passed
    assert report.condition(5).passed is False
    assert all(report.condition(i).passed for i in range(1, 5))


def test_epsilon_must_be_positive():
    with pytest.raises(ValueError):
        validate(build_gamma_s(2), 0)


def test_overlapping_circles():
    desc = SchottkyDescription.from_pairs([(0, 3, 1), (Fraction(3, 2), 10, 1)])
    report = validate(desc, Fraction(1, 4))
    assert not report.condition(1).passed
    assert not report.condition(5).passed
    witness = report.condition(1).witnesses[0]
    assert {witness.index, witness.other} == {1, 2}


def test_intervals_bounded_by_construction():
    desc = SchottkyDescription.from_pairs([(0, 3, 1), (Fraction(3, 2), 10, 1)])
    report = validate(desc, Fraction(1, 4))
    assert report.condition(2).passed
    assert report.condition(2).witnesses == ()
    with pytest.raises(ValueError, match="left < right"):
        IntervalOnR(4, 4)
    with pytest.raises(TypeError):
        IntervalOnR(0, float("inf"))


def test_wrong_circle():
    desc = replace(build_gamma_s(3), 2, circle=HalfCircle(5, 2), interval=IntervalOnR(3, 7))
    report = validate(desc, Fraction(1, 4))
    assert not report.condition(3).passed
    assert 2 in {w.index for w in report.condition(3).witnesses}


def test_interval_mismatch():
    desc = replace(build_gamma_s(3), 4, interval=IntervalOnR(9, 10))
    report = validate(desc, Fraction(1, 4))
    assert not report.condition(3).passed
    assert "interval endpoints" in report.condition(3).witnesses[0].reason


def test_inverse_mismatch():
    desc = replace(build_gamma_s(3), -2, map=MoebiusMap(5, 26, 1, Fraction(27, 5)))
    report = validate(desc, Fraction(1, 4))
    assert not report.condition(3).passed


def test_parabolic_generator():
    # z -> z / (z + 1) has C(f) centered at -1 with radius 1 and trace 2
    desc = SchottkyDescription.from_pairs([(-1, 1, 1)])
    assert desc[1].map == MoebiusMap(1, 0, 1, 1)
    report = validate(desc, Fraction(1, 4))
    assert not report.condition(4).passed
    assert "parabolic" in report.condition(4).witnesses[0].reason


def test_report_frame():
    frame = validate(build_gamma_s(3), Fraction(1, 4)).to_frame()
    assert list(frame.columns) == ["condition", "passed", "witnesses"]
    assert frame["passed"].all()
    assert len(frame) == 5


def test_report_dict():
    document = validate(build_gamma_ms(2, 2, 1), Fraction(1, 4)).to_dict()
    assert document["passed"] is True
    assert document["epsilon"] == "1/4"
    assert document["min_inversive_distance"] == "7"
    assert set(document["conditions"]) == {"1", "2", "3", "4", "5"}


def test_separation_counterexample():
    check = separation_check(HalfCircle(0, 1), HalfCircle(Fraction(5, 2), 1))
    assert check.centers_separated
    assert not check.strips_separated
    assert check.neighborhoods_disjoint_for == pytest.approx(math.acosh(17 / 8) / 2)


def test_separation_intersecting():
    check = separation_check(HalfCircle(0, 1), HalfCircle(1, 1))
    assert not check.centers_separated
    assert check.neighborhoods_disjoint_for == 0.0


@pytest.mark.parametrize("m, s, N", GRID)
def test_strips_separated_on_grid(m, s, N):
    desc = build_gamma_ms(m, s, N)
    for first, second in combinations(desc.circles(), 2):
        check = separation_check(first, second)
        assert check.strips_separated
        gap = abs(first.center - second.center)
        touching = gap == 2 * (first.radius + second.radius)
        if touching:
            assert first.radius == second.radius


def test_pairwise_distances():
    frame = pairwise_distances(build_gamma_s(3))
    assert len(frame) == 6
    assert list(frame.columns) == ["index", "other", "delta", "distance"]
    row = frame[(frame["index"] == 2) & (frame["other"] == 4)].iloc[0]
    assert row["delta"] == "23/2"
    assert row["distance"] == pytest.approx(math.acosh(23 / 2))
