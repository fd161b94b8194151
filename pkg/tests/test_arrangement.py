"""
Tests for feasibility, boundedness, regularity and linkage of arrangements.
"""

from fractions import Fraction

import pytest

from hypertoric.models.entities import PolarizedArrangement, QuantizedPolarizedArrangement, SignVector
from hypertoric.services.arrangement import (
    bounded_feasible,
    bounded_signs,
    chamber_count_check,
    chamber_graph,
    chamber_graph_connected,
    equivalence_key,
    essentialize,
    feasible_signs,
    is_linked,
    is_regular,
    linked_polarization,
    linked_quantization,
    quantized_feasible_signs,
    regularity_report,
    restricted_normals,
    xi_regular,
)
from hypertoric.services.instances import diagonal_instance, diagonal_quantized
from hypertoric.utils.errors import DimensionMismatch, Inessential, NotRegular, ParameterMismatch


def _strings(signs):
    return [str(a) for a in signs]


def test_restricted_normals(lattice3):
    assert restricted_normals(lattice3) == [(1, 0), (-1, 1), (0, -1)]


def test_diagonal3_chamber_counts(diagonal3):
    """Three lines in the plane: 7 feasible chambers, 3 of them bounded."""
    feasible = feasible_signs(diagonal3)
    assert len(feasible) == 7
    assert SignVector.full("+++") in feasible
    assert SignVector.full("---") not in feasible
    assert _strings(bounded_feasible(diagonal3)) == ["+++", "-++", "--+"]


def test_diagonal3_bounded(lattice3):
    assert _strings(bounded_signs(lattice3, (1, 1))) == ["+++", "-++", "--+", "---"]


def test_canonical_order(diagonal3):
    assert _strings(feasible_signs(diagonal3)) == ["+++", "++-", "+-+", "+--", "-++", "-+-", "--+"]


def test_ambient_xi_restricts_to_lattice(lattice3, diagonal3):
    assert PolarizedArrangement.from_ambient_xi(lattice3, (1, 0, 0), (2, 1, 0)) == diagonal3
    with pytest.raises(DimensionMismatch):
        PolarizedArrangement.from_ambient_xi(lattice3, (1, 0, 0), (1, 1))


def test_diagonal2(diagonal2):
    assert _strings(feasible_signs(diagonal2)) == ["++", "+-", "-+"]
    assert _strings(bounded_feasible(diagonal2)) == ["++", "-+"]
    assert _strings(bounded_signs(diagonal2.lambda0, (0,))) == ["++", "--"]


def test_quantized_feasible(diagonal3_quantized):
    assert len(quantized_feasible_signs(diagonal3_quantized)) == 7


def test_determinant_one_feasible(theta_instance):
    """All h_i⁺ agree on 𝚲, so only the constant sign vectors are feasible."""
    assert _strings(quantized_feasible_signs(theta_instance)) == ["+++", "---"]
    report = chamber_count_check(theta_instance)
    assert report.count == 2
    assert report.bound == 4
    assert not report.equal
    assert not report.lambda_regular


def test_chamber_count_regular(diagonal3_quantized):
    report = chamber_count_check(diagonal3_quantized)
    assert report.count == report.bound == 7
    assert report.equal and report.lambda_regular


def test_chamber_count_check_asserts_regularity_equivalence(theta_instance, monkeypatch):
    """An equal count must coincide with 𝚲-regularity on an essential arrangement."""
    monkeypatch.setattr("hypertoric.services.arrangement.lambda_regular", lambda arrangement: True)
    with pytest.raises(AssertionError, match="lambda_regular"):
        chamber_count_check(theta_instance)


def test_chamber_count_check_asserts_bound(diagonal3_quantized, monkeypatch):
    monkeypatch.setattr("hypertoric.services.arrangement.independent_subset_count", lambda lattice, indices: 6)
    with pytest.raises(AssertionError, match="exceeds independent-set bound 6"):
        chamber_count_check(diagonal3_quantized)


def test_inessential_chamber_count(lattice3):
    half = QuantizedPolarizedArrangement(lattice3, (Fraction(1, 2),) * 3, (1, 1))
    assert quantized_feasible_signs(half) == (SignVector((), ""),)
    assert chamber_count_check(half).count == chamber_count_check(half).bound == 1
    assert bounded_feasible(half) == ()
    with pytest.raises(Inessential):
        essentialize(half)


def test_eta_regularity():
    """The three lines are concurrent exactly when the η-sum is zero."""
    assert regularity_report(diagonal_instance(3, 1)).eta_regular
    assert not regularity_report(diagonal_instance(3, 0)).eta_regular
    assert regularity_report(diagonal_instance(3, 1)).unimodular


def test_quantized_regularity():
    report = regularity_report(diagonal_quantized(3, 0))
    assert report.integral and report.lambda_regular and report.quasi_regular
    assert is_regular(diagonal_quantized(3, 1))
    assert is_regular(diagonal_quantized(3, -3))
    assert not is_regular(diagonal_quantized(3, -1))


def test_xi_regular(lattice3):
    assert xi_regular(lattice3, (1, 1))
    assert not xi_regular(lattice3, (1, -1))
    assert not xi_regular(lattice3, (1, 0))


def test_linkage(diagonal3):
    assert is_linked(diagonal3, diagonal_quantized(3, 1)).linked
    assert not is_linked(diagonal3, diagonal_quantized(3, -3)).linked
    with pytest.raises(ParameterMismatch):
        is_linked(diagonal3, QuantizedPolarizedArrangement(diagonal3.lambda0, (1, 0, 0), (2, 1)))
    with pytest.raises(NotRegular):
        is_linked(diagonal_instance(3, 0), diagonal_quantized(3, 1))


def test_linked_quantization_roundtrip(diagonal3):
    quantized = linked_quantization(diagonal3)
    assert quantized.is_integral
    assert set(quantized_feasible_signs(quantized)) == set(feasible_signs(diagonal3))
    polarized = linked_polarization(quantized)
    assert set(feasible_signs(polarized)) == set(feasible_signs(diagonal3))
    with pytest.raises(NotRegular):
        linked_quantization(diagonal_instance(3, 0))


def test_equivalence_key(diagonal3, lattice3):
    shifted = PolarizedArrangement(lattice3, (2, -1, 0), (1, 1))
    assert equivalence_key(shifted) == equivalence_key(diagonal3)
    assert equivalence_key(diagonal_instance(3, 2)) == equivalence_key(diagonal3)
    assert equivalence_key(diagonal_instance(3, -5)) != equivalence_key(diagonal3)


def test_essentialize_integral_is_identity(diagonal3_quantized):
    assert essentialize(diagonal3_quantized) is diagonal3_quantized


def test_essentialize_half_integral(line_lattice3):
    """One integral pair on a line: projecting keeps the chamber data."""
    arrangement = QuantizedPolarizedArrangement(line_lattice3, (Fraction(0), Fraction(1, 2), Fraction(1, 2)), (1,))
    reduced = essentialize(arrangement)
    assert reduced.n == 1
    assert _strings(quantized_feasible_signs(reduced)) == _strings(quantized_feasible_signs(arrangement))


def test_chamber_graph(diagonal3):
    graph = chamber_graph(diagonal3)
    assert graph.number_of_nodes() == 7
    assert chamber_graph_connected(diagonal3)
    assert graph.has_edge(SignVector.full("+++"), SignVector.full("-++"))
