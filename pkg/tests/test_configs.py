import csv

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from riscontam import (
    ConfigSequence,
    InsufficientPilotsError,
    build_identical,
    build_orthogonal,
    verify_sequences,
)
from riscontam.configs import export_csv


def test_identical_smallest_case():
    b1, b2 = build_identical(2, 1)
    assert np.allclose(b1.matrix, np.ones((2, 1)))
    assert np.array_equal(b1.matrix, b2.matrix)
    gram = b1.matrix.conj().T @ b1.matrix
    assert gram[0, 0] == pytest.approx(2.0)


def test_identical_gram():
    b1, _ = build_identical(4, 2)
    gram = b1.matrix.conj().T @ b1.matrix
    assert np.max(np.abs(gram - 4 * np.eye(2))) < 1e-12


def test_identical_rejects_small_l():
    with pytest.raises(InsufficientPilotsError):
        build_identical(3, 4)


def test_orthogonal_cross_gram():
    b1, b2 = build_orthogonal(4, 2)
    cross = b1.matrix.conj().T @ b2.matrix
    assert np.max(np.abs(cross)) < 1e-12


def test_orthogonal_paper_scale():
    b1, b2 = build_orthogonal(513, 256)
    for b in (b1, b2):
        gram = b.matrix.conj().T @ b.matrix
        assert np.max(np.abs(gram - 513 * np.eye(256))) < 1e-9
    assert np.max(np.abs(b1.matrix.conj().T @ b2.matrix)) < 1e-9


def test_orthogonal_rejects_small_l():
    with pytest.raises(InsufficientPilotsError):
        build_orthogonal(511, 256)


def test_verify_identical_pair_flags_cross():
    b1, b2 = build_identical(8, 3)
    report = verify_sequences(b1, b2)
    assert report.max_cross_gram == pytest.approx(8.0)
    assert not report.cross_orthogonal
    assert report.unit_modulus_ok and report.self_gram_ok


def test_verify_orthogonal_pair_passes():
    b1, b2 = build_orthogonal(16, 4)
    report = verify_sequences(b1, b2, tol=1e-9)
    assert report.unit_modulus_ok
    assert report.self_gram_ok
    assert report.cross_orthogonal


def test_verify_flags_non_unit_modulus():
    b1, b2 = build_orthogonal(4, 1)
    bad = b1.matrix.copy()
    bad[0, 0] = 0.5
    report = verify_sequences(ConfigSequence(bad, "identical"), b2)
    assert not report.unit_modulus_ok
    assert report.max_unit_modulus_dev == pytest.approx(0.5)


def test_verify_shape_mismatch():
    b1, _ = build_identical(4, 2)
    c1, _ = build_identical(8, 2)
    with pytest.raises(ValueError):
        verify_sequences(b1, c1)


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=1, max_value=64), st.data())
def test_builder_invariants_property(L, data):
    n_id = data.draw(st.integers(min_value=1, max_value=L))
    b1, b2 = build_identical(L, n_id)
    assert np.max(np.abs(np.abs(b1.matrix) - 1.0)) < 1e-12
    report = verify_sequences(b1, b2)
    assert report.self_gram_ok

    if L >= 2:
        n_orth = data.draw(st.integers(min_value=1, max_value=L // 2))
        o1, o2 = build_orthogonal(L, n_orth)
        report = verify_sequences(o1, o2)
        assert report.unit_modulus_ok
        assert report.self_gram_ok
        assert report.cross_orthogonal


def test_export_csv_round_trip(tmp_path):
    b1, _ = build_orthogonal(6, 2)
    path = tmp_path / "seq.csv"
    export_csv(b1, path)
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    assert len(rows) == 7  # header + L
    parsed = np.array(
        [[complex(*map(float, cell.split(","))) for cell in row] for row in rows[1:]]
    )
    assert np.array_equal(parsed, b1.matrix)
