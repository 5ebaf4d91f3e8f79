from fractions import Fraction as Fr

import pytest

from alcovelab import root_datum
from alcovelab.adlv import (
    DEFAULT_READING,
    GL2,
    SlopeClassGL2,
    adm_union_classification_gl2,
    grid,
    grid_row,
    is_conjectural,
    kappa_necessary,
    slope_classes_gl2,
    translation_leq_necessary,
    x_mu_b_nonempty,
    xw_nonempty_gl2,
)
from alcovelab.affweyl import AffElem, identity, omega_generator, translation
from alcovelab.kottwitz import sigma_class

half = Fr(1, 2)


def test_basic_odd_accepts_even_length():
    tau = omega_generator(GL2)
    assert xw_nonempty_gl2(SlopeClassGL2.of(half, half), tau)


def test_basic_even_accepts_identity():
    assert xw_nonempty_gl2(SlopeClassGL2.of(0, 0), identity(GL2))


def test_non_basic_rejects_short_elements():
    assert not xw_nonempty_gl2(SlopeClassGL2.of(1, 0), omega_generator(GL2))


def test_unknown_reading_rejected():
    with pytest.raises(ValueError):
        xw_nonempty_gl2(SlopeClassGL2.of(0, 0), identity(GL2), "other")


def test_slope_class_validation():
    with pytest.raises(ValueError):
        SlopeClassGL2.of(0, 1)
    with pytest.raises(ValueError):
        SlopeClassGL2.of(Fr(1, 3), Fr(2, 3))


def test_kappa_necessary(gsp4):
    assert kappa_necessary(GL2, (1, 0), sigma_class(GL2, (half, half)))
    assert not kappa_necessary(GL2, (1, 0), sigma_class(GL2, (0, 0)))
    assert kappa_necessary(gsp4, (1, 1, 0, 0), sigma_class(gsp4, (half,) * 4))


def test_translation_leq():
    assert translation_leq_necessary(GL2, (0, 0), identity(GL2))
    assert translation_leq_necessary(GL2, (0, 0), translation(GL2, (1, -1)))
    assert translation_leq_necessary(GL2, (1, 0), translation(GL2, (1, 0)))
    assert not translation_leq_necessary(GL2, (2, -1), translation(GL2, (1, 0)))


def test_translation_leq_orbit_form():
    t01 = translation(GL2, (0, 1))
    assert not translation_leq_necessary(GL2, (1, 0), t01)
    assert translation_leq_necessary(GL2, (1, 0), t01, orbit=True)


def test_x_mu_b():
    assert x_mu_b_nonempty(GL2, (1, 0), sigma_class(GL2, (half, half)))
    assert x_mu_b_nonempty(GL2, (1, 0), sigma_class(GL2, (1, 0)))
    assert not x_mu_b_nonempty(GL2, (1, 0), sigma_class(GL2, (2, -1)))


def test_conjectural_flag():
    assert not is_conjectural(GL2, (1, 0))
    assert is_conjectural(GL2, (2, 0))


def test_union_classification_examples():
    assert adm_union_classification_gl2((1, 0), SlopeClassGL2.of(half, half)) == [omega_generator(GL2)]
    assert set(adm_union_classification_gl2((1, 0), SlopeClassGL2.of(1, 0))) == {
        translation(GL2, (1, 0)), translation(GL2, (0, 1))}
    assert adm_union_classification_gl2((1, 0), SlopeClassGL2.of(Fr(3, 2), Fr(3, 2))) == []


def test_dominant_reading_keeps_only_the_dominant_translation():
    got = adm_union_classification_gl2((1, 0), SlopeClassGL2.of(1, 0), "dominant")
    assert got == [translation(GL2, (1, 0))]


def test_default_reading_is_orbit():
    assert DEFAULT_READING == "orbit"


@pytest.mark.parametrize("reading", ["orbit", "dominant"])
def test_grid_coherent(reading):
    rows = grid(3, reading)
    assert len(rows) == 10 * len(slope_classes_gl2(3))
    bad = [r.to_json() for r in rows if not r.coherent]
    assert bad == []


def test_grid_row_json():
    row = grid_row((1, 0), SlopeClassGL2.of(half, half))
    rep = row.to_json()
    assert rep["lambda"] == ["1/2", "1/2"] and rep["union"] and rep["in_bgmu"]
