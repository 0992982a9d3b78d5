import math

import pytest

from thzlink.constants import AVOGADRO, LIGHT_SPEED
from thzlink.errors import CatalogParseError, ValidationError
from thzlink.spectro import (DEFAULT_INTENSITY_FLOOR, Medium, SpectralLine,
                             load_medium, parse_line_catalog, serialize_line)


def make_record(gas=1, iso=1, nu=33.3564, s=1.650e-19, gair=0.0945,
                gself=0.452, n=0.75, delta=-0.0021):
    """Independent record builder (not serialize_line) used as the oracle."""
    def strip0(value, width, decimals):
        text = f"{value:.{decimals}f}"
        if len(text) > width:
            text = text.replace("0.", ".", 1)
        return text.rjust(width)

    rec = (f"{gas:2d}{iso:1d}{nu:12.6f}{s:10.3E}{1.0:10.3E}"
           f"{strip0(gair, 5, 4)}{strip0(gself, 5, 3)}{100.0:10.4f}"
           f"{strip0(n, 4, 2)}{strip0(delta, 8, 6)}")
    rec += " " * (160 - len(rec))
    assert len(rec) == 160
    return rec


def test_wavenumber_conversion():
    # 100 * 2.9979e8 * 33.3564 computed by hand
    (line,) = parse_line_catalog(make_record(), {(1, 1)})
    assert line.f_c0 == pytest.approx(9.999915156e11, rel=1e-9)
    assert line.f_c0 == pytest.approx(100.0 * LIGHT_SPEED * 33.3564, rel=1e-15)


def test_all_fields_converted():
    (line,) = parse_line_catalog(make_record(), {(1, 1)})
    k = 100.0 * LIGHT_SPEED
    assert line.gas_id == 1 and line.iso_id == 1
    assert line.alpha_air == pytest.approx(0.0945 * k, rel=1e-12)
    assert line.alpha_self == pytest.approx(0.452 * k, rel=1e-12)
    assert line.temp_exponent == 0.75
    assert line.pressure_shift == pytest.approx(-0.0021 * k, rel=1e-12)
    # intensity: cm^-1/(molec cm^-2) * 100c * 1e-4 * N_A
    assert line.line_intensity == pytest.approx(
        1.650e-19 * k * 1e-4 * AVOGADRO, rel=1e-12)


def test_species_filter_excludes_unwanted():
    text = make_record(gas=1) + "\n" + make_record(gas=2)
    lines = parse_line_catalog(text, {(1, 1)})
    assert [ln.gas_id for ln in lines] == [1]


def test_parse_then_filter_equals_filter_then_parse(catalog_text):
    broad = parse_line_catalog(catalog_text, {(1, 1), (7, 1)},
                               intensity_floor=0.0)
    narrow = parse_line_catalog(catalog_text, {(7, 1)}, intensity_floor=0.0)
    assert [ln for ln in broad if ln.species == (7, 1)] == narrow


def test_wrong_width_record_is_positioned_error():
    bad = make_record()[:-1]  # 159 characters
    with pytest.raises(CatalogParseError) as excinfo:
        parse_line_catalog(make_record() + "\n" + bad, {(1, 1)})
    assert excinfo.value.line_number == 2
    assert "159" in str(excinfo.value)


@pytest.mark.parametrize("span, name", [
    ((4, 15), "wavenumber"),
    ((16, 25), "intensity"),
    ((36, 40), "alpha_air"),
    ((60, 67), "pressure_shift"),
])
def test_non_numeric_field_names_line_and_span(span, name):
    rec = list(make_record())
    rec[span[0] - 1:span[1]] = "x" * (span[1] - span[0] + 1)
    with pytest.raises(CatalogParseError) as excinfo:
        parse_line_catalog("".join(rec), {(1, 1)})
    assert excinfo.value.line_number == 1
    assert excinfo.value.col_span == span
    assert name in str(excinfo.value)


def test_blank_field_is_error():
    rec = list(make_record())
    rec[3:15] = " " * 12
    with pytest.raises(CatalogParseError) as excinfo:
        parse_line_catalog("".join(rec), {(1, 1)})
    assert excinfo.value.col_span == (4, 15)


def test_invalid_physical_value_is_positioned_error():
    with pytest.raises(CatalogParseError) as excinfo:
        parse_line_catalog(make_record(gair=0.0), {(1, 1)})
    assert excinfo.value.line_number == 1
    assert "alpha_air" in str(excinfo.value)


def test_missing_species_warns():
    with pytest.warns(UserWarning, match=r"\(99, 1\)"):
        lines = parse_line_catalog(make_record(), {(1, 1), (99, 1)})
    assert len(lines) == 1


def test_intensity_floor(catalog_text):
    kept = parse_line_catalog(catalog_text, {(1, 1)})
    everything = parse_line_catalog(catalog_text, {(1, 1)},
                                    intensity_floor=0.0)
    assert len(everything) == len(kept) + 1  # one sub-floor fixture line
    dropped = set(ln.f_c0 for ln in everything) - set(ln.f_c0 for ln in kept)
    (f_c0,) = dropped
    assert f_c0 == pytest.approx(45.0 * 100.0 * LIGHT_SPEED, rel=1e-12)
    assert DEFAULT_INTENSITY_FLOOR == 1e-30


def test_conversion_is_exactly_linear():
    (one,) = parse_line_catalog(make_record(nu=33.3564), {(1, 1)})
    (two,) = parse_line_catalog(make_record(nu=66.7128), {(1, 1)})
    assert two.f_c0 == 2.0 * one.f_c0


def test_round_trip_whole_catalog(catalog_text, full_catalog):
    source_records = [r for r in catalog_text.split("\n") if r]
    assert len(source_records) >= len(full_catalog)
    for line in full_catalog:
        record = serialize_line(line)
        assert len(record) == 160
        (again,) = parse_line_catalog(record, {line.species},
                                      intensity_floor=0.0)
        assert again == line


def test_round_trip_preserves_source_text(catalog_text):
    # consumed column spans survive byte-for-byte on the bundled catalog
    spans = [(1, 2), (3, 3), (4, 15), (16, 25), (36, 40), (41, 45),
             (56, 59), (60, 67)]
    for record in catalog_text.split("\n"):
        if not record:
            continue
        species = (int(record[0:2]), int(record[2:3]))
        (line,) = parse_line_catalog(record, {species}, intensity_floor=0.0)
        rendered = serialize_line(line)
        for lo, hi in spans:
            assert rendered[lo - 1:hi] == record[lo - 1:hi], (lo, hi, record)


def test_load_medium_filters_lines(full_catalog):
    medium = load_medium(
        {"epsilon_r": 1.0,
         "composition": [{"gas_id": 7, "iso_id": 1, "q": 0.2}]},
        full_catalog)
    assert medium.species == {(7, 1)}
    assert all(ln.species == (7, 1) for ln in medium.lines)
    assert len(medium.lines) == 4


def test_load_medium_reports_every_violation(full_catalog):
    with pytest.raises(ValidationError) as excinfo:
        load_medium(
            {"epsilon_r": 0.5,
             "composition": [{"gas_id": 1, "iso_id": 1, "q": 1.2},
                             {"gas_id": 7, "iso_id": 1, "q": 0.9}]},
            full_catalog)
    text = str(excinfo.value)
    assert "epsilon_r" in text
    assert "1.2" in text
    # q=1.2 is out of range and epsilon_r < 1; both reported at once
    assert len(excinfo.value.violations) >= 2


def test_load_medium_rejects_sum_above_one(full_catalog):
    with pytest.raises(ValidationError, match="sum"):
        load_medium(
            {"epsilon_r": 1.0,
             "composition": [{"gas_id": 1, "iso_id": 1, "q": 0.7},
                             {"gas_id": 7, "iso_id": 1, "q": 0.6}]},
            full_catalog)


def test_load_medium_rejects_duplicates(full_catalog):
    with pytest.raises(ValidationError, match="duplicate"):
        load_medium(
            {"epsilon_r": 1.0,
             "composition": [{"gas_id": 1, "iso_id": 1, "q": 0.1},
                             {"gas_id": 1, "iso_id": 1, "q": 0.2}]},
            full_catalog)


def test_empty_composition_is_valid_baseline(full_catalog):
    medium = load_medium({"epsilon_r": 1.0, "composition": []}, full_catalog)
    assert medium.lines == ()
    assert medium.composition == {}


def test_medium_rejects_foreign_lines(full_catalog):
    oxygen_lines = tuple(ln for ln in full_catalog if ln.species == (7, 1))
    with pytest.raises(ValidationError, match="absent"):
        Medium(composition={(1, 1): 0.1}, epsilon_r=1.0, lines=oxygen_lines)


def test_spectral_line_invariants():
    with pytest.raises(ValidationError):
        SpectralLine(gas_id=1, iso_id=1, f_c0=-1.0, line_intensity=1.0,
                     alpha_air=1.0, alpha_self=1.0, temp_exponent=0.5,
                     pressure_shift=0.0)
    with pytest.raises(ValidationError):
        SpectralLine(gas_id=1, iso_id=1, f_c0=1e12, line_intensity=-1.0,
                     alpha_air=1.0, alpha_self=1.0, temp_exponent=0.5,
                     pressure_shift=0.0)
