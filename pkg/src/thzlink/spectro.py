"""Spectroscopic line-catalog ingestion and medium composition.

The line catalog is a text file of fixed-width 160-character records, one
transition per line. Only eight fields are consumed (1-based columns):

    molecule id        [1-2]    integer
    isotopologue id    [3]      integer
    wavenumber         [4-15]   cm^-1
    intensity          [16-25]  cm^-1 / (molecule cm^-2)
    air half-width     [36-40]  cm^-1 / atm
    self half-width    [41-45]  cm^-1 / atm
    temperature exp.   [56-59]  dimensionless
    pressure shift     [60-67]  cm^-1 / atm

All spectral quantities are converted to SI at ingestion (wavenumbers and
pressure-normalized widths/shifts to Hz via 100*c, intensities to
m^2 Hz/mol), so downstream formulas carry no unit patch factors.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

from .constants import AVOGADRO, WAVENUMBER_TO_HZ
from .errors import CatalogParseError, ValidationError

RECORD_WIDTH = 160

# Intensity: cm^-1/(molecule cm^-2) -> m^2 Hz/mol
#   100*c      converts cm^-1 to Hz
#   1e-4 * N_A converts cm^2/molecule to m^2/mol
INTENSITY_TO_SI = WAVENUMBER_TO_HZ * 1.0e-4 * AVOGADRO

# Lines weaker than this (catalog intensity units) are dropped at ingestion.
DEFAULT_INTENSITY_FLOOR = 1.0e-30

# Consumed fields: name -> (1-based inclusive column span, kind)
_FIELDS = {
    "gas_id": ((1, 2), "int"),
    "iso_id": ((3, 3), "int"),
    "wavenumber": ((4, 15), "float"),
    "intensity": ((16, 25), "float"),
    "alpha_air": ((36, 40), "float"),
    "alpha_self": ((41, 45), "float"),
    "temp_exponent": ((56, 59), "float"),
    "pressure_shift": ((60, 67), "float"),
}


@dataclass(frozen=True)
class SpectralLine:
    """One spectroscopic transition of an isotopologue, in SI units.

    Attributes:
        gas_id: catalog molecule number.
        iso_id: isotopologue number within the gas.
        f_c0: resonant frequency at reference pressure [Hz].
        line_intensity: line density [m^2 Hz/mol].
        alpha_air: air broadening coefficient [Hz/atm].
        alpha_self: self broadening coefficient [Hz/atm].
        temp_exponent: temperature broadening exponent (dimensionless).
        pressure_shift: linear pressure shift [Hz/atm].
    """

    gas_id: int
    iso_id: int
    f_c0: float
    line_intensity: float
    alpha_air: float
    alpha_self: float
    temp_exponent: float
    pressure_shift: float

    def __post_init__(self):
        problems = []
        if not self.f_c0 > 0:
            problems.append(f"f_c0 must be > 0, got {self.f_c0!r}")
        if not self.alpha_air > 0:
            problems.append(f"alpha_air must be > 0, got {self.alpha_air!r}")
        if self.alpha_self < 0:
            problems.append(
                f"alpha_self must be >= 0, got {self.alpha_self!r}")
        if self.line_intensity < 0:
            problems.append(
                f"line_intensity must be >= 0, got {self.line_intensity!r}")
        if problems:
            raise ValidationError(problems)

    @property
    def species(self) -> tuple[int, int]:
        return (self.gas_id, self.iso_id)


def _slice(record: str, span: tuple[int, int]) -> str:
    lo, hi = span
    return record[lo - 1:hi]


def _parse_field(record: str, name: str, line_number: int):
    span, kind = _FIELDS[name]
    raw = _slice(record, span)
    text = raw.strip()
    if not text:
        raise CatalogParseError(f"blank {name} field", line_number, span)
    try:
        return int(text) if kind == "int" else float(text)
    except ValueError:
        raise CatalogParseError(
            f"non-numeric {name} field {raw!r}", line_number, span) from None


def _parse_record(record: str, line_number: int) -> tuple[tuple[int, int], float, SpectralLine]:
    if len(record) != RECORD_WIDTH:
        raise CatalogParseError(
            f"record is {len(record)} characters, expected {RECORD_WIDTH}",
            line_number)
    values = {name: _parse_field(record, name, line_number)
              for name in _FIELDS}
    raw_intensity = values["intensity"]
    try:
        line = SpectralLine(
            gas_id=values["gas_id"],
            iso_id=values["iso_id"],
            f_c0=values["wavenumber"] * WAVENUMBER_TO_HZ,
            line_intensity=raw_intensity * INTENSITY_TO_SI,
            alpha_air=values["alpha_air"] * WAVENUMBER_TO_HZ,
            alpha_self=values["alpha_self"] * WAVENUMBER_TO_HZ,
            temp_exponent=values["temp_exponent"],
            pressure_shift=values["pressure_shift"] * WAVENUMBER_TO_HZ,
        )
    except ValidationError as exc:
        raise CatalogParseError(str(exc), line_number) from None
    return (values["gas_id"], values["iso_id"]), raw_intensity, line


def parse_line_catalog(
    raw_text: str,
    wanted: set[tuple[int, int]],
    intensity_floor: float = DEFAULT_INTENSITY_FLOOR,
) -> list[SpectralLine]:
    """Parse fixed-width catalog records for the wanted species.

    Args:
        raw_text: newline-delimited 160-character records.
        wanted: set of (gas_id, iso_id) species to keep.
        intensity_floor: drop lines weaker than this many catalog intensity
            units (set to 0 to keep everything).

    Returns:
        SpectralLine list in catalog order, SI units.

    Raises:
        CatalogParseError: on the first malformed record, carrying the
            1-based line number and, where applicable, the column span.

    Emits a UserWarning for any wanted species with no surviving records.
    """
    lines: list[SpectralLine] = []
    seen: set[tuple[int, int]] = set()
    for line_number, record in enumerate(raw_text.split("\n"), start=1):
        if not record:
            continue  # blank separator, e.g. trailing newline
        species, raw_intensity, line = _parse_record(record, line_number)
        if species not in wanted:
            continue
        if raw_intensity < intensity_floor:
            continue
        seen.add(species)
        lines.append(line)
    for species in sorted(wanted - seen):
        warnings.warn(
            f"no catalog records for species {species}", stacklevel=2)
    return lines


def _fixed_decimal(value: float, width: int, decimals: int) -> str:
    """Format to a fixed column width, dropping the leading integer zero
    (Fortran style) when needed to make room for the sign."""
    text = f"{value:.{decimals}f}"
    if len(text) > width:
        if text.startswith("0."):
            text = text[1:]
        elif text.startswith("-0."):
            text = "-" + text[2:]
    if len(text) > width:
        raise ValueError(
            f"value {value!r} does not fit in {width}.{decimals} format")
    return text.rjust(width)


def serialize_line(line: SpectralLine) -> str:
    """Render a SpectralLine back to a 160-character catalog record.

    The eight consumed fields are emitted at catalog precision; ignored
    columns are blank. Re-parsing the result reproduces the line exactly.
    """
    record = [" "] * RECORD_WIDTH

    def put(span, text):
        lo, hi = span
        width = hi - lo + 1
        assert len(text) == width
        record[lo - 1:hi] = text

    put(_FIELDS["gas_id"][0], f"{line.gas_id:2d}")
    put(_FIELDS["iso_id"][0], f"{line.iso_id:1d}")
    put(_FIELDS["wavenumber"][0], f"{line.f_c0 / WAVENUMBER_TO_HZ:12.6f}")
    put(_FIELDS["intensity"][0],
        f"{line.line_intensity / INTENSITY_TO_SI:10.3E}")
    put(_FIELDS["alpha_air"][0],
        _fixed_decimal(line.alpha_air / WAVENUMBER_TO_HZ, 5, 4))
    put(_FIELDS["alpha_self"][0],
        _fixed_decimal(line.alpha_self / WAVENUMBER_TO_HZ, 5, 3))
    put(_FIELDS["temp_exponent"][0],
        _fixed_decimal(line.temp_exponent, 4, 2))
    put(_FIELDS["pressure_shift"][0],
        _fixed_decimal(line.pressure_shift / WAVENUMBER_TO_HZ, 8, 6))
    return "".join(record)


@dataclass(frozen=True)
class Medium:
    """Gas mixture plus the dielectric constant of the fill material.

    composition maps (gas_id, iso_id) to its mixing ratio q in [0, 1]; the
    ratios may sum to less than 1, the remainder being non-absorbing
    background. ``lines`` holds the catalog lines of exactly the species
    present in the composition.
    """

    composition: dict[tuple[int, int], float]
    epsilon_r: float = 1.0
    lines: tuple[SpectralLine, ...] = ()

    def __post_init__(self):
        problems = []
        total = 0.0
        for species, q in self.composition.items():
            if not 0.0 <= q <= 1.0:
                problems.append(
                    f"mixing ratio for {species} must be in [0, 1], got {q!r}")
            else:
                total += q
        if total > 1.0 + 1e-12:
            problems.append(f"mixing ratios sum to {total!r} > 1")
        if not self.epsilon_r >= 1.0:
            problems.append(
                f"epsilon_r must be >= 1, got {self.epsilon_r!r}")
        for line in self.lines:
            if line.species not in self.composition:
                problems.append(
                    f"line at {line.f_c0:.6e} Hz belongs to species "
                    f"{line.species} absent from the composition")
        if problems:
            raise ValidationError(problems)
        object.__setattr__(self, "lines", tuple(self.lines))

    @property
    def species(self) -> set[tuple[int, int]]:
        return set(self.composition)

    def q_for(self, line: SpectralLine) -> float:
        return self.composition[line.species]

    def without_absorption(self) -> "Medium":
        """The conventional pure-propagation baseline: same permittivity,
        empty composition, hence kappa = 0 everywhere."""
        return Medium(composition={}, epsilon_r=self.epsilon_r, lines=())


def load_medium(config_doc: dict, catalog: list[SpectralLine]) -> Medium:
    """Build a Medium from a parsed config document and a parsed catalog.

    The document must carry ``epsilon_r`` (number) and ``composition``
    (array of {gas_id, iso_id, q}). Catalog lines are filtered down to the
    species named in the composition.

    Raises:
        ValidationError: listing every violation found, both structural
            (missing/duplicate entries) and value-range ones.
    """
    problems = []
    if "epsilon_r" not in config_doc:
        problems.append("missing key 'epsilon_r'")
    if "composition" not in config_doc:
        problems.append("missing key 'composition'")
    if problems:
        raise ValidationError(problems)

    composition: dict[tuple[int, int], float] = {}
    for i, entry in enumerate(config_doc["composition"]):
        missing = {"gas_id", "iso_id", "q"} - set(entry)
        if missing:
            problems.append(
                f"composition[{i}] missing keys {sorted(missing)}")
            continue
        species = (int(entry["gas_id"]), int(entry["iso_id"]))
        if species in composition:
            problems.append(f"duplicate composition entry for {species}")
            continue
        composition[species] = float(entry["q"])
    if problems:
        raise ValidationError(problems)

    lines = tuple(ln for ln in catalog if ln.species in composition)
    return Medium(composition=composition,
                  epsilon_r=float(config_doc["epsilon_r"]),
                  lines=lines)


__all__ = [
    "RECORD_WIDTH", "INTENSITY_TO_SI", "DEFAULT_INTENSITY_FLOOR",
    "SpectralLine", "Medium", "parse_line_catalog", "serialize_line",
    "load_medium",
]
