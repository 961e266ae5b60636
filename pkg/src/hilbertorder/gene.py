"""Per-quadrant evolutive rules: entry/exit corners and gene commands.

A gene table holds, for every quadrant ``i`` of the unit cube, two
coordinate-transform commands that grow a level ``m`` curve out of the
level ``m - 1`` curve:

* the exchange command swaps the two flagged components (a reflection
  through the hyperplane ``x_i - x_j = 0``);
* the reverse command replaces each flagged component by its reflection
  within the current box (the hyperplane ``x_i = (2**m - 1) / 2``).

Both commands derive from the corner where the sub-curve enters the
quadrant and the corner where it leaves:

    exchange(i) = (top xor) (entry(i) xor exit(i))      with top = component n flag
    reverse(i)  = entry(i)

The corner assignment itself uses Gray-code closed forms: quadrant 0
enters at the origin, ``entry(i) = gray_code(2 * ((i - 1) // 2))`` for
``i >= 1``, and ``exit(i) = entry(2**n - 1 - i) ^ top``.  Other corner
assignments also produce valid curves in three or more dimensions; this
package pins the orientation generated by these forms and accepts it
only through :func:`validate_gene_table`.

Bit vectors here are component-indexed: tuple slot ``i`` flags
component ``i + 1``.  Rendering reverses the tuple (component ``n``
first), matching coordinate output.
"""

from __future__ import annotations

import os
import sys
import warnings
from dataclasses import dataclass, field
from pathlib import Path
from typing import BinaryIO, Union

from .core_bits import BitVec, CurveParams, gray_code, integer_to_index
from .errors import (
    DomainError,
    GeneTableFormatError,
    GeneTableValidationError,
    ResourceLimitError,
)

# Table construction is O(2**n); refuse dimensions above this cap.
GENE_DIMENSION_CAP = 20

# Full curve walks during validation are capped like the enumeration
# oracle; above this the level-2 walk is skipped, not failed.
_WALK_MAX_BITS = 24

CACHE_MAGIC = b"HGEN"
CACHE_FORMAT_VERSION = 1

PathOrStream = Union[str, os.PathLike, BinaryIO]


@dataclass(frozen=True)
class EntryExit:
    """Corners where the curve enters and leaves one quadrant."""

    entry: BitVec
    exit: BitVec


@dataclass(frozen=True)
class GeneEntry:
    """Exchange and reverse command of one quadrant."""

    exchange: BitVec
    reverse: BitVec


@dataclass(frozen=True)
class GeneTable:
    """Commands for all ``2**n`` quadrants of one dimension.

    Instances are immutable and safe to share between threads; the
    codecs read only the derived ``swap_pairs`` and ``reverse_slots``.
    """

    n: int
    entries: tuple[GeneEntry, ...]
    corners: tuple[EntryExit, ...]
    swap_pairs: tuple = field(init=False, repr=False, compare=False)
    reverse_slots: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        pairs = []
        slots = []
        for entry in self.entries:
            flagged = tuple(i for i, bit in enumerate(entry.exchange) if bit)
            # Anything but exactly two flags is ignored here and left
            # for validate_gene_table to report.
            pairs.append(flagged if len(flagged) == 2 else None)
            slots.append(tuple(i for i, bit in enumerate(entry.reverse) if bit))
        object.__setattr__(self, "swap_pairs", tuple(pairs))
        object.__setattr__(self, "reverse_slots", tuple(slots))


@dataclass(frozen=True)
class ValidationCheck:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class GeneValidationReport:
    """Outcome of every gene-table check; carries failures instead of raising."""

    n: int
    checks: tuple[ValidationCheck, ...]

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def failures(self) -> tuple[ValidationCheck, ...]:
        return tuple(check for check in self.checks if not check.passed)


def entry_exit(n: int, i: int) -> EntryExit:
    """Entry and exit corner of quadrant ``i`` for dimension ``n``."""
    _check_dimension(n)
    if not 0 <= i < (1 << n):
        raise DomainError(f"quadrant {i} out of range for dimension {n}")
    return EntryExit(
        _mask_to_bits(_entry_mask(i), n),
        _mask_to_bits(_exit_mask(n, i), n),
    )


def gene_table(n: int, max_dimension: int | None = None) -> GeneTable:
    """Build the full gene table for dimension ``n``."""
    _check_dimension(n)
    cap = GENE_DIMENSION_CAP if max_dimension is None else max_dimension
    if n > cap:
        raise ResourceLimitError(
            f"gene table for dimension {n} exceeds the cap of {cap}"
        )
    top = 1 << (n - 1)
    entries = []
    corners = []
    for i in range(1 << n):
        e = _entry_mask(i)
        f = _exit_mask(n, i)
        entries.append(
            GeneEntry(_mask_to_bits(top ^ e ^ f, n), _mask_to_bits(e, n))
        )
        corners.append(EntryExit(_mask_to_bits(e, n), _mask_to_bits(f, n)))
    return GeneTable(n, tuple(entries), tuple(corners))


def validate_gene_table(table: GeneTable) -> GeneValidationReport:
    """Run every structural and curve-level check and report the outcomes.

    Structural checks always run.  The level-1 and level-2 curve walks
    run only while ``2 * n`` stays within the walk guard; above that the
    level-2 walk is reported as skipped.
    """
    checks = [
        _check_shape(table),
        _check_exchange_population(table),
        _check_quadrant_zero(table),
        _check_corner_consistency(table),
    ]
    structural_ok = all(check.passed for check in checks)
    for m in (1, 2):
        name = f"curve-walk-level-{m}"
        if not structural_ok:
            checks.append(
                ValidationCheck(name, False, "not run: structural checks failed")
            )
        elif table.n * m > _WALK_MAX_BITS:
            checks.append(
                ValidationCheck(name, True, f"skipped: 2**{table.n * m} points exceed the walk guard")
            )
        else:
            detail = _curve_walk_defect(table, m)
            checks.append(ValidationCheck(name, detail is None, detail or ""))
    return GeneValidationReport(table.n, tuple(checks))


def save_table(table: GeneTable, sink: PathOrStream) -> None:
    """Serialize a gene table; ``sink`` is a path or writable binary stream.

    Layout: magic ``HGEN``, one format-version byte, dimension as two
    little-endian bytes, then per quadrant the exchange vector followed
    by the reverse vector, each packed least position first and padded
    to whole bytes.
    """
    nbytes = (table.n + 7) // 8
    blob = bytearray()
    blob += CACHE_MAGIC
    blob.append(CACHE_FORMAT_VERSION)
    blob += table.n.to_bytes(2, "little")
    for entry in table.entries:
        blob += _bits_to_mask(entry.exchange).to_bytes(nbytes, "little")
        blob += _bits_to_mask(entry.reverse).to_bytes(nbytes, "little")
    if hasattr(sink, "write"):
        sink.write(bytes(blob))
    else:
        Path(sink).write_bytes(bytes(blob))


def load_table(source: PathOrStream) -> GeneTable:
    """Read a serialized gene table and re-validate it before returning."""
    if hasattr(source, "read"):
        blob = source.read()
    else:
        blob = Path(source).read_bytes()
    header = len(CACHE_MAGIC) + 1 + 2
    if len(blob) < header:
        raise GeneTableFormatError("gene table payload shorter than its header")
    if blob[: len(CACHE_MAGIC)] != CACHE_MAGIC:
        raise GeneTableFormatError("bad magic bytes; not a gene table file")
    version = blob[len(CACHE_MAGIC)]
    if version != CACHE_FORMAT_VERSION:
        raise GeneTableFormatError(
            f"unsupported gene table format version {version} (expected {CACHE_FORMAT_VERSION})"
        )
    n = int.from_bytes(blob[len(CACHE_MAGIC) + 1 : header], "little")
    if n < 2:
        raise GeneTableFormatError(f"gene table declares invalid dimension {n}")
    if n > GENE_DIMENSION_CAP:
        raise ResourceLimitError(
            f"gene table declares dimension {n}, above the cap of {GENE_DIMENSION_CAP}"
        )
    nbytes = (n + 7) // 8
    expected = header + (1 << n) * 2 * nbytes
    if len(blob) != expected:
        raise GeneTableFormatError(
            f"gene table payload has {len(blob)} bytes, expected {expected}"
        )
    top = 1 << (n - 1)
    entries = []
    corners = []
    offset = header
    for _ in range(1 << n):
        exchange = int.from_bytes(blob[offset : offset + nbytes], "little")
        reverse = int.from_bytes(blob[offset + nbytes : offset + 2 * nbytes], "little")
        offset += 2 * nbytes
        if exchange >= (1 << n) or reverse >= (1 << n):
            raise GeneTableFormatError("gene vector has bits beyond the dimension")
        entries.append(GeneEntry(_mask_to_bits(exchange, n), _mask_to_bits(reverse, n)))
        # Corners are not persisted; invert the command identities.
        corners.append(
            EntryExit(_mask_to_bits(reverse, n), _mask_to_bits(reverse ^ exchange ^ top, n))
        )
    table = GeneTable(n, tuple(entries), tuple(corners))
    report = validate_gene_table(table)
    if not report.passed:
        failed = ", ".join(check.name for check in report.failures())
        error = GeneTableValidationError(f"loaded gene table failed checks: {failed}")
        error.report = report
        raise error
    return table


def default_cache_dir() -> Path:
    """Cache directory: ``HILBERT_CACHE_DIR`` if set, else the platform default."""
    env = os.environ.get("HILBERT_CACHE_DIR")
    if env:
        return Path(env)
    if sys.platform == "win32":
        base = Path(os.environ.get("LOCALAPPDATA", "~/AppData/Local")).expanduser()
    elif sys.platform == "darwin":
        base = Path("~/Library/Caches").expanduser()
    else:
        base = Path(os.environ.get("XDG_CACHE_HOME", "~/.cache")).expanduser()
    return base / "hilbertorder"


def cache_path(n: int, cache_dir: Union[str, os.PathLike, None] = None) -> Path:
    base = Path(cache_dir) if cache_dir is not None else default_cache_dir()
    return base / f"gene-v{CACHE_FORMAT_VERSION}-n{n}.bin"


def cached_gene_table(
    n: int,
    cache_dir: Union[str, os.PathLike, None] = None,
    rebuild: bool = False,
) -> GeneTable:
    """Load the table for ``n`` from the on-disk cache, building it on demand.

    An unreadable or invalid cache file triggers a warning and a
    rebuild rather than an error.
    """
    path = cache_path(n, cache_dir)
    if not rebuild and path.exists():
        try:
            return load_table(path)
        except (GeneTableFormatError, GeneTableValidationError, ResourceLimitError, OSError) as exc:
            warnings.warn(
                f"gene cache {path} is unusable ({exc}); rebuilding",
                RuntimeWarning,
                stacklevel=2,
            )
    table = gene_table(n)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        save_table(table, path)
    except OSError as exc:
        warnings.warn(f"could not write gene cache {path}: {exc}", RuntimeWarning, stacklevel=2)
    return table


def format_table_text(table: GeneTable) -> str:
    """Human-readable dump, one quadrant per row, vectors component ``n`` first."""
    width = max(3 * table.n, len("exchange"))
    lines = [f"gene table for dimension {table.n} ({len(table.entries)} quadrants)"]
    lines.append(f"{'quadrant':<8}  {'exchange':<{width}}  reverse")
    for i, entry in enumerate(table.entries):
        lines.append(
            f"{i:<8}  {_render_bits(entry.exchange):<{width}}  {_render_bits(entry.reverse)}"
        )
    return "\n".join(lines)


def _render_bits(bits: BitVec) -> str:
    return "(" + ", ".join(str(b) for b in reversed(bits)) + ")"


def _entry_mask(i: int) -> int:
    if i == 0:
        return 0
    return gray_code(2 * ((i - 1) // 2))


def _exit_mask(n: int, i: int) -> int:
    return _entry_mask(((1 << n) - 1) - i) ^ (1 << (n - 1))


def _mask_to_bits(mask: int, n: int) -> BitVec:
    return tuple((mask >> i) & 1 for i in range(n))


def _bits_to_mask(bits: BitVec) -> int:
    mask = 0
    for i, bit in enumerate(bits):
        if bit:
            mask |= 1 << i
    return mask


def _check_dimension(n: int) -> None:
    if not isinstance(n, int) or n < 2:
        raise DomainError(f"dimension must be an integer >= 2, got {n!r}")


def _check_shape(table: GeneTable) -> ValidationCheck:
    name = "shape"
    expected = 1 << table.n
    if len(table.entries) != expected:
        return ValidationCheck(name, False, f"{len(table.entries)} entries, expected {expected}")
    if len(table.corners) != expected:
        return ValidationCheck(name, False, f"{len(table.corners)} corner pairs, expected {expected}")
    for i, entry in enumerate(table.entries):
        corner = table.corners[i]
        for vec in (entry.exchange, entry.reverse, corner.entry, corner.exit):
            if len(vec) != table.n:
                return ValidationCheck(name, False, f"quadrant {i}: vector of length {len(vec)}")
            if any(bit not in (0, 1) for bit in vec):
                return ValidationCheck(name, False, f"quadrant {i}: non-bit entry")
    return ValidationCheck(name, True)


def _check_exchange_population(table: GeneTable) -> ValidationCheck:
    name = "exchange-population"
    for i, entry in enumerate(table.entries):
        ones = sum(entry.exchange)
        if ones not in (0, 2):
            return ValidationCheck(
                name, False, f"quadrant {i}: exchange flags {ones} components, expected 0 or 2"
            )
    return ValidationCheck(name, True)


def _check_quadrant_zero(table: GeneTable) -> ValidationCheck:
    name = "quadrant-zero"
    n = table.n
    entry = table.entries[0]
    expected_exchange = tuple(1 if i in (0, n - 1) else 0 for i in range(n))
    if entry.exchange != expected_exchange:
        return ValidationCheck(
            name, False, f"exchange is {entry.exchange}, expected flags on components 1 and {n}"
        )
    if any(entry.reverse):
        return ValidationCheck(name, False, f"reverse is {entry.reverse}, expected all zero")
    return ValidationCheck(name, True)


def _check_corner_consistency(table: GeneTable) -> ValidationCheck:
    name = "corner-consistency"
    top = 1 << (table.n - 1)
    for i, (entry, corner) in enumerate(zip(table.entries, table.corners)):
        e = _bits_to_mask(corner.entry)
        f = _bits_to_mask(corner.exit)
        if (e ^ f).bit_count() != 1:
            return ValidationCheck(
                name, False, f"quadrant {i}: entry and exit differ in {(e ^ f).bit_count()} positions"
            )
        if _bits_to_mask(entry.exchange) != top ^ e ^ f:
            return ValidationCheck(name, False, f"quadrant {i}: exchange disagrees with corners")
        if _bits_to_mask(entry.reverse) != e:
            return ValidationCheck(name, False, f"quadrant {i}: reverse disagrees with entry corner")
    return ValidationCheck(name, True)


def _curve_walk_defect(table: GeneTable, m: int) -> str | None:
    """Walk the whole level-``m`` curve; return a defect description or None."""
    from .decode import decode_bits  # deferred: decode depends on this module

    n = table.n
    params = CurveParams(n, m)
    total = 1 << (n * m)
    seen = bytearray(total)
    box = (1 << m) - 1
    prev: tuple[int, ...] | None = None
    for z in range(total):
        point, _ = decode_bits(integer_to_index(z, params), params, table)
        slot = 0
        for i, c in enumerate(point):
            if not 0 <= c <= box:
                return f"level {m}: index {z} decodes outside the grid: {point}"
            slot |= c << (i * m)
        if seen[slot]:
            return f"level {m}: index {z} revisits point {point}"
        seen[slot] = 1
        if prev is not None:
            step = sum(abs(a - b) for a, b in zip(prev, point))
            if step != 1:
                return f"level {m}: indices {z - 1} and {z} are {step} apart"
        prev = point
    return None
