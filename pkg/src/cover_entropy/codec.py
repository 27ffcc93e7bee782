"""Canonical Huffman codes over partition cells and the ``CVQ1`` stream format.

Stream layout (integers little-endian)::

    b"CVQ1" | u16 cell count | per cell: u8 id length, id bytes, u8 code length
            | u8 padding bits | u64 symbol count | payload, MSB first

The cell table is written in canonical order (code length, then cell id), so
the decoder rebuilds the exact code words from it.
"""

from __future__ import annotations

import heapq
import struct
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence

from .errors import DataError, FormatError, PreconditionError, StructuralError
from .families import Partition, is_partition
from .measure import GroundSpace

MAGIC = b"CVQ1"


@dataclass(frozen=True)
class CodeEntry:
    cell_id: str
    length: int
    code: int

    @property
    def bits(self) -> str:
        return format(self.code, f"0{self.length}b")


@dataclass
class Codebook:
    entries: list[CodeEntry]
    cell_of_atom: dict[str, str] = field(default_factory=dict)
    representative: dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        self._by_cell = {e.cell_id: e for e in self.entries}

    def entry(self, cell_id: str) -> CodeEntry:
        return self._by_cell[cell_id]

    @property
    def lengths(self) -> dict[str, int]:
        return {e.cell_id: e.length for e in self.entries}

    def kraft_sum(self) -> float:
        return sum(2.0 ** -e.length for e in self.entries)

    @classmethod
    def from_lengths(cls, lengths: Mapping[str, int], **kw) -> "Codebook":
        return cls(canonical_codes(lengths), **kw)

    def to_dict(self) -> dict:
        return {
            "entries": [{"cell_id": e.cell_id, "length": e.length} for e in self.entries],
            "cell_of_atom": dict(self.cell_of_atom),
            "representative": dict(self.representative),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Codebook":
        lengths = {e["cell_id"]: int(e["length"]) for e in d["entries"]}
        return cls.from_lengths(
            lengths,
            cell_of_atom=dict(d.get("cell_of_atom", {})),
            representative=dict(d.get("representative", {})),
        )


def huffman_lengths(weights: Sequence[float]) -> list[int]:
    """Binary Huffman code lengths; ties go to the earlier index.

    A single symbol gets length 1.
    """
    n = len(weights)
    if n == 0:
        return []
    if n == 1:
        return [1]
    lengths = [0] * n
    heap = [(w, i, [i]) for i, w in enumerate(weights)]
    heapq.heapify(heap)
    seq = n
    while len(heap) > 1:
        w1, _, a = heapq.heappop(heap)
        w2, _, b = heapq.heappop(heap)
        for i in a:
            lengths[i] += 1
        for i in b:
            lengths[i] += 1
        heapq.heappush(heap, (w1 + w2, seq, a + b))
        seq += 1
    return lengths


def canonical_codes(lengths: Mapping[str, int]) -> list[CodeEntry]:
    """Assign canonical code words, ordered by (length, cell id)."""
    entries = []
    code = 0
    prev = 0
    for cell_id, length in sorted(lengths.items(), key=lambda kv: (kv[1], kv[0])):
        if length < 1:
            raise StructuralError(f"code length {length} for cell {cell_id!r}")
        code <<= length - prev
        if code >= 1 << length:
            raise StructuralError("code lengths violate the Kraft inequality")
        entries.append(CodeEntry(cell_id, length, code))
        code += 1
        prev = length
    return entries


def build_codebook(space: GroundSpace, p: Partition) -> Codebook:
    """Canonical Huffman codebook for the positive-mass cells of ``p``.

    Representatives are the lowest atom id in each cell.
    """
    problems = is_partition(space, p)
    if problems:
        raise StructuralError("invalid partition: " + "; ".join(problems))
    cells = sorted((c for c in p.cells if space.mass(c) > 0), key=lambda c: c.id)
    if not cells:
        raise PreconditionError("partition has no cell of positive mass")
    ids = [c.id for c in cells]
    if len(set(ids)) != len(ids):
        raise StructuralError("duplicate cell ids")
    lengths = huffman_lengths([space.mass(c) for c in cells])
    return Codebook.from_lengths(
        dict(zip(ids, lengths)),
        cell_of_atom={a: c.id for c in cells for a in c.atoms},
        representative={c.id: min(c.atoms) for c in cells},
    )


def expected_length(space: GroundSpace, p: Partition, codebook: Codebook) -> float:
    """Mean code length under the measure normalized to total mass 1."""
    lengths = codebook.lengths
    total = 0.0
    coded_mass = 0.0
    for c in p.cells:
        if c.id in lengths:
            m = space.mass(c)
            total += m * lengths[c.id]
            coded_mass += m
    return total / coded_mass


def _header(codebook: Codebook) -> bytes:
    if len(codebook.entries) > 0xFFFF:
        raise StructuralError("too many cells for the stream format")
    out = [MAGIC, struct.pack("<H", len(codebook.entries))]
    for e in codebook.entries:
        raw = e.cell_id.encode("utf-8")
        if len(raw) > 255 or e.length > 255:
            raise StructuralError(f"cell {e.cell_id!r} does not fit the stream format")
        out.append(struct.pack("<B", len(raw)) + raw + struct.pack("<B", e.length))
    return b"".join(out)


def encode(codebook: Codebook, atoms: Iterable[str]) -> bytes:
    """Encode a sequence of atom ids as the code words of their cells."""
    words = []
    for pos, a in enumerate(atoms):
        cell = codebook.cell_of_atom.get(a)
        if cell is None:
            raise DataError(f"atom {a!r} at position {pos} is in no coded cell")
        words.append(codebook.entry(cell).bits)
    bits = "".join(words)
    padding = -len(bits) % 8
    bits += "0" * padding
    payload = int(bits, 2).to_bytes(len(bits) // 8, "big") if bits else b""
    return _header(codebook) + struct.pack("<BQ", padding, len(words)) + payload


class _Reader:
    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def take(self, n: int, what: str) -> bytes:
        if self.pos + n > len(self.data):
            raise FormatError(f"truncated stream while reading {what}")
        chunk = self.data[self.pos:self.pos + n]
        self.pos += n
        return chunk


def read_header(data: bytes) -> tuple[Codebook, int, int, bytes]:
    """Parse a stream into (codebook, padding, symbol count, payload)."""
    r = _Reader(data)
    if r.take(4, "magic") != MAGIC:
        raise FormatError("bad magic")
    (count,) = struct.unpack("<H", r.take(2, "cell count"))
    lengths = {}
    for _ in range(count):
        (n,) = struct.unpack("<B", r.take(1, "id length"))
        try:
            cell_id = r.take(n, "cell id").decode("utf-8")
        except UnicodeDecodeError:
            raise FormatError("cell id is not valid UTF-8") from None
        (length,) = struct.unpack("<B", r.take(1, "code length"))
        if cell_id in lengths:
            raise FormatError(f"duplicate cell id {cell_id!r}")
        lengths[cell_id] = length
    padding, nsym = struct.unpack("<BQ", r.take(9, "padding and symbol count"))
    try:
        codebook = Codebook.from_lengths(lengths)
    except StructuralError as exc:
        raise FormatError(f"bad code table: {exc}") from None
    return codebook, padding, nsym, data[r.pos:]


def decode(data: bytes, codebook: Optional[Codebook] = None) -> list[tuple[str, Optional[str]]]:
    """Decode a stream into ``(cell_id, representative_atom_id)`` pairs.

    The stream only carries cell ids; representatives come from ``codebook``
    when one is given and are ``None`` otherwise.
    """
    table, padding, nsym, payload = read_header(data)
    if padding > 7:
        raise FormatError(f"padding declaration {padding} exceeds 7 bits")
    nbits = 8 * len(payload) - padding
    if nbits < 0:
        raise FormatError("padding declaration exceeds payload")
    bits = "".join(format(b, "08b") for b in payload)
    lookup = {(e.length, e.code): e.cell_id for e in table.entries}
    max_len = max((e.length for e in table.entries), default=0)

    cells = []
    i = 0
    for _ in range(nsym):
        code = 0
        length = 0
        while True:
            if i >= nbits:
                raise FormatError("codeword underflow: payload ends mid-symbol")
            code = (code << 1) | (bits[i] == "1")
            length += 1
            i += 1
            cell = lookup.get((length, code))
            if cell is not None:
                cells.append(cell)
                break
            if length >= max_len:
                raise FormatError(f"invalid codeword at bit {i - length}")
    if i != nbits:
        raise FormatError(f"padding declaration mismatch: {nbits - i} unread payload bits")
    if "1" in bits[nbits:]:
        raise FormatError("nonzero padding bits")
    reps = codebook.representative if codebook is not None else {}
    return [(c, reps.get(c)) for c in cells]
