"""JSON and CSV readers/writers for the package's file formats.

Measure::

    {"atoms": [{"id": "a1", "weight": 0.4, "label": -0.5}, ...]}

Cover (sets given by atom ids or by closed label intervals)::

    {"sets": [{"id": "Q1", "atoms": ["a1", "a2"]},
              {"id": "Q2", "lo": 0.0, "hi": 1e308}]}

Partition::

    {"cells": [{"id": "P1", "atoms": [...]}], "witness": {"P1": "Q1"}}

Density::

    {"pieces": [{"lo": 0.0, "hi": 1.0, "height": 1.0}]}
"""

from __future__ import annotations

import csv
import json
from typing import Iterable, Sequence

from .covergen import DensitySpec, Piece, interval_atoms
from .errors import StructuralError, ValidationError
from .families import Cover, MSet, Partition
from .measure import Atom, GroundSpace, validate


def read_json(path) -> dict:
    try:
        with open(path) as f:
            return json.load(f)
    except json.JSONDecodeError as exc:
        raise StructuralError(f"{path}: invalid JSON: {exc}") from None


def write_json(path, obj) -> None:
    with open(path, "w") as f:
        json.dump(obj, f, indent=2)
        f.write("\n")


def _need(d: dict, key: str, where: str):
    try:
        return d[key]
    except (KeyError, TypeError):
        raise StructuralError(f"{where}: missing field {key!r}") from None


def measure_from_dict(d: dict) -> GroundSpace:
    atoms = []
    for entry in _need(d, "atoms", "measure"):
        label = entry.get("label")
        atoms.append(
            Atom(
                str(_need(entry, "id", "atom")),
                float(_need(entry, "weight", "atom")),
                None if label is None else float(label),
            )
        )
    space = GroundSpace(atoms)
    problems = [p for p in validate(space) if not p.startswith("total mass")]
    if problems:
        raise ValidationError("; ".join(problems))
    return space


def measure_to_dict(space: GroundSpace) -> dict:
    atoms = []
    for a in space.atoms:
        entry = {"id": a.id, "weight": a.weight}
        if a.label is not None:
            entry["label"] = a.label
        atoms.append(entry)
    return {"atoms": atoms}


def load_measure(path) -> GroundSpace:
    return measure_from_dict(read_json(path))


def save_measure(path, space: GroundSpace) -> None:
    write_json(path, measure_to_dict(space))


def _mset(entry: dict, space: GroundSpace | None, where: str) -> MSet:
    sid = str(_need(entry, "id", where))
    if "atoms" in entry:
        ids = [str(a) for a in entry["atoms"]]
        if space is not None:
            for a in ids:
                if a not in space:
                    raise StructuralError(f"{where} {sid!r}: unknown atom id {a!r}")
        return MSet(sid, ids)
    if "lo" in entry or "hi" in entry:
        if space is None:
            raise StructuralError(f"{where} {sid!r}: interval form needs a measure")
        return MSet(sid, interval_atoms(space, entry.get("lo"), entry.get("hi")))
    raise StructuralError(f"{where} {sid!r}: needs 'atoms' or 'lo'/'hi'")


def cover_from_dict(d: dict, space: GroundSpace | None = None) -> Cover:
    return Cover(_mset(e, space, "cover set") for e in _need(d, "sets", "cover"))


def cover_to_dict(q: Cover) -> dict:
    return {"sets": [{"id": s.id, "atoms": sorted(s.atoms)} for s in q.sets]}


def load_cover(path, space: GroundSpace | None = None) -> Cover:
    return cover_from_dict(read_json(path), space)


def save_cover(path, q: Cover) -> None:
    write_json(path, cover_to_dict(q))


def partition_from_dict(d: dict, space: GroundSpace | None = None) -> Partition:
    cells = [_mset(e, space, "cell") for e in _need(d, "cells", "partition")]
    return Partition(cells, d.get("witness"))


def partition_to_dict(p: Partition, space: GroundSpace | None = None) -> dict:
    def order(atoms):
        return sorted(atoms, key=space.position) if space is not None else sorted(atoms)

    d = {"cells": [{"id": c.id, "atoms": order(c.atoms)} for c in p.cells]}
    if p.witness is not None:
        d["witness"] = dict(p.witness)
    return d


def load_partition(path, space: GroundSpace | None = None) -> Partition:
    return partition_from_dict(read_json(path), space)


def save_partition(path, p: Partition, space: GroundSpace | None = None) -> None:
    write_json(path, partition_to_dict(p, space))


def density_from_dict(d: dict) -> DensitySpec:
    return DensitySpec(
        Piece(float(_need(p, "lo", "piece")), float(_need(p, "hi", "piece")), float(_need(p, "height", "piece")))
        for p in _need(d, "pieces", "density")
    )


def density_to_dict(d: DensitySpec) -> dict:
    return {"pieces": [{"lo": p.lo, "hi": p.hi, "height": p.height} for p in d.pieces]}


def load_density(path) -> DensitySpec:
    return density_from_dict(read_json(path))


def read_atom_csv(path) -> list[str]:
    """One atom id per row under an ``atom_id`` header."""
    with open(path, newline="") as f:
        reader = csv.DictReader(f)
        if reader.fieldnames is None or "atom_id" not in reader.fieldnames:
            raise StructuralError(f"{path}: expected header 'atom_id'")
        return [row["atom_id"] for row in reader]


def write_atom_csv(path, atoms: Iterable[str]) -> None:
    with open(path, "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(["atom_id"])
        w.writerows([a] for a in atoms)


DECODED_HEADER = ["cell_id", "representative_atom_id", "representative_label"]


def write_decoded_csv(path, rows: Sequence[tuple]) -> None:
    with open(path, "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(DECODED_HEADER)
        for cell, rep, label in rows:
            w.writerow([cell, "" if rep is None else rep, "" if label is None else repr(label)])


def read_decoded_csv(path) -> list[tuple]:
    with open(path, newline="") as f:
        reader = csv.DictReader(f)
        return [
            (
                r["cell_id"],
                r["representative_atom_id"] or None,
                float(r["representative_label"]) if r["representative_label"] else None,
            )
            for r in reader
        ]


SWEEP_HEADER = ["eps", "entropy_bits", "method", "cover_size"]


def write_sweep_csv(path, rows) -> None:
    with open(path, "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(SWEEP_HEADER)
        for r in rows:
            w.writerow([repr(r.eps), repr(r.entropy_bits), r.method, r.cover_size])


def read_sweep_csv(path) -> list[dict]:
    with open(path, newline="") as f:
        return [
            {
                "eps": float(r["eps"]),
                "entropy_bits": float(r["entropy_bits"]),
                "method": r["method"],
                "cover_size": int(r["cover_size"]),
            }
            for r in csv.DictReader(f)
        ]

