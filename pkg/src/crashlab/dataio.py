"""Bit-exact persistence: IDX datasets, network documents, result CSVs.

Network documents are a versioned JSON shape whose floats are serialized with
the shortest representation that parses back to the identical 64-bit value,
so save -> load reproduces every weight bit-for-bit.  The same round-trip
rule applies to CSV cells.
"""

from __future__ import annotations

import csv
import gzip
import io
import json
import struct
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import numpy as np

from .network import Activation, Layer, Network, validate
from .training import LabeledDataset

IDX_IMAGES_MAGIC = 0x00000803
IDX_LABELS_MAGIC = 0x00000801

RESULT_FIELDS = (
    "experiment",
    "seed",
    "activation",
    "K",
    "L",
    "widths",
    "f",
    "omega_av",
    "omega_mav",
    "omega_max",
    "omega_std",
    "erf_av",
    "erf_max",
    "patterns",
    "inputs",
    "mode",
)


class IdxParseError(ValueError):
    """Malformed IDX file; the message names the byte offset."""


class DocumentError(ValueError):
    """Network document violates the schema."""


# ---------------------------------------------------------------------------
# IDX datasets


def _read_bytes(path) -> bytes:
    raw = Path(path).read_bytes()
    if raw[:2] == b"\x1f\x8b":
        raw = gzip.decompress(raw)
    return raw


def load_idx(path_images, path_labels) -> LabeledDataset:
    """Parse a big-endian IDX image/label pair into a dataset.

    Pixels are scaled to [0, 1] by division by 255.  Image and label counts
    must match; every structural problem is reported with its byte offset.
    """
    img = _read_bytes(path_images)
    if len(img) < 16:
        raise IdxParseError(f"{path_images}: header truncated at byte offset {len(img)}")
    magic, count, rows, cols = struct.unpack(">IIII", img[:16])
    if magic != IDX_IMAGES_MAGIC:
        raise IdxParseError(
            f"{path_images}: bad magic 0x{magic:08x} at byte offset 0, "
            f"expected 0x{IDX_IMAGES_MAGIC:08x}"
        )
    expected = 16 + count * rows * cols
    if len(img) != expected:
        offset = min(len(img), expected)
        raise IdxParseError(
            f"{path_images}: payload ends at byte offset {len(img)}, expected {expected} "
            f"(truncation at offset {offset})"
        )
    pixels = np.frombuffer(img, dtype=np.uint8, offset=16).reshape(count, rows * cols)

    lab = _read_bytes(path_labels)
    if len(lab) < 8:
        raise IdxParseError(f"{path_labels}: header truncated at byte offset {len(lab)}")
    magic, lab_count = struct.unpack(">II", lab[:8])
    if magic != IDX_LABELS_MAGIC:
        raise IdxParseError(
            f"{path_labels}: bad magic 0x{magic:08x} at byte offset 0, "
            f"expected 0x{IDX_LABELS_MAGIC:08x}"
        )
    if len(lab) != 8 + lab_count:
        offset = min(len(lab), 8 + lab_count)
        raise IdxParseError(
            f"{path_labels}: payload ends at byte offset {len(lab)}, "
            f"expected {8 + lab_count} (truncation at offset {offset})"
        )
    if lab_count != count:
        raise IdxParseError(
            f"label count {lab_count} does not match image count {count}"
        )
    labels = np.frombuffer(lab, dtype=np.uint8, offset=8)
    return LabeledDataset(pixels.astype(np.float64) / 255.0, labels.astype(np.int64))


def write_idx(path_images, path_labels, pixels: np.ndarray, labels: np.ndarray,
              rows: int = 28, cols: int = 28) -> None:
    """Write an image/label pair in IDX format (gzipped iff path ends in .gz)."""
    pixels = np.ascontiguousarray(pixels, dtype=np.uint8)
    labels = np.ascontiguousarray(labels, dtype=np.uint8)
    if pixels.shape != (labels.shape[0], rows * cols):
        raise ValueError(f"pixels shape {pixels.shape} does not match labels/geometry")
    img = struct.pack(">IIII", IDX_IMAGES_MAGIC, pixels.shape[0], rows, cols) + pixels.tobytes()
    lab = struct.pack(">II", IDX_LABELS_MAGIC, labels.shape[0]) + labels.tobytes()
    for path, payload in ((path_images, img), (path_labels, lab)):
        path = Path(path)
        if path.suffix == ".gz":
            # mtime pinned so identical data always produces identical bytes
            path.write_bytes(gzip.compress(payload, mtime=0))
        else:
            path.write_bytes(payload)


def dataset_bytes(data: LabeledDataset) -> tuple[np.ndarray, np.ndarray]:
    """Recover the exact uint8 pixels/labels behind a /255-scaled dataset."""
    return (
        np.rint(data.inputs * 255.0).astype(np.uint8),
        data.labels.astype(np.uint8),
    )


# ---------------------------------------------------------------------------
# Network documents

DOCUMENT_VERSION = 1
_DOCUMENT_FIELDS = {"version", "activation", "input_dim", "layers", "output_weights"}


def save_network(net: Network) -> dict:
    """Network -> plain JSON-shaped document (version 1)."""
    return {
        "version": DOCUMENT_VERSION,
        "activation": {"kind": net.activation.kind, "lipschitz": net.activation.lipschitz},
        "input_dim": net.input_dim,
        "layers": [
            {"weights": layer.weights.tolist(), "biases": layer.biases.tolist()}
            for layer in net.layers
        ],
        "output_weights": net.output_weights.tolist(),
    }


def load_network(doc: Mapping) -> Network:
    """Document -> Network, rejecting schema violations and invalid nets."""
    unknown = set(doc) - _DOCUMENT_FIELDS
    if unknown:
        raise DocumentError(f"unknown top-level fields: {sorted(unknown)}")
    missing = _DOCUMENT_FIELDS - set(doc)
    if missing:
        raise DocumentError(f"missing top-level fields: {sorted(missing)}")
    if doc["version"] != DOCUMENT_VERSION:
        raise DocumentError(f"unsupported document version {doc['version']!r}")
    act = doc["activation"]
    try:
        activation = Activation(kind=act["kind"], lipschitz=float(act["lipschitz"]))
    except (KeyError, TypeError, ValueError) as e:
        raise DocumentError(f"bad activation block: {e}") from e
    try:
        layers = tuple(
            Layer(weights=np.array(entry["weights"], dtype=np.float64),
                  biases=np.array(entry["biases"], dtype=np.float64))
            for entry in doc["layers"]
        )
        net = Network(
            input_dim=int(doc["input_dim"]),
            layers=layers,
            output_weights=np.array(doc["output_weights"], dtype=np.float64),
            activation=activation,
        )
    except (KeyError, TypeError, ValueError) as e:
        raise DocumentError(f"malformed document arrays: {e}") from e
    problems = validate(net)
    if problems:
        raise DocumentError("; ".join(problems))
    return net


def write_network_file(net: Network, path) -> None:
    doc = save_network(net)
    Path(path).write_text(json.dumps(doc, allow_nan=False) + "\n")


def read_network_file(path) -> Network:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as e:
        raise DocumentError(f"{path}: not valid JSON ({e})") from e
    if not isinstance(doc, dict):
        raise DocumentError(f"{path}: document must be a JSON object")
    return load_network(doc)


# ---------------------------------------------------------------------------
# Result CSVs


def _format_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, (np.floating,)):
        return repr(float(value))
    return str(value)


def write_results(rows: Sequence[Mapping], out) -> None:
    """Write omega/erf result rows against the fixed 16-column schema.

    Every row must carry exactly the schema's keys (missing optional values
    are written as None -> empty cells); mixing schemas is an error.  ``out``
    is a path or a text stream.
    """
    expected = set(RESULT_FIELDS)
    for i, row in enumerate(rows):
        if set(row) != expected:
            extra = sorted(set(row) - expected)
            missing = sorted(expected - set(row))
            raise ValueError(
                f"row {i} does not match the result schema "
                f"(extra {extra}, missing {missing})"
            )
    if hasattr(out, "write"):
        _write_result_rows(rows, out)
    else:
        with open(out, "w", newline="") as fh:
            _write_result_rows(rows, fh)


def _write_result_rows(rows: Sequence[Mapping], fh) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(RESULT_FIELDS)
    for row in rows:
        writer.writerow([_format_cell(row[k]) for k in RESULT_FIELDS])


def results_text(rows: Sequence[Mapping]) -> str:
    buf = io.StringIO()
    write_results(rows, buf)
    return buf.getvalue()


def write_csv(out, header: Sequence[str], rows: Iterable[Sequence]) -> None:
    """Generic CSV writer with the same round-trip number formatting."""
    def emit(fh):
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_format_cell(v) for v in row])

    if hasattr(out, "write"):
        emit(out)
    else:
        with open(out, "w", newline="") as fh:
            emit(fh)
