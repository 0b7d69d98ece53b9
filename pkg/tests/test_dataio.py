"""Persistence: IDX parsing, network documents, result CSVs."""

import gzip
import io
import json
import struct

import numpy as np
import pytest

from crashlab.dataio import (
    RESULT_FIELDS,
    DocumentError,
    IdxParseError,
    dataset_bytes,
    load_idx,
    load_network,
    read_network_file,
    results_text,
    save_network,
    write_csv,
    write_idx,
    write_network_file,
    write_results,
)
from crashlab.generate import TopologySpec, random_network
from crashlab.network import Activation, Layer, Network
from crashlab.rng import philox


# --- IDX ---------------------------------------------------------------------


def _sample_pair(tmp_path, n=17, gz=False, rows=4, cols=3):
    gen = philox(3)
    pixels = (gen.integers(0, 256, (n, rows * cols))).astype(np.uint8)
    labels = (gen.integers(0, 10, n)).astype(np.uint8)
    suffix = ".gz" if gz else ""
    img, lab = tmp_path / f"imgs{suffix}", tmp_path / f"labs{suffix}"
    write_idx(img, lab, pixels, labels, rows=rows, cols=cols)
    return img, lab, pixels, labels


def test_idx_round_trip(tmp_path):
    img, lab, pixels, labels = _sample_pair(tmp_path)
    data = load_idx(img, lab)
    assert len(data) == 17 and data.dim == 12
    re_pixels, re_labels = dataset_bytes(data)
    assert np.array_equal(re_pixels, pixels)
    assert np.array_equal(re_labels, labels)
    # position-exact: rewriting the recovered bytes reproduces the files
    img2, lab2 = tmp_path / "imgs2", tmp_path / "labs2"
    write_idx(img2, lab2, re_pixels, re_labels, rows=4, cols=3)
    assert img2.read_bytes() == img.read_bytes()
    assert lab2.read_bytes() == lab.read_bytes()


def test_idx_gzip_transparent(tmp_path):
    img, lab, pixels, labels = _sample_pair(tmp_path, gz=True)
    data = load_idx(img, lab)
    assert np.array_equal(dataset_bytes(data)[0], pixels)


def test_idx_pixel_scaling_endpoints(tmp_path):
    img, lab = tmp_path / "i", tmp_path / "l"
    write_idx(img, lab, np.array([[0, 255, 51]], dtype=np.uint8), np.array([7], dtype=np.uint8),
              rows=1, cols=3)
    data = load_idx(img, lab)
    assert data.inputs[0, 0] == 0.0
    assert data.inputs[0, 1] == 1.0
    assert data.inputs[0, 2] == pytest.approx(51 / 255)


def test_idx_bad_magic(tmp_path):
    img, lab, *_ = _sample_pair(tmp_path)
    corrupted = bytearray(img.read_bytes())
    corrupted[3] = 0x42
    (tmp_path / "bad").write_bytes(bytes(corrupted))
    with pytest.raises(IdxParseError, match="magic"):
        load_idx(tmp_path / "bad", lab)


def test_idx_truncated_labels_names_offset(tmp_path):
    img, lab, *_ = _sample_pair(tmp_path)
    raw = lab.read_bytes()
    (tmp_path / "short").write_bytes(raw[:-1])
    with pytest.raises(IdxParseError) as e:
        load_idx(img, tmp_path / "short")
    assert f"offset {len(raw) - 1}" in str(e.value)


def test_idx_count_mismatch(tmp_path):
    img, _, _, labels = _sample_pair(tmp_path)
    other = tmp_path / "other"
    payload = struct.pack(">II", 0x00000801, 16) + labels[:16].tobytes()
    other.write_bytes(payload)
    with pytest.raises(IdxParseError, match="does not match"):
        load_idx(img, other)


def test_bundled_files_parse(mnist_dir):
    from crashlab.cli import load_mnist

    train = load_mnist("train", mnist_dir)
    test = load_mnist("test", mnist_dir)
    assert len(train) + len(test) == 10_000
    assert train.dim == test.dim == 784
    assert train.inputs.min() >= 0.0 and train.inputs.max() <= 1.0
    assert set(np.unique(train.labels)) == set(range(10))


def test_canonical_files_when_available():
    """The canonical 60k corpus is validated when a full MNIST_DIR is supplied."""
    import os

    canonical = os.environ.get("CANONICAL_MNIST_DIR")
    if not canonical:
        pytest.skip("canonical 60k MNIST not present in this environment")
    from pathlib import Path

    from crashlab.cli import load_mnist

    train = load_mnist("train", Path(canonical))
    assert len(train) == 60_000 and train.dim == 784


# --- network documents ----------------------------------------------------------


def _corpus_net(seed):
    spec = TopologySpec(3, (4, 3), 2, Activation("sigmoid" if seed % 2 else "relu", 1.5))
    return random_network(spec, seed)


def test_document_round_trip_bitwise(tmp_path):
    for seed in range(5):
        net = _corpus_net(seed)
        path = tmp_path / f"net{seed}.json"
        write_network_file(net, path)
        loaded = read_network_file(path)
        for la, lb in zip(net.layers, loaded.layers):
            assert np.array_equal(la.weights, lb.weights)
            assert np.array_equal(la.biases, lb.biases)
        assert np.array_equal(net.output_weights, loaded.output_weights)
        assert loaded.activation == net.activation


def test_document_round_trip_awkward_floats():
    # shortest-repr JSON floats must round-trip subnormals and extremes
    values = [5e-324, -5e-324, 1.7976931348623157e308, 0.1, -1 / 3, 2**-1074]
    net = Network(
        1,
        (Layer([[values[0]], [values[1]]], [values[2], values[3]]),),
        [[values[4], values[5]]],
        Activation("relu", 1.0),
    )
    doc = json.loads(json.dumps(save_network(net)))
    loaded = load_network(doc)
    assert loaded.layers[0].weights[0, 0] == values[0]
    assert loaded.layers[0].biases[0] == values[2]
    assert loaded.output_weights[0, 1] == values[5]


def test_float_round_trip_corpus():
    """Shortest-repr serialization is lossless for 10^4 doubles incl. subnormals."""
    gen = philox(123)
    raw = np.asarray(gen.bit_generator.random_raw(10_000), dtype=np.uint64)
    values = raw.view(np.float64)
    finite = values[np.isfinite(values)]
    # force some subnormals and edge cases into the corpus
    finite = np.concatenate([finite, [5e-324, -5e-324, 2**-1074, 1.7976931348623157e308, 0.0]])
    as_json = json.dumps(finite.tolist())
    back = np.asarray(json.loads(as_json), dtype=np.float64)
    assert np.array_equal(back, finite)
    # same rule applies to CSV cells
    for v in finite[:200]:
        assert float(repr(float(v))) == v


def test_document_unknown_field_rejected():
    doc = save_network(_corpus_net(0))
    doc["comment"] = "hello"
    with pytest.raises(DocumentError, match="unknown"):
        load_network(doc)


def test_document_version_rejected():
    doc = save_network(_corpus_net(0))
    doc["version"] = 2
    with pytest.raises(DocumentError, match="version"):
        load_network(doc)


def test_document_bias_length_names_layer():
    doc = save_network(_corpus_net(0))
    doc["layers"][1]["biases"] = doc["layers"][1]["biases"][:-1]
    with pytest.raises(DocumentError, match="layer 2"):
        load_network(doc)


def test_document_nan_weight_rejected():
    doc = save_network(_corpus_net(0))
    doc["layers"][0]["weights"][0][0] = float("nan")
    with pytest.raises(DocumentError, match="non-finite"):
        load_network(doc)


def test_document_missing_field():
    doc = save_network(_corpus_net(0))
    del doc["input_dim"]
    with pytest.raises(DocumentError, match="missing"):
        load_network(doc)


# --- result CSV -------------------------------------------------------------------


def _row(**overrides):
    row = {
        "experiment": "sweep_k",
        "seed": 3,
        "activation": "relu",
        "K": 2.0,
        "L": 4,
        "widths": "4x4x4x4",
        "f": 2,
        "omega_av": 0.1 + 0.2,  # deliberately non-terminating binary value
        "omega_mav": 1.0,
        "omega_max": 2.0,
        "omega_std": 0.5,
        "erf_av": 3.0,
        "erf_max": 4.0,
        "patterns": 120,
        "inputs": 1000,
        "mode": "exhaustive",
    }
    row.update(overrides)
    return row


def test_results_header_exact():
    text = results_text([])
    assert text == (
        "experiment,seed,activation,K,L,widths,f,omega_av,omega_mav,omega_max,"
        "omega_std,erf_av,erf_max,patterns,inputs,mode\n"
    )


def test_results_row_arity_and_round_trip():
    text = results_text([_row()])
    lines = text.strip().split("\n")
    assert len(lines) == 2
    cells = lines[1].split(",")
    assert len(cells) == 16
    assert float(cells[RESULT_FIELDS.index("omega_av")]) == 0.1 + 0.2


def test_results_empty_cells_for_missing_omega():
    text = results_text([_row(omega_av=None, omega_mav=None, omega_max=None,
                              omega_std=None, patterns=None, inputs=None, mode=None)])
    cells = text.strip().split("\n")[1].split(",")
    assert cells[RESULT_FIELDS.index("omega_av")] == ""
    assert cells[RESULT_FIELDS.index("mode")] == ""
    assert cells[RESULT_FIELDS.index("erf_av")] == "3.0"


def test_results_mixed_schema_rejected():
    bad = _row()
    bad.pop("mode")
    bad["extra"] = 1
    with pytest.raises(ValueError, match="schema"):
        results_text([_row(), bad])


def test_results_to_file(tmp_path):
    out = tmp_path / "r.csv"
    write_results([_row()], out)
    assert out.read_text() == results_text([_row()])


def test_write_csv_generic(tmp_path):
    buf = io.StringIO()
    write_csv(buf, ("a", "b"), [[1, 0.5], [2, None]])
    assert buf.getvalue() == "a,b\n1,0.5\n2,\n"
