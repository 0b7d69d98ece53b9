#!/usr/bin/env python3
"""Build the bundled MNIST subset (data/mnist/) from the npm `mnist` package.

The npm package `mnist` (MIT, https://github.com/cazala/mnist) ships 10,000
real MNIST samples as JSON arrays of pixel/255 values rounded to 3 decimals.
That rounding is injective per byte (adjacent pixel levels differ by 1/255 =
0.0039 > 2 * 0.0005), so round(v * 255) recovers the original bytes exactly.

This script converts those JSON files into the standard IDX format, shuffled
with a fixed seed and split 8,000 train / 2,000 test.  It is a one-time data
preparation step; its outputs are committed under data/mnist/.

Usage:
    npm pack mnist && tar xzf mnist-*.tgz
    python tools/build_bundled_mnist.py package/src/digits data/mnist
"""

import json
import sys
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from crashlab.dataio import write_idx  # noqa: E402
from crashlab.rng import philox  # noqa: E402

TRAIN_COUNT = 8000
SPLIT_SEED = 0


def main(digits_dir: str, out_dir: str) -> None:
    digits_dir = Path(digits_dir)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)

    pixels = []
    labels = []
    for digit in range(10):
        values = json.loads((digits_dir / f"{digit}.json").read_text())["data"]
        arr = np.asarray(values, dtype=np.float64).reshape(-1, 784)
        recovered = np.rint(arr * 255.0)
        if not np.allclose(recovered / 255.0, arr, atol=5e-4):
            raise SystemExit(f"digit {digit}: byte recovery failed")
        pixels.append(recovered.astype(np.uint8))
        labels.append(np.full(arr.shape[0], digit, dtype=np.uint8))
    pixels = np.concatenate(pixels)
    labels = np.concatenate(labels)
    print(f"{pixels.shape[0]} samples, per-class counts {np.bincount(labels).tolist()}")

    order = philox(SPLIT_SEED).permutation(pixels.shape[0])
    pixels, labels = pixels[order], labels[order]

    write_idx(out / "train-images-idx3-ubyte.gz", out / "train-labels-idx1-ubyte.gz",
              pixels[:TRAIN_COUNT], labels[:TRAIN_COUNT])
    write_idx(out / "t10k-images-idx3-ubyte.gz", out / "t10k-labels-idx1-ubyte.gz",
              pixels[TRAIN_COUNT:], labels[TRAIN_COUNT:])
    print(f"wrote {TRAIN_COUNT} train / {pixels.shape[0] - TRAIN_COUNT} test to {out}")


if __name__ == "__main__":
    if len(sys.argv) != 3:
        raise SystemExit(__doc__)
    main(sys.argv[1], sys.argv[2])
