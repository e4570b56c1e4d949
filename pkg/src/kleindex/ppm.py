"""Binary PPM (P6) image output and hit-count tone mapping."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .render import Canvas

TONES = ("binary", "log_density")


@dataclass
class PpmImage:
    """8-bit RGB pixels, shape (height, width, 3)."""

    pixels: np.ndarray

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]


def tone_map(canvas: Canvas, tone: str = "binary") -> PpmImage:
    """Map hit counts to pixels.

    binary: any hit is white, no hit is black.  log_density: gray value
    round(255 * log(1 + hits) / log(1 + max_hits)), black when the canvas
    is empty.  Both depend only on the integer hit grid, so equal canvases
    give byte-equal images.
    """
    if tone not in TONES:
        raise ValueError(f"unknown tone {tone!r}; choose one of {TONES}")
    hits = canvas.hits
    if tone == "binary":
        gray = np.where(hits > 0, np.uint8(255), np.uint8(0))
    else:
        peak = int(hits.max())
        if peak == 0:
            gray = np.zeros(hits.shape, dtype=np.uint8)
        else:
            scaled = np.floor(255.0 * np.log1p(hits) / np.log1p(peak) + 0.5)
            gray = scaled.astype(np.uint8)
    pixels = np.repeat(gray[:, :, np.newaxis], 3, axis=2)
    return PpmImage(pixels=np.ascontiguousarray(pixels))


def ppm_bytes(image: PpmImage) -> bytes:
    """Serialize as binary PPM: "P6\\n<w> <h>\\n255\\n" then raw RGB rows."""
    header = f"P6\n{image.width} {image.height}\n255\n".encode("ascii")
    return header + image.pixels.tobytes()


def write_ppm(image: PpmImage, path) -> None:
    with open(path, "wb") as fh:
        fh.write(ppm_bytes(image))
