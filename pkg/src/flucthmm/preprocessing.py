"""Image-to-series chain: horizontal unfolding, fluctuation normalization,
cumulative summation, and windowing into fixed-length instances.

Normalization uses the population (divide-by-N) standard deviation and is
applied once to the full unfolded series before windowing; the cumulative sum
of the z-scored fluctuations ends at zero by construction.
"""

from dataclasses import dataclass

import numpy as np

from .errors import (
    DegenerateVariance,
    EmptySequence,
    InvalidModel,
    SequenceTooShort,
    WindowTooLong,
)


@dataclass
class WindowingConfig:
    window_length: int = 1000
    stride: int | None = None  # None means non-overlapping windows

    def __post_init__(self):
        if self.stride is None:
            self.stride = self.window_length
        if self.window_length < 2:
            raise InvalidModel(f"window_length must be >= 2, got {self.window_length}")
        if self.stride < 1:
            raise InvalidModel(f"stride must be >= 1, got {self.stride}")


def _check_image(image) -> np.ndarray:
    image = np.asarray(image, dtype=np.float64)
    if image.ndim != 2 or image.shape[0] < 1 or image.shape[1] < 1:
        raise InvalidModel(f"image must be a nonempty 2-D grid, got shape {image.shape}")
    if not np.all(np.isfinite(image)):
        raise InvalidModel("image contains non-finite values")
    return image


def unfold_horizontal(image) -> np.ndarray:
    """Row-major concatenation of the grid: output[r*cols + c] = image[r, c]."""
    return _check_image(image).reshape(-1).copy()


def zscore(series) -> np.ndarray:
    """(series - mean) / population std; the fluctuation series."""
    series = np.asarray(series, dtype=np.float64)
    if series.ndim != 1 or series.shape[0] < 2:
        raise SequenceTooShort("z-scoring needs a 1-D series of at least 2 points")
    std = float(np.std(series))
    if std == 0.0:
        raise DegenerateVariance("constant series has zero variance")
    return (series - np.mean(series)) / std


def cumulative_sum(fluct) -> np.ndarray:
    """Running sum of the fluctuations; differencing recovers them exactly."""
    fluct = np.asarray(fluct, dtype=np.float64)
    if fluct.ndim != 1 or fluct.shape[0] == 0:
        raise EmptySequence("cumulative sum needs a nonempty 1-D series")
    return np.cumsum(fluct)


def window(series, config: WindowingConfig) -> list:
    """Fixed-length windows at offsets 0, stride, 2*stride, ...

    The trailing remainder shorter than window_length is dropped; padding
    would bias likelihood comparisons across classes.
    """
    series = np.asarray(series, dtype=np.float64)
    if config.window_length > series.shape[0]:
        raise WindowTooLong(
            f"window of {config.window_length} on a length-{series.shape[0]} series"
        )
    count = (series.shape[0] - config.window_length) // config.stride + 1
    return [
        series[k * config.stride : k * config.stride + config.window_length].copy()
        for k in range(count)
    ]


def preprocess(image, config: WindowingConfig) -> list:
    """Full chain: unfold -> zscore -> cumulative_sum -> window."""
    return window(cumulative_sum(zscore(unfold_horizontal(image))), config)
