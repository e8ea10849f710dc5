"""Descriptive statistics for per-point feature series.

summarize_series produces the fixed 19-statistic roster used to vectorize
trajectories. Quantiles use linear interpolation between order statistics,
spread measures are sample-based (ddof=1), and degenerate cases clamp to 0
so every feature vector stays finite:

* vcoef with mean 0 -> 0
* skew/kurt with zero spread (or too few points for skew) -> 0
* meanse with a single point -> 0
"""
from __future__ import annotations

import math

import numpy as np

STATISTIC_NAMES: tuple[str, ...] = (
    "quant_min", "quant_05", "quant_10", "quant_25", "quant_median",
    "quant_75", "quant_90", "quant_95", "quant_max",
    "mean", "sd", "variance", "vcoef", "mad", "meanse",
    "skew", "kurt", "iqr", "range",
)

_QUANT_LEVELS = (0.0, 0.05, 0.10, 0.25, 0.50, 0.75, 0.90, 0.95, 1.0)


def summarize_series(values) -> dict[str, float]:
    """All 19 statistics of a numeric sequence, keyed per STATISTIC_NAMES.

    skew is the adjusted Fisher-Pearson coefficient, kurt is excess kurtosis
    from population moments; both are 0 for constant input.
    """
    x = np.asarray(values, dtype=float)
    if x.ndim != 1 or x.size == 0:
        raise ValueError("summarize_series needs a non-empty 1-D sequence")
    if not np.all(np.isfinite(x)):
        raise ValueError("summarize_series input must be finite")
    n = x.size

    q = np.quantile(x, _QUANT_LEVELS)
    mean = float(np.mean(x))
    variance = float(np.var(x, ddof=1)) if n > 1 else 0.0
    sd = math.sqrt(variance)
    med = float(q[4])
    mad = float(np.median(np.abs(x - med)))

    vcoef = sd / mean if mean != 0.0 else 0.0
    meanse = sd / math.sqrt(n) if n > 1 else 0.0

    # moments over standardized deviations: stays finite even when the raw
    # spread is tiny enough for sd**3 or m2**2 to underflow
    if sd > 0.0 and n >= 3:
        z = (x - mean) / sd
        skew = (n * n / ((n - 1.0) * (n - 2.0))) * float(np.mean(z ** 3))
    else:
        skew = 0.0
    if sd > 0.0:
        sd_pop = math.sqrt(float(np.mean((x - mean) ** 2)))
        if sd_pop > 0.0:
            zp = (x - mean) / sd_pop
            kurt = float(np.mean(zp ** 4)) - 3.0
        else:
            kurt = 0.0
    else:
        kurt = 0.0

    return {
        "quant_min": float(q[0]), "quant_05": float(q[1]), "quant_10": float(q[2]),
        "quant_25": float(q[3]), "quant_median": med, "quant_75": float(q[5]),
        "quant_90": float(q[6]), "quant_95": float(q[7]), "quant_max": float(q[8]),
        "mean": mean, "sd": sd, "variance": variance, "vcoef": vcoef,
        "mad": mad, "meanse": meanse, "skew": skew, "kurt": kurt,
        "iqr": float(q[5] - q[3]), "range": float(q[8] - q[0]),
    }
