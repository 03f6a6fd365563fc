"""Secrecy evaluation: per-cell reports, grid sweeps, and optimal-scheme selection.

The secrecy margin is delta_direct = I_AB - max(I_AE, I_BE) for direct
reconciliation and delta_reverse = I_AB - I_BE for reverse reconciliation,
computed from the bitwise mutual information of the sliced strings. One
channel realization is generated per transmission value and shared by every
scheme evaluated there, so scheme comparisons always see identical data.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .channel import ChannelParams, ChannelRealization, Stream, transmit
from .infotheory import (
    AlphabetCapacityError,
    bit_error_rate,
    conditional_mi,
    mutual_information_bitwise,
    mutual_information_symbols,
    plugin_bias,
)
from .slicing import Numbering, Positioning, SlicingScheme, build_labels, slice_samples

# The six-method grid studied at 2^4, 2^5 and 2^6 bins.
DEFAULT_BITS = (4, 5, 6)


def default_schemes(width_multiplier: float = 3.0) -> list[SlicingScheme]:
    """The full 18-scheme grid: positionings x numberings x bit depths."""
    return [
        SlicingScheme(pos, num, bits, width_multiplier)
        for pos in Positioning
        for num in Numbering
        for bits in DEFAULT_BITS
    ]


def default_t_grid() -> np.ndarray:
    """Transmission grid 0.05 to 0.95 in steps of 0.05."""
    return np.round(np.arange(1, 20) * 0.05, 10)


@dataclass(frozen=True)
class SecrecyReport:
    """All secrecy quantities for one (transmission, scheme) cell."""

    transmission: float
    scheme: SlicingScheme
    i_ab: float
    i_ae: float
    i_be: float
    i_ab_sym: float
    i_ae_sym: float
    i_be_sym: float
    ber_ab: float
    ber_ae: float
    ber_be: float
    delta_direct: float
    delta_reverse: float
    cmi_ab_given_e: float | None
    label_collisions: int
    n: int
    seed: int


@dataclass(frozen=True)
class SweepTable:
    """Sweep output: one report per (transmission, scheme), deterministic order."""

    rows: tuple[SecrecyReport, ...]
    t_grid: tuple[float, ...]
    schemes: tuple[SlicingScheme, ...]
    base: ChannelParams


def secrecy_deltas(i_ab: float, i_ae: float, i_be: float) -> tuple[float, float]:
    """(direct, reverse) secrecy margins from the three mutual informations."""
    return i_ab - max(i_ae, i_be), i_ab - i_be


def evaluate_scheme(realization: ChannelRealization, scheme: SlicingScheme) -> SecrecyReport:
    """Slice all three parties with the same scheme (own edges each) and report.

    The eavesdropper is restricted to the legitimate parties' scheme; her
    only advantage is her own received data.
    """
    mats = {
        name: slice_samples(samples, scheme)
        for name, samples in (
            ("alice", realization.alice),
            ("bob", realization.bob),
            ("eve", realization.eve),
        )
    }
    a, b, e = mats["alice"], mats["bob"], mats["eve"]

    i_ab = mutual_information_bitwise(a, b).value
    i_ae = mutual_information_bitwise(a, e).value
    i_be = mutual_information_bitwise(b, e).value
    delta_direct, delta_reverse = secrecy_deltas(i_ab, i_ae, i_be)

    try:
        cmi = conditional_mi(a.symbol_index, b.symbol_index, e.symbol_index).value
    except AlphabetCapacityError:
        cmi = None

    p = realization.params
    return SecrecyReport(
        transmission=p.transmission,
        scheme=scheme,
        i_ab=i_ab,
        i_ae=i_ae,
        i_be=i_be,
        i_ab_sym=mutual_information_symbols(a.symbol_index, b.symbol_index).value,
        i_ae_sym=mutual_information_symbols(a.symbol_index, e.symbol_index).value,
        i_be_sym=mutual_information_symbols(b.symbol_index, e.symbol_index).value,
        ber_ab=bit_error_rate(a, b),
        ber_ae=bit_error_rate(a, e),
        ber_be=bit_error_rate(b, e),
        delta_direct=delta_direct,
        delta_reverse=delta_reverse,
        cmi_ab_given_e=cmi,
        label_collisions=build_labels(scheme.numbering, scheme.bits).collisions,
        n=p.samples,
        seed=p.seed,
    )


def realization_for_cell(base: ChannelParams, t: float, t_index: int) -> ChannelRealization:
    """The shared realization for one transmission cell of a sweep.

    The sub-stream is keyed on the cell index so every scheme at this
    transmission sees the same samples and parallel schedules cannot
    reorder draws.
    """
    params = replace(base, transmission=float(t))
    return transmit(params, base_stream=Stream(base.seed, (t_index,)))


def _sweep_cell(args: tuple) -> list[SecrecyReport]:
    base, t, t_index, schemes = args
    realization = realization_for_cell(base, t, t_index)
    return [evaluate_scheme(realization, scheme) for scheme in schemes]


def sweep(
    t_grid,
    schemes,
    base: ChannelParams,
    workers: int = 1,
) -> SweepTable:
    """Evaluate every scheme at every transmission of the grid.

    Output is bit-identical for any worker count: cell seeds derive from
    cell content, and rows are assembled in (transmission, scheme) order.
    """
    t_grid = [float(t) for t in t_grid]
    schemes = list(schemes)
    if not t_grid or not schemes:
        raise ValueError("t_grid and schemes must be non-empty")
    for t in t_grid:
        if not 0.0 <= t <= 1.0:
            raise ValueError(f"transmission {t} outside [0, 1]")

    cells = [(base, t, i, schemes) for i, t in enumerate(t_grid)]
    try:
        if workers > 1 and len(cells) > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                per_cell = list(pool.map(_sweep_cell, cells))
        else:
            per_cell = [_sweep_cell(cell) for cell in cells]
    except Exception as exc:
        raise RuntimeError(f"sweep failed: {exc}") from exc

    rows = tuple(report for cell_rows in per_cell for report in cell_rows)
    return SweepTable(
        rows=rows,
        t_grid=tuple(t_grid),
        schemes=tuple(schemes),
        base=base,
    )


def best_method(table: SweepTable, mode: str) -> list[tuple[float, SlicingScheme]]:
    """Per transmission, the scheme maximizing the requested secrecy margin.

    Ties break toward fewer bits, then lower Alice-Bob BER, then the
    lexicographically smallest scheme string, giving a total order.
    """
    if mode not in ("direct", "reverse"):
        raise ValueError(f"mode must be 'direct' or 'reverse', got {mode!r}")
    if not table.rows:
        raise ValueError("empty sweep table")

    winners = []
    for t in table.t_grid:
        candidates = [r for r in table.rows if r.transmission == t]
        best = min(
            candidates,
            key=lambda r: (
                -(r.delta_direct if mode == "direct" else r.delta_reverse),
                r.scheme.bits,
                r.ber_ab,
                str(r.scheme),
            ),
        )
        winners.append((t, best.scheme))
    return winners


def post_exchange_conditions(
    realization: ChannelRealization, bits: int = 4
) -> dict[str, tuple[float, float]]:
    """Sanity check that the channel leaves everyone with usable information.

    Returns {name: (estimate, threshold)} for I(X;Y), I(X;Z) and I(X;Y|Z)
    on equal-probability symbol indices; the threshold is three times the
    plug-in bias oracle, so an estimate above it is genuinely positive
    rather than estimator bias.
    """
    scheme = SlicingScheme(Positioning.EQUAL_PROBABILITY, Numbering.BINARY, bits)
    x = slice_samples(realization.alice, scheme).symbol_index
    y = slice_samples(realization.bob, scheme).symbol_index
    z = slice_samples(realization.eve, scheme).symbol_index
    n = len(x)
    k = 1 << bits

    pair_bias = plugin_bias(k, k, n)
    cond_bias = plugin_bias(k, k, n, conditioning=k)
    return {
        "I(X;Y)": (mutual_information_symbols(x, y).value, 3 * pair_bias),
        "I(X;Z)": (mutual_information_symbols(x, z).value, 3 * pair_bias),
        "I(X;Y|Z)": (conditional_mi(x, y, z).value, 3 * cond_bias),
    }
