# Copyright 2026 The irs-isac Authors
# SPDX-License-Identifier: Apache-2.0
"""CRB-minimizing joint transmit and IRS beamforming for multiuser ISAC."""

from ._core import (  # noqa: F401
    AoSolution,
    ChannelSet,
    SystemParams,
    TransmitResult,
    alternating_optimize,
    benchmark_separate,
    benchmark_transmit_only,
    combined_channel,
    crb,
    empirical_mse,
    gen_channels,
    random_target,
    run_sweep,
    sensing_only_bound,
    sinr,
    summarize,
    transmit_step,
    validate_config,
)

__all__ = [n for n in dir() if not n.startswith("_")]
