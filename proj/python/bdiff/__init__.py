"""Contrast enhancement by stable backward diffusion."""

from ._bdiff import (
    ImageIoError,
    NoClosedFormError,
    StepSizeError,
    DenseWeights,
    GlobalHistogramWeights,
    Kernel,
    LocalDiskWeights,
    Penaliser,
    WeightProvider,
    descent_direction,
    energy,
    enhance_colour,
    enhance_grey_global,
    enhance_grey_local,
    equalisation_lut,
    evolve,
    evolve_to_steady_state,
    from_unit,
    gamma1,
    gamma2,
    hue_preserving_remap,
    linear_flux_steady_state,
    luminance,
    max_step,
    optimal_step,
    read_image,
    step,
    to_unit,
    uniform_steady_state,
    write_image,
)

__all__ = [name for name in dir() if not name.startswith("_")]
