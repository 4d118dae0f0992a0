#pragma once

/// \file phantom.hpp
/// Synthetic conductivity presets used by the forward pipeline and the
/// consistency suites.

#include <string>

#include "dbar/potential.hpp"

namespace dbar {

/// Preset parameters; each preset has its own defaults, overridable from
/// the run configuration.
struct PhantomParams {
  double rho = 0.75;                ///< support radius of gamma - 1
  Complex contrast{0.3, 0.2};       ///< peak value of gamma - 1
};

/// Per-preset default parameters (see make_phantom for the preset list).
PhantomParams default_phantom_params(const std::string& preset);

/// Available presets:
///  - "one":  gamma identically 1 (contrast ignored).
///  - "bump": smooth compactly supported bump
///            gamma = 1 + contrast * exp(1 - 1/(1 - (r/rho)^2)).
///  - "c1":   once- but not twice-differentiable profile
///            gamma = 1 + contrast * (1 - (r/rho)^2)^2.
///  - "exc":  strongly non-real "bump" profile whose default contrast
///            places scattering resonances inside the data disc (used by
///            the resonance-location suites).
Conductivity make_phantom(const std::string& preset, int n, double half_width,
                          const PhantomParams& params);

/// Preset with its own defaults applied.
Conductivity make_phantom(const std::string& preset, int n, double half_width);

}  // namespace dbar
