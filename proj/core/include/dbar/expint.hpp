#pragma once

/// \file expint.hpp
/// Principal-branch complex exponential integral E1(z) =
/// \int_z^\infty e^{-t}/t dt (cut along the negative real axis), via the
/// alternating power series for moderate |z| and a modified-Lentz continued
/// fraction otherwise.

#include "dbar/types.hpp"

namespace dbar {

/// E1(z) for z != 0.  On the cut (z real negative) the principal value
/// (real part) is returned with Im = -pi (limit from below is +pi; the
/// library only consumes Re E1 there, which is continuous).
Complex expint_e1(Complex z);

}  // namespace dbar
