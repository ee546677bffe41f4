#pragma once

#include "driftlab/spectral/field.hpp"

namespace driftlab {

// Plans are created with FFTW_ESTIMATE so repeated runs are bit-identical.
Spectrum forward(const Field& f);
/// Normalised inverse: inverse(forward(f)) == f up to rounding.
Field inverse(const Spectrum& s);

/// Spectrum in the continuous-transform convention f^(xi) = \int f(x) e^{-i x.xi} dx,
/// approximated by the rectangle rule on the grid.
Spectrum forward_continuous(const Field& f);
/// Inverse of forward_continuous: periodised (2 pi)^{-2} \int f^(xi) e^{i x.xi} dxi.
Field inverse_continuous(const Spectrum& s);

}  // namespace driftlab
