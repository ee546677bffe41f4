#pragma once

#include "driftlab/spectral/field.hpp"
#include "driftlab/spectral/multiplier.hpp"

namespace driftlab {

/// Threshold above which moments are considered boundary contaminated.
inline constexpr double kTailMassLimit = 1e-6;

/// Rectangle-rule L^q norm, q in [1, inf]. Pass infinity for the max norm.
double lq_norm(const Field& f, double q);

/// Fraction of \int|f| carried by samples with max(|x1|, |x2|) >= 0.4 L.
double tail_mass(const Field& f);

enum class FirstMomentSign {
  negated,   ///< M1 = -\int x f dx, the sign used by the asymptotic profiles
  position,  ///< M1 = +\int x f dx
};

struct MomentSet {
  double m0 = 0.0;
  Vec2 m1{0.0, 0.0};
  double m2 = 0.0;  ///< \int |x|^2 |f| dx
  double tail_mass = 0.0;
  FirstMomentSign sign = FirstMomentSign::negated;

  bool boundary_contaminated() const { return tail_mass > kTailMassLimit; }
};

/// Moments about the box centre. Check boundary_contaminated() before trusting them.
MomentSet moments(const Field& f, FirstMomentSign sign = FirstMomentSign::negated);

/// Signed second moments \int x_a x_b f dx (not |f|), used to pick profile time shifts.
struct SecondMoments {
  double xx = 0.0;
  double xy = 0.0;
  double yy = 0.0;
};
SecondMoments second_moments(const Field& f);

/// 2/3-rule mask: zero every mode with |m_j| > N/3 on either axis.
Spectrum dealias(Spectrum s);
bool dealias_keeps(const Grid& grid, std::size_t i, std::size_t j);

/// \int f (op g) dx by quadrature.
double skew_pairing(const Field& f, const Field& g, const MultiplierOp& op);

/// \int f g dx.
double inner_product(const Field& f, const Field& g);

}  // namespace driftlab
