#pragma once

#include <stdexcept>

#include "driftlab/dynamics/model.hpp"
#include "driftlab/spectral/field.hpp"

namespace driftlab {

/// Default truncation of the distortion series. Terms shrink like 2^{-k}, so
/// 48 terms put the tail bound near 1e-14 of the first term.
inline constexpr int kDefaultSeriesTerms = 48;
/// Relative tail bound above which a truncated series is rejected.
inline constexpr double kSeriesTailTolerance = 1e-12;

class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SeriesValue {
  double value = 0.0;
  /// Rigorous bound on the omitted terms at this point.
  double tail = 0.0;
};

/// |M0| M0 for CD, M0^2 for CD2: the mass of the leading-order flux f[M0 G].
double convection_mass(ModelKind kind, double m0);

/// (|M0| M0 / 8 pi) log(t) a . grad G(t, x).
double logshift_term(double t, Vec2 x, double m0, Vec2 a);

/// Distortion series of the convection models with flux mass c:
///   (c / 8 pi) sum_{k=1}^{K} (t/2)^k a . grad (-Delta)^k G(t) / (k k!).
/// Throws TruncationError when the relative tail bound exceeds tail_tolerance
/// (pass infinity to obtain plain partial sums).
SeriesValue j1_convection(double t, Vec2 x, double c, Vec2 a, int terms = kDefaultSeriesTerms,
                          double tail_tolerance = kSeriesTailTolerance);
/// j1_convection with c = |M0| M0.
SeriesValue j1_cd(double t, Vec2 x, double m0, Vec2 a, int terms = kDefaultSeriesTerms,
                  double tail_tolerance = kSeriesTailTolerance);

/// Distortion series of the forward-Riesz model:
///   -(M0^2 / (4 sqrt(pi))) sum_{k=0}^{K-1} (t/2)^{k+1/2} (2k-1)!! (-Delta)^{k+1} G(t) / (k! (2k+2)!!)
/// with (-1)!! = 0!! = 1.
SeriesValue j1_fr(double t, Vec2 x, double m0, int terms = kDefaultSeriesTerms,
                  double tail_tolerance = kSeriesTailTolerance);

/// Relative tail bounds (omitted weight over first-term weight) for K terms.
double j1_convection_relative_tail(int terms);
double j1_fr_relative_tail(int terms);

enum class TermKind { leading, moment, logshift, j1_cd, j1_fr };

struct ExpansionParams {
  double m0 = 1.0;
  Vec2 m1{0.0, 0.0};
  Vec2 a{0.0, 0.0};
  /// Flux mass for logshift / j1_cd terms (|M0| M0 for CD, M0^2 for CD2).
  double flux_mass = 0.0;
  int terms = kDefaultSeriesTerms;
};

/// One closed-form profile component evaluable at (t, x).
struct ExpansionTerm {
  TermKind kind = TermKind::leading;
  ExpansionParams params;

  double operator()(double t, Vec2 x) const;
  Field sample(const Grid& grid, double t) const;
};

struct StackFlags {
  bool leading = true;
  bool moment = false;
  bool logshift = false;
  bool j1 = false;

  static StackFlags level0() { return {}; }
  /// Every term the model's expansion carries: QG (M0 G, M1.grad G),
  /// CD/CD2 (+ logshift + J1), FR (+ J1).
  static StackFlags full(ModelKind kind);
};

/// Sum of the selected profile terms on the grid at time t. Throws ConfigError
/// when a flag does not apply to the model (logshift or J1 for QG, logshift for FR).
Field expansion_stack(const ModelSpec& model, double t, const Grid& grid, double m0, Vec2 m1,
                      StackFlags flags, int terms = kDefaultSeriesTerms);

}  // namespace driftlab
