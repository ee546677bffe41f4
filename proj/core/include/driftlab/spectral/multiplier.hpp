#pragma once

#include <complex>
#include <functional>
#include <string>

#include "driftlab/spectral/field.hpp"

namespace driftlab {

/// Scalar Fourier multiplier m(xi) applied as f -> F^{-1}[m F[f]].
///
/// Odd symbols (derivatives, Riesz transforms) are zeroed on the Nyquist row
/// and column so the output stays real. The value at xi = 0 is fixed by the
/// zero-mode policy rather than by evaluating the symbol there.
class MultiplierOp {
 public:
  using Symbol = std::function<std::complex<double>(double k1, double k2)>;

  MultiplierOp(std::string name, Symbol symbol, std::complex<double> zero_mode, bool odd);

  const std::string& name() const { return name_; }
  bool odd() const { return odd_; }
  std::complex<double> zero_mode() const { return zero_mode_; }

  /// Symbol value at lattice indices (i, j) of the full N x N spectrum.
  std::complex<double> at(const Grid& grid, std::size_t i, std::size_t j) const;
  /// Raw symbol away from the lattice (no Nyquist or zero-mode handling).
  std::complex<double> symbol(double k1, double k2) const { return symbol_(k1, k2); }

  /// Throws std::logic_error unless m(-xi) == conj(m(xi)) on the whole lattice.
  void check_hermitian(const Grid& grid) const;

 private:
  std::string name_;
  Symbol symbol_;
  std::complex<double> zero_mode_;
  bool odd_;
};

struct VectorMultiplierOp {
  MultiplierOp c1;
  MultiplierOp c2;
};

namespace multipliers {

MultiplierOp partial(int axis);
/// R_j = d_j (-Delta)^{-1/2}, symbol i xi_j / |xi|, zero at xi = 0.
MultiplierOp riesz(int axis);
VectorMultiplierOp gradient();
VectorMultiplierOp gradient_perp();
VectorMultiplierOp riesz_vector();
/// R^perp = (-R_2, R_1).
VectorMultiplierOp riesz_perp();
MultiplierOp laplacian();
/// Lambda = (-Delta)^{1/2}, symbol |xi|.
MultiplierOp lambda();
MultiplierOp heat(double t);
/// |xi|^{2k} e^{-t |xi|^2}, the symbol of (-Delta)^k G(t).
MultiplierOp heat_laplacian_power(int k, double t);

}  // namespace multipliers

Spectrum apply(const MultiplierOp& op, const Spectrum& s);
Field apply_multiplier(const MultiplierOp& op, const Field& f);
VectorField apply_multiplier(const VectorMultiplierOp& op, const Field& f);

}  // namespace driftlab
