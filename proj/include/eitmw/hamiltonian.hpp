#pragma once

#include <array>
#include <optional>

#include "eitmw/model.hpp"

namespace eitmw {

/// Exactly Hermitian 3x3 matrix.
class HermitianMatrix3 {
 public:
  /// Throws NotHermitian if |H - H^dagger| exceeds 1e-14 relative to the
  /// largest entry. The stored matrix is the Hermitian part of `entries`.
  static HermitianMatrix3 from_entries(const Matrix3c& entries);

  [[nodiscard]] const Matrix3c& entries() const noexcept { return h_; }
  [[nodiscard]] cd operator()(int i, int j) const { return h_(i, j); }
  /// Frobenius norm.
  [[nodiscard]] double norm() const { return h_.norm(); }

 private:
  explicit HermitianMatrix3(Matrix3c h) : h_(std::move(h)) {}
  Matrix3c h_;
};

/// An eigenpair: real eigenvalue and normalized amplitudes over (|1>, |2>, |3>),
/// phase-fixed so the first component with modulus above 1e-10 is real positive.
struct DressedState {
  double eigenvalue = 0.0;
  Vector3c amplitudes = Vector3c::Zero();

  [[nodiscard]] double excited_weight() const { return std::abs(amplitudes(kExcited)); }
};

/// H = [[D1, -W e^{i phi}, -g], [-W e^{-i phi}, D2, -G], [-g, -G, 0]].
HermitianMatrix3 build_hamiltonian(const SystemParams& p);

/// Eigenpairs sorted by ascending eigenvalue. Cyclic complex Jacobi followed by
/// one Rayleigh-quotient refinement per vector. Degenerate eigenspaces come
/// back as some orthonormal basis. Throws ConvergenceFailure if the sweeps do
/// not converge (not observed for any finite input).
std::array<DressedState, 3> eigensystem(const HermitianMatrix3& h);

/// det(lambda I - H) = lambda^3 - (D1+D2) lambda^2 - lambda (g^2+G^2+W^2)
///                     + lambda D1 D2 + G^2 D1 + g^2 D2 + 2 g G W cos(phi).
double characteristic_residual(double lambda, const SystemParams& p);

/// Unnormalized |3> component of the closed-form eigenvector for `lambda`:
/// G W + e^{i phi} g (D2 - lambda).
cd excited_amplitude(const SystemParams& p, double lambda);

/// The unique eigenstate with |<3|psi>| <= dark_amp_tol, if there is one.
/// Inside a degenerate eigenspace (gap < 1e-9 * max(1, |H|)) the direction
/// with zero excited component is constructed explicitly.
/// Throws MultipleDark if more than one dark direction exists.
std::optional<DressedState> is_dark(const SystemParams& p, const ToleranceConfig& tol = {});

}  // namespace eitmw
