#include "eitmw/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace eitmw {
namespace {

constexpr int kMaxSweeps = 64;
constexpr double kPhaseFloor = 1e-10;

double off_diagonal_norm(const Matrix3c& a) {
  return std::sqrt(2.0 * (std::norm(a(0, 1)) + std::norm(a(0, 2)) + std::norm(a(1, 2))));
}

// Multiply by a global phase so the first non-negligible component is real positive.
void fix_phase(Vector3c& v) {
  for (int k = 0; k < 3; ++k) {
    const double m = std::abs(v(k));
    if (m > kPhaseFloor) {
      v *= std::conj(v(k)) / m;
      v(k) = cd(m, 0.0);
      return;
    }
  }
}

DressedState make_state(const Matrix3c& h, Vector3c v) {
  v.normalize();
  fix_phase(v);
  const double lambda = v.dot(h * v).real();  // Rayleigh quotient
  return DressedState{lambda, v};
}

bool lexicographic_less(const Vector3c& a, const Vector3c& b) {
  for (int k = 0; k < 3; ++k) {
    if (a(k).real() != b(k).real()) return a(k).real() < b(k).real();
    if (a(k).imag() != b(k).imag()) return a(k).imag() < b(k).imag();
  }
  return false;
}

}  // namespace

HermitianMatrix3 HermitianMatrix3::from_entries(const Matrix3c& entries) {
  if (!entries.allFinite()) throw Error(ErrorCode::NonFinite, "matrix has non-finite entries");
  const double scale = std::max(1.0, entries.cwiseAbs().maxCoeff());
  const double dev = (entries - entries.adjoint()).cwiseAbs().maxCoeff();
  if (dev > 1e-14 * scale) throw Error(ErrorCode::NotHermitian, "matrix is not Hermitian", dev);
  return HermitianMatrix3(0.5 * (entries + entries.adjoint()));
}

HermitianMatrix3 build_hamiltonian(const SystemParams& p) {
  const cd mw = p.omega * std::polar(1.0, p.phi);
  Matrix3c h;
  // clang-format off
  h << p.delta1,        -mw,       -p.g,
       -std::conj(mw),  p.delta2,  -p.G,
       -p.g,            -p.G,      0.0;
  // clang-format on
  return HermitianMatrix3::from_entries(h);
}

std::array<DressedState, 3> eigensystem(const HermitianMatrix3& hm) {
  const Matrix3c& h = hm.entries();
  Matrix3c a = h;
  Matrix3c vecs = Matrix3c::Identity();

  const double scale = h.norm();
  const double target = 4.0 * std::numeric_limits<double>::epsilon() * scale;

  int sweep = 0;
  double off = off_diagonal_norm(a);
  while (off > target) {
    if (++sweep > kMaxSweeps) {
      throw Error(ErrorCode::ConvergenceFailure, "Jacobi sweeps did not converge", off);
    }
    for (int p = 0; p < 2; ++p) {
      for (int q = p + 1; q < 3; ++q) {
        const cd b = a(p, q);
        const double mag = std::abs(b);
        if (mag == 0.0) continue;
        // Phase rotation makes the (p,q) element real, then a real Givens
        // rotation annihilates it.
        const cd phase = std::conj(b) / mag;  // e^{-i alpha}
        const double theta = 0.5 * std::atan2(2.0 * mag, a(q, q).real() - a(p, p).real());
        const double c = std::cos(theta);
        const double s = std::sin(theta);

        Matrix3c u = Matrix3c::Identity();
        u(p, p) = c;
        u(p, q) = s;
        u(q, p) = -s * phase;
        u(q, q) = c * phase;

        a = u.adjoint() * a * u;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        vecs = vecs * u;
      }
    }
    const double next = off_diagonal_norm(a);
    // rounding floor reached
    if (next >= off && next < 1e-13 * scale) break;
    off = next;
  }

  std::array<DressedState, 3> states;
  for (int k = 0; k < 3; ++k) states[k] = make_state(h, vecs.col(k));

  const double tie = 1e-12 * std::max(1.0, scale);
  std::sort(states.begin(), states.end(), [tie](const DressedState& x, const DressedState& y) {
    if (std::abs(x.eigenvalue - y.eigenvalue) > tie) return x.eigenvalue < y.eigenvalue;
    return lexicographic_less(x.amplitudes, y.amplitudes);
  });
  return states;
}

double characteristic_residual(double lambda, const SystemParams& p) {
  const double l2 = lambda * lambda;
  return l2 * lambda - (p.delta1 + p.delta2) * l2 -
         lambda * (p.g * p.g + p.G * p.G + p.omega * p.omega) + lambda * p.delta1 * p.delta2 +
         p.G * p.G * p.delta1 + p.g * p.g * p.delta2 +
         2.0 * p.g * p.G * p.omega * std::cos(p.phi);
}

cd excited_amplitude(const SystemParams& p, double lambda) {
  return p.G * p.omega + std::polar(1.0, p.phi) * p.g * (p.delta2 - lambda);
}

std::optional<DressedState> is_dark(const SystemParams& p, const ToleranceConfig& tol) {
  const HermitianMatrix3 hm = build_hamiltonian(p);
  const auto states = eigensystem(hm);
  const double gap = 1e-9 * std::max(1.0, hm.norm());

  std::vector<DressedState> dark;
  std::size_t dark_directions = 0;

  std::size_t begin = 0;
  while (begin < states.size()) {
    std::size_t end = begin + 1;
    while (end < states.size() && states[end].eigenvalue - states[end - 1].eigenvalue < gap) ++end;
    const std::size_t size = end - begin;

    Eigen::VectorXcd w(size);
    for (std::size_t k = 0; k < size; ++k) w(k) = states[begin + k].amplitudes(kExcited);

    if (w.norm() <= tol.dark_amp_tol) {
      // the whole cluster is dark
      dark_directions += size;
      for (std::size_t k = begin; k < end; ++k) dark.push_back(states[k]);
    } else if (size == 2) {
      // one combination of the pair cancels the |3> component
      const Vector3c v = w(1) * states[begin].amplitudes - w(0) * states[begin + 1].amplitudes;
      dark.push_back(make_state(hm.entries(), v));
      ++dark_directions;
    } else if (size == 3) {
      // H proportional to identity within tolerance: a 2D dark subspace
      dark_directions += 2;
    }
    begin = end;
  }

  if (dark_directions == 0) return std::nullopt;
  if (dark_directions > 1) {
    throw Error(ErrorCode::MultipleDark, "more than one eigenvector has no excited component",
                static_cast<double>(dark_directions));
  }
  return dark.front();
}

}  // namespace eitmw
