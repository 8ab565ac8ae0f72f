#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "nsbox/box.hpp"
#include "nsbox/sampling.hpp"

namespace nsbox {

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<std::array<double, 3>, 3>;
using Density = Eigen::Matrix4cd;

/// Validated two-qubit density matrix (Alice (x) Bob, |0> = +1 eigenvector of
/// sigma_z) together with its Bloch data r, s and correlation tensor T.
class TwoQubitState {
 public:
  /// Throws InvalidState unless rho is Hermitian, unit-trace and PSD within tol.
  static TwoQubitState from_density(const Density& rho, double tol = kValTol);
  /// rho = (1 + r.sigma (x) 1 + 1 (x) s.sigma + sum T_ij sigma_i (x) sigma_j) / 4.
  static TwoQubitState from_bloch(const Vec3& r, const Vec3& s, const Mat3& t, double tol = kValTol);

  const Density& density() const noexcept { return rho_; }
  const Vec3& r() const noexcept { return r_; }
  const Vec3& s() const noexcept { return s_; }
  const Mat3& t() const noexcept { return t_; }

  /// sin^2(2 theta) for Schmidt states; empty otherwise.
  std::optional<double> tangle() const noexcept { return tangle_; }
  TwoQubitState with_tangle(double tau) const;

 private:
  explicit TwoQubitState(const Density& rho);
  Density rho_;
  Vec3 r_{};
  Vec3 s_{};
  Mat3 t_{};
  std::optional<double> tangle_;
};

/// Measurement directions: Alice measures a0.sigma or a1.sigma, Bob b0 or b1.
struct Settings {
  Vec3 a0{}, a1{}, b0{}, b1{};

  /// Throws InvalidSettings unless every vector has unit norm within tol.
  static Settings make(const Vec3& a0, const Vec3& a1, const Vec3& b0, const Vec3& b1, double tol = kValTol);

  const Vec3& a(int i) const { return i == 0 ? a0 : a1; }
  const Vec3& b(int j) const { return j == 0 ? b0 : b1; }
};

/// P(m,n|i,j) = tr(rho Pi^m_{A_i} (x) Pi^n_{B_j}).
Box born_box(const TwoQubitState& state, const Settings& settings);
/// Same box from the Bloch data, (1 + a a_i.r + b b_j.s + ab a_i^T T b_j) / 4.
Box born_box_bloch(const TwoQubitState& state, const Settings& settings);

/// cos(theta)|00> + sin(theta)|11>, theta in [0, pi/4]; carries its tangle.
TwoQubitState schmidt_state(double theta);
/// p |psi+><psi+| + (1-p) 1/4.
TwoQubitState werner_state(double p);
/// p |psi+><psi+| + (1-p) (|00><00| + |11><11|)/2.
TwoQubitState psi_plus_cc_mixture(double p);
/// Mixture of the 8 maximally entangled states, weight order
/// [psi^0_0, psi^1_0, psi^0_1, psi^1_1, phi^0_0, phi^1_0, phi^0_1, phi^1_1] with
/// psi^j_k = (|00> + (-1)^j i^k |11>)/sqrt2 and phi^j_k = (|01> + (-1)^j i^k |10>)/sqrt2.
TwoQubitState me_mixture(std::span<const double, 8> weights);
/// p0/4 (1 + r.sigma)(x)(1 + s0.sigma) + p1/4 (1 - r.sigma)(x)(1 + s1.sigma); r unit, |s0|,|s1| <= 1.
TwoQubitState cq_state(double p0, const Vec3& r, const Vec3& s0, const Vec3& s1);
/// Mirror of cq_state: p0/4 (1 + r0.sigma)(x)(1 + s.sigma) + p1/4 (1 + r1.sigma)(x)(1 - s.sigma).
TwoQubitState qc_state(double p0, const Vec3& s, const Vec3& r0, const Vec3& r1);
TwoQubitState product_state(const Vec3& r, const Vec3& s);

/// Builds a state by name: schmidt(theta), werner(p), psi_plus_cc(p), psi_plus,
/// me_mixture(8 weights), cq(p0, r[3], s0[3], s1[3]), qc(p0, s[3], r0[3], r1[3]),
/// product(r[3], s[3]), white. Throws UnknownState or OutOfRange.
TwoQubitState make_state(std::string_view name, std::span<const double> params);
std::vector<std::string> state_names();

/// True iff the second singular value of T is at most tol.
bool factorizes(const TwoQubitState& state, double tol = kValTol);

/// Named measurement settings. Throws UnknownPreset, or OutOfRange for a
/// wrong parameter count or a parameter outside the preset's domain.
Settings preset_settings(std::string_view name, std::span<const double> params = {});
std::vector<std::string> preset_names();
/// Number of parameters a preset takes; throws UnknownPreset.
int preset_param_count(std::string_view name);

Vec3 random_unit_vector(Rng& rng);
/// Uniform in the unit ball.
Vec3 random_bloch_vector(Rng& rng);
Settings random_settings(Rng& rng);
TwoQubitState random_cq_state(Rng& rng);
TwoQubitState random_qc_state(Rng& rng);
/// Flat Dirichlet weights.
std::array<double, 8> random_me_weights(Rng& rng);

}  // namespace nsbox
