#include "nsbox/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

namespace nsbox {

namespace {

using cd = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;

constexpr double kParamSlack = 1e-12;

const std::array<Mat2, 3>& paulis() {
  static const std::array<Mat2, 3> p = [] {
    std::array<Mat2, 3> s;
    s[0] << 0, 1, 1, 0;
    s[1] << 0, cd(0, -1), cd(0, 1), 0;
    s[2] << 1, 0, 0, -1;
    return s;
  }();
  return p;
}

Density kron(const Mat2& a, const Mat2& b) {
  Density out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) out(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
  return out;
}

Mat2 dot_sigma(const Vec3& v) {
  const auto& s = paulis();
  return v[0] * s[0] + v[1] * s[1] + v[2] * s[2];
}

// 1/2 (1 + sign * v.sigma)
Mat2 projector(const Vec3& v, double sign) { return 0.5 * (Mat2::Identity() + sign * dot_sigma(v)); }

double norm(const Vec3& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Vec3 scale(const Vec3& v, double w) { return {w * v[0], w * v[1], w * v[2]}; }

Vec3 add(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }

Density pure(const Eigen::Vector4cd& psi) { return psi * psi.adjoint(); }

Eigen::Vector4cd ket(cd c00, cd c01, cd c10, cd c11) {
  Eigen::Vector4cd v;
  v << c00, c01, c10, c11;
  return v;
}

Density psi_plus_density() {
  const double h = 1.0 / std::numbers::sqrt2;
  return pure(ket(h, 0, 0, h));
}

Density cc_density() {
  Density d = Density::Zero();
  d(0, 0) = 0.5;
  d(3, 3) = 0.5;
  return d;
}

void check_range(const char* what, double x, double lo, double hi) {
  if (!(x >= lo - kParamSlack && x <= hi + kParamSlack)) {
    std::ostringstream msg;
    msg << what << " = " << x << " outside [" << lo << ", " << hi << "]";
    throw Error(ErrorKind::OutOfRange, msg.str());
  }
}

double clamp_param(double x, double lo, double hi) { return std::clamp(x, lo, hi); }

void check_ball(const char* what, const Vec3& v, bool unit) {
  const double n = norm(v);
  const bool ok = unit ? std::abs(n - 1.0) <= kValTol : n <= 1.0 + kValTol;
  if (!ok) {
    std::ostringstream msg;
    msg << what << " has norm " << n << (unit ? ", expected 1" : ", expected <= 1");
    throw Error(ErrorKind::OutOfRange, msg.str());
  }
}

}  // namespace

TwoQubitState::TwoQubitState(const Density& rho) : rho_(rho) {
  const auto& s = paulis();
  const Mat2 id = Mat2::Identity();
  for (int k = 0; k < 3; ++k) {
    r_[k] = (rho_ * kron(s[k], id)).trace().real();
    s_[k] = (rho_ * kron(id, s[k])).trace().real();
    for (int l = 0; l < 3; ++l) t_[k][l] = (rho_ * kron(s[k], s[l])).trace().real();
  }
}

TwoQubitState TwoQubitState::from_density(const Density& rho, double tol) {
  if (!rho.allFinite()) throw Error(ErrorKind::InvalidState, "density matrix has non-finite entries");
  const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  if (herm > tol) {
    std::ostringstream msg;
    msg << "density matrix is not Hermitian (max |rho - rho^dag| = " << herm << ")";
    throw Error(ErrorKind::InvalidState, msg.str());
  }
  const cd tr = rho.trace();
  if (std::abs(tr - 1.0) > tol) {
    std::ostringstream msg;
    msg << "density matrix has trace " << tr.real() << (tr.imag() >= 0 ? "+" : "") << tr.imag() << "i";
    throw Error(ErrorKind::InvalidState, msg.str());
  }
  const Density h = 0.5 * (rho + rho.adjoint());
  const Eigen::SelfAdjointEigenSolver<Density> eig(h, Eigen::EigenvaluesOnly);
  const double lo = eig.eigenvalues().minCoeff();
  if (lo < -tol) {
    std::ostringstream msg;
    msg << "density matrix is not positive semidefinite (min eigenvalue " << lo << ")";
    throw Error(ErrorKind::InvalidState, msg.str());
  }
  return TwoQubitState(h);
}

TwoQubitState TwoQubitState::from_bloch(const Vec3& r, const Vec3& s, const Mat3& t, double tol) {
  const auto& p = paulis();
  const Mat2 id = Mat2::Identity();
  Density rho = kron(id, id);
  for (int k = 0; k < 3; ++k) {
    rho += r[k] * kron(p[k], id) + s[k] * kron(id, p[k]);
    for (int l = 0; l < 3; ++l) rho += t[k][l] * kron(p[k], p[l]);
  }
  return from_density(rho / 4.0, tol);
}

TwoQubitState TwoQubitState::with_tangle(double tau) const {
  TwoQubitState out = *this;
  out.tangle_ = tau;
  return out;
}

Settings Settings::make(const Vec3& a0, const Vec3& a1, const Vec3& b0, const Vec3& b1, double tol) {
  const std::array<std::pair<const char*, const Vec3*>, 4> all{{{"a0", &a0}, {"a1", &a1}, {"b0", &b0}, {"b1", &b1}}};
  for (const auto& [name, v] : all) {
    const double n = norm(*v);
    if (!std::isfinite(n) || std::abs(n - 1.0) > tol) {
      std::ostringstream msg;
      msg << "setting " << name << " has norm " << n << ", expected 1";
      throw Error(ErrorKind::InvalidSettings, msg.str());
    }
  }
  return Settings{a0, a1, b0, b1};
}

Box born_box(const TwoQubitState& state, const Settings& settings) {
  Table t{};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      for (int m = 0; m < 2; ++m) {
        for (int n = 0; n < 2; ++n) {
          const Density op = kron(projector(settings.a(i), outcome_sign(m)), projector(settings.b(j), outcome_sign(n)));
          t[row_index(i, j)][col_index(m, n)] = (state.density() * op).trace().real();
        }
      }
    }
  }
  return Box::make(t);
}

Box born_box_bloch(const TwoQubitState& state, const Settings& settings) {
  Table t{};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const Vec3& a = settings.a(i);
      const Vec3& b = settings.b(j);
      double corr = 0.0;
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) corr += a[k] * state.t()[k][l] * b[l];
      const double ra = dot(a, state.r()), sb = dot(b, state.s());
      for (int m = 0; m < 2; ++m) {
        for (int n = 0; n < 2; ++n) {
          const double sa = outcome_sign(m), sbn = outcome_sign(n);
          t[row_index(i, j)][col_index(m, n)] = (1.0 + sa * ra + sbn * sb + sa * sbn * corr) / 4.0;
        }
      }
    }
  }
  return Box::make(t);
}

TwoQubitState schmidt_state(double theta) {
  check_range("theta", theta, 0.0, std::numbers::pi / 4);
  theta = clamp_param(theta, 0.0, std::numbers::pi / 4);
  const double s2 = std::sin(2 * theta);
  return TwoQubitState::from_density(pure(ket(std::cos(theta), 0, 0, std::sin(theta)))).with_tangle(s2 * s2);
}

TwoQubitState werner_state(double p) {
  check_range("p", p, 0.0, 1.0);
  p = clamp_param(p, 0.0, 1.0);
  return TwoQubitState::from_density(p * psi_plus_density() + (1 - p) * Density::Identity() / 4.0);
}

TwoQubitState psi_plus_cc_mixture(double p) {
  check_range("p", p, 0.0, 1.0);
  p = clamp_param(p, 0.0, 1.0);
  return TwoQubitState::from_density(p * psi_plus_density() + (1 - p) * cc_density());
}

TwoQubitState me_mixture(std::span<const double, 8> weights) {
  double sum = 0.0;
  for (int k = 0; k < 8; ++k) {
    if (!(weights[k] >= 0.0))
      throw Error(ErrorKind::NegativeWeight, "weight " + std::to_string(k) + " is " + std::to_string(weights[k]));
    sum += weights[k];
  }
  if (std::abs(sum - 1.0) > kValTol)
    throw Error(ErrorKind::WeightMismatch, "weights sum to " + std::to_string(sum));
  const double h = 1.0 / std::numbers::sqrt2;
  const std::array<cd, 4> phase{cd(1, 0), cd(0, 1), cd(-1, 0), cd(0, -1)};  // i^k for k = 0..3
  Density rho = Density::Zero();
  for (int w = 0; w < 8; ++w) {
    const int j = w & 1, k = (w >> 1) & 1;
    const cd rel = (j ? -1.0 : 1.0) * phase[k];
    const Eigen::Vector4cd psi = w < 4 ? ket(h, 0, 0, h * rel) : ket(0, h, h * rel, 0);
    rho += weights[w] * pure(psi);
  }
  return TwoQubitState::from_density(rho);
}

TwoQubitState cq_state(double p0, const Vec3& r, const Vec3& s0, const Vec3& s1) {
  check_range("p0", p0, 0.0, 1.0);
  check_ball("r", r, true);
  check_ball("s0", s0, false);
  check_ball("s1", s1, false);
  const Mat2 id = Mat2::Identity();
  const Density rho = p0 / 4 * kron(id + dot_sigma(r), id + dot_sigma(s0)) +
                      (1 - p0) / 4 * kron(id - dot_sigma(r), id + dot_sigma(s1));
  return TwoQubitState::from_density(rho);
}

TwoQubitState qc_state(double p0, const Vec3& s, const Vec3& r0, const Vec3& r1) {
  check_range("p0", p0, 0.0, 1.0);
  check_ball("s", s, true);
  check_ball("r0", r0, false);
  check_ball("r1", r1, false);
  const Mat2 id = Mat2::Identity();
  const Density rho = p0 / 4 * kron(id + dot_sigma(r0), id + dot_sigma(s)) +
                      (1 - p0) / 4 * kron(id + dot_sigma(r1), id - dot_sigma(s));
  return TwoQubitState::from_density(rho);
}

TwoQubitState product_state(const Vec3& r, const Vec3& s) {
  check_ball("r", r, false);
  check_ball("s", s, false);
  const Mat2 id = Mat2::Identity();
  return TwoQubitState::from_density(kron(id + dot_sigma(r), id + dot_sigma(s)) / 4.0);
}

namespace {

struct StateSpec {
  const char* name;
  int params;
};

constexpr std::array<StateSpec, 9> kStates{{
    {"schmidt", 1},
    {"werner", 1},
    {"psi_plus_cc", 1},
    {"psi_plus", 0},
    {"me_mixture", 8},
    {"cq", 10},
    {"qc", 10},
    {"product", 6},
    {"white", 0},
}};

Vec3 vec_at(std::span<const double> p, std::size_t at) { return {p[at], p[at + 1], p[at + 2]}; }

}  // namespace

TwoQubitState make_state(std::string_view name, std::span<const double> params) {
  const auto it = std::find_if(kStates.begin(), kStates.end(), [&](const StateSpec& s) { return name == s.name; });
  if (it == kStates.end()) throw Error(ErrorKind::UnknownState, "unknown state '" + std::string(name) + "'");
  if (static_cast<int>(params.size()) != it->params) {
    std::ostringstream msg;
    msg << "state '" << name << "' takes " << it->params << " parameter(s), got " << params.size();
    throw Error(ErrorKind::OutOfRange, msg.str());
  }
  if (name == "schmidt") return schmidt_state(params[0]);
  if (name == "werner") return werner_state(params[0]);
  if (name == "psi_plus_cc") return psi_plus_cc_mixture(params[0]);
  if (name == "psi_plus") return TwoQubitState::from_density(psi_plus_density());
  if (name == "me_mixture") return me_mixture(std::span<const double, 8>(params.data(), 8));
  if (name == "cq") return cq_state(params[0], vec_at(params, 1), vec_at(params, 4), vec_at(params, 7));
  if (name == "qc") return qc_state(params[0], vec_at(params, 1), vec_at(params, 4), vec_at(params, 7));
  if (name == "product") return product_state(vec_at(params, 0), vec_at(params, 3));
  return TwoQubitState::from_density(Density::Identity() / 4.0);
}

std::vector<std::string> state_names() {
  std::vector<std::string> out;
  for (const auto& s : kStates) out.emplace_back(s.name);
  return out;
}

bool factorizes(const TwoQubitState& state, double tol) {
  Eigen::Matrix3d t;
  for (int k = 0; k < 3; ++k)
    for (int l = 0; l < 3; ++l) t(k, l) = state.t()[k][l];
  const Eigen::JacobiSVD<Eigen::Matrix3d> svd(t);
  return svd.singularValues()(1) <= tol;
}

namespace {

constexpr Vec3 kX{1, 0, 0};
constexpr Vec3 kY{0, 1, 0};
constexpr Vec3 kZ{0, 0, 1};

// u*a + v*b
Vec3 comb(double u, const Vec3& a, double v, const Vec3& b) { return add(scale(a, u), scale(b, v)); }

struct PresetSpec {
  const char* name;
  int params;
};

constexpr std::array<PresetSpec, 11> kPresets{{
    {"tsirelson", 0},
    {"mt", 0},
    {"mermin", 0},
    {"mm", 0},
    {"mermin_xy", 0},
    {"interp", 1},
    {"pr_schmidt", 1},
    {"steer_schmidt", 1},
    {"bms_xy", 1},
    {"bms_xz", 1},
    {"werner_bm", 1},
}};

// cos t = 1/sqrt(1 + sin^2 2theta)
std::pair<double, double> schmidt_angle(double theta) {
  const double s2 = std::sin(2 * theta);
  const double n = std::sqrt(1 + s2 * s2);
  return {1 / n, s2 / n};
}

}  // namespace

int preset_param_count(std::string_view name) {
  const auto it = std::find_if(kPresets.begin(), kPresets.end(), [&](const PresetSpec& p) { return name == p.name; });
  if (it == kPresets.end()) throw Error(ErrorKind::UnknownPreset, "unknown settings preset '" + std::string(name) + "'");
  return it->params;
}

std::vector<std::string> preset_names() {
  std::vector<std::string> out;
  for (const auto& p : kPresets) out.emplace_back(p.name);
  return out;
}

Settings preset_settings(std::string_view name, std::span<const double> params) {
  const int want = preset_param_count(name);
  if (static_cast<int>(params.size()) != want) {
    std::ostringstream msg;
    msg << "preset '" << name << "' takes " << want << " parameter(s), got " << params.size();
    throw Error(ErrorKind::OutOfRange, msg.str());
  }
  const double h = 1.0 / std::numbers::sqrt2;
  const double quarter_pi = std::numbers::pi / 4;
  if (name == "tsirelson" || name == "mt") return Settings::make(kX, kY, comb(h, kX, -h, kY), comb(h, kX, h, kY));
  if (name == "mermin") return Settings::make(kX, scale(kY, -1), kY, kX);
  if (name == "mm") return Settings::make(kX, kY, scale(kY, -1), kX);
  if (name == "mermin_xy") return Settings::make(kX, kY, kX, kY);
  if (name == "interp") {
    check_range("p", params[0], 0.5, 1.0);
    const double p = clamp_param(params[0], 0.5, 1.0);
    const double a = std::sqrt(p), b = std::sqrt(1 - p);
    return Settings::make(kX, kY, comb(a, kX, -b, kY), comb(b, kX, a, kY));
  }
  if (name == "werner_bm") {
    check_range("p", params[0], 0.0, 1.0);
    const double p = clamp_param(params[0], 0.0, 1.0);
    const double a = std::sqrt(p), b = std::sqrt(1 - p);
    return Settings::make(comb(a, kX, b, kY), comb(b, kX, -a, kY), comb(h, kX, h, kY), comb(h, kX, -h, kY));
  }
  check_range("theta", params[0], 0.0, quarter_pi);
  const double theta = clamp_param(params[0], 0.0, quarter_pi);
  if (name == "pr_schmidt") {
    const auto [ct, st] = schmidt_angle(theta);
    return Settings::make(kZ, kX, comb(ct, kZ, st, kX), comb(ct, kZ, -st, kX));
  }
  if (name == "steer_schmidt") {
    const auto [ct, st] = schmidt_angle(theta);
    return Settings::make(comb(h, kZ, h, kX), comb(h, kZ, -h, kX), comb(ct, kZ, -st, kX), comb(ct, kZ, st, kX));
  }
  const double c = std::cos(2 * theta), s = std::sin(2 * theta);
  if (name == "bms_xy")
    return Settings::make(comb(s, kX, c, kY), comb(c, kX, -s, kY), comb(h, kX, h, kY), comb(h, kX, -h, kY));
  // bms_xz
  return Settings::make(comb(c, kX, s, kZ), comb(s, kX, -c, kZ), comb(h, kX, h, kZ), comb(-h, kX, h, kZ));
}

Vec3 random_unit_vector(Rng& rng) {
  for (;;) {
    const Vec3 v{rng.normal(), rng.normal(), rng.normal()};
    const double n = norm(v);
    if (n > 1e-6) return scale(v, 1.0 / n);
  }
}

Vec3 random_bloch_vector(Rng& rng) { return scale(random_unit_vector(rng), std::cbrt(rng.uniform())); }

Settings random_settings(Rng& rng) {
  const Vec3 a0 = random_unit_vector(rng), a1 = random_unit_vector(rng);
  const Vec3 b0 = random_unit_vector(rng), b1 = random_unit_vector(rng);
  return Settings::make(a0, a1, b0, b1);
}

TwoQubitState random_cq_state(Rng& rng) {
  const double p0 = rng.uniform();
  const Vec3 r = random_unit_vector(rng);
  const Vec3 s0 = random_bloch_vector(rng), s1 = random_bloch_vector(rng);
  return cq_state(p0, r, s0, s1);
}

TwoQubitState random_qc_state(Rng& rng) {
  const double p0 = rng.uniform();
  const Vec3 s = random_unit_vector(rng);
  const Vec3 r0 = random_bloch_vector(rng), r1 = random_bloch_vector(rng);
  return qc_state(p0, s, r0, r1);
}

std::array<double, 8> random_me_weights(Rng& rng) {
  std::array<double, 8> w{};
  double sum = 0.0;
  for (double& x : w) sum += (x = rng.exponential());
  for (double& x : w) x /= sum;
  return w;
}

}  // namespace nsbox
