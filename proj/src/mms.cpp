#include "fluidfluid/mms.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "fluidfluid/errors.hpp"

namespace fluidfluid {

namespace {

constexpr double kPi = std::numbers::pi;

Jet3 stream_squared(const Point& p, bool plus) {
  const Jet3 x = Jet3::var_x(p.x), y = Jet3::var_y(p.y);
  const Jet3 psi = plus ? x * (1.0 - x) * (y - 0.5) * (1.0 - y) : x * (1.0 - x) * y * (0.5 - y);
  return psi * psi;
}

Jet3 pressure_jet(MmsKind kind, const Point& p, bool plus) {
  const Jet3 x = Jet3::var_x(p.x), y = Jet3::var_y(p.y);
  if (kind == MmsKind::InSpace) return plus ? 0.3 + 0.2 * x - 0.5 * (y - 0.5) : 0.1 - 0.4 * x + 0.7 * y;
  if (plus) return cos(kPi * x) * (y - 0.5);
  if (kind == MmsKind::Mms1) return x * y - 0.125;
  return cos(kPi * x) * cosh(kPi * y) * (1.0 / std::cosh(kPi / 2.0));
}

FieldSample scalar_sample(const Jet3& j) {
  FieldSample s;
  s.components = 1;
  s.value = {j.value(), 0.0};
  s.gradient[0] = {j.dx(), j.dy()};
  return s;
}

}  // namespace

const char* to_string(MmsKind k) {
  switch (k) {
    case MmsKind::Mms1:
      return "mms1";
    case MmsKind::Mms2:
      return "mms2";
    case MmsKind::InSpace:
      return "in_space";
  }
  return "?";
}

MmsKind parse_mms_kind(const std::string& name) {
  if (name == "mms1") return MmsKind::Mms1;
  if (name == "mms2") return MmsKind::Mms2;
  if (name == "in_space") return MmsKind::InSpace;
  throw ConfigError("unknown manufactured case '" + name + "' (expected \"mms1\", \"mms2\" or \"in_space\")");
}

MmsCase::MmsCase(MmsKind kind, const MaterialParams& params, const BackgroundFlow& flow)
    : kind_(kind), params_(params), flow_(flow) {
  params_.validate();
}

MmsCase::VelocityJet MmsCase::velocity(const Point& p, bool plus) const {
  VelocityJet v{};
  if (kind_ == MmsKind::InSpace) return v;
  // u = (Psi_y, -Psi_x)
  const Jet3 s = stream_squared(p, plus);
  v.value = {s.d(0, 1), -s.d(1, 0)};
  v.grad[0] = {s.d(1, 1), s.d(0, 2)};
  v.grad[1] = {-s.d(2, 0), -s.d(1, 1)};
  v.laplacian = {s.d(2, 1) + s.d(0, 3), -s.d(3, 0) - s.d(1, 2)};
  // Curl fields are solenoidal, so grad(div u) vanishes identically.
  v.grad_div = {0.0, 0.0};
  return v;
}

FieldSample MmsCase::u_plus(const Point& p) const {
  const auto v = velocity(p, true);
  FieldSample s;
  s.components = 2;
  s.value = v.value;
  s.gradient = v.grad;
  return s;
}

FieldSample MmsCase::u_minus(const Point& p) const {
  const auto v = velocity(p, false);
  FieldSample s;
  s.components = 2;
  s.value = v.value;
  s.gradient = v.grad;
  return s;
}

FieldSample MmsCase::p_plus(const Point& p) const { return scalar_sample(pressure_jet(kind_, p, true)); }
FieldSample MmsCase::p_minus(const Point& p) const { return scalar_sample(pressure_jet(kind_, p, false)); }

Vec2 MmsCase::laplacian_u_minus(const Point& p) const { return velocity(p, false).laplacian; }

double MmsCase::laplacian_p_minus(const Point& p) const {
  const Jet3 j = pressure_jet(kind_, p, false);
  return j.d(2, 0) + j.d(0, 2);
}

std::array<Vec2, 2> MmsCase::stress_plus(const Point& p) const {
  const auto v = velocity(p, true);
  const double div = v.grad[0][0] + v.grad[1][1];
  const double nu = params_.nu;
  std::array<Vec2, 2> s{};
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t k = 0; k < 2; ++k) s[i][k] = nu * (v.grad[i][k] + v.grad[k][i]) + (i == k ? params_.lame_lambda * div : 0.0);
  return s;
}

Vec2 MmsCase::f(const Point& p) const {
  const auto v = velocity(p, true);
  const auto pp = p_plus(p);
  const Vec2 U = flow_.velocity(p);
  const double divU = flow_.divergence(p);
  const double lam = params_.lambda_res, nu = params_.nu, lame = params_.lame_lambda;
  Vec2 out{};
  for (std::size_t c = 0; c < 2; ++c) {
    const double adv = U[0] * v.grad[c][0] + U[1] * v.grad[c][1];
    const double div_sigma = nu * v.laplacian[c] + (nu + lame) * v.grad_div[c];
    out[c] = lam * v.value[c] + adv - div_sigma + 0.5 * divU * v.value[c] + pp.gradient[0][c];
  }
  return out;
}

double MmsCase::g(const Point& p) const {
  const auto v = velocity(p, true);
  const auto pp = p_plus(p);
  const Vec2 U = flow_.velocity(p);
  return params_.lambda_res * pp.value[0] + v.grad[0][0] + v.grad[1][1] + U[0] * pp.gradient[0][0] +
         U[1] * pp.gradient[0][1] + 0.5 * flow_.divergence(p) * pp.value[0];
}

Vec2 MmsCase::h(const Point& p) const {
  const auto v = velocity(p, false);
  const auto pm = p_minus(p);
  Vec2 out{};
  for (std::size_t c = 0; c < 2; ++c) out[c] = params_.lambda_res * v.value[c] - v.laplacian[c] + pm.gradient[0][c];
  return out;
}

Vec2 MmsCase::jump(const Point& p) const {
  const Vec2 nu = kInterfaceNormal;
  const auto s = stress_plus(p);
  const auto vm = velocity(p, false);
  const double pp = p_plus(p).value[0], pm = p_minus(p).value[0];
  Vec2 out{};
  for (std::size_t c = 0; c < 2; ++c) {
    const double sigma_nu = s[c][0] * nu[0] + s[c][1] * nu[1];
    const double dudnu = vm.grad[c][0] * nu[0] + vm.grad[c][1] * nu[1];
    out[c] = (sigma_nu - pp * nu[c]) - (dudnu - pm * nu[c]);
  }
  return out;
}

VectorFunction MmsCase::f_fn() const {
  return [self = *this](const Point& p) { return self.f(p); };
}
ScalarFunction MmsCase::g_fn() const {
  return [self = *this](const Point& p) { return self.g(p); };
}
VectorFunction MmsCase::h_fn() const {
  return [self = *this](const Point& p) { return self.h(p); };
}
VectorFunction MmsCase::jump_fn() const {
  return [self = *this](const Point& p) { return self.jump(p); };
}
ExactFunction MmsCase::u_plus_fn() const {
  return [self = *this](const Point& p) { return self.u_plus(p); };
}
ExactFunction MmsCase::u_minus_fn() const {
  return [self = *this](const Point& p) { return self.u_minus(p); };
}
ExactFunction MmsCase::p_plus_fn() const {
  return [self = *this](const Point& p) { return self.p_plus(p); };
}
ExactFunction MmsCase::p_minus_fn() const {
  return [self = *this](const Point& p) { return self.p_minus(p); };
}

std::vector<std::string> MmsCase::check_invariants(std::uint64_t seed, int samples) const {
  constexpr double tol = 1e-10;
  std::vector<std::string> out;
  auto flag = [&](const char* what, const Point& p, double v) {
    if (std::abs(v) > tol) {
      std::ostringstream os;
      os << what << " = " << v << " at (" << p.x << ", " << p.y << ")";
      out.push_back(os.str());
    }
  };
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < samples; ++k) {
    const Point pin{u(rng), 0.5 * u(rng)};
    const auto vm = u_minus(pin);
    flag("div u-", pin, vm.gradient[0][0] + vm.gradient[1][1]);
    if (kind_ == MmsKind::Mms2) flag("laplacian p-", pin, laplacian_p_minus(pin));

    const Point pg{u(rng), kInterfaceY};
    const auto a = u_plus(pg), b = u_minus(pg);
    flag("trace mismatch x", pg, a.value[0] - b.value[0]);
    flag("trace mismatch y", pg, a.value[1] - b.value[1]);

    const double s = u(rng);
    for (const Point& w : {Point{s, 0.0}, Point{0.0, 0.5 * s}, Point{1.0, 0.5 * s}}) {
      const auto v = u_minus(w);
      flag("u- on outer wall", w, std::hypot(v.value[0], v.value[1]));
    }
    for (const Point& w : {Point{s, 1.0}, Point{0.0, 0.5 + 0.5 * s}, Point{1.0, 0.5 + 0.5 * s}}) {
      const auto v = u_plus(w);
      flag("u+ on outer wall", w, std::hypot(v.value[0], v.value[1]));
    }
  }
  return out;
}

}  // namespace fluidfluid
