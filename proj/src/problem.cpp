#include "sdfem/problem.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "sdfem/error.hpp"

namespace sdfem {

void CoefficientSet::validate() const {
  auto finite = [](double v) { return std::isfinite(v); };
  if (!finite(epsilon) || !(epsilon > 0.0) || !(epsilon < 1.0)) {
    throw ConfigError("problem: epsilon must lie in (0, 1)");
  }
  if (!finite(beta) || !(beta > 0.0)) throw ConfigError("problem: beta must be > 0");
  if (!finite(b) || !(b >= beta)) throw ConfigError("problem: b must satisfy b >= beta");
  if (!finite(c) || !(c > 0.0)) throw ConfigError("problem: c must be > 0");
}

double exp_neg(double t) { return t > 700.0 ? 0.0 : std::exp(-t); }

std::string_view to_string(Part p) {
  switch (p) {
    case Part::S: return "S";
    case Part::E1: return "E1";
    case Part::E2: return "E2";
    case Part::E12: return "E12";
    case Part::U: return "u";
    case Part::F: return "f";
  }
  return "?";
}

namespace {

void check_order(int dx, int dy, int max_total) {
  if (dx < 0 || dy < 0 || dx + dy > max_total) {
    throw ConfigError("problem: unsupported derivative order (" + std::to_string(dx) + ", " +
                      std::to_string(dy) + "), total must be <= " + std::to_string(max_total));
  }
}

/// One-dimensional profile with derivatives up to third order.
using Profile = std::function<double(double t, int k)>;

SmoothField tensor(Profile px, Profile py) {
  return [px = std::move(px), py = std::move(py)](double x, double y, int dx, int dy) {
    return px(x, dx) * py(y, dy);
  };
}

Profile linear_profile() {
  return [](double t, int k) { return k == 0 ? t : (k == 1 ? 1.0 : 0.0); };
}

Profile unit_profile() {
  return [](double, int k) { return k == 0 ? 1.0 : 0.0; };
}

// (e^t - 1) / (e - 1): rises from 0 to 1 with nonzero slope at both ends.
Profile exp_profile() {
  return [](double t, int k) {
    const double scale = 1.0 / (std::numbers::e - 1.0);
    return (k == 0 ? std::expm1(t) : std::exp(t)) * scale;
  };
}

Profile bump_profile() {
  // 1 + t (1 - t)
  return [](double t, int k) {
    switch (k) {
      case 0: return 1.0 + t * (1.0 - t);
      case 1: return 1.0 - 2.0 * t;
      case 2: return -2.0;
      default: return 0.0;
    }
  };
}

// x-layer part of g1: zero at x = 0, -1 at x = 1, derivatives ~ (beta/eps)^k e^{-beta(1-x)/eps}.
Profile exponential_layer(double epsilon, double beta) {
  const double rate = beta / epsilon;
  const double tail = exp_neg(rate);
  const double scale = 1.0 / (1.0 - tail);
  return [rate, tail, scale](double t, int k) {
    const double e = exp_neg(rate * (1.0 - t));
    if (k == 0) return -(e - tail) * scale;
    return -std::pow(rate, k) * e * scale;
  };
}

// y-layer part of g2: -1 at y = 0 and y = 1, width sqrt(eps).
Profile characteristic_layers(double epsilon) {
  const double rate = 1.0 / std::sqrt(epsilon);
  const double scale = 1.0 / (1.0 + exp_neg(rate));
  return [rate, scale](double t, int k) {
    const double lo = exp_neg(rate * t);
    const double hi = exp_neg(rate * (1.0 - t));
    const double dk = std::pow(rate, k);
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    return -(sign * dk * lo + dk * hi) * scale;
  };
}

}  // namespace

ManufacturedProblem::ManufacturedProblem(const CoefficientSet& coeffs, SmoothField s, SmoothField e1,
                                         SmoothField e2, SmoothField e12)
    : coeffs_(coeffs), s_(std::move(s)), e1_(std::move(e1)), e2_(std::move(e2)), e12_(std::move(e12)) {
  coeffs_.validate();
  if (!s_ || !e1_ || !e2_ || !e12_) throw ConfigError("problem: all four components must be set");
}

const SmoothField& ManufacturedProblem::component(Part which) const {
  switch (which) {
    case Part::S: return s_;
    case Part::E1: return e1_;
    case Part::E2: return e2_;
    case Part::E12: return e12_;
    default: break;
  }
  throw ConfigError("problem: not a component");
}

double ManufacturedProblem::layers(double x, double y, int dx, int dy) const {
  check_order(dx, dy, 3);
  return e1_(x, y, dx, dy) + e2_(x, y, dx, dy) + e12_(x, y, dx, dy);
}

double ManufacturedProblem::eval(Part which, double x, double y, int dx, int dy) const {
  switch (which) {
    case Part::S:
    case Part::E1:
    case Part::E2:
    case Part::E12:
      check_order(dx, dy, 3);
      return component(which)(x, y, dx, dy);
    case Part::U:
      check_order(dx, dy, 3);
      return s_(x, y, dx, dy) + layers(x, y, dx, dy);
    case Part::F: {
      check_order(dx, dy, 1);
      const auto& k = coeffs_;
      return -k.epsilon * (eval(Part::U, x, y, dx + 2, dy) + eval(Part::U, x, y, dx, dy + 2)) +
             k.b * eval(Part::U, x, y, dx + 1, dy) + k.c * eval(Part::U, x, y, dx, dy);
    }
  }
  throw ConfigError("problem: unknown part");
}

double ManufacturedProblem::laplacian(double x, double y) const {
  return eval(Part::U, x, y, 2, 0) + eval(Part::U, x, y, 0, 2);
}

SmoothField ManufacturedProblem::field(Part which) const {
  return [this, which](double x, double y, int dx, int dy) { return eval(which, x, y, dx, dy); };
}

std::string_view to_string(Benchmark b) {
  switch (b) {
    case Benchmark::Layers: return "layers";
    case Benchmark::SmoothLayers: return "smooth_layers";
  }
  return "?";
}

Benchmark parse_benchmark(std::string_view name) {
  if (name == "layers") return Benchmark::Layers;
  if (name == "smooth_layers") return Benchmark::SmoothLayers;
  throw ConfigError("problem: unknown benchmark '" + std::string(name) + "'");
}

ManufacturedProblem make_benchmark(const CoefficientSet& coeffs, Benchmark kind) {
  coeffs.validate();
  const Profile l1 = exponential_layer(coeffs.epsilon, coeffs.beta);
  const Profile l2 = characteristic_layers(coeffs.epsilon);
  Profile s1, s2;
  switch (kind) {
    case Benchmark::Layers:
      s1 = linear_profile();
      s2 = unit_profile();
      break;
    case Benchmark::SmoothLayers:
      // s1(0) = 0, s1(1) = 1 and s2(0) = s2(1) = 1 keep u = 0 on the boundary
      // with the same normalized layer functions.
      s1 = exp_profile();
      s2 = bump_profile();
      break;
  }
  return ManufacturedProblem(coeffs, tensor(s1, s2), tensor(l1, s2), tensor(s1, l2), tensor(l1, l2));
}

double eval_component(const ManufacturedProblem& problem, Part which, double x, double y, int dx, int dy) {
  return problem.eval(which, x, y, dx, dy);
}

}  // namespace sdfem
