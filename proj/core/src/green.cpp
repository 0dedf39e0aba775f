#include <cmath>
#include <numbers>

#include "eisen/errors.hpp"
#include "eisen/specfun.hpp"

namespace eisen {

GreenParameter::GreenParameter(double a, double b) : a_(a), b_(b) {
  if (!(b > 0.0) || !(b < a)) throw DomainError("green parameters need 0 < b < a");
}

double green_g(double a, double u) {
  if (!(a > 0.0)) throw DomainError("green function needs a > 0");
  if (u == 0.0) throw DomainError("green function is singular at u = 0");
  if (!(u > 0.0)) throw DomainError("green function needs u > 0");
  if (u >= 0.25) {
    auto integrand = [=](double t, double tc) -> cplx {
      return std::exp((a - 1.0) * (std::log(t) + std::log(tc)) - a * std::log(t + u));
    };
    return tanh_sinh(integrand, 1e-13, 14).value.real() / (4.0 * std::numbers::pi);
  }
  // For small u the integrand behaves like 1/t on [u, 1]; split at t = u, scale
  // the inner piece to [0, 1] and use log t as the variable on the outer one.
  auto inner = [=](double v, double) -> cplx {
    return std::exp((a - 1.0) * (std::log(v) + std::log1p(-u * v)) - a * std::log1p(v));
  };
  const double span = -std::log(u);
  auto outer = [=](double, double wc) -> cplx {
    const double log_t = -span * wc;
    const double t = std::exp(log_t);
    return span * std::exp(a * log_t + (a - 1.0) * std::log(-std::expm1(log_t)) - a * std::log(t + u));
  };
  const double sum = tanh_sinh(inner, 1e-13, 14).value.real() + tanh_sinh(outer, 1e-13, 14).value.real();
  return sum / (4.0 * std::numbers::pi);
}

double green_diff(const GreenParameter& p, double u) {
  if (!(u >= 0.0)) throw DomainError("green difference needs u >= 0");
  const double a = p.a();
  const double b = p.b();
  // With D = log(t(1-t)/(t+u)) and L = log(t(1-t)) the integrand is
  // e^{bD - L} (e^{(a-b)D} - 1), which stays finite as t -> 0 when u = 0.
  auto integrand = [=](double t, double tc) -> cplx {
    const double log_t = std::log(t);
    const double log_tc = std::log(tc);
    const double log_tu = (u == 0.0) ? log_t : std::log(t + u);
    const double d = log_t + log_tc - log_tu;
    const double l = log_t + log_tc;
    return std::exp(b * d - l) * std::expm1((a - b) * d);
  };
  return tanh_sinh(integrand, 1e-13, 14).value.real() / (4.0 * std::numbers::pi);
}

}  // namespace eisen
