#include "softrgg/connection.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "softrgg/error.hpp"
#include "softrgg/special_functions.hpp"

namespace srgg {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

bool positive_finite(double x) { return x > 0.0 && std::isfinite(x); }

void validate(const ConnectionFunction::Family& family) {
  std::visit(
      Overloaded{
          [](const GeneralizedExponential& g) {
            if (!(g.beta > 0.0 && g.beta <= 1.0))
              throw InvalidParameter("generalized exponential beta must lie in (0, 1]");
            if (!positive_finite(g.range)) throw InvalidParameter("r_c must be positive");
            if (!positive_finite(g.eta)) throw InvalidParameter("eta must be positive");
          },
          [](const Hard& h) {
            if (!positive_finite(h.range)) throw InvalidParameter("r_c must be positive");
          },
          [](const Tabulated& t) {
            if (t.knots.empty()) throw InvalidParameter("tabulated profile needs knots");
            if (t.knots.front().r != 0.0)
              throw InvalidParameter("first tabulated knot must sit at r = 0");
            for (std::size_t i = 0; i < t.knots.size(); ++i) {
              const Knot& k = t.knots[i];
              if (!(k.h >= 0.0 && k.h <= 1.0) || !std::isfinite(k.r))
                throw InvalidParameter("tabulated values must lie in [0, 1]");
              if (i > 0) {
                if (!(k.r > t.knots[i - 1].r))
                  throw InvalidParameter("tabulated knots must be strictly increasing in r");
                if (k.h > t.knots[i - 1].h)
                  throw InvalidParameter("tabulated profile must be nonincreasing");
              }
            }
          },
      },
      family);
}

// Unit-scale table helpers.
double table_value(const Tabulated& t, double u) {
  const auto& k = t.knots;
  if (u > k.back().r) return 0.0;
  if (u == k.back().r) return k.back().h;
  auto it = std::upper_bound(k.begin(), k.end(), u,
                             [](double value, const Knot& knot) { return value < knot.r; });
  const Knot& right = *it;
  const Knot& left = *(it - 1);
  const double w = (u - left.r) / (right.r - left.r);
  return left.h + w * (right.h - left.h);
}

// int_0^X h(u) du and int_0^X u h(u) du over the linear pieces; the
// Simpson rule is exact for these (at most quadratic) integrands.
struct TableIntegrals {
  double zeroth = 0.0;
  double first = 0.0;
};

TableIntegrals table_integrals(const Tabulated& t, double upper) {
  TableIntegrals out;
  const auto& k = t.knots;
  for (std::size_t i = 1; i < k.size(); ++i) {
    const double a = k[i - 1].r;
    if (a >= upper) break;
    const double b = std::min(k[i].r, upper);
    const double ha = k[i - 1].h;
    const double hb = table_value(t, b);
    const double hm = table_value(t, 0.5 * (a + b));
    const double w = b - a;
    out.zeroth += 0.5 * w * (ha + hb);
    out.first += w / 6.0 * (a * ha + 4.0 * 0.5 * (a + b) * hm + b * hb);
  }
  return out;
}

double check_nonnegative(double x, const char* what) {
  if (!(x >= 0.0)) throw InvalidParameter(std::string(what) + " must be nonnegative");
  return x;
}

}  // namespace

ConnectionFunction::ConnectionFunction(Family family, double scale)
    : family_(std::move(family)), scale_(scale) {
  if (!positive_finite(scale_)) throw InvalidParameter("scale must be positive");
  validate(family_);
}

ConnectionFunction ConnectionFunction::waxman(double range, double beta) {
  return ConnectionFunction(GeneralizedExponential{beta, range, 1.0});
}

ConnectionFunction ConnectionFunction::rayleigh(double range, double beta) {
  return ConnectionFunction(GeneralizedExponential{beta, range, 2.0});
}

ConnectionFunction ConnectionFunction::generalized_exponential(double beta, double range,
                                                               double eta) {
  return ConnectionFunction(GeneralizedExponential{beta, range, eta});
}

ConnectionFunction ConnectionFunction::hard(double range) {
  return ConnectionFunction(Hard{range});
}

ConnectionFunction ConnectionFunction::tabulated(std::vector<Knot> knots) {
  return ConnectionFunction(Tabulated{std::move(knots)});
}

double ConnectionFunction::characteristic_range() const noexcept {
  return std::visit(Overloaded{
                        [&](const GeneralizedExponential& g) { return g.range * scale_; },
                        [&](const Hard& h) { return h.range * scale_; },
                        [&](const Tabulated& t) { return t.knots.back().r * scale_; },
                    },
                    family_);
}

ConnectionFunction ConnectionFunction::with_range(double range) const {
  return std::visit(
      Overloaded{
          [&](const GeneralizedExponential& g) {
            return ConnectionFunction(GeneralizedExponential{g.beta, range, g.eta}, scale_);
          },
          [&](const Hard&) { return ConnectionFunction(Hard{range}, scale_); },
          [&](const Tabulated& t) { return ConnectionFunction(t, range); },
      },
      family_);
}

double ConnectionFunction::value_at_zero() const noexcept { return (*this)(0.0); }

double ConnectionFunction::operator()(double r) const noexcept {
  const double u = r / scale_;
  return std::visit(Overloaded{
                        [u](const GeneralizedExponential& g) {
                          const double x = u / g.range;
                          if (g.eta == 1.0) return g.beta * std::exp(-x);
                          if (g.eta == 2.0) return g.beta * std::exp(-x * x);
                          return g.beta * std::exp(-std::pow(x, g.eta));
                        },
                        [u](const Hard& h) { return u <= h.range ? 1.0 : 0.0; },
                        [u](const Tabulated& t) { return table_value(t, u); },
                    },
                    family_);
}

std::string ConnectionFunction::describe() const {
  std::ostringstream out;
  out.precision(10);
  std::visit(Overloaded{
                 [&](const GeneralizedExponential& g) {
                   out << "generalized_exponential(beta=" << g.beta << ", r_c=" << g.range
                       << ", eta=" << g.eta << ")";
                 },
                 [&](const Hard& h) { out << "hard(r_c=" << h.range << ")"; },
                 [&](const Tabulated& t) { out << "tabulated(" << t.knots.size() << " knots)"; },
             },
             family_);
  if (scale_ != 1.0) out << " scaled by " << scale_;
  return out.str();
}

double eval(const ConnectionFunction& cf, double r) {
  check_nonnegative(r, "connection distance");
  return cf(r);
}

ConnectionFunction with_scale(const ConnectionFunction& cf, double scale) {
  return ConnectionFunction(cf.family(), scale);
}

std::vector<double> nonsmooth_radii(const ConnectionFunction& cf) {
  const double s = cf.scale();
  return std::visit(Overloaded{
                        [](const GeneralizedExponential&) { return std::vector<double>{}; },
                        [s](const Hard& h) { return std::vector<double>{h.range * s}; },
                        [s](const Tabulated& t) {
                          std::vector<double> r;
                          for (const Knot& k : t.knots)
                            if (k.r > 0.0) r.push_back(k.r * s);
                          return r;
                        },
                    },
                    cf.family());
}

double l1_norm(const ConnectionFunction& cf) {
  const double s = cf.scale();
  return std::visit(
      Overloaded{
          [s](const GeneralizedExponential& g) {
            return g.beta * g.range * s * std::tgamma(1.0 + 1.0 / g.eta);
          },
          [s](const Hard& h) { return h.range * s; },
          [s](const Tabulated& t) {
            if (t.knots.back().h > 0.0)
              throw InvalidParameter(
                  "tabulated profile does not decay to zero; its L1 norm is undefined");
            return s * table_integrals(t, t.knots.back().r).zeroth;
          },
      },
      cf.family());
}

double partial_integral(const ConnectionFunction& cf, double x) {
  check_nonnegative(x, "integration limit");
  const double s = cf.scale();
  return std::visit(Overloaded{
                        [&](const GeneralizedExponential& g) {
                          const double ell = g.range * s;
                          return g.beta * ell / g.eta *
                                 lower_incomplete_gamma(1.0 / g.eta, std::pow(x / ell, g.eta));
                        },
                        [&](const Hard& h) { return std::min(x, h.range * s); },
                        [&](const Tabulated& t) { return s * table_integrals(t, x / s).zeroth; },
                    },
                    cf.family());
}

double tail_integral(const ConnectionFunction& cf, double x) {
  check_nonnegative(x, "integration limit");
  const double s = cf.scale();
  return std::visit(
      Overloaded{
          [&](const GeneralizedExponential& g) {
            const double ell = g.range * s;
            return g.beta * ell / g.eta *
                   upper_incomplete_gamma(1.0 / g.eta, std::pow(x / ell, g.eta));
          },
          [&](const Hard& h) { return std::max(0.0, h.range * s - x); },
          [&](const Tabulated& t) {
            const double total = table_integrals(t, t.knots.back().r).zeroth;
            return s * std::max(0.0, total - table_integrals(t, x / s).zeroth);
          },
      },
      cf.family());
}

double partial_first_moment(const ConnectionFunction& cf, double x) {
  check_nonnegative(x, "integration limit");
  const double s = cf.scale();
  return std::visit(Overloaded{
                        [&](const GeneralizedExponential& g) {
                          const double ell = g.range * s;
                          return g.beta * ell * ell / g.eta *
                                 lower_incomplete_gamma(2.0 / g.eta, std::pow(x / ell, g.eta));
                        },
                        [&](const Hard& h) {
                          const double m = std::min(x, h.range * s);
                          return 0.5 * m * m;
                        },
                        [&](const Tabulated& t) { return s * s * table_integrals(t, x / s).first; },
                    },
                    cf.family());
}

double generalized_inverse(const ConnectionFunction& cf, double p) {
  const double h0 = cf.value_at_zero();
  if (!(p > 0.0 && p <= h0))
    throw InvalidParameter("generalized inverse needs p in (0, H(0)]");
  const double s = cf.scale();
  return std::visit(Overloaded{
                        [&](const GeneralizedExponential& g) {
                          return g.range * s * std::pow(std::log(g.beta / p), 1.0 / g.eta);
                        },
                        [&](const Hard& h) { return h.range * s; },
                        [&](const Tabulated& t) {
                          const auto& k = t.knots;
                          std::size_t last = 0;
                          while (last + 1 < k.size() && k[last + 1].h >= p) ++last;
                          if (last + 1 == k.size()) return k.back().r * s;
                          const Knot& a = k[last];
                          const Knot& b = k[last + 1];
                          const double w = (a.h - p) / (a.h - b.h);
                          return (a.r + w * (b.r - a.r)) * s;
                        },
                    },
                    cf.family());
}

double mean_degree(const ConnectionFunction& cf, double length, BoundaryMode boundary) {
  if (!positive_finite(length)) throw InvalidParameter("length must be positive");
  if (boundary == BoundaryMode::Torus) return 2.0 * partial_integral(cf, 0.5 * length);
  return 2.0 * partial_integral(cf, length) - 2.0 / length * partial_first_moment(cf, length);
}

double max_mean_degree(const ConnectionFunction& cf, double length) {
  return cf.value_at_zero() * length;
}

ConnectionFunction solve_for_mean_degree(const ConnectionFunction& cf, double target,
                                         double length, BoundaryMode boundary) {
  if (!positive_finite(length)) throw InvalidParameter("length must be positive");
  if (!(target > 0.0) || !(target < max_mean_degree(cf, length))) {
    std::ostringstream msg;
    msg << "mean degree " << target << " is unreachable for L = " << length
        << " (supremum " << max_mean_degree(cf, length) << ")";
    throw InfeasibleTarget(msg.str());
  }

  const bool table = cf.is_tabulated();
  const double start = table ? cf.scale() : cf.characteristic_range() / cf.scale();
  auto degree_at = [&](double param) {
    return mean_degree(cf.with_range(param), length, boundary);
  };

  double lo = start;
  double hi = start;
  while (degree_at(hi) < target) {
    hi *= 2.0;
    if (!std::isfinite(hi)) throw InfeasibleTarget("mean degree target not bracketed");
  }
  while (degree_at(lo) > target) {
    lo *= 0.5;
    if (lo == 0.0) throw InfeasibleTarget("mean degree target not bracketed");
  }
  for (int it = 0; it < 400 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (degree_at(mid) < target)
      lo = mid;
    else
      hi = mid;
  }
  const double best = std::abs(degree_at(lo) - target) <= std::abs(degree_at(hi) - target) ? lo : hi;
  ConnectionFunction out = cf.with_range(best);
  if (std::abs(mean_degree(out, length, boundary) - target) > 1e-8 * target)
    throw InfeasibleTarget("bisection did not reach the mean degree target");
  return out;
}

double solve_rc_for_mean_degree(double target_kbar, double beta, double eta, double length,
                                BoundaryMode boundary) {
  const auto cf = ConnectionFunction::generalized_exponential(beta, 1.0, eta);
  return solve_for_mean_degree(cf, target_kbar, length, boundary).characteristic_range();
}

double solve_hard_rc_for_mean_degree(double target_kbar, double length, BoundaryMode boundary) {
  return solve_for_mean_degree(ConnectionFunction::hard(1.0), target_kbar, length, boundary)
      .characteristic_range();
}

}  // namespace srgg
