#include "gausvol/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gausvol/error.hpp"
#include "gausvol/format.hpp"

namespace gausvol {
namespace {

constexpr double kTableSlack = 1e-12;

void check_table_covers(const VolatilitySpec& u, double horizon) {
  if (u.form != VolatilityForm::TABLE) return;
  const double slack = kTableSlack * std::max(1.0, horizon);
  if (u.times.front() > slack || u.times.back() < horizon - slack) {
    throw DomainError("volatility table covers [" + format_double(u.times.front()) + ", " +
                      format_double(u.times.back()) + "] but the grid needs [0, " +
                      format_double(horizon) + "]");
  }
}

std::vector<double> split_numbers(const std::string& text, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_double(item, what));
  return out;
}

// ∫_0^t over a piecewise-linear table of v^2 (power 2) or v^4 (power 4).
// Segment integrals of (linear)^p are symmetric polynomials in the endpoints.
double table_power_integral(const VolatilitySpec& u, double t, int power) {
  double total = 0.0;
  for (std::size_t k = 1; k < u.times.size(); ++k) {
    const double lo = std::max(u.times[k - 1], 0.0);
    const double hi = std::min(u.times[k], t);
    if (hi <= lo) continue;
    const double v0 = u(lo);
    const double v1 = u(hi);
    const double h = hi - lo;
    if (power == 2) {
      total += h * (v0 * v0 + v0 * v1 + v1 * v1) / 3.0;
    } else {
      const double a2 = v0 * v0;
      const double b2 = v1 * v1;
      total += h * (a2 * a2 + a2 * v0 * v1 + a2 * b2 + v0 * v1 * b2 + b2 * b2) / 5.0;
    }
  }
  return total;
}

}  // namespace

std::string to_string(VolatilityForm form) {
  switch (form) {
    case VolatilityForm::CONSTANT:
      return "constant";
    case VolatilityForm::AFFINE:
      return "affine";
    case VolatilityForm::SINUSOID:
      return "sinusoid";
    case VolatilityForm::POWER:
      return "power";
    case VolatilityForm::TABLE:
      return "table";
  }
  return "?";
}

VolatilitySpec VolatilitySpec::constant(double c) {
  VolatilitySpec s;
  s.form = VolatilityForm::CONSTANT;
  s.a = c;
  return s;
}

VolatilitySpec VolatilitySpec::affine(double a, double b) {
  VolatilitySpec s;
  s.form = VolatilityForm::AFFINE;
  s.a = a;
  s.b = b;
  return s;
}

VolatilitySpec VolatilitySpec::sinusoid(double a, double b, double omega) {
  VolatilitySpec s;
  s.form = VolatilityForm::SINUSOID;
  s.a = a;
  s.b = b;
  s.omega = omega;
  return s;
}

VolatilitySpec VolatilitySpec::power(double a, double gamma) {
  if (!(gamma > 0.0 && gamma <= 1.0)) {
    throw InvalidArgument("power volatility exponent gamma must lie in (0, 1]");
  }
  VolatilitySpec s;
  s.form = VolatilityForm::POWER;
  s.a = a;
  s.gamma = gamma;
  return s;
}

VolatilitySpec VolatilitySpec::table(std::vector<double> times, std::vector<double> values,
                                     double declared_order) {
  if (times.size() < 2 || times.size() != values.size()) {
    throw InvalidArgument("volatility table needs >= 2 knots with matching values");
  }
  for (std::size_t k = 1; k < times.size(); ++k) {
    if (!(times[k] > times[k - 1])) throw InvalidArgument("volatility table times must increase");
  }
  if (!(declared_order > 0.0 && declared_order <= 1.0)) {
    throw InvalidArgument("declared Hölder order must lie in (0, 1]");
  }
  VolatilitySpec s;
  s.form = VolatilityForm::TABLE;
  s.times = std::move(times);
  s.values = std::move(values);
  s.declared_order = declared_order;
  return s;
}

double VolatilitySpec::operator()(double t) const {
  switch (form) {
    case VolatilityForm::CONSTANT:
      return a;
    case VolatilityForm::AFFINE:
      return a + b * t;
    case VolatilityForm::SINUSOID:
      return a + b * std::sin(omega * t);
    case VolatilityForm::POWER:
      return a * std::pow(t, gamma);
    case VolatilityForm::TABLE: {
      const double slack = kTableSlack * std::max(1.0, std::abs(times.back()));
      if (t < times.front() - slack || t > times.back() + slack) {
        throw DomainError("t=" + format_double(t) + " outside the volatility table");
      }
      if (t <= times.front()) return values.front();
      if (t >= times.back()) return values.back();
      const auto hi = static_cast<std::size_t>(
          std::upper_bound(times.begin(), times.end(), t) - times.begin());
      const std::size_t lo = hi - 1;
      const double w = (t - times[lo]) / (times[hi] - times[lo]);
      return values[lo] + w * (values[hi] - values[lo]);
    }
  }
  return 0.0;
}

double VolatilitySpec::holder_order() const {
  switch (form) {
    case VolatilityForm::POWER:
      return gamma;
    case VolatilityForm::TABLE:
      return declared_order;
    default:
      return 1.0;
  }
}

std::string VolatilitySpec::describe() const {
  switch (form) {
    case VolatilityForm::CONSTANT:
      return "constant:" + format_double(a);
    case VolatilityForm::AFFINE:
      return "affine:" + format_double(a) + "," + format_double(b);
    case VolatilityForm::SINUSOID:
      return "sinusoid:" + format_double(a) + "," + format_double(b) + "," + format_double(omega);
    case VolatilityForm::POWER:
      return "power:" + format_double(a) + "," + format_double(gamma);
    case VolatilityForm::TABLE:
      return "table:" + (source.empty() ? std::string("<inline>") : source);
  }
  return "?";
}

VolatilitySpec parse_volatility(const std::string& text) {
  const auto colon = text.find(':');
  const std::string name = to_lower(trim(text.substr(0, colon)));
  const std::string args = colon == std::string::npos ? std::string() : text.substr(colon + 1);
  const std::vector<double> p = split_numbers(args, "sigma " + name);
  auto expect = [&](std::size_t count) {
    if (p.size() != count) {
      throw InvalidArgument("sigma '" + text + "': " + name + " takes " + std::to_string(count) +
                            " parameter(s)");
    }
  };
  if (name == "constant") {
    expect(1);
    return VolatilitySpec::constant(p[0]);
  }
  if (name == "affine") {
    expect(2);
    return VolatilitySpec::affine(p[0], p[1]);
  }
  if (name == "sinusoid") {
    expect(3);
    return VolatilitySpec::sinusoid(p[0], p[1], p[2]);
  }
  if (name == "power") {
    expect(2);
    return VolatilitySpec::power(p[0], p[1]);
  }
  throw InvalidArgument("unknown sigma form '" + name +
                        "' (expected constant, affine, sinusoid, power or table)");
}

VolatilitySpec load_volatility_table(const std::string& filename, double declared_order) {
  const SamplePath path = read_path_csv(filename);
  std::vector<double> times(path.values.size());
  for (std::size_t k = 0; k < times.size(); ++k) {
    times[k] = path.grid.time(static_cast<std::int64_t>(k));
  }
  VolatilitySpec spec = VolatilitySpec::table(std::move(times), path.values, declared_order);
  spec.source = filename;
  return spec;
}

SamplePath integral_path(const VolatilitySpec& u, const SamplePath& g) {
  check_table_covers(u, g.grid.horizon);
  SamplePath z;
  z.grid = g.grid;
  z.meta = g.meta;
  z.meta.note = "integral(" + u.describe() + ")";
  z.values.assign(g.values.size(), 0.0);
  double level = 0.0;
  for (std::size_t k = 1; k < g.values.size(); ++k) {
    const double left = g.grid.time(static_cast<std::int64_t>(k - 1));
    level += u(left) * (g.values[k] - g.values[k - 1]);
    z.values[k] = level;
  }
  return z;
}

SamplePath ou_path(const OUParams& params, const VolatilitySpec& sigma, const SamplePath& g) {
  if (!std::isfinite(params.theta) || !std::isfinite(params.x0)) {
    throw InvalidArgument("OU parameters must be finite");
  }
  check_table_covers(sigma, g.grid.horizon);
  SamplePath x;
  x.grid = g.grid;
  x.meta = g.meta;
  x.meta.note = "ou(theta=" + format_double(params.theta) + ",x0=" + format_double(params.x0) +
                ",sigma=" + sigma.describe() + ")";
  x.values.assign(g.values.size(), 0.0);
  const double dt = g.grid.step();
  double level = params.x0;
  x.values[0] = level;
  for (std::size_t k = 1; k < g.values.size(); ++k) {
    const double left = g.grid.time(static_cast<std::int64_t>(k - 1));
    level = level - params.theta * level * dt + sigma(left) * (g.values[k] - g.values[k - 1]);
    x.values[k] = level;
  }
  return x;
}

double integrated_volatility(const VolatilitySpec& sigma, double t) {
  if (!(t >= 0.0)) throw InvalidArgument("integration limit must be >= 0");
  const double a = sigma.a;
  const double b = sigma.b;
  switch (sigma.form) {
    case VolatilityForm::CONSTANT:
      return a * a * t;
    case VolatilityForm::AFFINE:
      return a * a * t + a * b * t * t + b * b * t * t * t / 3.0;
    case VolatilityForm::SINUSOID: {
      const double w = sigma.omega;
      if (w == 0.0) return a * a * t;
      return a * a * t + 2.0 * a * b * (1.0 - std::cos(w * t)) / w +
             b * b * (t / 2.0 - std::sin(2.0 * w * t) / (4.0 * w));
    }
    case VolatilityForm::POWER: {
      const double e = 2.0 * sigma.gamma + 1.0;
      return a * a * std::pow(t, e) / e;
    }
    case VolatilityForm::TABLE:
      check_table_covers(sigma, t);
      return table_power_integral(sigma, t, 2);
  }
  return 0.0;
}

double integrated_quarticity(const VolatilitySpec& sigma, double t) {
  if (!(t >= 0.0)) throw InvalidArgument("integration limit must be >= 0");
  const double a = sigma.a;
  const double b = sigma.b;
  switch (sigma.form) {
    case VolatilityForm::CONSTANT:
      return a * a * a * a * t;
    case VolatilityForm::AFFINE: {
      if (b == 0.0) return a * a * a * a * t;
      const double end = a + b * t;
      // (end^5 - a^5)/(5b) without the cancellation of the quotient form.
      const double e2 = end * end;
      const double a2 = a * a;
      return t * (e2 * e2 + e2 * end * a + e2 * a2 + end * a2 * a + a2 * a2) / 5.0;
    }
    case VolatilityForm::SINUSOID: {
      const double w = sigma.omega;
      if (w == 0.0) return a * a * a * a * t;
      const double i1 = (1.0 - std::cos(w * t)) / w;
      const double i2 = t / 2.0 - std::sin(2.0 * w * t) / (4.0 * w);
      const double i3 = (0.75 * (1.0 - std::cos(w * t)) - (1.0 - std::cos(3.0 * w * t)) / 12.0) / w;
      const double i4 =
          3.0 * t / 8.0 - std::sin(2.0 * w * t) / (4.0 * w) + std::sin(4.0 * w * t) / (32.0 * w);
      return a * a * a * a * t + 4.0 * a * a * a * b * i1 + 6.0 * a * a * b * b * i2 +
             4.0 * a * b * b * b * i3 + b * b * b * b * i4;
    }
    case VolatilityForm::POWER: {
      const double e = 4.0 * sigma.gamma + 1.0;
      return a * a * a * a * std::pow(t, e) / e;
    }
    case VolatilityForm::TABLE:
      check_table_covers(sigma, t);
      return table_power_integral(sigma, t, 4);
  }
  return 0.0;
}

}  // namespace gausvol
