#include "gausvol/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "gausvol/error.hpp"
#include "gausvol/format.hpp"

namespace gausvol {
namespace {

bool parse_bool(const std::string& text, const std::string& key) {
  const std::string v = to_lower(trim(text));
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw InvalidArgument(key + ": expected a boolean, got '" + text + "'");
}

std::vector<std::int64_t> parse_int_list(const std::string& text, const std::string& key) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_int(trim(item), key));
  if (out.empty()) throw InvalidArgument(key + ": empty list");
  return out;
}

std::string join(const std::vector<std::int64_t>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v[i]);
  }
  return out;
}

void require_ascending(const std::vector<std::int64_t>& v, const std::string& key) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] < 1) throw InvalidArgument(key + ": entries must be >= 1");
    if (i && v[i] <= v[i - 1]) throw InvalidArgument(key + ": must be strictly ascending");
  }
}

std::string canonical_key(const std::string& key) {
  if (key == "n") return "n_list";
  if (key == "output_dir") return "out";
  if (key == "ou.theta_drift") return "ou.theta";
  if (key == "sigma.c") return "sigma.a";
  if (key == "sigma.order" || key == "sigma.holder_order") return "sigma.beta";
  return key;
}

}  // namespace

std::string to_string(Experiment e) {
  switch (e) {
    case Experiment::CONSISTENCY:
      return "consistency";
    case Experiment::CLT:
      return "clt";
    case Experiment::DIAGNOSE:
      return "diagnose";
    case Experiment::SAMPLE:
      return "sample";
    case Experiment::ESTIMATE:
      return "estimate";
  }
  return "?";
}

std::string to_string(Centering c) {
  return c == Centering::THEORETICAL ? "theoretical" : "exact-mean";
}

std::string to_string(Series s) {
  switch (s) {
    case Series::DRIVER:
      return "driver";
    case Series::INTEGRAL:
      return "integral";
    case Series::OU:
      return "ou";
  }
  return "?";
}

Experiment parse_experiment(const std::string& text) {
  const std::string v = to_lower(trim(text));
  for (Experiment e : {Experiment::CONSISTENCY, Experiment::CLT, Experiment::DIAGNOSE,
                       Experiment::SAMPLE, Experiment::ESTIMATE}) {
    if (v == to_string(e)) return e;
  }
  throw InvalidArgument("unknown experiment '" + text + "'");
}

ExperimentConfig ExperimentConfig::with_defaults() {
  ExperimentConfig c;
  if (const char* env = std::getenv("GAUSVOL_SEED"); env != nullptr && *env != '\0') {
    c.base_seed = parse_uint64(env, "GAUSVOL_SEED");
  }
  return c;
}

void ExperimentConfig::set(const std::string& raw_key, const std::string& raw_value) {
  const std::string key = canonical_key(to_lower(trim(raw_key)));
  const std::string value = trim(raw_value);
  auto real = [&] { return parse_double(value, key); };
  auto integer = [&] { return static_cast<std::int64_t>(parse_int(value, key)); };

  if (key == "experiment") {
    experiment = parse_experiment(value);
  } else if (key == "process") {
    spec.kind = parse_process_kind(value);
  } else if (key == "hurst") {
    spec.hurst = real();
  } else if (key == "h0") {
    spec.h0 = real();
  } else if (key == "k0") {
    spec.k0 = real();
  } else if (key == "allow_supercritical") {
    spec.allow_supercritical = parse_bool(value, key);
  } else if (key == "sigma") {
    const std::string lowered = to_lower(value);
    if (lowered.rfind("table:", 0) == 0) {
      sigma = VolatilitySpec();
      sigma.form = VolatilityForm::TABLE;
      sigma.source = value.substr(6);
    } else {
      sigma = parse_volatility(value);
    }
  } else if (key == "sigma.form") {
    const std::string f = to_lower(value);
    if (f == "constant") {
      sigma.form = VolatilityForm::CONSTANT;
    } else if (f == "affine") {
      sigma.form = VolatilityForm::AFFINE;
    } else if (f == "sinusoid") {
      sigma.form = VolatilityForm::SINUSOID;
    } else if (f == "power") {
      sigma.form = VolatilityForm::POWER;
    } else if (f == "table") {
      sigma.form = VolatilityForm::TABLE;
    } else {
      throw InvalidArgument("sigma.form: unknown form '" + value + "'");
    }
  } else if (key == "sigma.a") {
    sigma.a = real();
  } else if (key == "sigma.b") {
    sigma.b = real();
  } else if (key == "sigma.omega") {
    sigma.omega = real();
  } else if (key == "sigma.gamma") {
    sigma.gamma = real();
  } else if (key == "sigma.table") {
    sigma.source = value;
  } else if (key == "sigma.beta") {
    sigma.declared_order = real();
  } else if (key == "sigma.path_dependent") {
    sigma.path_dependent = parse_bool(value, key);
  } else if (key == "ou.theta") {
    ou.theta = real();
  } else if (key == "ou.x0") {
    ou.x0 = real();
  } else if (key == "n_list") {
    n_list = parse_int_list(value, key);
  } else if (key == "refinement") {
    refinement = integer();
  } else if (key == "replications") {
    replications = integer();
  } else if (key == "seed") {
    base_seed = parse_uint64(value, key);
  } else if (key == "horizon") {
    horizon = real();
  } else if (key == "out") {
    out = value;
  } else if (key == "workers") {
    workers = static_cast<int>(integer());
  } else if (key == "centering") {
    const std::string c = to_lower(value);
    if (c == "theoretical") {
      centering = Centering::THEORETICAL;
    } else if (c == "exact-mean" || c == "exact_mean") {
      centering = Centering::EXACT_MEAN;
    } else {
      throw InvalidArgument("centering: expected theoretical or exact-mean, got '" + value + "'");
    }
  } else if (key == "method") {
    if (to_lower(value) == "auto") {
      method.reset();
    } else {
      method = parse_sample_method(value);
    }
  } else if (key == "cholesky_cap") {
    cholesky_cap = integer();
  } else if (key == "limits.truncation") {
    truncation = integer();
  } else if (key == "input") {
    input = value;
  } else if (key == "series") {
    const std::string s = to_lower(value);
    if (s == "driver") {
      series = Series::DRIVER;
    } else if (s == "integral") {
      series = Series::INTEGRAL;
    } else if (s == "ou") {
      series = Series::OU;
    } else {
      throw InvalidArgument("series: expected driver, integral or ou, got '" + value + "'");
    }
  } else if (key == "diag.n_list") {
    diag_n_list = parse_int_list(value, key);
  } else if (key == "diag.m_list") {
    diag_m_list = parse_int_list(value, key);
  } else if (key == "diag.blocks") {
    diag_blocks = integer();
  } else if (key == "diag.j_max") {
    diag_j_max = integer();
  } else if (key == "diag.points") {
    diag_points = static_cast<int>(integer());
  } else {
    throw InvalidArgument("unknown key '" + raw_key + "'");
  }
}

void ExperimentConfig::finalize() {
  require_ascending(n_list, "n_list");
  require_ascending(diag_n_list, "diag.n_list");
  require_ascending(diag_m_list, "diag.m_list");
  if (replications < 1) throw InvalidArgument("replications must be >= 1");
  if (refinement < 4) throw InvalidArgument("refinement must be >= 4");
  if (!(horizon > 0.0) || !std::isfinite(horizon)) throw InvalidArgument("horizon must be > 0");
  if (workers < 0) throw InvalidArgument("workers must be >= 0");
  if (cholesky_cap < 1) throw InvalidArgument("cholesky_cap must be >= 1");
  if (truncation != 0 && truncation < 1000) {
    throw InvalidArgument("limits.truncation must be 0 (auto) or >= 1000");
  }
  if (diag_blocks < 1 || diag_j_max < 1 || diag_points < 2) {
    throw InvalidArgument("diag.blocks, diag.j_max must be >= 1 and diag.points >= 2");
  }
  if (sigma.form == VolatilityForm::TABLE) {
    if (sigma.source.empty()) throw InvalidArgument("sigma.form = table needs sigma.table");
    VolatilitySpec loaded = load_volatility_table(sigma.source, sigma.declared_order);
    loaded.path_dependent = sigma.path_dependent;
    sigma = std::move(loaded);
  } else if (sigma.form == VolatilityForm::POWER) {
    sigma = VolatilitySpec::power(sigma.a, sigma.gamma);
  }
  validate(spec);
}

SampleMethod ExperimentConfig::resolved_method() const {
  if (method) return *method;
  return spec.kind == ProcessKind::FBM ? SampleMethod::CIRCULANT : SampleMethod::CHOLESKY;
}

std::int64_t ExperimentConfig::resolved_truncation() const {
  if (truncation > 0) return truncation;
  return spec.kind == ProcessKind::BIFBM ? 4096 : 100000;
}

void parse_config(std::istream& in, const std::string& source, ExperimentConfig& config) {
  std::set<std::string> seen;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    const std::string body = trim(hash == std::string::npos ? line : line.substr(0, hash));
    if (body.empty()) continue;
    const std::string where = source + ":" + std::to_string(number) + ": ";
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw InvalidArgument(where + "expected 'key = value'");
    const std::string key = canonical_key(to_lower(trim(body.substr(0, eq))));
    if (key.empty()) throw InvalidArgument(where + "empty key");
    if (!seen.insert(key).second) throw InvalidArgument(where + "duplicate key '" + key + "'");
    try {
      config.set(key, body.substr(eq + 1));
    } catch (const std::exception& e) {
      throw InvalidArgument(where + e.what());
    }
  }
}

void load_config_file(const std::string& filename, ExperimentConfig& config) {
  std::ifstream in(filename);
  if (!in) throw InvalidArgument("cannot open config file '" + filename + "'");
  parse_config(in, filename, config);
}

std::string echo_config(const ExperimentConfig& c) {
  std::ostringstream o;
  auto kv = [&](const std::string& k, const std::string& v) { o << k << " = " << v << '\n'; };
  kv("experiment", to_string(c.experiment));
  kv("process", to_string(c.spec.kind));
  kv("hurst", format_double(c.spec.hurst));
  kv("h0", format_double(c.spec.h0));
  kv("k0", format_double(c.spec.k0));
  kv("allow_supercritical", c.spec.allow_supercritical ? "true" : "false");
  kv("sigma.form", to_string(c.sigma.form));
  kv("sigma.a", format_double(c.sigma.a));
  kv("sigma.b", format_double(c.sigma.b));
  kv("sigma.omega", format_double(c.sigma.omega));
  kv("sigma.gamma", format_double(c.sigma.gamma));
  if (!c.sigma.source.empty()) kv("sigma.table", c.sigma.source);
  kv("sigma.beta", format_double(c.sigma.declared_order));
  kv("sigma.path_dependent", c.sigma.path_dependent ? "true" : "false");
  kv("ou.theta", format_double(c.ou.theta));
  kv("ou.x0", format_double(c.ou.x0));
  kv("n_list", join(c.n_list));
  kv("refinement", std::to_string(c.refinement));
  kv("replications", std::to_string(c.replications));
  kv("seed", std::to_string(c.base_seed));
  kv("horizon", format_double(c.horizon));
  kv("out", c.out);
  kv("workers", std::to_string(c.workers));
  kv("centering", to_string(c.centering));
  kv("method", c.method ? to_string(*c.method) : "auto");
  kv("cholesky_cap", std::to_string(c.cholesky_cap));
  kv("limits.truncation", std::to_string(c.truncation));
  if (!c.input.empty()) kv("input", c.input);
  kv("series", to_string(c.series));
  kv("diag.n_list", join(c.diag_n_list));
  kv("diag.m_list", join(c.diag_m_list));
  kv("diag.blocks", std::to_string(c.diag_blocks));
  kv("diag.j_max", std::to_string(c.diag_j_max));
  kv("diag.points", std::to_string(c.diag_points));
  return o.str();
}

}  // namespace gausvol
