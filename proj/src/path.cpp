#include "gausvol/path.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "gausvol/error.hpp"
#include "gausvol/format.hpp"

namespace gausvol {

Grid::Grid(std::int64_t n, double T) : n_steps(n), horizon(T) {
  if (n < 1) throw InvalidArgument("grid needs n_steps >= 1");
  if (!(T > 0.0) || !std::isfinite(T)) throw InvalidArgument("grid horizon must be > 0");
}

std::string to_string(SampleMethod method) {
  return method == SampleMethod::CHOLESKY ? "cholesky" : "circulant";
}

SampleMethod parse_sample_method(const std::string& text) {
  const std::string key = to_lower(trim(text));
  if (key == "cholesky") return SampleMethod::CHOLESKY;
  if (key == "circulant") return SampleMethod::CIRCULANT;
  throw InvalidArgument("unknown method '" + text + "' (expected cholesky or circulant)");
}

SamplePath SamplePath::restrict_to(std::int64_t n_coarse) const {
  if (n_coarse < 1 || grid.n_steps % n_coarse != 0) {
    throw InvalidArgument("grid with " + std::to_string(grid.n_steps) +
                          " steps cannot be restricted to " + std::to_string(n_coarse));
  }
  const std::int64_t factor = grid.n_steps / n_coarse;
  SamplePath out;
  out.grid = Grid(n_coarse, grid.horizon);
  out.meta = meta;
  out.values.resize(out.grid.size());
  for (std::int64_t k = 0; k <= n_coarse; ++k) out.values[k] = values[k * factor];
  return out;
}

void write_path_csv(std::ostream& out, const SamplePath& path) {
  if (path.meta.spec) out << "# process=" << describe(*path.meta.spec) << '\n';
  out << "# seed=" << path.meta.seed << '\n';
  if (path.meta.method) out << "# method=" << to_string(*path.meta.method) << '\n';
  if (!path.meta.note.empty()) out << "# note=" << path.meta.note << '\n';
  out << "# n_steps=" << path.grid.n_steps << '\n';
  out << "# horizon=" << format_double17(path.grid.horizon) << '\n';
  out << "t,value\n";
  for (std::size_t k = 0; k < path.values.size(); ++k) {
    out << format_double17(path.grid.time(static_cast<std::int64_t>(k))) << ','
        << format_double17(path.values[k]) << '\n';
  }
}

void write_path_csv(const std::string& filename, const SamplePath& path) {
  std::ofstream out(filename);
  if (!out) throw InvalidArgument("cannot open '" + filename + "' for writing");
  write_path_csv(out, path);
}

SamplePath read_path_csv(std::istream& in) {
  std::vector<double> times;
  std::vector<double> values;
  std::string line;
  bool header_seen = false;
  int line_no = 0;
  std::uint64_t seed = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string row = trim(line);
    if (row.empty()) continue;
    if (row.front() == '#') {
      if (row.rfind("# seed=", 0) == 0) {
        seed = parse_uint64(row.substr(7), "line " + std::to_string(line_no));
      }
      continue;
    }
    if (!header_seen) {
      if (row != "t,value") {
        throw InvalidArgument("line " + std::to_string(line_no) + ": expected header 't,value'");
      }
      header_seen = true;
      continue;
    }
    const auto comma = row.find(',');
    if (comma == std::string::npos) {
      throw InvalidArgument("line " + std::to_string(line_no) + ": expected 't,value'");
    }
    const std::string where = "line " + std::to_string(line_no);
    times.push_back(parse_double(row.substr(0, comma), where));
    values.push_back(parse_double(row.substr(comma + 1), where));
  }
  if (values.size() < 2) throw InvalidArgument("path CSV needs at least two rows");
  const auto n = static_cast<std::int64_t>(values.size()) - 1;
  if (times.front() != 0.0) throw InvalidArgument("path CSV must start at t=0");
  SamplePath path;
  path.grid = Grid(n, times.back());
  for (std::int64_t k = 0; k <= n; ++k) {
    if (std::abs(times[k] - path.grid.time(k)) > 1e-9 * path.grid.horizon) {
      throw InvalidArgument("path CSV times are not a uniform grid (row " + std::to_string(k) + ")");
    }
  }
  path.values = std::move(values);
  path.meta.seed = seed;
  return path;
}

SamplePath read_path_csv(const std::string& filename) {
  std::ifstream in(filename);
  if (!in) throw InvalidArgument("cannot open '" + filename + "'");
  return read_path_csv(in);
}

}  // namespace gausvol
