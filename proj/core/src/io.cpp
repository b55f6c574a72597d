#include "schauder/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include "schauder/error.hpp"

namespace schauder {

namespace {

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.emplace_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

bool parse_double(std::string_view s, double& out) {
  const auto t = trim(s);
  if (t.empty()) return false;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), out);
  return ec == std::errc() && ptr == t.data() + t.size();
}

// Sorted distinct values, merging entries closer than tol times the span.
std::vector<double> distinct(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const double tol = 1e-9 * std::max(1.0, v.back() - v.front());
  std::vector<double> out;
  for (double x : v)
    if (out.empty() || x - out.back() > tol) out.push_back(x);
  return out;
}

std::size_t locate(const std::vector<double>& sorted, double x) {
  const double tol = 1e-9 * std::max(1.0, sorted.back() - sorted.front());
  auto it = std::lower_bound(sorted.begin(), sorted.end(), x - tol);
  if (it == sorted.end() || std::abs(*it - x) > tol) throw IoError("sample off the inferred grid");
  return static_cast<std::size_t>(it - sorted.begin());
}

std::map<std::string, std::string> key_values(std::string_view text) {
  std::map<std::string, std::string> kv;
  for (const auto& part : split(text, ',')) {
    const auto eq = part.find('=');
    if (eq == std::string::npos) throw InvalidArgument("expected key=value in '" + part + "'");
    kv[trim(part.substr(0, eq))] = trim(part.substr(eq + 1));
  }
  return kv;
}

int to_int(const std::map<std::string, std::string>& kv, const std::string& key) {
  const auto it = kv.find(key);
  if (it == kv.end()) throw InvalidArgument("missing '" + key + "'");
  int v = 0;
  const auto& s = it->second;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw InvalidArgument("bad integer '" + s + "'");
  return v;
}

double to_double(const std::map<std::string, std::string>& kv, const std::string& key, double fallback) {
  const auto it = kv.find(key);
  if (it == kv.end()) return fallback;
  double v = 0;
  if (!parse_double(it->second, v)) throw InvalidArgument("bad number '" + it->second + "'");
  return v;
}

}  // namespace

GridFunction read_grid_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw IoError("empty CSV input");
  const auto header = split(line, ',');
  if (header.size() < 3) throw IoError("CSV header needs x1,...,xn,t,value");
  const std::size_t n = header.size() - 2;
  for (std::size_t a = 0; a < n; ++a)
    if (trim(header[a]) != "x" + std::to_string(a + 1)) throw IoError("CSV header column " + std::to_string(a + 1) + " must be x" + std::to_string(a + 1));
  if (trim(header[n]) != "t" || trim(header[n + 1]) != "value") throw IoError("CSV header must end with t,value");

  std::vector<std::vector<double>> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto cells = split(line, ',');
    if (cells.size() != n + 2) throw IoError("CSV line " + std::to_string(lineno) + ": wrong column count");
    std::vector<double> row(n + 2);
    for (std::size_t c = 0; c < cells.size(); ++c)
      if (!parse_double(cells[c], row[c])) throw IoError("CSV line " + std::to_string(lineno) + ": not a number");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw IoError("CSV has no samples");

  std::vector<std::vector<double>> coords(n + 1);
  for (std::size_t c = 0; c <= n; ++c) {
    std::vector<double> col;
    for (const auto& r : rows) col.push_back(r[c]);
    coords[c] = distinct(std::move(col));
  }
  std::vector<Axis> axes;
  for (std::size_t a = 0; a < n; ++a) {
    const auto& v = coords[a];
    if (v.size() == 1) {
      axes.push_back({v[0], 1.0, 1});
      continue;
    }
    const double h = (v.back() - v.front()) / static_cast<double>(v.size() - 1);
    for (std::size_t i = 0; i < v.size(); ++i)
      if (std::abs(v[i] - (v.front() + h * static_cast<double>(i))) > 1e-9 * std::max(1.0, v.back() - v.front()))
        throw IoError("axis x" + std::to_string(a + 1) + " is not uniform");
    axes.push_back({v.front(), h, v.size()});
  }
  const SpaceTimeGrid grid(axes, coords[n]);
  if (rows.size() != grid.size()) throw IoError("CSV samples do not fill the product grid");
  GridFunction u(grid);
  std::vector<char> seen(grid.size(), 0);
  for (const auto& r : rows) {
    std::size_t s = 0;
    for (std::size_t a = 0; a < n; ++a) s += locate(coords[a], r[a]) * grid.stride(a);
    const std::size_t k = locate(coords[n], r[n]);
    const std::size_t flat = k * grid.spatial_size() + s;
    if (seen[flat]) throw IoError("duplicate CSV sample");
    seen[flat] = 1;
    u(s, k) = r[n + 1];
  }
  return u;
}

GridFunction read_grid_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  return read_grid_csv(in);
}

void write_grid_csv(std::ostream& out, const GridFunction& u) {
  const auto& g = u.grid();
  for (std::size_t a = 0; a < g.dimension(); ++a) out << 'x' << a + 1 << ',';
  out << "t,value\n";
  char buf[32];
  auto put = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << buf;
  };
  for (std::size_t k = 0; k < g.time_size(); ++k)
    for (std::size_t s = 0; s < g.spatial_size(); ++s) {
      for (double x : g.point(s)) put(x), out << ',';
      put(g.time(k));
      out << ',';
      put(u(s, k));
      out << '\n';
    }
}

std::vector<double> parse_number_list(std::string_view text) {
  std::vector<double> out;
  for (const auto& part : split(text, ',')) {
    double v = 0;
    if (!parse_double(part, v)) throw InvalidArgument("bad number '" + part + "' in list");
    out.push_back(v);
  }
  return out;
}

SpectralField parse_field_descriptor(std::string_view text, const BasisPtr& basis) {
  const auto colon = text.find(':');
  const std::string kind = trim(text.substr(0, colon));
  const std::string_view rest = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  auto field = SpectralField::zero(basis);
  if (kind == "zero") return field;
  if (kind == "single") {
    const auto kv = key_values(rest);
    const int l = to_int(kv, "l"), m = to_int(kv, "m");
    if (!basis->contains(l, m)) throw InvalidArgument("mode (" + std::to_string(l) + "," + std::to_string(m) + ") not in basis");
    field.coeffs[basis->index_of(l, m)] = to_double(kv, "c", 1.0);
    return field;
  }
  if (kind == "random" || kind == "perp") {
    const auto kv = key_values(rest);
    std::mt19937_64 rng(static_cast<std::uint64_t>(to_int(kv, "seed")));
    std::normal_distribution<double> g;
    for (auto& c : field.coeffs) c = g(rng);
    return kind == "perp" ? split_parallel_perp(field).second : field;
  }
  if (kind == "coeffs") {
    for (const auto& term : split(rest, ';')) {
      const auto kv = key_values(term);
      const int l = to_int(kv, "l"), m = to_int(kv, "m");
      if (!basis->contains(l, m)) throw InvalidArgument("mode (" + std::to_string(l) + "," + std::to_string(m) + ") not in basis");
      field.coeffs[basis->index_of(l, m)] += to_double(kv, "c", 1.0);
    }
    return field;
  }
  throw InvalidArgument("unknown field descriptor '" + std::string(text) + "'");
}

}  // namespace schauder
