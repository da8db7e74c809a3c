#include "exprgg/sampling.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "exprgg/format.hpp"

namespace exprgg {

double exponential_from_uniform(double u, double lambda) {
  return -std::log(u) / lambda;
}

PointCloud sample_exponential_cloud(std::size_t n, std::size_t d, double lambda,
                                    std::uint64_t seed) {
  if (n == 0) throw ValidationError("sample: n must be >= 1");
  if (d == 0) throw ValidationError("sample: d must be >= 1");
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw ValidationError("sample: lambda must be positive and finite");

  Engine engine(seed);
  std::vector<double> coords(n * d);
  // -ln(1) is -0.0; adding +0.0 normalises it so dumps never show a sign.
  for (auto& x : coords) x = exponential_from_uniform(uniform_open_closed(engine()), lambda) + 0.0;
  return PointCloud(d, std::move(coords), seed, lambda);
}

std::uint64_t derive_replication_seed(std::uint64_t base_seed, std::uint64_t index) {
  std::uint64_t z = base_seed + (index + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

void write_cloud(std::ostream& out, const PointCloud& cloud) {
  out << "# exprgg-cloud v1 n=" << cloud.size() << " d=" << cloud.dimension()
      << " lambda=" << detail::fmt17(cloud.lambda()) << " seed=" << cloud.seed() << '\n';
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const auto p = cloud.point(i);
    for (std::size_t k = 0; k < p.size(); ++k) {
      if (k) out << ' ';
      out << detail::fmt17(p[k]);
    }
    out << '\n';
  }
}

PointCloud read_cloud(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ValidationError("cloud dump: missing header");
  std::istringstream header(line);
  std::string hash, magic, version;
  header >> hash >> magic >> version;
  if (hash != "#" || magic != "exprgg-cloud" || version != "v1")
    throw ValidationError("cloud dump: bad header '" + line + "'");

  std::size_t n = 0, d = 0;
  double lambda = 0.0;
  std::uint64_t seed = 0;
  std::string field;
  while (header >> field) {
    const auto eq = field.find('=');
    if (eq == std::string::npos) throw ValidationError("cloud dump: bad header field '" + field + "'");
    const auto key = field.substr(0, eq);
    const auto value = field.substr(eq + 1);
    if (key == "n") n = std::stoull(value);
    else if (key == "d") d = std::stoull(value);
    else if (key == "lambda") lambda = std::stod(value);
    else if (key == "seed") seed = std::stoull(value);
    else throw ValidationError("cloud dump: unknown header field '" + key + "'");
  }
  if (d == 0) throw ValidationError("cloud dump: d missing from header");

  std::vector<double> coords;
  coords.reserve(n * d);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::size_t count = 0;
    double x;
    while (row >> x) {
      coords.push_back(x);
      ++count;
    }
    if (count != d)
      throw ValidationError("cloud dump: expected " + std::to_string(d) +
                            " coordinates, got " + std::to_string(count));
  }
  if (coords.size() != n * d)
    throw ValidationError("cloud dump: header says n=" + std::to_string(n) + " but found " +
                          std::to_string(coords.size() / d) + " points");
  return PointCloud(d, std::move(coords), seed, lambda);
}

}  // namespace exprgg
