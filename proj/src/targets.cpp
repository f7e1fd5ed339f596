#include "levyfht/targets.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "levyfht/rng.hpp"
#include "levyfht/special.hpp"

namespace levyfht {

namespace {

constexpr int kMassDraws = 10000;

double norm2(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s;
}

std::int64_t cell_coord(double x, double l) {
  return static_cast<std::int64_t>(std::floor(x / l));
}

std::uint64_t hash_cell(const std::int64_t* cell, int d) {
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a
  for (int i = 0; i < d; ++i) {
    h ^= static_cast<std::uint64_t>(cell[i]);
    h *= 1099511628211ull;
  }
  return h;
}

bool balls_contain(const PoissonBalls& balls,
                   const std::unordered_map<std::uint64_t,
                                            std::vector<std::uint32_t>>& index,
                   std::span<const double> x) {
  const int d = balls.d;
  const double l2 = balls.l * balls.l;
  std::int64_t base[16];
  std::int64_t cell[16];
  int offset[16];
  for (int i = 0; i < d; ++i) {
    base[i] = cell_coord(x[i], balls.l);
    offset[i] = -1;
  }
  // odometer over the 3^d neighboring cells
  for (;;) {
    for (int i = 0; i < d; ++i) cell[i] = base[i] + offset[i];
    const auto it = index.find(hash_cell(cell, d));
    if (it != index.end()) {
      for (std::uint32_t ci : it->second) {
        const double* c = balls.centers.data() + static_cast<std::size_t>(ci) * d;
        double dist2 = 0.0;
        for (int i = 0; i < d; ++i) {
          const double diff = x[i] - c[i];
          dist2 += diff * diff;
        }
        if (dist2 <= l2) return true;
      }
    }
    int i = 0;
    while (i < d && offset[i] == 1) offset[i++] = -1;
    if (i == d) break;
    ++offset[i];
  }
  return false;
}

double sphere_exterior_mass(double L, int d, double s) {
  return sf::gamma_q(0.5 * d, L * L / (4.0 * s));
}

}  // namespace

TargetSpec::TargetSpec(Geometry geometry, std::vector<double> x0)
    : geometry_(std::move(geometry)), x0_(std::move(x0)) {
  if (const auto* h = std::get_if<HalfLine>(&geometry_)) {
    if (!(h->L > 0.0)) throw std::invalid_argument("HalfLine: L must be > 0");
    dim_ = 1;
  } else if (const auto* sp = std::get_if<SphereExterior>(&geometry_)) {
    if (!(sp->L > 0.0)) throw std::invalid_argument("SphereExterior: L must be > 0");
    if (sp->d < 1 || sp->d > 16) {
      throw std::invalid_argument("SphereExterior: d must be in [1,16]");
    }
    dim_ = sp->d;
  } else if (const auto* an = std::get_if<Annulus>(&geometry_)) {
    if (!(an->L_minus > 0.0 && an->L_minus < an->L_plus)) {
      throw std::invalid_argument("Annulus: need 0 < L_minus < L_plus");
    }
    if (an->d < 1 || an->d > 16) {
      throw std::invalid_argument("Annulus: d must be in [1,16]");
    }
    dim_ = an->d;
  } else {
    const auto& pb = std::get<PoissonBalls>(geometry_);
    if (!(pb.l > 0.0)) throw std::invalid_argument("PoissonBalls: l must be > 0");
    if (pb.d < 1 || pb.d > 16) {
      throw std::invalid_argument("PoissonBalls: d must be in [1,16]");
    }
    if (!(pb.lambda >= 0.0)) throw std::invalid_argument("PoissonBalls: lambda must be >= 0");
    if (!(pb.box_halfwidth > 0.0)) {
      throw std::invalid_argument("PoissonBalls: box_halfwidth must be > 0");
    }
    if (pb.centers.size() % pb.d != 0) {
      throw std::invalid_argument("PoissonBalls: centers size not a multiple of d");
    }
    for (double c : pb.centers) {
      if (std::abs(c) > pb.box_halfwidth) {
        throw std::invalid_argument("PoissonBalls: center outside the generation box");
      }
    }
    dim_ = pb.d;
    // uniform grid with cell size l
    std::int64_t cell[16];
    for (std::size_t i = 0; i < pb.count(); ++i) {
      const double* c = pb.centers.data() + i * pb.d;
      for (int j = 0; j < pb.d; ++j) cell[j] = cell_coord(c[j], pb.l);
      cell_index_[hash_cell(cell, pb.d)].push_back(static_cast<std::uint32_t>(i));
    }
  }

  if (x0_.empty()) x0_.assign(dim_, 0.0);
  if (static_cast<int>(x0_.size()) != dim_) {
    throw std::invalid_argument("TargetSpec: x0 dimension mismatch");
  }
  if (std::holds_alternative<SphereExterior>(geometry_) ||
      std::holds_alternative<Annulus>(geometry_)) {
    for (double v : x0_) {
      if (v != 0.0) {
        throw std::invalid_argument(
            "TargetSpec: radial targets require x0 = 0 (no closed-form mass otherwise)");
      }
    }
  }
  if (contains(*this, x0_)) {
    throw std::invalid_argument("TargetSpec: starting point x0 lies in the target");
  }
}

bool contains(const TargetSpec& target, std::span<const double> x) {
  if (static_cast<int>(x.size()) != target.dim()) {
    throw std::invalid_argument("contains: dimension mismatch");
  }
  return std::visit(
      [&](const auto& geom) -> bool {
        using G = std::decay_t<decltype(geom)>;
        if constexpr (std::is_same_v<G, HalfLine>) {
          return x[0] <= -geom.L;
        } else if constexpr (std::is_same_v<G, SphereExterior>) {
          return norm2(x) >= geom.L * geom.L;
        } else if constexpr (std::is_same_v<G, Annulus>) {
          const double r2 = norm2(x);
          return r2 >= geom.L_minus * geom.L_minus &&
                 r2 <= geom.L_plus * geom.L_plus;
        } else {
          return balls_contain(geom, target.cell_index_, x);
        }
      },
      target.geometry());
}

double gaussian_mass(const TargetSpec& target, double s) {
  if (!(s > 0.0)) throw std::domain_error("gaussian_mass: s must be > 0");
  return std::visit(
      [&](const auto& geom) -> double {
        using G = std::decay_t<decltype(geom)>;
        if constexpr (std::is_same_v<G, HalfLine>) {
          const double L_eff = geom.L + target.start()[0];
          return 0.5 * sf::erfc(L_eff / (2.0 * std::sqrt(s)));
        } else if constexpr (std::is_same_v<G, SphereExterior>) {
          return sphere_exterior_mass(geom.L, geom.d, s);
        } else if constexpr (std::is_same_v<G, Annulus>) {
          return sphere_exterior_mass(geom.L_minus, geom.d, s) -
                 sphere_exterior_mass(geom.L_plus, geom.d, s);
        } else {
          // Monte Carlo over the Gaussian; the stream is a pure function of
          // (mass_seed, s) so repeated calls are deterministic.
          Rng rng(geom.mass_seed ^ mix64(std::bit_cast<std::uint64_t>(s)),
                  RngDomain::kMass, 0);
          const int d = geom.d;
          const double sd = std::sqrt(2.0 * s);
          std::vector<double> x(d);
          int hits = 0;
          for (int i = 0; i < kMassDraws; ++i) {
            for (int j = 0; j < d; ++j) {
              x[j] = target.start()[j] + sd * rng.normal();
            }
            if (balls_contain(geom, target.cell_index_, x)) ++hits;
          }
          return static_cast<double>(hits) / kMassDraws;
        }
      },
      target.geometry());
}

TargetSpec generate_poisson_field(double lambda, double l, int d,
                                  double box_halfwidth, std::uint64_t seed,
                                  std::vector<double> x0) {
  if (!(lambda >= 0.0)) throw std::invalid_argument("generate_poisson_field: lambda must be >= 0");
  if (!(l > 0.0)) throw std::invalid_argument("generate_poisson_field: l must be > 0");
  if (d < 1 || d > 16) throw std::invalid_argument("generate_poisson_field: d must be in [1,16]");
  if (!(box_halfwidth > 0.0)) {
    throw std::invalid_argument("generate_poisson_field: box_halfwidth must be > 0");
  }
  if (x0.empty()) x0.assign(d, 0.0);
  if (static_cast<int>(x0.size()) != d) {
    throw std::invalid_argument("generate_poisson_field: x0 dimension mismatch");
  }

  Rng rng(seed, RngDomain::kField, 0);
  const double volume = std::pow(2.0 * box_halfwidth, d);
  const std::uint64_t n = sample_poisson(lambda * volume, rng);

  std::vector<double> centers;
  centers.reserve(n * d);
  const double l2 = l * l;
  std::vector<double> c(d);
  for (std::uint64_t i = 0; i < n; ++i) {
    double dist2 = 0.0;
    for (int j = 0; j < d; ++j) {
      c[j] = (2.0 * rng.uniform01() - 1.0) * box_halfwidth;
      const double diff = c[j] - x0[j];
      dist2 += diff * diff;
    }
    if (dist2 <= l2) continue;  // ball would contain x0: drop it
    centers.insert(centers.end(), c.begin(), c.end());
  }

  PoissonBalls balls{std::move(centers), l, d, lambda, box_halfwidth, seed};
  return TargetSpec(std::move(balls), std::move(x0));
}

void write_centers_csv(std::ostream& out, const PoissonBalls& balls) {
  for (int j = 0; j < balls.d; ++j) {
    out << (j ? ",x" : "x") << (j + 1);
  }
  out << "\n";
  char buf[32];
  for (std::size_t i = 0; i < balls.count(); ++i) {
    for (int j = 0; j < balls.d; ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", balls.centers[i * balls.d + j]);
      out << (j ? "," : "") << buf;
    }
    out << "\n";
  }
}

std::vector<double> read_centers_csv(std::istream& in, int d) {
  std::vector<double> centers;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (header) {
      header = false;
      continue;
    }
    std::stringstream row(line);
    std::string field;
    int j = 0;
    while (std::getline(row, field, ',')) {
      centers.push_back(std::stod(field));
      ++j;
    }
    if (j != d) throw std::invalid_argument("read_centers_csv: wrong column count");
  }
  return centers;
}

}  // namespace levyfht
