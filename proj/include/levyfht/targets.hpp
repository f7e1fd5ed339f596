#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <unordered_map>
#include <variant>
#include <vector>

namespace levyfht {

// Target geometries. All sets are closed; the boundary counts as inside.

// U = (-inf, -L], one-dimensional.
struct HalfLine {
  double L;
};

// U = { x : ||x|| >= L } in R^d (escape from the sphere of radius L).
struct SphereExterior {
  double L;
  int d;
};

// U = { x : L_minus <= ||x|| <= L_plus } in R^d.
struct Annulus {
  double L_minus;
  double L_plus;
  int d;
};

// Union of balls of radius l around a frozen realization of a Poisson point
// process of density lambda, truncated to the box [-hw, hw]^d. A uniform
// grid index with cell size l makes membership O(1) per query.
struct PoissonBalls {
  std::vector<double> centers;  // row-major, count x d
  double l;
  int d;
  double lambda;
  double box_halfwidth;
  std::uint64_t mass_seed = 0;  // stream for the Monte Carlo mass estimate

  std::size_t count() const { return d == 0 ? 0 : centers.size() / d; }
};

class TargetSpec {
 public:
  using Geometry = std::variant<HalfLine, SphereExterior, Annulus, PoissonBalls>;

  // Validates the geometry parameters, checks x0 is outside the target, and
  // builds the membership index for PoissonBalls. x0 defaults to the origin.
  // Closed-form Gaussian masses for SphereExterior and Annulus require
  // x0 = 0; HalfLine supports any x0 > -L (the mass shifts exactly).
  explicit TargetSpec(Geometry geometry, std::vector<double> x0 = {});

  int dim() const { return dim_; }
  const Geometry& geometry() const { return geometry_; }
  const std::vector<double>& start() const { return x0_; }

 private:
  Geometry geometry_;
  std::vector<double> x0_;
  int dim_ = 0;

  friend bool contains(const TargetSpec& target, std::span<const double> x);
  friend double gaussian_mass(const TargetSpec& target, double s);
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> cell_index_;
};

// True iff x lies in U (absolute coordinates, boundary included).
bool contains(const TargetSpec& target, std::span<const double> x);

// F(s) = P(B(s) + x0 in U), where B(s) is a centered Gaussian with
// per-coordinate variance 2s. Closed form for HalfLine, SphereExterior and
// Annulus; Monte Carlo (10^4 deterministic draws) for PoissonBalls.
double gaussian_mass(const TargetSpec& target, double s);

// Samples a Poisson(lambda * volume) number of ball centers uniformly in
// [-hw, hw]^d, removes any ball containing x0, and freezes the realization.
TargetSpec generate_poisson_field(double lambda, double l, int d,
                                  double box_halfwidth, std::uint64_t seed,
                                  std::vector<double> x0 = {});

// One center per row, header "x1,...,xd".
void write_centers_csv(std::ostream& out, const PoissonBalls& balls);
std::vector<double> read_centers_csv(std::istream& in, int d);

}  // namespace levyfht
