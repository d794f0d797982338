#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "casimir/numerics.hpp"

namespace casimir {

// Three plasma layers: semi-infinite body 1, gap of width `gap` with plasma
// frequency omega_p2, semi-infinite body 3. Frequencies in rad/s, gap in m.
struct PlasmaTriple {
  double omega_p1 = 0.0;
  double omega_p2 = 0.0;
  double omega_p3 = 0.0;
  double gap = 0.0;

  // alpha = omega_p2 / omega_p1, beta = omega_p3 / omega_p1,
  // Lambda = omega_p1 gap / c.
  static PlasmaTriple from_ratios(double alpha, double beta, double Lambda,
                                  double omega_p1 = 1e16);

  double alpha() const { return omega_p2 / omega_p1; }
  double beta() const { return omega_p3 / omega_p1; }
  double Lambda() const;
  double lambda_p1() const;  // 2 pi c / omega_p1
  PlasmaTriple with_gap(double L) const;
  void validate() const;
};

// omega_minus is the lowest root of the coupled dispersion relation,
// omega_plus the next one above it.
enum class Branch { Minus, Plus };

enum class Sector { Propagative, Evanescent };

struct SectorLabels {
  Sector gap = Sector::Evanescent;
  Sector slab1 = Sector::Evanescent;
  Sector slab3 = Sector::Evanescent;
};

struct ModeSample {
  double k = 0.0;       // 1/m
  double omega = 0.0;   // rad/s
  double residual = 0.0;  // componentwise relative residual of the dispersion relation
};

struct ModeBranch {
  Branch branch = Branch::Minus;
  std::vector<ModeSample> samples;
  double onset_k = 0.0;  // 1/m, 0 when the branch exists down to k -> 0
  // Body and gap plasma frequencies coincide on one interface. The branch
  // then follows the light line of the lighter body (Minus) or the single
  // plasmon of the other interface (Plus).
  bool zero_contrast = false;
};

// Nonretarded-to-retarded single-interface plasmon between plasmas omega_pi
// and omega_p2, in rad/s, written without cancellation for small k.
double single_plasmon(double omega_pi, double omega_p2, double k);

// Dispersion relation solver in units w = omega / omega_p1 and
// K = k c / omega_p1. Roots are looked for in the window where both bodies
// are evanescent, capped at the largest plasma frequency.
class CoupledModeSolver {
 public:
  explicit CoupledModeSolver(const PlasmaTriple& p, const RootConfig& cfg = {});

  // Offset of a branch from the single-interface plasmon it tends to at
  // large K. Computed from a factorised form of the dispersion relation so
  // that exponentially small offsets keep full relative precision.
  struct Offset {
    double w = 0.0;
    double single = 0.0;
    double delta = 0.0;  // w - single
    int interface = 1;   // 1 or 3
  };

  double residual(double K, double w) const;
  double normalized_residual(double K, double w) const;
  double single(int interface, double K) const;  // w of the plasmon on 1|2 or 3|2
  double window_top(double K) const;
  bool zero_contrast() const { return zero_contrast_; }

  std::vector<double> roots(double K) const;
  std::optional<double> frequency(Branch b, double K) const;
  std::optional<Offset> offset(Branch b, double K) const;
  // dw/dLambda at fixed K along branch b, evaluated at the root w.
  double dw_dLambda(double K, double w) const;

  // K at which the branch first exists, 0 if it exists for K -> 0.
  double onset(Branch b) const;
  int paired_interface(Branch b) const { return b == Branch::Minus ? pair_minus_ : pair_plus_; }

  double A(int j) const { return A_[j - 1]; }
  double Lambda() const { return Lambda_; }

 private:
  double compute_onset(Branch b) const;
  struct Point {
    double u = 0.0;
    double qsq[3] = {0.0, 0.0, 0.0};
  };
  Point point(double K, double w) const;
  double edge_residual(double K, double w) const;
  double symmetric_factor(const Point& pt, bool even) const;
  std::optional<double> polish(int i, double K, double w_root) const;

  double A_[3];
  double Lambda_;
  RootConfig cfg_;
  bool zero_contrast_ = false;
  int pair_minus_ = 1;
  int pair_plus_ = 3;
  double onset_[2] = {0.0, 0.0};
};

// Both branches on a wavevector grid (1/m, ascending, positive).
std::pair<ModeBranch, ModeBranch> coupled_branches(const PlasmaTriple& p,
                                                   std::span<const double> k_grid,
                                                   const RootConfig& cfg = {});

// Wavevector at which omega_plus appears on the light line of body 1, for
// omega_p1 < omega_p2 < omega_p3. 1/m.
double onset_k_plus(const PlasmaTriple& p);

// Wavevector at which omega_plus crosses the gap light line, for
// omega_p2 < omega_p1 <= omega_p3. 1/m.
double onset_p_plus(const PlasmaTriple& p);

SectorLabels classify_sectors(const PlasmaTriple& p, double k, double omega);

}  // namespace casimir
