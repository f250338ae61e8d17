#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include <nlohmann/json.hpp>

#include "planarep/cohomology.hpp"
#include "planarep/components.hpp"
#include "planarep/symplectic.hpp"

namespace planarep {

/// Search for phi with r(phi) = target and phi(z_j) in prescribed classes.
struct SolveSpec {
  PlanarPresentation presentation;
  LieModel model = LieModel::su2();
  std::vector<TorsionClass> classes;  // one per torsion generator
  GroupMat target;                    // central element zeta; empty means identity
  std::uint64_t seed = 0;
  int max_iterations = 300;
  int restarts = 16;
  double tol = 1e-10;                 // bound on ||r(phi) zeta^-1 - e||_F
  bool use_oracle = true;             // consult su2_triangle_oracle where it applies

  GroupMat target_or_identity() const;
  nlohmann::json to_json() const;
  static SolveSpec from_json(const nlohmann::json& j);
};

struct SolveResult {
  bool found = false;
  std::optional<RepPoint> point;
  double residual = 0;
  int restart = -1;      // index of the selected restart
  int restarts_run = 0;
  int iterations = 0;
  bool escalated = false;

  nlohmann::json to_json() const;
};

/// Throws InfeasibleSpec for invalid classes, a non-central target, a
/// determinant obstruction, or (SU(2), genus 0, three torsion generators) an
/// oracle-certified empty fiber. NotFound is reported as found == false.
SolveResult solve_relator(const SolveSpec& spec);

/// SU(2), genus 0, n = 3: whether z1 z2 z3 = target has a solution with z_j
/// of class angle theta_j in [0, pi].
bool su2_triangle_oracle(double theta1, double theta2, double theta3, bool target_minus_identity);

struct FiberSample {
  RepPoint point;
  double residual = 0;
  std::vector<TorsionClass> labels;
  CochainData cohomology;
};

/// N independent solves with seeds derived from spec.seed; failures are skipped.
std::vector<FiberSample> sample_fiber(const SolveSpec& spec, int count, const Tolerances& tol = {});

/// Torsion point with free generators exp(X), X Gaussian of the given scale,
/// and phi(z_j) = k_j c_j k_j^{-1} for Haar-random k_j.
RepPoint random_torsion_point(const PlanarPresentation& p, const LieModel& model,
                              const std::vector<TorsionClass>& classes, std::mt19937_64& rng,
                              double scale = 0.5);

/// Seeded extended points with random algebra elements and projective
/// tangents; points whose relator value leaves the log chart are skipped.
std::vector<MomentSample> moment_batch(const PlanarPresentation& p, const LieModel& model,
                                       const std::vector<TorsionClass>& classes, std::uint64_t seed,
                                       int count, const Tolerances& tol = {});

/// Seed for restart i of a run seeded with base.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t i);

}  // namespace planarep
