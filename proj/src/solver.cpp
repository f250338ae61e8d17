#include "planarep/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <future>
#include <numbers>

#include "planarep/errors.hpp"

namespace planarep {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kBatch = 4;  // restarts evaluated together; fixed so results do not depend on threads

int thread_budget() {
  if (const char* env = std::getenv("PLANAREP_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return std::min(n, kBatch);
  }
  return 1;
}

Eigen::VectorXd flatten(const Eigen::MatrixXcd& m) {
  Eigen::VectorXd v(2 * m.size());
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    v(2 * i) = m.data()[i].real();
    v(2 * i + 1) = m.data()[i].imag();
  }
  return v;
}

struct State {
  std::vector<GroupMat> free;  // 2l free generators
  std::vector<GroupMat> conj;  // n conjugators
};

class Problem {
 public:
  explicit Problem(const SolveSpec& spec)
      : spec_(spec), target_(spec.target_or_identity()), target_inv_(spec.model.inverse(target_)) {
    for (const auto& c : spec.classes) reps_.push_back(c.representative());
  }

  RepPoint point(const State& s) const {
    std::vector<GroupMat> gens = s.free;
    for (std::size_t j = 0; j < s.conj.size(); ++j) {
      gens.push_back(s.conj[j] * reps_[j] * spec_.model.inverse(s.conj[j]));
    }
    return RepPoint(spec_.presentation, spec_.model, std::move(gens));
  }

  GroupMat residual_matrix(const RepPoint& pt) const {
    return pt.relator_value() * target_inv_ - spec_.model.identity();
  }

  State random_state(std::mt19937_64& rng) const {
    State s;
    for (int i = 0; i < 2 * spec_.presentation.genus(); ++i) s.free.push_back(spec_.model.random_element(rng));
    for (int j = 0; j < spec_.presentation.torsion_count(); ++j) s.conj.push_back(spec_.model.random_element(rng));
    return s;
  }

  State retract(const State& s, const Eigen::VectorXd& step) const {
    const int d = spec_.model.dim();
    State out = s;
    int k = 0;
    for (auto& g : out.free) g = spec_.model.exp(step.segment(d * k++, d)) * g;
    for (auto& c : out.conj) c = spec_.model.exp(step.segment(d * k++, d)) * c;
    return out;
  }

  // Jacobian of the flattened residual with respect to left-multiplicative
  // exp-steps of the free generators and conjugators.
  Eigen::MatrixXd jacobian(const RepPoint& pt) const {
    const auto& model = spec_.model;
    const auto& p = spec_.presentation;
    const int d = model.dim();
    const int nvars = p.generator_count() * d;
    Eigen::MatrixXd to_u = Eigen::MatrixXd::Zero(nvars, nvars);
    to_u.topLeftCorner(2 * p.genus() * d, 2 * p.genus() * d).setIdentity();
    for (int j = 0; j < p.torsion_count(); ++j) {
      const int o = p.z(j) * d;
      to_u.block(o, o, d, d) = Operator::Identity(d, d) - pt.Ad_generator(p.z(j));
    }
    const Eigen::MatrixXd row = delta1_relator_row(pt) * to_u;
    const GroupMat tail = pt.relator_value() * target_inv_;
    const int n = model.matrix_size();
    Eigen::MatrixXd jac(2 * n * n, nvars);
    for (int k = 0; k < nvars; ++k) jac.col(k) = flatten(model.to_matrix(row.col(k)) * tail);
    return jac;
  }

  struct Run {
    State state;
    double residual = 0;
    int iterations = 0;
  };

  Run minimize(State s, int max_iterations) const {
    RepPoint pt = point(s);
    Eigen::VectorXd r = flatten(residual_matrix(pt));
    double cost = r.squaredNorm();
    double lambda = 1e-3;
    int it = 0;
    for (; it < max_iterations && std::sqrt(cost) >= spec_.tol; ++it) {
      const Eigen::MatrixXd jac = jacobian(pt);
      const Eigen::MatrixXd jtj = jac.transpose() * jac;
      const Eigen::VectorXd grad = jac.transpose() * r;
      bool accepted = false;
      while (!accepted && lambda < 1e12) {
        Eigen::MatrixXd lhs = jtj;
        lhs.diagonal().array() += lambda * (1.0 + jtj.diagonal().array());
        const Eigen::VectorXd step = lhs.ldlt().solve(-grad);
        State trial = retract(s, step);
        RepPoint trial_pt = point(trial);
        const Eigen::VectorXd trial_r = flatten(residual_matrix(trial_pt));
        const double trial_cost = trial_r.squaredNorm();
        if (trial_cost < cost) {
          s = std::move(trial);
          pt = std::move(trial_pt);
          r = trial_r;
          cost = trial_cost;
          lambda = std::max(lambda / 3.0, 1e-12);
          accepted = true;
        } else {
          lambda *= 4.0;
        }
      }
      if (!accepted) break;
    }
    return {std::move(s), std::sqrt(cost), it};
  }

 private:
  const SolveSpec& spec_;
  GroupMat target_;
  GroupMat target_inv_;
  std::vector<GroupMat> reps_;
};

void validate(const SolveSpec& spec) {
  const auto& p = spec.presentation;
  const auto& model = spec.model;
  if (static_cast<int>(spec.classes.size()) != p.torsion_count()) {
    throw ArityMismatch("need one class per torsion generator");
  }
  for (int j = 0; j < p.torsion_count(); ++j) {
    const auto& c = spec.classes[j];
    if (c.group != model.name()) throw InfeasibleSpec("class " + c.id() + " is not a class of " + model.name());
    for (int k : c.exponents) {
      if ((static_cast<long long>(k) * p.torsion()[j]) % c.order != 0) {
        throw InfeasibleSpec("class " + c.id() + " has no elements of order dividing " +
                             std::to_string(p.torsion()[j]));
      }
    }
  }
  const GroupMat target = spec.target_or_identity();
  if (model.group_residual(target) > 1e-9 || !model.is_central(target, 1e-9)) {
    throw InfeasibleSpec("target is not a central element of " + model.name());
  }
  if (model.kind() == GroupKind::U) {
    std::complex<double> det = 1.0;
    for (const auto& c : spec.classes) det *= c.representative().determinant();
    if (std::abs(det - target.determinant()) > 1e-9) {
      throw InfeasibleSpec("determinant obstruction: product of class determinants differs from det(target)");
    }
  }
  if (spec.use_oracle && model.kind() == GroupKind::SU2 && p.genus() == 0 && p.torsion_count() == 3) {
    const bool minus = (target + model.identity()).norm() < 1e-9;
    if (!su2_triangle_oracle(spec.classes[0].su2_angle(), spec.classes[1].su2_angle(),
                             spec.classes[2].su2_angle(), minus)) {
      throw InfeasibleSpec("class angles violate the SU(2) triangle inequalities");
    }
  }
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t i) {
  // splitmix64
  std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (i + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

GroupMat SolveSpec::target_or_identity() const {
  return target.size() == 0 ? model.identity() : target;
}

nlohmann::json SolveSpec::to_json() const {
  nlohmann::json cls = nlohmann::json::array();
  for (const auto& c : classes) cls.push_back(c.exponents);
  const GroupMat t = target_or_identity();
  nlohmann::json tgt = nlohmann::json::array();
  for (int r = 0; r < t.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (int c = 0; c < t.cols(); ++c) row.push_back({t(r, c).real(), t(r, c).imag()});
    tgt.push_back(row);
  }
  return {{"presentation", render(presentation)}, {"group", model.name()}, {"classes", cls},
          {"target", tgt}, {"seed", seed}, {"max_iterations", max_iterations}, {"restarts", restarts},
          {"tol", tol}, {"use_oracle", use_oracle}};
}

SolveSpec SolveSpec::from_json(const nlohmann::json& j) {
  SolveSpec s;
  s.presentation = parse_presentation(j.at("presentation").get<std::string>());
  s.model = LieModel::from_name(j.at("group").get<std::string>());
  if (j.contains("classes")) {
    const auto& cls = j.at("classes");
    for (std::size_t i = 0; i < cls.size(); ++i) {
      const int m = s.presentation.torsion().at(i);
      std::vector<int> ks = cls[i].get<std::vector<int>>();
      if (s.model.kind() == GroupKind::SU2 && ks.size() == 1) ks.push_back(-ks[0]);
      s.classes.push_back(make_class(s.model, m, ks));
    }
  } else {
    for (int m : s.presentation.torsion()) {
      s.classes.push_back(make_class(s.model, m, std::vector<int>(s.model.matrix_size(), 0)));
    }
  }
  if (j.contains("target")) {
    const auto& t = j.at("target");
    if (t.is_string()) {
      const auto name = t.get<std::string>();
      if (name == "e") {
        s.target = s.model.identity();
      } else if (name == "-e") {
        s.target = -s.model.identity();
      } else {
        throw MalformedInput("target must be \"e\", \"-e\" or a matrix");
      }
    } else {
      const int n = static_cast<int>(t.size());
      s.target = GroupMat(n, n);
      for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) s.target(r, c) = {t[r][c].at(0).get<double>(), t[r][c].at(1).get<double>()};
      }
    }
  }
  s.seed = j.value("seed", std::uint64_t{0});
  s.max_iterations = j.value("max_iterations", s.max_iterations);
  s.restarts = j.value("restarts", s.restarts);
  s.tol = j.value("tol", s.tol);
  s.use_oracle = j.value("use_oracle", s.use_oracle);
  return s;
}

nlohmann::json SolveResult::to_json() const {
  nlohmann::json j = {{"found", found}, {"residual", residual}, {"restart", restart},
                      {"restarts_run", restarts_run}, {"iterations", iterations}, {"escalated", escalated}};
  if (point) j["point"] = point->to_json();
  return j;
}

bool su2_triangle_oracle(double theta1, double theta2, double theta3, bool target_minus_identity) {
  constexpr double eps = 1e-12;
  const double t3 = target_minus_identity ? kPi - theta3 : theta3;
  return std::abs(theta1 - theta2) <= t3 + eps && t3 <= std::min(theta1 + theta2, 2 * kPi - theta1 - theta2) + eps;
}

SolveResult solve_relator(const SolveSpec& spec) {
  validate(spec);
  const Problem problem(spec);
  const int threads = thread_budget();

  bool oracle_feasible = false;
  if (spec.model.kind() == GroupKind::SU2 && spec.presentation.genus() == 0 &&
      spec.presentation.torsion_count() == 3) {
    const GroupMat t = spec.target_or_identity();
    oracle_feasible = su2_triangle_oracle(spec.classes[0].su2_angle(), spec.classes[1].su2_angle(),
                                          spec.classes[2].su2_angle(), (t + spec.model.identity()).norm() < 1e-9);
  }

  SolveResult result;
  auto attempt = [&](int restarts, int iterations, std::uint64_t salt) {
    for (int batch_start = 0; batch_start < restarts; batch_start += kBatch) {
      const int batch_end = std::min(restarts, batch_start + kBatch);
      std::vector<Problem::Run> runs(batch_end - batch_start);
      auto run_one = [&](int i) {
        std::mt19937_64 rng(derive_seed(spec.seed ^ salt, static_cast<std::uint64_t>(i)));
        runs[i - batch_start] = problem.minimize(problem.random_state(rng), iterations);
      };
      if (threads > 1) {
        std::vector<std::future<void>> jobs;
        for (int i = batch_start; i < batch_end; ++i) jobs.push_back(std::async(std::launch::async, run_one, i));
        for (auto& f : jobs) f.get();
      } else {
        for (int i = batch_start; i < batch_end; ++i) run_one(i);
      }
      result.restarts_run += batch_end - batch_start;
      int best = -1;
      for (int i = 0; i < static_cast<int>(runs.size()); ++i) {
        result.iterations += runs[i].iterations;
        if (runs[i].residual < spec.tol && (best < 0 || runs[i].residual < runs[best].residual)) best = i;
      }
      if (best >= 0) {
        result.found = true;
        result.point = problem.point(runs[best].state);
        result.residual = runs[best].residual;
        result.restart = batch_start + best;
        return true;
      }
      double lowest = std::numeric_limits<double>::infinity();
      for (const auto& r : runs) lowest = std::min(lowest, r.residual);
      result.residual = result.restarts_run == batch_end - batch_start ? lowest : std::min(result.residual, lowest);
    }
    return false;
  };

  if (attempt(spec.restarts, spec.max_iterations, 0)) return result;
  if (oracle_feasible) {
    result.escalated = true;
    attempt(4 * spec.restarts, 4 * spec.max_iterations, 0x5DEECE66DULL);
  }
  return result;
}

std::vector<FiberSample> sample_fiber(const SolveSpec& spec, int count, const Tolerances& tol) {
  std::vector<FiberSample> out;
  for (int i = 0; i < count; ++i) {
    SolveSpec s = spec;
    s.seed = derive_seed(spec.seed, 1000 + static_cast<std::uint64_t>(i));
    const SolveResult r = solve_relator(s);
    if (!r.found) continue;
    FiberSample f{*r.point, r.residual, {}, compute_cohomology(*r.point, tol)};
    if (spec.model.kind() != GroupKind::SL2R) f.labels = component_label(*r.point);
    out.push_back(std::move(f));
  }
  return out;
}

RepPoint random_torsion_point(const PlanarPresentation& p, const LieModel& model,
                              const std::vector<TorsionClass>& classes, std::mt19937_64& rng, double scale) {
  if (static_cast<int>(classes.size()) != p.torsion_count()) {
    throw ArityMismatch("need one class per torsion generator");
  }
  std::vector<GroupMat> gens;
  for (int i = 0; i < 2 * p.genus(); ++i) gens.push_back(model.exp(model.random_algebra(rng, scale)));
  for (const auto& c : classes) {
    const GroupMat k = model.random_element(rng);
    gens.push_back(k * c.representative() * model.inverse(k));
  }
  return RepPoint(p, model, std::move(gens));
}

std::vector<MomentSample> moment_batch(const PlanarPresentation& p, const LieModel& model,
                                       const std::vector<TorsionClass>& classes, std::uint64_t seed,
                                       int count, const Tolerances& tol) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::vector<MomentSample> out;
  for (int attempts = 0; static_cast<int>(out.size()) < count && attempts < 20 * count; ++attempts) {
    const RepPoint pt = random_torsion_point(p, model, classes, rng);
    const AlgVec x = model.random_algebra(rng);
    try {
      ExtendedPoint ext = make_extended_point(pt, tol);
      const Eigen::MatrixXd basis = projective_subspace(pt, tol);
      Eigen::VectorXd coords(basis.cols());
      for (auto& c : coords) c = gauss(rng);
      out.push_back({std::move(ext), x, basis * coords});
    } catch (const Error&) {
    }
  }
  return out;
}

}  // namespace planarep
