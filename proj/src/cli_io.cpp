#include "planarep/cli_io.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <boost/algorithm/string.hpp>

#include "planarep/errors.hpp"
#include "planarep/foxcalc.hpp"
#include "planarep/solver.hpp"

namespace planarep {

namespace {

using nlohmann::json;

constexpr const char* kSchema = "planarep/1";
constexpr int kCalibrationBatch = 16;

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MalformedInput("cannot read " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw MalformedInput(path + ": " + e.what());
  }
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

int parse_int(const std::string& s) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used != s.size()) throw MalformedInput("not an integer: '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    throw MalformedInput("not an integer: '" + s + "'");
  }
}

GroupMat parse_target(const std::string& text, const LieModel& model) {
  if (text.empty() || text == "e") return model.identity();
  if (text == "-e") return -model.identity();
  throw MalformedInput("target must be e or -e, got '" + text + "'");
}

// The standard calibration problem: SU(2), genus 1, one torsion generator of
// order 3 in the class with angle 2pi/3.
std::vector<MomentSample> calibration_batch(std::uint64_t seed, const Tolerances& tol) {
  const PlanarPresentation p(1, {3});
  return moment_batch(p, LieModel::su2(), {su2_class(3, 1)}, seed, kCalibrationBatch, tol);
}

std::pair<Calibration, std::string> resolve_calibration(const RunConfig& cfg) {
  if (cfg.recalibrate) {
    const auto batch = calibration_batch(cfg.seed, cfg.tol);
    Calibration cal = calibrate(batch, cfg.seed, 1e-6, cfg.tol);
    if (!cfg.calibration_path.empty()) {
      std::ofstream out(cfg.calibration_path);
      if (!out) throw MalformedInput("cannot write " + cfg.calibration_path);
      out << cal.to_json().dump(2) << '\n';
    }
    return {cal, "fitted"};
  }
  if (!cfg.calibration_path.empty() && std::filesystem::exists(cfg.calibration_path)) {
    return {Calibration::from_json(read_json_file(cfg.calibration_path)), "file"};
  }
  return {Calibration{}, "builtin"};
}

RepPoint obtain_point(const RunConfig& cfg, json& source) {
  if (!cfg.point_path.empty()) {
    source = {{"kind", "file"}, {"path", cfg.point_path}};
    return RepPoint::from_json(read_json_file(cfg.point_path));
  }
  SolveSpec spec;
  if (!cfg.spec_path.empty()) {
    spec = SolveSpec::from_json(read_json_file(cfg.spec_path));
    source = {{"kind", "spec"}, {"path", cfg.spec_path}};
  } else {
    spec.presentation = cfg.resolve_presentation();
    spec.model = LieModel::from_name(cfg.group);
    spec.classes = parse_classes(cfg.classes, spec.presentation, spec.model);
    spec.target = parse_target(cfg.target, spec.model);
    spec.seed = cfg.seed;
    source = {{"kind", "solve"}};
  }
  const SolveResult r = solve_relator(spec);
  source["spec"] = spec.to_json();
  source["solve"] = r.to_json();
  source["solve"].erase("point");
  if (!r.found) throw InfeasibleSpec("no point found for the requested spec (not a proof of emptiness)");
  return *r.point;
}

json envelope(const std::string& command, const RunConfig& cfg) {
  json j = {{"schema", kSchema}, {"command", command}, {"config", cfg.to_json()}, {"tolerances", cfg.tol.to_json()}};
  if (cfg.timestamp) j["timestamp"] = utc_timestamp();
  return j;
}

CommandResult finish(json report, const json& checks) {
  bool ok = true;
  for (const auto& [name, passed] : checks.items()) ok = ok && passed.get<bool>();
  report["checks"] = checks;
  report["ok"] = ok;
  return {std::move(report), ok ? 0 : 1};
}

CommandResult cmd_analyze(const RunConfig& cfg) {
  json report = envelope("analyze", cfg);
  const PlanarPresentation p = cfg.resolve_presentation();
  const auto& names = p.generator_names();
  std::vector<Warning> warnings;
  const Rational mu = measure(p, &warnings);

  json relators = json::array();
  for (const auto& r : p.relators()) relators.push_back(format_word(r, names));

  json fox = json::object();
  for (int g = 0; g < p.generator_count(); ++g) {
    const GroupRingElt d = fox_derivative(p.relator(), g);
    fox[names[g]] = {{"text", format_group_ring(d, names)}, {"terms", group_ring_json(d)}};
  }

  json abel = json::array();
  for (const auto& row : abelianized_boundary(p)) {
    json r = json::array();
    for (const auto& q : row) r.push_back(to_string(q));
    abel.push_back(r);
  }

  const FundamentalCycle fc = fundamental_cycle(p);
  json b = json::array(), kappa = json::array();
  for (const auto& q : fc.b) b.push_back(to_string(q));
  for (const auto& q : fc.kappa) kappa.push_back(to_string(q));

  // relator_filling_chain verifies exactly; recheck the boundary identity here
  const BarChain c = relator_filling_chain(p);
  BarChain expected(1, false);
  expected.add({p.relator()}, 1);
  for (int j = 0; j < p.torsion_count(); ++j) expected.add({p.torsion_relator(j)}, Rational(-1, p.torsion()[j]));
  const bool filled = c.boundary() == expected;

  json warn = json::array();
  for (const auto& w : warnings) warn.push_back({{"kind", w.kind}, {"message", w.message}});

  report["result"] = {
      {"presentation", to_json(p)},
      {"explicit", render_explicit(p)},
      {"measure", rational_json(mu)},
      {"measure_text", to_string(mu)},
      {"warnings", warn},
      {"relators", relators},
      {"fox_derivatives", fox},
      {"abelianized_boundary", abel},
      {"b", b},
      {"kappa", kappa},
      {"lcm", fc.m},
      {"filling_chain", {{"cells", c.terms().size()}, {"boundary_verified", filled}}},
  };
  return finish(std::move(report), {{"b_is_cycle", true}, {"filling_boundary", filled}});
}

json cohomology_json(const RepPoint& pt, const CochainData& cd) {
  json j = cd.to_json();
  j["euler_expected"] = cd.euler_characteristic(pt);
  j["euler_computed"] = cd.h0 - cd.h1 + cd.h2;
  return j;
}

CommandResult cmd_cohomology(const RunConfig& cfg) {
  json report = envelope("cohomology", cfg);
  json source;
  const RepPoint pt = obtain_point(cfg, source);
  const CochainData cd = compute_cohomology(pt, cfg.tol);
  report["point_source"] = source;
  report["point"] = pt.to_json();
  report["result"] = cohomology_json(pt, cd);
  if (pt.model().kind() != GroupKind::SL2R) {
    json labels = json::array();
    for (const auto& c : component_label(pt)) labels.push_back(c.id());
    report["result"]["labels"] = labels;
  }
  return finish(std::move(report), {{"duality", cd.h0 == cd.h2},
                                    {"euler", cd.h0 - cd.h1 + cd.h2 == cd.euler_characteristic(pt)},
                                    {"complex", cd.complex_residual < cfg.tol.cx},
                                    {"unambiguous_rank", !cd.tolerance_ambiguity}});
}

CommandResult cmd_symplectic(const RunConfig& cfg) {
  json report = envelope("symplectic", cfg);
  const auto [cal, cal_source] = resolve_calibration(cfg);
  report["calibration"] = cal.to_json();
  report["calibration"]["source"] = cal_source;

  json source;
  const RepPoint pt = obtain_point(cfg, source);
  report["point_source"] = source;
  report["point"] = pt.to_json();
  const CochainData cd = compute_cohomology(pt, cfg.tol);
  const LieModel& model = pt.model();

  const int h1 = cd.h1;
  Eigen::MatrixXd gram(h1, h1);
  for (int a = 0; a < h1; ++a) {
    for (int b = 0; b < h1; ++b) gram(a, b) = pairing_H1(pt, cd.H1.col(a), cd.H1.col(b), cal, cfg.tol);
  }
  const double antisym = h1 ? (gram + gram.transpose()).cwiseAbs().maxCoeff() : 0.0;
  const int gram_rank = h1 ? numerical_rank(gram, cfg.tol.rank_rel).rank : 0;

  std::mt19937_64 rng(derive_seed(cfg.seed, 17));
  const Eigen::MatrixXd D0 = delta0(pt);
  double shift = 0;
  for (int a = 0; a < h1; ++a) {
    const AlgVec x = model.random_algebra(rng);
    for (int b = 0; b < h1; ++b) {
      const double base = gram(a, b);
      shift = std::max(shift, std::abs(pairing_H1(pt, cd.H1.col(a) + D0 * x, cd.H1.col(b), cal, cfg.tol) - base));
    }
  }

  const DegeneracyReport deg = degeneracy_report(pt, cal, cfg.tol);

  json checks = {{"antisymmetry", antisym <= 1e-12},
                 {"gram_rank_equals_h1", gram_rank == h1},
                 {"coboundary_insensitive", shift <= 1e-10},
                 {"nullspace_matches_B1", deg.nullspace_matches_B1}};
  json moment_json;
  try {
    const ExtendedForm form(make_extended_point(pt, cfg.tol), cal, cfg.tol);
    double worst = 0;
    for (int i = 0; i < cfg.samples; ++i) {
      Eigen::VectorXd coords = Eigen::VectorXd::Zero(form.projective_basis().cols());
      std::normal_distribution<double> gauss;
      for (auto& c : coords) c = gauss(rng);
      const auto r = check_moment_identity(form, model.random_algebra(rng), form.tangent_from_projective(coords));
      worst = std::max(worst, r.relative);
    }
    moment_json = {{"available", true}, {"samples", cfg.samples}, {"max_relative_residual", worst}};
    checks["moment_identity"] = worst < 1e-6;
    checks["full_rank"] = deg.nondegenerate;
  } catch (const Error& e) {
    moment_json = {{"available", false}, {"reason", e.what()}};
  }

  json g = json::array();
  for (int a = 0; a < h1; ++a) {
    json row = json::array();
    for (int b = 0; b < h1; ++b) row.push_back(gram(a, b));
    g.push_back(row);
  }
  report["result"] = {{"cohomology", cohomology_json(pt, cd)},
                      {"pairing_gram", g},
                      {"pairing_rank", gram_rank},
                      {"antisymmetry", antisym},
                      {"coboundary_shift", shift},
                      {"degeneracy", deg.to_json()},
                      {"moment", moment_json}};
  return finish(std::move(report), checks);
}

json class_table(const LieModel& model, int m) {
  json rows = json::array();
  for (const auto& c : finite_order_classes(model, m)) {
    json row = c.to_json();
    row["weights"] = weights_json(weight_dictionary(c));
    rows.push_back(row);
  }
  return rows;
}

CommandResult cmd_components(const RunConfig& cfg) {
  json report = envelope("components", cfg);
  const LieModel model = LieModel::from_name(cfg.group);
  std::vector<int> orders;
  if (cfg.order > 0) {
    orders.push_back(cfg.order);
  } else {
    const PlanarPresentation p = cfg.resolve_presentation();
    for (int m : p.torsion()) {
      if (std::find(orders.begin(), orders.end(), m) == orders.end()) orders.push_back(m);
    }
  }
  json tables = json::array();
  json checks = json::object();
  for (int m : orders) {
    json t = class_table(model, m);
    tables.push_back({{"order", m}, {"count", t.size()}, {"classes", t}});
    if (model.kind() == GroupKind::SU2) {
      checks["su2_count_m" + std::to_string(m)] = static_cast<int>(t.size()) == m / 2 + 1;
    }
  }
  report["result"] = {{"group", model.name()}, {"tables", tables}};
  return finish(std::move(report), checks);
}

CommandResult cmd_solve(const RunConfig& cfg) {
  json report = envelope("solve", cfg);
  SolveSpec spec;
  if (!cfg.spec_path.empty()) {
    spec = SolveSpec::from_json(read_json_file(cfg.spec_path));
  } else {
    spec.presentation = cfg.resolve_presentation();
    spec.model = LieModel::from_name(cfg.group);
    spec.classes = parse_classes(cfg.classes, spec.presentation, spec.model);
    spec.target = parse_target(cfg.target, spec.model);
    spec.seed = cfg.seed;
  }
  const SolveResult r = solve_relator(spec);
  report["spec"] = spec.to_json();
  report["result"] = r.to_json();
  json checks = {{"found", r.found}};
  if (r.found) {
    const RepPoint& pt = *r.point;
    if (spec.model.kind() != GroupKind::SL2R) {
      const auto labels = component_label(pt);
      json ids = json::array();
      bool match = true;
      for (std::size_t j = 0; j < labels.size(); ++j) {
        ids.push_back(labels[j].id());
        match = match && labels[j].id() == spec.classes[j].id();
      }
      report["result"]["labels"] = ids;
      checks["labels_match"] = match;
    }
    try {
      const CochainData cd = compute_cohomology(pt, cfg.tol);
      report["result"]["cohomology"] = cohomology_json(pt, cd);
      checks["duality"] = cd.h0 == cd.h2;
      checks["euler"] = cd.h0 - cd.h1 + cd.h2 == cd.euler_characteristic(pt);
    } catch (const Error& e) {
      report["result"]["cohomology"] = {{"error", e.what()}};
    }
  }
  return finish(std::move(report), checks);
}

CommandResult cmd_momenttest(const RunConfig& cfg) {
  json report = envelope("momenttest", cfg);
  const auto [cal, cal_source] = resolve_calibration(cfg);
  report["calibration"] = cal.to_json();
  report["calibration"]["source"] = cal_source;

  PlanarPresentation p;
  if (cfg.presentation.empty() && cfg.genus < 0 && cfg.torsion.empty()) {
    p = PlanarPresentation(1, {3});
  } else {
    p = cfg.resolve_presentation();
  }
  const LieModel model = LieModel::from_name(cfg.group);
  std::string classes = cfg.classes;
  if (classes.empty() && model.kind() == GroupKind::SU2) {
    for (int j = 0; j < p.torsion_count(); ++j) classes += j ? ";1" : "1";
  }
  const auto cls = parse_classes(classes, p, model);
  const auto batch = moment_batch(p, model, cls, derive_seed(cfg.seed, 99), cfg.samples, cfg.tol);

  std::mt19937_64 rng(derive_seed(cfg.seed, 100));
  json rows = json::array();
  double worst = 0, equivariance = 0;
  for (const auto& s : batch) {
    const ExtendedForm form(s.point, cal, cfg.tol);
    const auto r = check_moment_identity(form, s.x, form.tangent(s.u));
    worst = std::max(worst, r.relative);

    const GroupMat g = model.random_element(rng);
    const ExtendedPoint moved = conjugated(s.point, g);
    const AlgVec x = model.random_algebra(rng);
    const double before = moment(s.point).dot(x);
    const double after = moment(moved).dot(model.Ad(g) * x);
    equivariance = std::max(equivariance, std::abs(before - after));
    rows.push_back({{"lhs", r.lhs}, {"rhs", r.rhs}, {"relative", r.relative}});
  }
  report["presentation"] = render(p);
  report["result"] = {{"samples", rows}, {"count", batch.size()}, {"max_relative_residual", worst},
                      {"max_equivariance_defect", equivariance}};
  return finish(std::move(report), {{"moment_identity", worst < 1e-6},
                                    {"equivariance", equivariance <= 1e-12},
                                    {"batch_complete", static_cast<int>(batch.size()) == cfg.samples}});
}

}  // namespace

void RunConfig::validate() const {
  if (!(tol.rank_rel > 0 && tol.grp > 0 && tol.cx > 0 && tol.alg > 0)) {
    throw MalformedInput("tolerances must be positive");
  }
  if (tol.quad_nodes < 1) throw MalformedInput("--quad-nodes must be at least 1");
  if (samples < 1) throw MalformedInput("--samples must be at least 1");
}

PlanarPresentation RunConfig::resolve_presentation() const {
  if (!presentation.empty()) return parse_presentation(presentation);
  if (genus < 0 && torsion.empty()) throw MalformedInput("no presentation given (use --genus/--torsion or a presentation string)");
  std::vector<int> orders;
  if (!boost::algorithm::trim_copy(torsion).empty()) {
    std::vector<std::string> parts;
    boost::algorithm::split(parts, torsion, boost::is_any_of(","));
    for (auto& s : parts) orders.push_back(parse_int(boost::algorithm::trim_copy(s)));
  }
  return PlanarPresentation(std::max(genus, 0), orders);
}

json RunConfig::to_json() const {
  json j = {{"group", group}, {"seed", seed}, {"target", target}, {"classes", classes}, {"samples", samples}};
  if (!presentation.empty()) j["presentation"] = presentation;
  if (genus >= 0) j["genus"] = genus;
  if (!torsion.empty()) j["torsion"] = torsion;
  if (order > 0) j["order"] = order;
  if (!point_path.empty()) j["point"] = point_path;
  if (!spec_path.empty()) j["spec"] = spec_path;
  if (recalibrate) j["recalibrate"] = true;
  return j;
}

std::vector<TorsionClass> parse_classes(const std::string& text, const PlanarPresentation& p,
                                        const LieModel& model) {
  std::vector<TorsionClass> out;
  const std::string trimmed = boost::algorithm::trim_copy(text);  // groups separated by ; or /
  if (trimmed.empty()) {
    for (int m : p.torsion()) out.push_back(make_class(model, m, std::vector<int>(model.matrix_size(), 0)));
    return out;
  }
  std::vector<std::string> groups;
  boost::algorithm::split(groups, trimmed, boost::is_any_of(";/"));
  if (static_cast<int>(groups.size()) != p.torsion_count()) {
    throw ArityMismatch("--classes lists " + std::to_string(groups.size()) + " classes for " +
                        std::to_string(p.torsion_count()) + " torsion generators");
  }
  for (std::size_t j = 0; j < groups.size(); ++j) {
    std::vector<std::string> parts;
    boost::algorithm::split(parts, groups[j], boost::is_any_of(","));
    std::vector<int> ks;
    for (auto& s : parts) ks.push_back(parse_int(boost::algorithm::trim_copy(s)));
    if (model.kind() == GroupKind::SU2 && ks.size() == 1) ks.push_back(-ks[0]);
    out.push_back(make_class(model, p.torsion()[j], ks));
  }
  return out;
}

std::string dump_report(const json& report) { return report.dump(2) + "\n"; }

CommandResult run_command(const std::string& command, const RunConfig& cfg) {
  cfg.validate();
  if (command == "analyze") return cmd_analyze(cfg);
  if (command == "cohomology") return cmd_cohomology(cfg);
  if (command == "symplectic") return cmd_symplectic(cfg);
  if (command == "components") return cmd_components(cfg);
  if (command == "solve") return cmd_solve(cfg);
  if (command == "momenttest") return cmd_momenttest(cfg);
  throw MalformedInput("unknown command '" + command + "'");
}

}  // namespace planarep
