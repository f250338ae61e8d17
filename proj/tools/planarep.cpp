#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "planarep/cli_io.hpp"
#include "planarep/errors.hpp"

namespace {

struct Shared {
  planarep::RunConfig cfg;
  std::string json_out;
};

void add_common(CLI::App* cmd, Shared& s) {
  auto& c = s.cfg;
  cmd->add_option("presentation", c.presentation, "\"genus=1; torsion=2,3\" or \"< gens | rels >\"");
  cmd->add_option("--genus", c.genus, "genus l");
  cmd->add_option("--torsion", c.torsion, "torsion orders, comma separated");
  cmd->add_option("--group", c.group, "SU2, U1..U8 or SL2R")->capture_default_str();
  cmd->add_option("--seed", c.seed, "64-bit seed")->capture_default_str();
  cmd->add_option("--tol-rank", c.tol.rank_rel, "relative SVD rank threshold")->capture_default_str();
  cmd->add_option("--tol-grp", c.tol.grp, "group residual tolerance")->capture_default_str();
  cmd->add_option("--tol-cx", c.tol.cx, "complex property tolerance")->capture_default_str();
  cmd->add_option("--quad-nodes", c.tol.quad_nodes, "Gauss-Legendre nodes")->capture_default_str();
  cmd->add_option("--json-out", s.json_out, "also write the report here");
  cmd->add_flag("--no-timestamp", [&c](std::int64_t) { c.timestamp = false; }, "omit the timestamp field");
  cmd->add_option("--calibration", c.calibration_path, "calibration record (read, or written by --recalibrate)");
  cmd->add_flag("--recalibrate", c.recalibrate, "refit the extended-form conventions");
}

void add_point_source(CLI::App* cmd, Shared& s) {
  auto& c = s.cfg;
  cmd->add_option("--point", c.point_path, "point JSON (presentation, group, generators)");
  cmd->add_option("--spec", c.spec_path, "SolveSpec JSON");
  cmd->add_option("--classes", c.classes, "per torsion generator: k for SU2, else exponents; separated by ; or /");
  cmd->add_option("--target", c.target, "e or -e")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Representation spaces of cocompact planar groups"};
  app.require_subcommand(1);
  Shared s;

  struct Cmd {
    const char* name;
    const char* help;
    bool point;
  };
  const Cmd cmds[] = {
      {"analyze", "presentation, measure, Fox derivatives, fundamental cycle", false},
      {"cohomology", "twisted cohomology dimensions at a point", true},
      {"symplectic", "pairing, degeneracy and moment residuals at a point", true},
      {"components", "finite-order conjugacy classes and weights", false},
      {"solve", "solve the relator equation over prescribed classes", true},
      {"momenttest", "calibration and momentum-map residuals", false},
  };
  for (const auto& c : cmds) {
    auto* sub = app.add_subcommand(c.name, c.help);
    add_common(sub, s);
    if (c.point) add_point_source(sub, s);
    if (std::string(c.name) == "components") sub->add_option("--order", s.cfg.order, "element order m");
    if (std::string(c.name) == "momenttest" || std::string(c.name) == "symplectic") {
      sub->add_option("--samples", s.cfg.samples, "number of probe points")->capture_default_str();
    }
    if (std::string(c.name) == "momenttest") sub->add_option("--classes", s.cfg.classes, "as for solve");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return static_cast<int>(planarep::ErrorCategory::parse);
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    const auto result = planarep::run_command(command, s.cfg);
    const std::string text = planarep::dump_report(result.report);
    std::cout << text;
    if (!s.json_out.empty()) {
      std::ofstream out(s.json_out);
      if (!out) {
        std::cerr << "cannot write " << s.json_out << "\n";
        return static_cast<int>(planarep::ErrorCategory::parse);
      }
      out << text;
    }
    return result.exit_code;
  } catch (const planarep::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(e.category());
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return static_cast<int>(planarep::ErrorCategory::internal);
  }
}
