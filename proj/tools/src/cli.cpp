#include "hypspec/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <cmath>
#include <fstream>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hypspec/certify.hpp"
#include "hypspec/cheeger.hpp"
#include "hypspec/eigensolver.hpp"
#include "hypspec/error.hpp"
#include "hypspec/family.hpp"
#include "hypspec/mesh.hpp"
#include "hypspec/partition.hpp"
#include "hypspec/spectral.hpp"
#include "hypspec/surface_spec.hpp"
#include "hypspec/trigon_graph.hpp"

namespace hypspec {

namespace {

struct RunConfig {
  std::string input;
  double h_max = 0.35;
  int eigs = 6;
  double tol = 1e-8;
  std::uint64_t seed = 0;
  int exact_limit = kDefaultExactLimit;
  double epsilon = 1.0;
  std::vector<int> k;
  int l = 0;
  double twist = 0.0;
  std::string cells;
  std::string format;
  std::string out;
};

EigenOptions eigen_options(const RunConfig& cfg) {
  EigenOptions opt;
  opt.tol = cfg.tol;
  opt.seed = cfg.seed;
  return opt;
}

Surface load_surface(const RunConfig& cfg) {
  if (!cfg.input.empty()) return assemble(read_spec_file(cfg.input));
  if (cfg.k.size() == 1 && cfg.l >= 1) {
    return assemble(build_prop1_surface(cfg.k.front(), cfg.l, cfg.twist));
  }
  fail(ErrorKind::InvalidInput, "no surface given: pass a spec file or --k and --l");
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) fail(ErrorKind::InvalidInput, "cannot write " + path);
  file << text;
  if (!file) fail(ErrorKind::InvalidInput, "cannot write " + path);
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

std::vector<int> parse_cells(const std::string& text) {
  std::vector<int> cells;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      cells.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      fail(ErrorKind::Parse, "bad cell index '" + item + "'");
    }
  }
  return cells;
}

nlohmann::json number_or_null(double x) {
  return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr);
}

int cmd_build(const RunConfig& cfg, std::ostream& out) {
  const Surface s = load_surface(cfg);
  std::ostringstream text;
  text.precision(17);
  text << "genus=" << s.genus << " area=" << s.area << " pants=" << s.pants_count() << "\n";
  emit(text.str(), cfg.out, out);
  return kExitOk;
}

int cmd_mesh(const RunConfig& cfg, std::ostream& out) {
  const Mesh mesh = triangulate(load_surface(cfg), cfg.h_max);
  std::ostringstream text;
  write_mesh(text, mesh);
  emit(text.str(), cfg.out, out);
  return kExitOk;
}

int cmd_spectrum(const RunConfig& cfg, std::ostream& out) {
  const Mesh mesh = triangulate(load_surface(cfg), cfg.h_max);
  const Spectrum spec = lowest_eigs(assemble_fem(mesh), cfg.eigs, eigen_options(cfg));
  std::ostringstream text;
  if (cfg.format == "json") {
    text << dump({{"vertices", mesh.vertex_count()},
                  {"eigenvalues", spec.eigenvalues},
                  {"residuals", spec.residuals},
                  {"iterations", spec.iterations}});
  } else {
    write_spectrum_csv(text, spec);
  }
  emit(text.str(), cfg.out, out);
  return kExitOk;
}

int cmd_partition(const RunConfig& cfg, std::ostream& out) {
  if (cfg.input.empty()) fail(ErrorKind::InvalidInput, "partition needs a spec file");
  const Mesh mesh = coarse_mesh(assemble(read_spec_file(cfg.input)));
  const int k = cfg.k.empty() ? choose_k(cfg.epsilon) : cfg.k.front();
  if (cfg.k.size() > 1) fail(ErrorKind::InvalidInput, "partition takes a single --k");
  const Partition part = partition_bounded(to_bounded_graph(trigon_graph(mesh)), k);
  emit(dump({{"k", part.k},
             {"alpha", part.alpha()},
             {"blocks", part.blocks},
             {"remainder", part.remainder}}),
       cfg.out, out);
  return kExitOk;
}

int cmd_cheeger(const RunConfig& cfg, std::ostream& out) {
  const Mesh mesh = triangulate(load_surface(cfg), cfg.h_max);
  std::vector<int> cells;
  if (cfg.cells.empty()) {
    cells.resize(mesh.coarse_cell_count());
    std::iota(cells.begin(), cells.end(), 0);
  } else {
    cells = parse_cells(cfg.cells);
  }
  const CheegerEstimate est =
      discrete_cheeger(mesh, cells, cfg.exact_limit, eigen_options(cfg));
  emit(dump({{"value", number_or_null(est.value)},
             {"method", to_string(est.method)},
             {"side", est.side},
             {"cut_length", est.cut_length},
             {"smaller_area", est.smaller_area}}),
       cfg.out, out);
  return kExitOk;
}

int cmd_certify(const RunConfig& cfg, std::ostream& out) {
  if (!(cfg.epsilon > 0.0 && cfg.epsilon <= 2.0)) {
    fail(ErrorKind::Domain, "epsilon must lie in (0, 2]");
  }
  const Surface surface = load_surface(cfg);
  const Mesh mesh = triangulate(surface, cfg.h_max);
  CertifyOptions opt;
  opt.exact_limit = cfg.exact_limit;
  opt.eigen = eigen_options(cfg);
  emit(dump(to_json(certify_theorem1(surface, mesh, cfg.epsilon, opt))), cfg.out, out);
  return kExitOk;
}

int cmd_sharpness(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::vector<int> ks = cfg.k;
  std::sort(ks.begin(), ks.end());
  if (std::adjacent_find(ks.begin(), ks.end()) != ks.end()) {
    err << "hypspec: warning: duplicate k values removed\n";
    ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  }
  SharpnessOptions opt;
  opt.eigen = eigen_options(cfg);
  opt.twist = cfg.twist;
  const SharpnessReport report = verify_sharpness(ks, cfg.l, cfg.h_max, opt);

  std::ostringstream tsv;
  write_sharpness_tsv(tsv, report);
  const nlohmann::json j = to_json(report);
  if (cfg.out.empty()) {
    out << (cfg.format == "tsv" ? tsv.str() : dump(j));
    return kExitOk;
  }
  emit(dump(j), cfg.out, out);
  emit(tsv.str(), std::filesystem::path(cfg.out).replace_extension(".tsv").string(), out);
  out << "fit_upper_exponent=" << j["fit_upper_exponent"].dump()
      << " fit_lambda_exponent=" << j["fit_lambda_exponent"].dump() << "\n";
  return kExitOk;
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidGeometry:
    case ErrorKind::Validation:
    case ErrorKind::Parse:
    case ErrorKind::InvalidInput:
    case ErrorKind::Precondition:
    case ErrorKind::Domain:
      return kExitInput;
    case ErrorKind::ResourceLimit:
      return kExitResource;
    case ErrorKind::MeshQuality:
    case ErrorKind::Convergence:
      return kExitSolver;
    case ErrorKind::Internal:
      break;
  }
  return kExitInternal;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectral experiments on closed hyperbolic surfaces glued from pants"};
  app.name("hypspec");
  app.require_subcommand(1);
  RunConfig cfg;

  auto with_surface = [&](CLI::App* cmd) {
    cmd->add_option("spec", cfg.input, "surface spec JSON")->check(CLI::ExistingFile);
    cmd->add_option("--k", cfg.k, "family block size k (with --l, instead of a spec)")
        ->expected(1);
    cmd->add_option("--l", cfg.l, "family copy count l")->check(CLI::PositiveNumber);
    cmd->add_option("--twist", cfg.twist, "family twist, fraction of a cuff");
  };
  auto with_mesh = [&](CLI::App* cmd) {
    cmd->add_option("--h-max", cfg.h_max, "maximum mesh edge length")
        ->check(CLI::PositiveNumber);
  };
  auto with_solver = [&](CLI::App* cmd) {
    cmd->add_option("--tol", cfg.tol, "eigen residual tolerance")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", cfg.seed, "random seed");
  };
  auto with_out = [&](CLI::App* cmd) {
    cmd->add_option("--out", cfg.out, "output file (default stdout)");
  };

  CLI::App* build = app.add_subcommand("build", "validate a spec and print its summary");
  with_surface(build);
  with_out(build);

  CLI::App* mesh = app.add_subcommand("mesh", "write the triangulation");
  with_surface(mesh);
  with_mesh(mesh);
  with_out(mesh);

  CLI::App* spectrum = app.add_subcommand("spectrum", "lowest eigenvalues");
  with_surface(spectrum);
  with_mesh(spectrum);
  with_solver(spectrum);
  with_out(spectrum);
  spectrum->add_option("--eigs", cfg.eigs, "eigenpair count")->check(CLI::Range(1, 10000));
  spectrum->add_option("--format", cfg.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));

  CLI::App* partition = app.add_subcommand("partition", "partition the coarse cell graph");
  partition->add_option("spec", cfg.input, "surface spec JSON")
      ->required()
      ->check(CLI::ExistingFile);
  partition->add_option("--k", cfg.k, "block size exponent")->expected(1);
  partition->add_option("--epsilon", cfg.epsilon, "choose k from epsilon");
  with_out(partition);

  CLI::App* cheeger = app.add_subcommand("cheeger", "discrete Cheeger constant of cells");
  with_surface(cheeger);
  with_mesh(cheeger);
  with_solver(cheeger);
  with_out(cheeger);
  cheeger->add_option("--cells", cfg.cells, "comma separated coarse cells (default all)");
  cheeger->add_option("--exact-limit", cfg.exact_limit, "largest exactly searched cell count")
      ->check(CLI::Range(1, 31));

  CLI::App* certify = app.add_subcommand("certify", "eigenvalue lower bound certificate");
  with_surface(certify);
  with_mesh(certify);
  with_solver(certify);
  with_out(certify);
  certify->add_option("--epsilon", cfg.epsilon, "epsilon in (0, 2]")->required();
  certify->add_option("--exact-limit", cfg.exact_limit, "largest exactly searched cell count")
      ->check(CLI::Range(1, 31));

  CLI::App* sharpness = app.add_subcommand("sharpness", "upper bounds on the family");
  sharpness->add_option("--k", cfg.k, "block sizes, comma separated")
      ->required()
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  sharpness->add_option("--l", cfg.l, "copy count")->required()->check(CLI::PositiveNumber);
  sharpness->add_option("--twist", cfg.twist, "twist, fraction of a cuff");
  with_mesh(sharpness);
  with_solver(sharpness);
  with_out(sharpness);
  sharpness->add_option("--format", cfg.format, "json or tsv when writing to stdout")
      ->check(CLI::IsMember({"json", "tsv"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (build->parsed()) return cmd_build(cfg, out);
    if (mesh->parsed()) return cmd_mesh(cfg, out);
    if (spectrum->parsed()) return cmd_spectrum(cfg, out);
    if (partition->parsed()) return cmd_partition(cfg, out);
    if (cheeger->parsed()) return cmd_cheeger(cfg, out);
    if (certify->parsed()) return cmd_certify(cfg, out);
    if (sharpness->parsed()) return cmd_sharpness(cfg, out, err);
  } catch (const ConvergenceError& e) {
    err << "hypspec: error: " << to_string(e.kind()) << ": " << e.what() << "\n";
    err << "hypspec: residuals:";
    for (double r : e.residuals()) err << ' ' << r;
    err << "\n";
    return kExitSolver;
  } catch (const Error& e) {
    err << "hypspec: error: " << to_string(e.kind()) << ": " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::bad_alloc&) {
    err << "hypspec: error: out of memory\n";
    return kExitResource;
  } catch (const std::exception& e) {
    err << "hypspec: error: internal: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}

}  // namespace hypspec
