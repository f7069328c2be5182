// Command-line front end: solve, converge, infsup, geometry.

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <regex>
#include <sstream>

#include <CLI11.hpp>

#include "c1mortar/builtin_geometries.hpp"
#include "c1mortar/error.hpp"
#include "c1mortar/field_export.hpp"
#include "c1mortar/geometry_io.hpp"
#include "c1mortar/infsup.hpp"
#include "c1mortar/pipeline.hpp"

namespace fs = std::filesystem;
using namespace c1mortar;

namespace {

struct Range {
  int lo = 0, hi = 0;
};

Range parse_range(const std::string& text, const std::string& what) {
  static const std::regex re(R"(\s*(\d+)\s*(?:\.\.\s*(\d+))?\s*)");
  std::smatch m;
  if (!std::regex_match(text, m, re))
    fail(ErrorCode::InvalidConfig, what + " must be N or A..B, got '" + text + "'");
  Range r;
  r.lo = std::stoi(m[1]);
  r.hi = m[2].matched ? std::stoi(m[2]) : r.lo;
  if (r.hi < r.lo) fail(ErrorCode::InvalidConfig, what + " range is empty");
  return r;
}

std::ofstream open_csv(const fs::path& path, const std::vector<std::string>& header) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::IoFailure, "cannot write " + path.string());
  for (const auto& h : header) out << "# " << h << "\n";
  out << std::setprecision(12);
  return out;
}

void close_csv(std::ofstream& out, const fs::path& path) {
  out.close();
  if (!out) fail(ErrorCode::IoFailure, "write failed: " + path.string());
}

fs::path prepare_output(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) fail(ErrorCode::IoFailure, "cannot create output directory " + dir);
  return fs::path(dir);
}

VertexMode parse_vertex_mode(const std::string& s) {
  if (s == "c2") return VertexMode::c2;
  if (s == "c0") return VertexMode::c0;
  fail(ErrorCode::InvalidConfig, "vertex mode must be c2 or c0");
}

MultiplierMode parse_multiplier_mode(const std::string& s) {
  if (s == "merged") return MultiplierMode::merged;
  if (s == "unmerged") return MultiplierMode::unmerged;
  fail(ErrorCode::InvalidConfig, "multiplier mode must be merged or unmerged");
}

const char* kRunColumns =
    "level,h,dofs,brokenH2,H1,L2,Linf,multipliers,multiplier_rank,residual,constraint,"
    "multiplier_discrepancy";

void write_run_row(std::ostream& out, const RunResult& r) {
  const ErrorReport& e = r.errors;
  out << r.level << ',' << e.h << ',' << e.dofs << ',' << e.brokenH2 << ',' << e.H1 << ','
      << e.L2 << ',' << e.Linf << ',' << r.multipliers << ',' << r.multiplier_rank << ','
      << r.residual << ',' << r.constraint << ',' << r.multiplier_discrepancy << "\n";
}

struct Common {
  std::string geometry = "square2";
  int degree = 3;
  std::string vertex_mode = "c2";
  std::string multiplier = "merged";
  std::string solution = "cos_cos";
  std::string output = ".";
  int threads = 0;
  bool serial = false;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--geometry", c.geometry, "builtin name or geometry JSON file");
  cmd->add_option("--degree,-p", c.degree, "primal spline degree (>= 2)");
  cmd->add_option("--vertex-mode", c.vertex_mode, "c2 or c0");
  cmd->add_option("--multiplier", c.multiplier, "merged or unmerged");
  cmd->add_option("--solution", c.solution, "cos_cos, zero or a monomial like x2y2");
  cmd->add_option("--output,-o", c.output, "output directory");
  cmd->add_option("--threads", c.threads, "thread cap (0: IGA_MORTAR_THREADS or OpenMP default)");
  cmd->add_flag("--serial", c.serial, "use the serial reference kernels");
}

RunConfig make_config(const Common& c) {
  RunConfig cfg;
  cfg.geometry = c.geometry;
  cfg.degree = c.degree;
  cfg.vertex_mode = parse_vertex_mode(c.vertex_mode);
  cfg.multiplier_mode = parse_multiplier_mode(c.multiplier);
  cfg.solution = c.solution;
  cfg.output_dir = c.output;
  cfg.policy = c.serial ? ExecutionPolicy::serial : ExecutionPolicy::parallel;
  if (c.threads > 0) set_thread_count(c.threads);
  if (cfg.degree < 2) fail(ErrorCode::DegreeTooLow, "primal degree must be at least 2");
  manufactured_solution(cfg.solution);  // validates the id early
  return cfg;
}

int cmd_solve(const Common& c, const std::string& level_text, int samples, bool vtk) {
  RunConfig cfg = make_config(c);
  cfg.level = parse_range(level_text, "--levels").hi;
  cfg.level_min = cfg.level_max = cfg.level;
  const MultiPatchTopology topo = load_geometry(cfg.geometry);
  const fs::path dir = prepare_output(cfg.output_dir);
  RunArtifacts art;
  const RunResult r = run_solve(cfg, topo, cfg.level, &art);
  const auto header = config_header(cfg);

  const fs::path path = dir / "solve.csv";
  std::ofstream out = open_csv(path, header);
  out << kRunColumns << "\n";
  write_run_row(out, r);
  close_csv(out, path);

  const auto fields = sample_field(topo, art.disc, art.solution.u_full,
                                   manufactured_solution(cfg.solution), samples);
  write_field_csv((dir / "field.csv").string(), fields, header);
  if (vtk) write_field_vtk((dir / "field").string(), fields, "c1mortar " + cfg.geometry);

  for (const auto& h : header) std::cout << "# " << h << "\n";
  std::cout << std::setprecision(6) << kRunColumns << "\n";
  write_run_row(std::cout, r);
  return 0;
}

int cmd_converge(const Common& c, const std::string& level_text, bool reference_slopes) {
  RunConfig cfg = make_config(c);
  const Range lv = parse_range(level_text, "--levels");
  cfg.level_min = lv.lo;
  cfg.level_max = lv.hi;
  cfg.level = lv.hi;
  const MultiPatchTopology topo = load_geometry(cfg.geometry);
  const fs::path dir = prepare_output(cfg.output_dir);
  const ConvergenceTable t = run_convergence(cfg, topo);
  auto header = config_header(cfg);
  for (const auto& s : t.skipped)
    header.push_back("skipped level " + std::to_string(s.level) + ": " + s.reason);

  const fs::path path = dir / "converge.csv";
  std::ofstream out = open_csv(path, header);
  out << kRunColumns << "\n";
  for (const auto& r : t.rows) write_run_row(out, r);
  close_csv(out, path);

  static const char* names[4] = {"brokenH2", "H1", "L2", "Linf"};
  const auto ref = reference_orders(cfg.degree);
  auto note = [&](int k) -> std::string {
    return cfg.degree == 2 && k == 2 ? "suboptimal-expected" : "";
  };
  const fs::path rpath = dir / "rates.csv";
  std::ofstream rates = open_csv(rpath, header);
  rates << "norm,kind,from_level,to_level,rate" << (reference_slopes ? ",reference" : "")
        << ",note\n";
  const int n = static_cast<int>(t.rows.size());
  for (int k = 0; k < 4; ++k) {
    for (int i = 1; i < n; ++i) {
      rates << names[k] << ",pairwise," << t.rows[i - 1].level << ',' << t.rows[i].level << ','
            << t.pairwise[k][i - 1];
      if (reference_slopes) rates << ',' << ref[k];
      rates << ',' << note(k) << "\n";
    }
    rates << names[k] << ",ls_slope," << t.rows[std::max(0, n - 3)].level << ','
          << t.rows[n - 1].level << ',' << t.slope[k];
    if (reference_slopes) rates << ',' << ref[k];
    rates << ',' << note(k) << "\n";
  }
  close_csv(rates, rpath);

  for (const auto& h : header) std::cout << "# " << h << "\n";
  std::cout << std::setprecision(6) << kRunColumns << "\n";
  for (const auto& r : t.rows) write_run_row(std::cout, r);
  std::cout << "norm,slope" << (reference_slopes ? ",reference" : "") << ",note\n";
  for (int k = 0; k < 4; ++k) {
    std::cout << names[k] << ',' << std::setprecision(4) << t.slope[k];
    if (reference_slopes) std::cout << ',' << ref[k];
    std::cout << ',' << note(k) << "\n";
  }
  return 0;
}

struct InfsupOptions {
  std::string degrees = "2..9";
  int elements = 32;
  int extra_ring = 0;
  bool random = false;
  int trials = 1000;
  std::uint64_t seed = 7;
  int degree = 3;
  int random_elements = 16;
  int bins = 22;
  double lo = 0.575, hi = 0.630;
  std::string output = ".";
  int threads = 0;
  bool serial = false;
};

std::vector<std::string> infsup_header(const InfsupOptions& o) {
  return {std::string("c1mortar ") + kVersion,
          "command=infsup",
          "degrees=" + o.degrees,
          "elements=" + std::to_string(o.elements),
          "extra_ring=" + std::to_string(o.extra_ring),
          "random=" + std::string(o.random ? "1" : "0"),
          "trials=" + std::to_string(o.trials),
          "seed=" + std::to_string(o.seed),
          "random_degree=" + std::to_string(o.degree),
          "random_elements=" + std::to_string(o.random_elements),
          "rng=mt19937_64, u = (x >> 11) * 2^-53",
          "indexing=plotted degree P, eigenproblem on degree P-1 spaces",
          "execution=" + std::string(o.serial ? "serial" : "parallel")};
}

int cmd_infsup(const InfsupOptions& o) {
  if (o.threads > 0) set_thread_count(o.threads);
  const fs::path dir = prepare_output(o.output);
  const auto header = infsup_header(o);
  std::cout << std::setprecision(6);
  for (const auto& h : header) std::cout << "# " << h << "\n";

  if (!o.random) {
    const Range r = parse_range(o.degrees, "--degrees");
    if (r.lo < 2) fail(ErrorCode::DegreeTooLow, "plotted degrees start at 2");
    std::vector<EigenStudy> main, alt;
    for (int P = r.lo; P <= r.hi; ++P) {
      main.push_back(corner_eigen_test(P, o.elements, o.extra_ring));
      alt.push_back(corner_eigen_test(P + 1, o.elements, o.extra_ring));
    }
    auto h = header;
    std::ostringstream alt_line;
    alt_line << std::setprecision(6) << "alternate indexing (test degree = plotted degree):";
    for (std::size_t i = 0; i < alt.size(); ++i)
      alt_line << ' ' << r.lo + static_cast<int>(i) << '=' << alt[i].mu_min;
    h.push_back(alt_line.str());
    const fs::path path = dir / "infsup_sweep.csv";
    std::ofstream out = open_csv(path, h);
    out << "degree,mu_min,note\n";
    std::cout << "degree,mu_min,note\n";
    for (const auto& s : main) {
      const std::string note = s.plotted_degree > 9 ? "beyond-tested-range" : "";
      out << s.plotted_degree << ',' << s.mu_min << ',' << note << "\n";
      std::cout << s.plotted_degree << ',' << s.mu_min << ',' << note << "\n";
    }
    close_csv(out, path);
    std::cout << "# " << alt_line.str() << "\n";
    return 0;
  }

  RandomMeshSpec spec;
  spec.trials = o.trials;
  spec.seed = o.seed;
  spec.n_elements = o.random_elements;
  const RandomMeshSummary sum = random_mesh_study(
      o.degree, spec, o.serial ? ExecutionPolicy::serial : ExecutionPolicy::parallel);
  const Histogram hist = histogram(sum.mu, o.lo, o.hi, o.bins);

  const fs::path tpath = dir / "infsup_trials.csv";
  std::ofstream trials = open_csv(tpath, header);
  trials << "trial,mu_min\n";
  for (std::size_t i = 0; i < sum.mu.size(); ++i) trials << i << ',' << sum.mu[i] << "\n";
  close_csv(trials, tpath);

  auto h = header;
  h.push_back("below_range=" + std::to_string(hist.below));
  h.push_back("above_range=" + std::to_string(hist.above));
  const fs::path hpath = dir / "infsup_histogram.csv";
  std::ofstream out = open_csv(hpath, h);
  out << "bin_left,bin_right,count\n";
  for (std::size_t i = 0; i < hist.count.size(); ++i)
    out << hist.left[i] << ',' << hist.right[i] << ',' << hist.count[i] << "\n";
  close_csv(out, hpath);

  std::cout << "trials,min,max,mean,below_range,above_range\n"
            << sum.mu.size() << ',' << sum.min << ',' << sum.max << ',' << sum.mean << ','
            << hist.below << ',' << hist.above << "\n";
  return 0;
}

int cmd_geometry(const std::string& name, const std::string& output) {
  const MultiPatchTopology topo = load_geometry(name);
  std::cout << "patches," << topo.patches.size() << "\n"
            << "interfaces," << topo.interfaces.size() << "\n"
            << "vertices," << topo.vertices.size() << "\n"
            << "boundary_sides," << topo.boundary_sides.size() << "\n";
  for (const auto& I : topo.interfaces)
    std::cout << "interface," << I.primary.patch << ':' << to_string(I.primary.side) << ','
              << I.secondary.patch << ':' << to_string(I.secondary.side)
              << (I.reversed ? ",reversed" : "") << "\n";
  if (!output.empty()) {
    std::ofstream out(output);
    if (!out) fail(ErrorCode::IoFailure, "cannot write " + output);
    out << geometry_to_json(topo) << "\n";
    if (!out) fail(ErrorCode::IoFailure, "write failed: " + output);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Isogeometric mortar solver for the biharmonic equation"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  Common solve_opts, conv_opts;
  std::string solve_levels = "3", conv_levels = "2..5";
  int samples = 4;
  bool vtk = false, reference_slopes = false;

  auto* solve = app.add_subcommand("solve", "one solve with error report and field export");
  add_common(solve, solve_opts);
  solve->add_option("--levels,--level,-l", solve_levels, "refinement level");
  solve->add_option("--samples", samples, "field samples per element and direction (>= 2)");
  solve->add_flag("--vtk", vtk, "also write legacy VTK files per patch");

  auto* conv = app.add_subcommand("converge", "refinement sweep with observed rates");
  add_common(conv, conv_opts);
  conv->add_option("--levels,-l", conv_levels, "level range A..B (at least 3 levels)");
  conv->add_flag("--reference-slopes", reference_slopes, "add the reference orders p-1,p,p+1,p+1");

  InfsupOptions io;
  auto* inf = app.add_subcommand("infsup", "numerical inf-sup test near an interface end");
  inf->add_option("--degrees", io.degrees, "plotted degree range A..B");
  inf->add_option("--elements", io.elements, "uniform mesh size of the sweep");
  inf->add_option("--extra-ring", io.extra_ring, "widen the window by this many elements");
  inf->add_flag("--random", io.random, "random-mesh study instead of the sweep");
  inf->add_option("--trials", io.trials, "random trials");
  inf->add_option("--seed", io.seed, "random seed");
  inf->add_option("--degree,-p", io.degree, "plotted degree of the random study");
  inf->add_option("--random-elements", io.random_elements, "mesh size of the random study");
  inf->add_option("--bins", io.bins, "histogram bins");
  inf->add_option("--hist-lo", io.lo, "histogram left end");
  inf->add_option("--hist-hi", io.hi, "histogram right end");
  inf->add_option("--output,-o", io.output, "output directory");
  inf->add_option("--threads", io.threads, "thread cap");
  inf->add_flag("--serial", io.serial, "run trials serially");

  std::string geo_name = "square2", geo_out;
  auto* geo = app.add_subcommand("geometry", "describe a geometry and optionally write it as JSON");
  geo->add_option("--geometry", geo_name, "builtin name or geometry JSON file");
  geo->add_option("--output,-o", geo_out, "JSON file to write");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : exit_status(ErrorCode::InvalidConfig);
  }

  try {
    if (*solve) return cmd_solve(solve_opts, solve_levels, samples, vtk);
    if (*conv) return cmd_converge(conv_opts, conv_levels, reference_slopes);
    if (*inf) return cmd_infsup(io);
    if (*geo) return cmd_geometry(geo_name, geo_out);
  } catch (const Error& e) {
    std::cerr << "error_code=" << to_string(e.code()) << "\n" << e.what() << "\n";
    return exit_status(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error_code=Internal\n" << e.what() << "\n";
    return 1;
  }
  return 0;
}
