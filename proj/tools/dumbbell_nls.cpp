// dumbbell-nls: spectrum, stationary states, branches and closed-form checks
// for the cubic NLS on the dumbbell graph.
//
// Exit codes: 0 ok, 1 property failure, 2 root failure, 3 solver failure,
// 64 usage, 65 bad data, 66 missing input.

#include <omp.h>

#include <CLI11.hpp>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "dumbbell/closedform.hpp"
#include "dumbbell/elliptic.hpp"
#include "dumbbell/errors.hpp"
#include "dumbbell/io.hpp"
#include "dumbbell/kernels.hpp"
#include "dumbbell/normalform.hpp"
#include "dumbbell/solve.hpp"
#include "dumbbell/spectrum.hpp"

using namespace dumbbell;

namespace {

enum Exit { kOk = 0, kProperty = 1, kRoot = 2, kSolver = 3, kUsage = 64, kData = 65, kNoInput = 66 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const std::string& text, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw Error("cannot write '" + out + "'");
  f << text;
}

DumbbellGrid grid_or_usage(double L, int N) {
  try {
    return make_grid(L, N);
  } catch (const NonCommensurateGrid& e) {
    std::ostringstream os;
    os << e.what();
    if (e.suggested_N > 0) {
      os << "; nearest commensurate N = " << e.suggested_N;
    } else {
      const double m = std::max(1.0, std::round(N * L / kPi));
      os << "; no N fits this L, nearest commensurate L at N=" << N << " is " << format_double(m * kPi / N);
    }
    throw UsageError(os.str());
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
}

std::string utc_timestamp() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string family_path(const std::string& out, const std::string& family, bool many) {
  if (!many) return out;
  const auto dot = out.rfind('.');
  const auto slash = out.rfind('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return out + "." + family;
  return out.substr(0, dot) + "." + family + out.substr(dot);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

// Config values fill options the command line left unset.
class Config {
 public:
  void load(const std::string& path) {
    if (!path.empty()) kv_ = read_config(path);
  }
  template <class T>
  void fill(const CLI::Option* opt, const std::string& key, T& var) const {
    if (opt->count() > 0) return;
    const auto it = kv_.find(key);
    if (it == kv_.end()) return;
    std::istringstream in(it->second);
    T v{};
    if (!(in >> v) || !(in >> std::ws).eof()) throw DataError("config: bad value for '" + key + "'");
    var = v;
  }

 private:
  std::map<std::string, std::string> kv_;
};

int run_spectrum(double L, int count, const std::string& out) {
  const SpectrumReport r = spectrum_report(L, count);
  emit(spectrum_report_text(r), out);
  return kOk;
}

struct SolveArgs {
  double L = 0.0;
  double lambda = 0.0;
  std::string init;
  std::string method = "hybrid";
  int N = 128;
  std::string out;
  double newton_tol = 1e-12;
  double petviashvili_tol = 1e-14;
  int max_iter = 2000;
};

int run_solve(const SolveArgs& a, bool have_L) {
  GraphFunction seed;
  if (a.init.rfind("file:", 0) == 0) {
    const SolutionFile f = read_solution(a.init.substr(5));
    seed = solution_values(f);
    // the grid comes from the file; there is no interpolation between grids
    if (have_L && std::abs(a.L - f.L) > 1e-12 * f.L)
      throw UsageError("--L disagrees with the L stored in " + a.init.substr(5));
  } else {
    if (!have_L) throw UsageError("--L is required unless --init file:PATH");
    const DumbbellGrid g = grid_or_usage(a.L, a.N);
    if (!(a.lambda < 0.0)) throw UsageError("--lambda must be negative");
    if (a.init == "constant")
      seed = constant_state(a.lambda, g, false).phi;
    else if (a.init == "segment-gauss")
      seed = gaussian_seed(g, a.lambda, Placement::Segment);
    else if (a.init == "ring-gauss")
      seed = gaussian_seed(g, a.lambda, Placement::Ring);
    else
      throw UsageError("unknown --init '" + a.init + "'");
  }
  if (!(a.lambda < 0.0)) throw UsageError("--lambda must be negative");

  GraphFunction last = seed;
  StationaryState s;
  try {
    if (a.method == "petviashvili") {
      PetviashviliOptions o;
      o.tol = a.petviashvili_tol;
      o.max_iter = a.max_iter;
      o.last_iterate = &last;
      s = petviashvili(seed, a.lambda, o);
    } else {
      NewtonOptions o;
      o.tol = a.newton_tol;
      o.last_iterate = &last;
      s = a.method == "newton" ? newton(seed, a.lambda, o) : hybrid(seed, a.lambda, o);
    }
  } catch (const DomainError&) {
    throw;
  } catch (const Error& e) {
    std::cerr << "solve failed: " << e.what() << "\n";
    if (!a.out.empty()) {
      write_failed_dump(a.out, last, a.lambda, e.what());
      std::cerr << "partial state written to " << a.out << ".failed\n";
    }
    return kSolver;
  }
  if (!a.out.empty()) write_solution(a.out, to_solution_file(s));
  std::cout << "lambda=" << format_double(s.lambda) << " Q=" << format_double(s.Q) << " E=" << format_double(s.E)
            << " residual=" << format_double(s.residual_norm) << " tag=" << tag_name(s.tag)
            << " iterations=" << s.trace.iterations << "\n";
  return kOk;
}

struct BranchArgs {
  double L = 0.0;
  std::string families;
  double lambda_start = 0.0, lambda_end = 0.0;
  int steps = 40;
  int N = 128;
  std::string out;
  double newton_tol = 1e-12;
};

struct FamilyResult {
  std::optional<BranchTable> table;
  std::string error;
  int code = kOk;
};

FamilyResult one_family(const DumbbellGrid& g, const std::string& fam, const BranchArgs& a) {
  FamilyResult r;
  try {
    StationaryState seed;
    NewtonOptions n;
    n.tol = a.newton_tol;
    if (fam == "constant")
      seed = constant_state(a.lambda_start, g);
    else if (fam == "asymmetric")
      seed = hybrid(gaussian_seed(g, a.lambda_start, Placement::Ring), a.lambda_start, n);
    else
      seed = hybrid(gaussian_seed(g, a.lambda_start, Placement::Segment), a.lambda_start, n);
    if (tag_name(seed.tag) != fam && !(fam == "asymmetric" && seed.tag == StateTag::Other)) {
      r.error = fam + ": seed at lambda-start converged to a " + tag_name(seed.tag) + " state";
      r.code = kSolver;
      return r;
    }
    ContinuationOptions o;
    o.newton = n;
    o.family = fam;
    r.table = continue_branch(seed, a.lambda_end, a.steps, o);
  } catch (const DomainError& e) {
    r.error = e.what();
    r.code = kUsage;
  } catch (const Error& e) {
    r.error = fam + ": " + e.what();
    r.code = kSolver;
  }
  return r;
}

int run_branch(const BranchArgs& a) {
  const auto fams = split(a.families, ',');
  if (fams.empty()) throw UsageError("--family is empty");
  for (const auto& f : fams)
    if (f != "constant" && f != "asymmetric" && f != "symmetric") throw UsageError("unknown family '" + f + "'");
  if (!(a.lambda_start < 0.0) || !(a.lambda_end < 0.0)) throw UsageError("lambda values must be negative");
  if (a.steps < 1) throw UsageError("--steps must be >= 1");
  const DumbbellGrid g = grid_or_usage(a.L, a.N);
  const bool many = fams.size() > 1;
  if (many && a.out.empty()) throw UsageError("--out is required with several families");

  std::vector<FamilyResult> res(fams.size());
  const int nf = static_cast<int>(fams.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (int i = 0; i < nf; ++i) res[i] = one_family(g, fams[i], a);

  int code = kOk;
  const std::string stamp = utc_timestamp();
  for (std::size_t i = 0; i < fams.size(); ++i) {
    const auto& r = res[i];
    if (!r.table) {
      std::cerr << r.error << "\n";
      code = std::max(code, r.code);
      continue;
    }
    const BranchTable& t = *r.table;
    const std::string path = a.out.empty() ? std::string() : family_path(a.out, fams[i], many);
    emit(branch_csv(t), path);
    if (!path.empty()) emit(branch_meta_json(t, stamp, omp_get_max_threads()), path + ".meta.json");
    if (t.truncated) {
      std::cerr << fams[i] << ": BranchEnd after " << t.rows.size() << " rows near lambda="
                << format_double(t.branch_end_lambda) << ": " << t.end_reason << "\n";
      code = std::max(code, static_cast<int>(kSolver));
    }
  }
  return code;
}

int run_compare(const std::string& path, const std::string& profile) {
  const SolutionFile f = read_solution(path);
  const GraphFunction u = solution_values(f);
  const DumbbellGrid& g = u.grid();
  if (!(f.lambda < 0.0)) throw DataError("solution file: lambda must be negative");
  GraphFunction ref;
  const double mu = std::sqrt(-f.lambda);
  if (profile == "sech-segment")
    ref = sech_by_distance(g, f.lambda, Placement::Segment);
  else if (profile == "sech-ring")
    ref = sech_by_distance(g, f.lambda, Placement::Ring);
  else if (profile == "dnoidal")
    ref = dnoidal_state(solve_k0(mu, f.L, Family::Ring), g).phi;
  else if (profile == "cnoidal")
    ref = cnoidal_state(solve_k0(mu, f.L, Family::Segment), g).phi;
  else
    throw UsageError("unknown --profile '" + profile + "'");
  GraphFunction diff(g);
  for (int i = 0; i < g.size(); ++i) diff[i] = u[i] - ref[i];
  GraphFunction mdiff(g);
  const GraphFunction mirror = u.reflected();
  for (int i = 0; i < g.size(); ++i) mdiff[i] = mirror[i] - ref[i];
  std::cout << "profile=" << profile << " lambda=" << format_double(f.lambda) << " L=" << format_double(f.L)
            << " sup=" << format_double(diff.sup_norm()) << " l2=" << format_double(weighted_norm(diff))
            << " mirror_sup=" << format_double(mdiff.sup_norm()) << " mirror_l2=" << format_double(weighted_norm(mdiff))
            << "\n";
  return kOk;
}

int run_normalform(double L, const std::string& out) {
  emit(pitchfork_report_text(pitchfork_report(L)), out);
  return kOk;
}

int run_elliptic_check() {
  bool ok = true;
  for (const auto& p : elliptic_property_suite()) {
    std::cout << (p.pass() ? "PASS " : "FAIL ") << p.name << " = " << format_double(p.value) << " (allowed ["
              << p.lo << ", " << p.hi << "])\n";
    ok = ok && p.pass();
  }
  return ok ? kOk : kProperty;
}

}  // namespace

int main(int argc, char** argv) {
  kernels::apply_thread_env();

  CLI::App app{"Stationary states of the cubic NLS on a dumbbell graph"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "key = value defaults (N, newton_tol, petviashvili_tol, max_iter, steps)");

  auto* sp = app.add_subcommand("spectrum", "Laplacian spectrum from the dispersion relations");
  double sp_L = 0.0;
  int sp_count = 3;
  std::string sp_out;
  sp->add_option("--L", sp_L, "half-length of the central segment")->required()->check(CLI::PositiveNumber);
  sp->add_option("--count", sp_count, "roots per family")->check(CLI::Range(1, 100000));
  sp->add_option("--out", sp_out, "output file (default stdout)");

  auto* so = app.add_subcommand("solve", "compute one stationary state");
  SolveArgs sa;
  auto* so_L = so->add_option("--L", sa.L)->check(CLI::PositiveNumber);
  so->add_option("--lambda", sa.lambda)->required();
  so->add_option("--init", sa.init, "constant | segment-gauss | ring-gauss | file:PATH")->required();
  so->add_option("--method", sa.method)->check(CLI::IsMember({"petviashvili", "newton", "hybrid"}));
  auto* so_N = so->add_option("--N", sa.N, "nodes per ring");
  so->add_option("--out", sa.out);
  auto* so_ntol = so->add_option("--newton-tol", sa.newton_tol);
  auto* so_ptol = so->add_option("--petviashvili-tol", sa.petviashvili_tol);
  auto* so_it = so->add_option("--max-iter", sa.max_iter);

  auto* br = app.add_subcommand("branch", "continue a branch in lambda");
  BranchArgs ba;
  br->add_option("--L", ba.L)->required()->check(CLI::PositiveNumber);
  br->add_option("--family", ba.families, "constant | asymmetric | symmetric, comma-separated")->required();
  br->add_option("--lambda-start", ba.lambda_start)->required();
  br->add_option("--lambda-end", ba.lambda_end)->required();
  auto* br_steps = br->add_option("--steps", ba.steps);
  auto* br_N = br->add_option("--N", ba.N);
  br->add_option("--out", ba.out);
  auto* br_ntol = br->add_option("--newton-tol", ba.newton_tol);

  auto* cp = app.add_subcommand("compare", "distance from a stored solution to a closed form");
  std::string cp_path, cp_profile;
  cp->add_option("--solution", cp_path)->required();
  cp->add_option("--profile", cp_profile, "sech-segment | sech-ring | dnoidal | cnoidal")->required();

  auto* nf = app.add_subcommand("normalform", "pitchfork thresholds and coefficients");
  double nf_L = 0.0;
  std::string nf_out;
  nf->add_option("--L", nf_L)->required()->check(CLI::PositiveNumber);
  nf->add_option("--out", nf_out);

  auto* ec = app.add_subcommand("elliptic-check", "property suite for the elliptic functions");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    Config cfg;
    cfg.load(config_path);
    if (*sp) return run_spectrum(sp_L, sp_count, sp_out);
    if (*so) {
      cfg.fill(so_N, "N", sa.N);
      cfg.fill(so_ntol, "newton_tol", sa.newton_tol);
      cfg.fill(so_ptol, "petviashvili_tol", sa.petviashvili_tol);
      cfg.fill(so_it, "max_iter", sa.max_iter);
      return run_solve(sa, so_L->count() > 0);
    }
    if (*br) {
      cfg.fill(br_N, "N", ba.N);
      cfg.fill(br_steps, "steps", ba.steps);
      cfg.fill(br_ntol, "newton_tol", ba.newton_tol);
      return run_branch(ba);
    }
    if (*cp) return run_compare(cp_path, cp_profile);
    if (*nf) return run_normalform(nf_L, nf_out);
    if (*ec) return run_elliptic_check();
  } catch (const UsageError& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return kUsage;
  } catch (const NoInput& e) {
    std::cerr << "no input: " << e.what() << "\n";
    return kNoInput;
  } catch (const DataError& e) {
    std::cerr << "bad data: " << e.what() << "\n";
    return kData;
  } catch (const BracketingFailure& e) {
    std::cerr << "root failure: " << e.what() << "\n";
    return kRoot;
  } catch (const NoRoot& e) {
    std::cerr << "root failure: " << e.what() << "\n";
    return kRoot;
  } catch (const DomainError& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kProperty;
  }
  return kUsage;
}
