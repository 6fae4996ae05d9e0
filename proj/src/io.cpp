#include "dumbbell/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "dumbbell/errors.hpp"

namespace dumbbell {

using ordered_json = nlohmann::ordered_json;

namespace {

double parse_number(const ordered_json& j, const char* key) {
  if (!j.contains(key)) throw DataError(std::string("solution file: missing field '") + key + "'");
  const auto& v = j.at(key);
  try {
    if (v.is_string()) {
      std::size_t used = 0;
      const std::string s = v.get<std::string>();
      const double x = std::stod(s, &used);
      if (used != s.size()) throw DataError("");
      return x;
    }
    if (v.is_number()) return v.get<double>();
  } catch (const std::exception&) {
  }
  throw DataError(std::string("solution file: field '") + key + "' is not a number");
}

std::vector<double> parse_array(const ordered_json& values, const char* key) {
  if (!values.contains(key) || !values.at(key).is_array())
    throw DataError(std::string("solution file: missing array '") + key + "'");
  std::vector<double> out;
  for (const auto& v : values.at(key)) {
    ordered_json wrap = {{"x", v}};
    out.push_back(parse_number(wrap, "x"));
  }
  return out;
}

ordered_json string_array(const std::vector<double>& v) {
  ordered_json a = ordered_json::array();
  for (double x : v) a.push_back(format_double(x));
  return a;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NoInput("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
  if (!out) throw Error("write failed for '" + path + "'");
}

}  // namespace

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

SolutionFile to_solution_file(const StationaryState& s) {
  const DumbbellGrid& g = s.grid;
  SolutionFile f;
  f.L = g.L();
  f.N = g.N();
  f.M = g.M();
  f.lambda = s.lambda;
  f.Q = s.Q;
  f.E = s.E;
  f.residual_norm = s.residual_norm;
  f.tag = tag_name(s.tag);
  for (int i = 0; i <= g.N(); ++i) {
    f.ring_minus.push_back(s.phi[g.ring_minus(i)]);
    f.ring_plus.push_back(s.phi[g.ring_plus(i)]);
  }
  for (int j = 0; j <= g.M(); ++j) f.segment.push_back(s.phi[g.segment(j)]);
  return f;
}

GraphFunction solution_values(const SolutionFile& f) {
  if (f.N < 4 || f.M < 1) throw DataError("solution file: bad N or M");
  if (f.ring_minus.size() != static_cast<std::size_t>(f.N + 1) ||
      f.ring_plus.size() != static_cast<std::size_t>(f.N + 1) ||
      f.segment.size() != static_cast<std::size_t>(f.M + 1))
    throw DataError("solution file: array lengths do not match N and M");
  if (f.ring_minus.front() != f.segment.front() || f.ring_minus.back() != f.segment.front() ||
      f.ring_plus.front() != f.segment.back() || f.ring_plus.back() != f.segment.back())
    throw DataError("solution file: junction copies differ from the segment endpoints");
  DumbbellGrid g;
  try {
    g = make_grid(f.L, f.N);
  } catch (const Error& e) {
    throw DataError(std::string("solution file: ") + e.what());
  }
  if (g.M() != f.M) throw DataError("solution file: M inconsistent with L and N");
  GraphFunction u(g);
  for (int i = 0; i <= f.N; ++i) {
    u[g.ring_minus(i)] = f.ring_minus[i];
    u[g.ring_plus(i)] = f.ring_plus[i];
  }
  for (int j = 0; j <= f.M; ++j) u[g.segment(j)] = f.segment[j];
  for (double v : u.values())
    if (!std::isfinite(v)) throw DataError("solution file: non-finite value");
  return u;
}

std::string serialize_solution(const SolutionFile& f) {
  ordered_json j;
  j["format_version"] = f.format_version;
  j["L"] = format_double(f.L);
  j["N"] = f.N;
  j["M"] = f.M;
  j["lambda"] = format_double(f.lambda);
  j["Q"] = format_double(f.Q);
  j["E"] = format_double(f.E);
  j["residual_norm"] = format_double(f.residual_norm);
  j["tag"] = f.tag;
  j["values"] = {{"ring_minus", string_array(f.ring_minus)},
                 {"segment", string_array(f.segment)},
                 {"ring_plus", string_array(f.ring_plus)}};
  return j.dump(1) + "\n";
}

SolutionFile parse_solution(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw DataError(std::string("solution file: not valid JSON (") + e.what() + ")");
  }
  if (!j.is_object()) throw DataError("solution file: top level is not an object");
  SolutionFile f;
  try {
    f.format_version = j.at("format_version").get<int>();
    f.N = j.at("N").get<int>();
    f.M = j.at("M").get<int>();
    f.tag = j.at("tag").get<std::string>();
  } catch (const std::exception& e) {
    throw DataError(std::string("solution file: ") + e.what());
  }
  if (f.format_version != kSolutionFormatVersion) throw DataError("solution file: unsupported format_version");
  f.L = parse_number(j, "L");
  f.lambda = parse_number(j, "lambda");
  f.Q = parse_number(j, "Q");
  f.E = parse_number(j, "E");
  f.residual_norm = parse_number(j, "residual_norm");
  if (!j.contains("values") || !j.at("values").is_object()) throw DataError("solution file: missing 'values'");
  const auto& v = j.at("values");
  f.ring_minus = parse_array(v, "ring_minus");
  f.segment = parse_array(v, "segment");
  f.ring_plus = parse_array(v, "ring_plus");
  solution_values(f);  // validates
  return f;
}

void write_solution(const std::string& path, const SolutionFile& f) { write_file(path, serialize_solution(f)); }

SolutionFile read_solution(const std::string& path) { return parse_solution(read_file(path)); }

void write_failed_dump(const std::string& out_path, const GraphFunction& last, double lambda,
                       const std::string& reason) {
  const DumbbellGrid& g = last.grid();
  ordered_json j;
  j["reason"] = reason;
  j["L"] = format_double(g.L());
  j["N"] = g.N();
  j["M"] = g.M();
  j["lambda"] = format_double(lambda);
  std::vector<double> rm, sg, rp;
  for (int i = 0; i <= g.N(); ++i) {
    rm.push_back(last[g.ring_minus(i)]);
    rp.push_back(last[g.ring_plus(i)]);
  }
  for (int k = 0; k <= g.M(); ++k) sg.push_back(last[g.segment(k)]);
  j["values"] = {{"ring_minus", string_array(rm)}, {"segment", string_array(sg)}, {"ring_plus", string_array(rp)}};
  write_file(out_path + ".failed", j.dump(1) + "\n");
}

std::string branch_csv(const BranchTable& t) {
  std::ostringstream os;
  os << "lambda,Q,E,lplus_eig2,lplus_eig2_dense,lplus_eig2_refined,lplus_negative,lminus_min,residual,tag,method\n";
  for (const auto& r : t.rows) {
    os << format_double(r.lambda) << ',' << format_double(r.Q) << ',' << format_double(r.E) << ','
       << format_double(r.lplus_eig2) << ',' << format_double(r.lplus_eig2_dense) << ','
       << (r.lplus_eig2_refined ? 1 : 0) << ',' << r.lplus_negative << ',' << format_double(r.lminus_min) << ','
       << format_double(r.residual) << ',' << tag_name(r.tag) << ',' << r.method << '\n';
  }
  return os.str();
}

std::string branch_meta_json(const BranchTable& t, const std::string& timestamp, int threads) {
  ordered_json j;
  j["family"] = t.family;
  j["L"] = t.L;
  j["N"] = t.N;
  j["lambda_start"] = t.lambda_start;
  j["lambda_end"] = t.lambda_end;
  j["steps"] = t.steps;
  j["rows"] = t.rows.size();
  j["newton_tol"] = t.newton_tol;
  j["truncated"] = t.truncated;
  if (t.truncated) {
    j["branch_end_lambda"] = t.branch_end_lambda;
    j["end_reason"] = t.end_reason;
  }
  j["threads"] = threads;
  j["timestamp"] = timestamp;
  return j.dump(2) + "\n";
}

std::string spectrum_report_text(const SpectrumReport& r) {
  ordered_json j;
  j["L"] = r.L;
  j["doubles"] = r.doubles;
  ordered_json even = ordered_json::array(), odd = ordered_json::array();
  for (std::size_t i = 0; i < r.even_roots.size(); ++i)
    even.push_back({{"omega", r.even_roots[i]}, {"residual", r.even_residuals[i]}});
  for (std::size_t i = 0; i < r.odd_roots.size(); ++i)
    odd.push_back({{"Omega", r.odd_roots[i]}, {"residual", r.odd_residuals[i]}});
  j["even_roots"] = even;
  j["odd_roots"] = odd;
  if (r.resonance)
    j["resonance"] = {{"m", r.resonance->m}, {"n", r.resonance->n}};
  else
    j["resonance"] = nullptr;
  j["orderings_hold"] = r.orderings_hold();
  j["eigenvalues"] = r.eigenvalues(static_cast<int>(r.even_roots.size() + r.odd_roots.size()) + 1);
  return j.dump(2) + "\n";
}

std::string pitchfork_report_text(const PitchforkReport& p) {
  ordered_json j;
  j["L"] = p.L;
  j["Omega1"] = p.Omega1;
  j["omega1"] = p.omega1;
  j["Lambda0"] = p.Lambda0;
  j["Q0_star"] = p.Q0_star;
  j["Q0_dstar"] = p.Q0_dstar;
  j["Omega_coef"] = p.Omega_coef;
  j["A"] = p.A;
  j["B"] = p.B;
  j["norm_U_sq"] = p.norm2;
  j["eig_coef"] = p.eig_coef;
  j["slope_sum"] = p.slope_sum;
  j["I"] = p.I;
  j["II"] = p.II;
  j["III"] = p.III;
  j["dQ_dLambda_at_Lambda0"] = p.dQ_dLambda;
  j["signs"] = {{"Omega_coef<0", p.Omega_coef < 0},
                {"eig_coef>0", p.eig_coef > 0},
                {"I<0", p.I < 0},
                {"II<0", p.II < 0},
                {"III<0", p.III < 0},
                {"slope_sum<0", p.slope_sum < 0}};
  return j.dump(2) + "\n";
}

std::map<std::string, std::string> parse_config(const std::string& text) {
  std::map<std::string, std::string> out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  auto trim = [](std::string s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return std::string();
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw DataError("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
    if (key.empty()) throw DataError("config line " + std::to_string(lineno) + ": empty key");
    out[key] = val;
  }
  return out;
}

std::map<std::string, std::string> read_config(const std::string& path) { return parse_config(read_file(path)); }

}  // namespace dumbbell
