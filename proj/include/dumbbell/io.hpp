#pragma once

#include <map>
#include <string>
#include <vector>

#include "dumbbell/normalform.hpp"
#include "dumbbell/solve.hpp"
#include "dumbbell/spectrum.hpp"
#include "dumbbell/state.hpp"

namespace dumbbell {

inline constexpr int kSolutionFormatVersion = 1;

// On-disk solution. Each ring array runs i = 0..N with the junction value at
// both ends; the segment array runs j = 0..M.
struct SolutionFile {
  int format_version = kSolutionFormatVersion;
  double L = 0.0;
  int N = 0;
  int M = 0;
  double lambda = 0.0;
  double Q = 0.0;
  double E = 0.0;
  double residual_norm = 0.0;
  std::string tag;
  std::vector<double> ring_minus, segment, ring_plus;
};

SolutionFile to_solution_file(const StationaryState& s);
// Rebuilds the graph function; DataError when the arrays are inconsistent.
GraphFunction solution_values(const SolutionFile& f);

std::string format_double(double x);  // %.17g
std::string serialize_solution(const SolutionFile& f);
SolutionFile parse_solution(const std::string& text);  // DataError on bad input

void write_solution(const std::string& path, const SolutionFile& f);
SolutionFile read_solution(const std::string& path);  // NoInput / DataError

// Partial result of a failed solve, next to the intended output.
void write_failed_dump(const std::string& out_path, const GraphFunction& last, double lambda,
                       const std::string& reason);

std::string branch_csv(const BranchTable& t);
// Sidecar metadata; the only place a timestamp is written.
std::string branch_meta_json(const BranchTable& t, const std::string& timestamp, int threads);

std::string spectrum_report_text(const SpectrumReport& r);
std::string pitchfork_report_text(const PitchforkReport& p);

// key = value lines; '#' starts a comment. DataError on malformed lines.
std::map<std::string, std::string> parse_config(const std::string& text);
std::map<std::string, std::string> read_config(const std::string& path);

}  // namespace dumbbell
