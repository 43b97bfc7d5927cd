#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "diracml/csv.hpp"
#include "diracml/eigsolve.hpp"

namespace diracml {

enum class StudyKind { T1, T2, T3, T1Ball, Lichnerowicz, LengthInvariance };
enum class Backend { Exact, Fem };

StudyKind parse_study_kind(const std::string& name);
std::string study_name(StudyKind kind);
Backend parse_backend(const std::string& name);

struct StudyConfig {
  StudyKind kind = StudyKind::T1;
  std::string curve = "circle 1";  // T1-ball: radius taken from "circle R"
  Backend backend = Backend::Exact;
  std::vector<double> m_list;      // T1, T1-ball
  std::vector<double> M_list;      // T2, T3
  double m = 0.0;                  // T2 interior mass
  double coupling_p = 0.5;         // T3: m = -M^p
  bool mirrored = false;           // T3: m = +M^p with exterior mass -M
  int jmax = 1;
  int channels = 6;
  double h = 0.05;                 // fem backend
  double box = 0.0;                // fem jump box half width, 0 = 3 * circumradius
  std::vector<int> ngrid_list;     // lichnerowicz
  std::string scheme = "fourier";  // lichnerowicz
  int ngrid = 256;                 // length-invariance (fd2 at ngrid and 2 ngrid, Richardson)
  double tol = 1e-8;
  std::uint64_t seed = kDefaultSeed;
  std::optional<double> shift;
};

/// Default sweep for the study kind.
StudyConfig default_study(StudyKind kind);

struct StudyRow {
  double param = 0.0;
  std::vector<double> values;
  std::vector<double> reference;
  std::vector<std::string> flags;

  std::vector<double> gaps() const;  // |values - reference|
};

struct Assertion {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct StudyReport {
  std::string study;
  std::string param_name;
  std::string value_name;
  std::string reference_note;
  std::vector<StudyRow> rows;
  std::vector<double> slopes;  // least-squares slope of log gap_j against log |param|
  std::vector<Assertion> assertions;

  bool passed() const;
};

/// Runs the sweep; throws with the failing sweep point named on solver errors.
StudyReport run_study(const StudyConfig& cfg);

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

CsvTable report_table(const StudyReport& report);
void emit_csv(const StudyReport& report, const std::string& path);
void emit_svg(const StudyReport& report, const std::string& path);

}  // namespace diracml
