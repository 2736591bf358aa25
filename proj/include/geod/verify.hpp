#pragma once

#include <functional>
#include <string>
#include <vector>

#include "geod/quadfield.hpp"

namespace geod::verify {

using quadfield::i64;

struct Check {
  std::string name;
  bool pass = false;
  double value = 0.0;
  double threshold = 0.0;
  std::string detail;
};

struct Fitted {
  std::string name;
  double value = 0.0;
  std::string provenance;  // where it was fitted
};

struct SuiteReport {
  std::string name;
  std::vector<Check> checks;
  std::vector<Fitted> fitted;
  double seconds = 0.0;
  bool pass() const;
  void add(std::string name, bool pass, double value, double threshold, std::string detail = {});
};

struct Options {
  i64 pell_dmax = 500;
  i64 class_dmax = 200;
  i64 geodesic_dmax = 100;
  i64 pell_budget = 10000000;  // brute-force y limit
  i64 D = 5;
  double t = 20.0;  // spectral parameter for the analysis windows
  double eps = 0.01;
  double delta = 0.1;
  std::string even_form;  // empty: default data file
  std::string odd_form;
  int jobs = 1;
};

// One function per acceptance criterion.
SuiteReport criterion_quadfield(const Options& o);     // 1
SuiteReport criterion_dictionary(const Options& o);    // 2
SuiteReport criterion_theta(const Options& o);         // 3
SuiteReport criterion_V(const Options& o);             // 4
SuiteReport criterion_plancherel(const Options& o);    // 5
SuiteReport criterion_poisson(const Options& o);       // 6
SuiteReport criterion_lattice(const Options& o);       // 7
SuiteReport criterion_orthogonality(const Options& o); // 8
SuiteReport criterion_waldspurger(const Options& o);   // 9
SuiteReport criterion_tail(const Options& o);          // 10

struct Criterion {
  int id;
  std::string title;
  std::function<SuiteReport(const Options&)> run;
};
const std::vector<Criterion>& acceptance_criteria();

// Module suites: the criteria of the module plus further invariants.
const std::vector<std::string>& suite_names();  // without "all"
std::vector<SuiteReport> run_suite(const std::string& name, const Options& o);

std::string report_json(const std::vector<SuiteReport>& reports, const std::string& config_json);

}  // namespace geod::verify
