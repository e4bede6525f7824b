#pragma once

#include <optional>
#include <string>
#include <vector>

#include "speclift/alexander.hpp"
#include "speclift/fixtures.hpp"
#include "speclift/lpoly.hpp"
#include "speclift/mahler.hpp"

namespace speclift {

struct PipelineOptions {
  long grid = 256;          // starting quadrature grid per torus dimension
  double tol = 1e-4;        // quadrature stabilization tolerance
  double slice_delta = 1e-3;   // positivity margin for the slice integral
  long slice_dmax = 16;        // max slice-coordinate denominator
  double threshold = 1e-9;     // strictness margin for "> 1" checks
  int jobs = 1;
};

// Evidence for the three equivalent statements on one record:
// (1) the fibered monodromy has spectral radius above 1,
// (2) the multivariable polynomial has Mahler measure above 1,
// (3) a finite-cover pullback polynomial has Mahler measure above 1.
struct PipelineReport {
  std::string name;

  std::vector<Exp> s1_class;
  double s1_radius = 0.0;
  LaurentPoly s1_charpoly{1};
  MahlerResult s1_charpoly_measure;
  bool s1_holds = false;

  MahlerResult s2_measure;
  std::optional<SlicePoint> s2_slice;
  bool s2_holds = false;

  long s3_cover_k = 1;
  LaurentPoly s3_cover_delta{1};
  std::vector<Exp> s3_pullback_class;
  LaurentPoly s3_pullback{1};
  bool s3_leading_unit = false;
  MahlerResult s3_measure;
  LaurentPoly s3_monodromy_charpoly{1};
  bool s3_holds = false;

  std::vector<std::string> warnings;
  bool all_hold = false;
};

PipelineReport run_pipeline(const ManifoldRecord& rec,
                            const PipelineOptions& opt = {});

json report_to_json(const PipelineReport& rep);
std::string report_to_text(const PipelineReport& rep);

// Shared deterministic numeric formatting for text output (%.12g).
std::string format_double(double v);

json mahler_result_to_json(const MahlerResult& m);

// Univariate measure that reports exact_one via the cyclotomic-product
// detector before falling back to numeric roots.
MahlerResult measure_with_detector(const LaurentPoly& p);

}  // namespace speclift
