#include <CLI11.hpp>

#include <iostream>
#include <sstream>
#include <string>

#include "speclift/pipeline.hpp"
#include "speclift/surfcover.hpp"
#include "speclift/torsion.hpp"

namespace {

using namespace speclift;

LaurentPoly load_poly(const std::string& inline_poly, const std::string& input) {
  if (!inline_poly.empty() && !input.empty())
    throw math_error("give either --poly or --input, not both");
  if (!inline_poly.empty()) return poly_from_any_json(json::parse(inline_poly));
  if (!input.empty()) return poly_from_any_json(load_json_file(input));
  throw math_error("a polynomial is required (--poly or --input)");
}

void print_mahler(const MahlerResult& m, bool machine) {
  if (machine) {
    std::cout << canonical_dump(mahler_result_to_json(m));
    return;
  }
  std::cout << "value " << format_double(m.value) << "\n"
            << "log_value " << format_double(m.log_value) << "\n"
            << "method " << m.method << "\n"
            << "error_estimate " << format_double(m.error_estimate) << "\n";
}

void print_poly(const LaurentPoly& p, bool machine) {
  if (machine)
    std::cout << canonical_dump(poly_fixture_to_json(p));
  else
    std::cout << to_string(p) << "\n";
}

int run_mahler(const std::string& poly_arg, const std::string& input,
               long grid, double tol, int jobs, bool machine) {
  LaurentPoly p = load_poly(poly_arg, input);
  MahlerResult m = p.num_vars() == 1 ? measure_with_detector(p)
                                     : mahler_multivariate(p, grid, tol, jobs);
  print_mahler(m, machine);
  return 0;
}

int run_alexander(const std::string& input, bool machine) {
  ManifoldRecord rec = record_from_json(load_json_file(input));
  LaurentPoly delta(1);
  if (rec.presentation)
    delta = alexander_from_presentation(
        fox_presentation_matrix(*rec.presentation));
  else if (rec.delta_pi)
    delta = normalize_unit(*rec.delta_pi).poly;
  else
    throw math_error("record carries neither a presentation nor a polynomial");
  print_poly(delta, machine);
  return 0;
}

int run_cover_alex(const std::string& poly_arg, const std::string& input,
                   long k, std::vector<long> twisted, bool machine) {
  LaurentPoly p = load_poly(poly_arg, input);
  std::vector<int> tw;
  if (twisted.empty()) {
    for (int i = 1; i < p.num_vars(); ++i) tw.push_back(i);
  } else {
    for (long v : twisted) tw.push_back(static_cast<int>(v) - 1);  // 1-based
  }
  print_poly(abelian_cover_alexander(p, k, tw), machine);
  return 0;
}

int run_torsion_growth(const std::string& poly_arg, const std::string& input,
                       long n_max, int jobs, bool machine) {
  LaurentPoly p = load_poly(poly_arg, input);
  std::vector<GrowthPoint> series = growth_series(p, n_max, jobs);
  if (machine) {
    json j = json::array();
    for (const auto& pt : series) {
      json row;
      row["n"] = pt.n;
      row["skipped"] = pt.skipped;
      row["value"] = pt.value;
      j.push_back(std::move(row));
    }
    std::cout << canonical_dump(j);
    return 0;
  }
  std::cout << "n\t(1/n) log torsion\n";
  for (const auto& pt : series) {
    std::cout << pt.n << "\t"
              << (pt.skipped ? std::string("skipped")
                             : format_double(pt.value))
              << "\n";
  }
  return 0;
}

int run_lift_search(const std::string& input, int d_max, bool machine) {
  FreeAutomorphism phi = automorphism_from_json(load_json_file(input));
  std::optional<LiftSearchHit> hit = spectral_lift_search(phi, d_max);
  if (machine) {
    json j;
    j["found"] = hit.has_value();
    if (hit) {
      j["degree"] = hit->cover.degree;
      j["cover"] = cover_to_json(hit->cover);
      j["power"] = hit->power;
      json tau = json::array();
      for (int v : hit->lift.tau) tau.push_back(v + 1);
      j["tau"] = std::move(tau);
      j["radius"] = hit->radius;
      json h = json::array();
      for (const auto& row : hit->lift.homology_matrix) {
        json r = json::array();
        for (const auto& e : row) r.push_back(e.convert_to<long long>());
        h.push_back(std::move(r));
      }
      j["homology"] = std::move(h);
    }
    std::cout << canonical_dump(j);
    return 0;
  }
  if (!hit) {
    std::cout << "result: inconclusive (no lift with radius > 1 up to degree "
              << d_max << ")\n";
    return 0;
  }
  std::cout << "result: found\n"
            << "degree: " << hit->cover.degree << "\n"
            << "power: " << hit->power << "\n";
  for (size_t j = 0; j < hit->cover.perms.size(); ++j) {
    std::cout << "cover perm " << j + 1 << ":";
    for (int v : hit->cover.perms[j]) std::cout << " " << v + 1;
    std::cout << "\n";
  }
  std::cout << "tau:";
  for (int v : hit->lift.tau) std::cout << " " << v + 1;
  std::cout << "\nradius: " << format_double(hit->radius) << "\n";
  std::cout << "homology matrix:\n";
  for (const auto& row : hit->lift.homology_matrix) {
    std::cout << " ";
    for (const auto& e : row) std::cout << " " << e.str();
    std::cout << "\n";
  }
  return 0;
}

int run_pipeline_cmd(const std::string& input, const PipelineOptions& opt,
                     bool machine) {
  ManifoldRecord rec = record_from_json(load_json_file(input));
  PipelineReport rep = run_pipeline(rec, opt);
  if (machine)
    std::cout << canonical_dump(report_to_json(rep));
  else
    std::cout << report_to_text(rep);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Exact toolkit: Mahler measures, Alexander polynomials, abelian-cover "
      "character products, torsion growth, and surface-cover lift search"};
  app.require_subcommand(1);

  std::string poly_arg, input, format = "text";
  long grid = 256, n_max = 30, k = 2;
  double tol = 1e-4;
  int jobs = 1, d_max = 4;
  std::vector<long> twisted;

  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"text", "machine"}));
  };

  CLI::App* sub_mahler = app.add_subcommand("mahler", "Mahler measure of a polynomial");
  sub_mahler->add_option("--poly", poly_arg, "inline polynomial (term-list JSON)");
  sub_mahler->add_option("--input", input, "polynomial fixture file");
  sub_mahler->add_option("--grid", grid, "starting quadrature grid");
  sub_mahler->add_option("--tol", tol, "quadrature stabilization tolerance");
  sub_mahler->add_option("--jobs", jobs, "worker thread cap");
  add_format(sub_mahler);

  CLI::App* sub_alex = app.add_subcommand(
      "alexander", "Alexander polynomial of a manifold record");
  sub_alex->add_option("--input", input, "manifold record file")->required();
  add_format(sub_alex);

  CLI::App* sub_cover = app.add_subcommand(
      "cover-alex", "character-product polynomial of a finite abelian cover");
  sub_cover->add_option("--poly", poly_arg, "inline polynomial (term-list JSON)");
  sub_cover->add_option("--input", input, "polynomial fixture file");
  sub_cover->add_option("--k", k, "cyclic order of the cover")->required();
  sub_cover->add_option("--twisted", twisted,
                        "1-based twisted variable indices (default: all but "
                        "the first)");
  add_format(sub_cover);

  CLI::App* sub_torsion = app.add_subcommand(
      "torsion-growth", "torsion order growth along cyclic covers");
  sub_torsion->add_option("--poly", poly_arg, "inline polynomial (term-list JSON)");
  sub_torsion->add_option("--input", input, "polynomial fixture file");
  sub_torsion->add_option("--n-max", n_max, "largest cover degree");
  sub_torsion->add_option("--jobs", jobs, "worker thread cap");
  add_format(sub_torsion);

  CLI::App* sub_lift = app.add_subcommand(
      "lift-search", "search covers for a lift with spectral radius > 1");
  sub_lift->add_option("--input", input, "automorphism fixture file")->required();
  sub_lift->add_option("--d-max", d_max, "largest cover degree");
  add_format(sub_lift);

  CLI::App* sub_pipe = app.add_subcommand(
      "pipeline", "run the three-statement equivalence on a manifold record");
  PipelineOptions opt;
  sub_pipe->add_option("--input", input, "manifold record file")->required();
  sub_pipe->add_option("--grid", opt.grid, "starting quadrature grid");
  sub_pipe->add_option("--tol", opt.tol, "quadrature stabilization tolerance");
  sub_pipe->add_option("--d-max", opt.slice_dmax,
                       "largest slice-coordinate denominator");
  sub_pipe->add_option("--jobs", opt.jobs, "worker thread cap");
  add_format(sub_pipe);

  CLI11_PARSE(app, argc, argv);
  bool machine = format == "machine";

  try {
    if (sub_mahler->parsed())
      return run_mahler(poly_arg, input, grid, tol, jobs, machine);
    if (sub_alex->parsed()) return run_alexander(input, machine);
    if (sub_cover->parsed())
      return run_cover_alex(poly_arg, input, k, twisted, machine);
    if (sub_torsion->parsed())
      return run_torsion_growth(poly_arg, input, n_max, jobs, machine);
    if (sub_lift->parsed()) return run_lift_search(input, d_max, machine);
    if (sub_pipe->parsed()) return run_pipeline_cmd(input, opt, machine);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  std::cerr << "error: no subcommand\n";
  return 1;
}
