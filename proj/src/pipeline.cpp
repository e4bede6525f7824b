#include "speclift/pipeline.hpp"

#include <cstdio>
#include <numeric>
#include <sstream>

#include "speclift/surfcover.hpp"
#include "speclift/torsion.hpp"

namespace speclift {

namespace {

// Unimodular W whose first row is the (primitive) class a: pulling a
// polynomial back through W turns specialization along a into
// specialization along the first coordinate while preserving the measure.
IntLinearMap class_basis_change(const std::vector<Exp>& a) {
  size_t n = a.size();
  IMatrix row(1, std::vector<Int>(n));
  for (size_t i = 0; i < n; ++i) row[0][i] = a[i];
  IMatrix u, v;
  SNFResult d = smith_normal_form_with_transforms(row, &u, &v);
  if (d.diagonal.empty() || d.diagonal[0] != 1)
    throw math_error("class is not surjective");
  // u is 1x1 = [s] with s * (a . v) = e1; flip v's first column if s = -1.
  if (u[0][0] == -1)
    for (size_t i = 0; i < n; ++i) v[i][0] = -v[i][0];
  return IntLinearMap{inverse_unimodular(v)};
}

bool leading_unit(const LaurentPoly& p) {
  Int lc = dense_coeffs_1var(normalize_unit(p).poly).back();
  return lc == 1 || lc == -1;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

MahlerResult measure_with_detector(const LaurentPoly& p) {
  if (is_cyclotomic_product_univariate(p))
    return MahlerResult{1.0, 0.0, "exact_one", 0.0};
  return mahler_univariate(p);
}

json mahler_result_to_json(const MahlerResult& m) {
  json j;
  j["value"] = m.value;
  j["log_value"] = m.log_value;
  j["method"] = m.method;
  j["error_estimate"] = m.error_estimate;
  return j;
}

PipelineReport run_pipeline(const ManifoldRecord& rec,
                            const PipelineOptions& opt) {
  validate_record(rec);
  PipelineReport rep;
  rep.name = rec.name;
  rep.warnings.push_back(
      "record type is taken on trust: hyperbolicity is not certified");

  // ---- statement (1): spectral radius of the fibered monodromy ----
  if (rec.fibered_classes.empty())
    throw math_error("record carries no fibered class");
  const FiberedClass& fc = rec.fibered_classes[0];
  if (rec.fibered_classes.size() > 1)
    rep.warnings.push_back("multiple fibered classes: reporting the first");
  rep.s1_class = fc.a;
  rep.s1_charpoly = char_poly_fibered(fc);
  rep.s1_radius = spectral_radius(fc.monodromy);
  rep.s1_charpoly_measure = measure_with_detector(rep.s1_charpoly);
  rep.s1_holds = rep.s1_radius > 1.0 + opt.threshold;

  // ---- the polynomial the record is about ----
  LaurentPoly delta(1);
  if (rec.delta_pi) {
    delta = *rec.delta_pi;
  } else if (rec.presentation) {
    delta = alexander_from_presentation(
        fox_presentation_matrix(*rec.presentation));
    rep.warnings.push_back("polynomial computed from the presentation");
  } else {
    if (rec.b1 != 1)
      throw math_error("record carries no polynomial for a b1 > 1 pipeline");
    delta = rep.s1_charpoly;
    rep.warnings.push_back("polynomial taken from the fibered monodromy");
  }
  if (delta.is_zero()) throw math_error("record polynomial is zero");

  // Move the fibered class onto the first coordinate so slices, covers,
  // and pullbacks all specialize along that variable.
  Mono e1;
  LaurentPoly q(1);
  if (rec.b1 == 1) {
    if (fc.a != std::vector<Exp>{1} && fc.a != std::vector<Exp>{-1})
      throw math_error("class is not surjective");
    q = fc.a[0] == 1 ? delta
                     : substitute_linear(delta, IntLinearMap{IMatrix{{-1}}});
    e1 = Mono{1};
  } else {
    q = substitute_linear(delta, class_basis_change(fc.a));
    e1 = Mono(static_cast<size_t>(rec.b1), 0);
    e1[0] = 1;
  }

  // ---- statement (2): Mahler measure above 1 ----
  if (rec.b1 == 1) {
    rep.s2_measure = measure_with_detector(q);
    rep.s2_holds = rep.s2_measure.value > 1.0 + opt.threshold;
  } else {
    rep.s2_measure = mahler_multivariate(q, opt.grid, opt.tol, opt.jobs);
    rep.s2_slice = find_positive_slice(q, opt.slice_dmax, opt.slice_delta);
    rep.s2_holds = rep.s2_measure.value > 1.0 + opt.threshold;
    if (rep.s2_holds && !rep.s2_slice)
      rep.warnings.push_back(
          "no positive slice found within the denominator bound");
  }

  // ---- statement (3): finite-cover pullback evidence ----
  LaurentPoly t_minus_1(1);
  t_minus_1.add_term(Mono{1}, 1);
  t_minus_1.add_term(Mono{0}, -1);
  if (rec.b1 == 1) {
    rep.s3_cover_k = 1;
    rep.s3_cover_delta = normalize_unit(q).poly;
    rep.s3_pullback_class = {1};
    rep.s3_pullback = rep.s3_cover_delta;
    rep.s3_leading_unit = leading_unit(rep.s3_pullback);
    rep.s3_measure = measure_with_detector(rep.s3_pullback);
    rep.s3_monodromy_charpoly = rep.s3_pullback;
    rep.s3_holds = rep.s3_measure.value > 1.0 + opt.threshold;
  } else {
    long k = 1;
    if (rep.s2_slice)
      for (const auto& [num, den] : rep.s2_slice->coords)
        k = std::lcm(k, den);
    else
      rep.warnings.push_back(
          "cover order defaults to 1: no positive slice available");
    rep.s3_cover_k = k;
    std::vector<int> twisted;
    for (int i = 1; i < rec.b1; ++i) twisted.push_back(i);
    rep.s3_cover_delta = abelian_cover_alexander(q, k, twisted);
    rep.s3_pullback_class.assign(static_cast<size_t>(rec.b1), 0);
    rep.s3_pullback_class[0] = 1;
    IMatrix cls(1, std::vector<Int>(static_cast<size_t>(rec.b1), 0));
    cls[0][0] = 1;
    rep.s3_pullback =
        pullback_class_specialization(rep.s3_cover_delta, IntLinearMap{cls});
    rep.s3_leading_unit = leading_unit(rep.s3_pullback);
    rep.s3_measure = measure_with_detector(rep.s3_pullback);
    // Fiber bookkeeping: the untwisted character contributes the exact
    // unit-circle factor(s) to the cover-monodromy characteristic polynomial.
    rep.s3_monodromy_charpoly = rep.s3_pullback * t_minus_1;
    if (rec.closed) rep.s3_monodromy_charpoly = rep.s3_monodromy_charpoly * t_minus_1;
    rep.warnings.push_back(
        "derived cover monodromy may act on a disconnected fiber");
    rep.s3_holds = rep.s3_measure.value > 1.0 + opt.threshold;
  }

  rep.all_hold = rep.s1_holds && rep.s2_holds && rep.s3_holds;
  return rep;
}

json report_to_json(const PipelineReport& rep) {
  json j;
  j["name"] = rep.name;
  json s1;
  s1["class"] = json::array();
  for (Exp x : rep.s1_class) s1["class"].push_back(x);
  s1["radius"] = rep.s1_radius;
  s1["charpoly"] = poly_to_json(rep.s1_charpoly);
  s1["charpoly_measure"] = mahler_result_to_json(rep.s1_charpoly_measure);
  s1["holds"] = rep.s1_holds;
  j["statement1"] = std::move(s1);

  json s2;
  s2["measure"] = mahler_result_to_json(rep.s2_measure);
  if (rep.s2_slice) {
    json pt = json::array();
    for (const auto& [num, den] : rep.s2_slice->coords)
      pt.push_back(json::array({num, den}));
    s2["slice"] = std::move(pt);
  } else {
    s2["slice"] = nullptr;
  }
  s2["holds"] = rep.s2_holds;
  j["statement2"] = std::move(s2);

  json s3;
  s3["cover_k"] = rep.s3_cover_k;
  s3["cover_delta"] = poly_to_json(rep.s3_cover_delta);
  s3["pullback_class"] = json::array();
  for (Exp x : rep.s3_pullback_class) s3["pullback_class"].push_back(x);
  s3["pullback"] = poly_to_json(rep.s3_pullback);
  s3["leading_unit"] = rep.s3_leading_unit;
  s3["measure"] = mahler_result_to_json(rep.s3_measure);
  s3["monodromy_charpoly"] = poly_to_json(rep.s3_monodromy_charpoly);
  s3["holds"] = rep.s3_holds;
  j["statement3"] = std::move(s3);

  j["warnings"] = rep.warnings;
  j["all_hold"] = rep.all_hold;
  return j;
}

std::string report_to_text(const PipelineReport& rep) {
  std::ostringstream out;
  out << "record: " << rep.name << "\n";
  out << "statement 1 (monodromy spectral radius > 1): "
      << (rep.s1_holds ? "holds" : "fails") << "\n";
  out << "  class: [";
  for (size_t i = 0; i < rep.s1_class.size(); ++i)
    out << (i ? ", " : "") << rep.s1_class[i];
  out << "]\n";
  out << "  radius: " << format_double(rep.s1_radius) << "\n";
  out << "  charpoly: " << to_string(rep.s1_charpoly) << "\n";
  out << "  charpoly measure: " << format_double(rep.s1_charpoly_measure.value)
      << " (" << rep.s1_charpoly_measure.method << ")\n";
  out << "statement 2 (Mahler measure > 1): "
      << (rep.s2_holds ? "holds" : "fails") << "\n";
  out << "  measure: " << format_double(rep.s2_measure.value) << " ("
      << rep.s2_measure.method
      << ", error " << format_double(rep.s2_measure.error_estimate) << ")\n";
  if (rep.s2_slice) {
    out << "  positive slice:";
    for (const auto& [num, den] : rep.s2_slice->coords)
      out << " " << num << "/" << den;
    out << "\n";
  } else {
    out << "  positive slice: none\n";
  }
  out << "statement 3 (cover pullback measure > 1): "
      << (rep.s3_holds ? "holds" : "fails") << "\n";
  out << "  cover order k: " << rep.s3_cover_k << "\n";
  out << "  cover polynomial: " << to_string(rep.s3_cover_delta) << "\n";
  out << "  pullback class: [";
  for (size_t i = 0; i < rep.s3_pullback_class.size(); ++i)
    out << (i ? ", " : "") << rep.s3_pullback_class[i];
  out << "]\n";
  out << "  pullback: " << to_string(rep.s3_pullback) << "\n";
  out << "  leading coefficient unit: "
      << (rep.s3_leading_unit ? "yes" : "no") << "\n";
  out << "  pullback measure: " << format_double(rep.s3_measure.value) << " ("
      << rep.s3_measure.method << ")\n";
  out << "  cover monodromy charpoly: " << to_string(rep.s3_monodromy_charpoly)
      << "\n";
  out << "all statements hold: " << (rep.all_hold ? "yes" : "no") << "\n";
  for (const auto& w : rep.warnings) out << "warning: " << w << "\n";
  return out.str();
}

}  // namespace speclift
