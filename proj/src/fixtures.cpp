#include "speclift/fixtures.hpp"

#include <fstream>
#include <limits>
#include <sstream>

namespace speclift {

namespace {

json int_to_json(const Int& v) {
  if (v >= std::numeric_limits<int64_t>::min() &&
      v <= std::numeric_limits<int64_t>::max())
    return v.convert_to<int64_t>();
  return v.str();
}

Int int_from_json(const json& j) {
  if (j.is_number_integer()) return Int(j.get<int64_t>());
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s.empty()) throw math_error("empty integer literal");
    size_t k = s[0] == '-' || s[0] == '+' ? 1 : 0;
    if (k == s.size()) throw math_error("bad integer literal: " + s);
    for (; k < s.size(); ++k)
      if (s[k] < '0' || s[k] > '9')
        throw math_error("bad integer literal: " + s);
    return Int(s);
  }
  throw math_error("expected an integer or a decimal string");
}

long small_int_from_json(const json& j, const char* what) {
  if (!j.is_number_integer())
    throw math_error(std::string("expected an integer for ") + what);
  return j.get<long>();
}

IMatrix matrix_from_json(const json& j, const char* what) {
  if (!j.is_array() || j.empty())
    throw math_error(std::string("expected a nonempty matrix for ") + what);
  IMatrix m;
  for (const auto& row : j) {
    if (!row.is_array() || row.empty() ||
        (!m.empty() && row.size() != m[0].size()))
      throw math_error(std::string("ragged matrix for ") + what);
    std::vector<Int> r;
    for (const auto& e : row) r.push_back(int_from_json(e));
    m.push_back(std::move(r));
  }
  return m;
}

json matrix_to_json(const IMatrix& m) {
  json j = json::array();
  for (const auto& row : m) {
    json r = json::array();
    for (const auto& e : row) r.push_back(int_to_json(e));
    j.push_back(std::move(r));
  }
  return j;
}

}  // namespace

json poly_to_json(const LaurentPoly& p) {
  json terms = json::array();
  for (const auto& [e, c] : p.terms()) {
    json mono = json::array();
    for (Exp x : e) mono.push_back(x);
    terms.push_back(json::array({mono, int_to_json(c)}));
  }
  return terms;
}

LaurentPoly poly_from_json(const json& j, int num_vars) {
  if (!j.is_array()) throw math_error("polynomial must be a term list");
  if (num_vars < 0) {
    if (j.empty())
      throw math_error("cannot infer the variable count of an empty term list");
    if (!j[0].is_array() || j[0].size() != 2 || !j[0][0].is_array())
      throw math_error("terms must be [monomial, coefficient] pairs");
    num_vars = static_cast<int>(j[0][0].size());
  }
  if (num_vars < 1) throw math_error("polynomial needs at least one variable");
  LaurentPoly p(num_vars);
  for (const auto& term : j) {
    if (!term.is_array() || term.size() != 2 || !term[0].is_array())
      throw math_error("terms must be [monomial, coefficient] pairs");
    if (static_cast<int>(term[0].size()) != num_vars)
      throw math_error("monomial length differs from the variable count");
    Mono e;
    for (const auto& x : term[0]) {
      if (!x.is_number_integer()) throw math_error("exponents must be integers");
      e.push_back(x.get<Exp>());
    }
    if (p.terms().count(e))
      throw math_error("duplicate monomial in term list");
    Int c = int_from_json(term[1]);
    if (c == 0) throw math_error("zero coefficient in term list");
    p.add_term(e, c);
  }
  return p;
}

json poly_fixture_to_json(const LaurentPoly& p) {
  json j;
  j["vars"] = p.num_vars();
  j["poly"] = poly_to_json(p);
  return j;
}

LaurentPoly poly_fixture_from_json(const json& j) {
  if (!j.is_object() || !j.contains("vars") || !j.contains("poly"))
    throw math_error("polynomial fixture needs 'vars' and 'poly'");
  int n = static_cast<int>(small_int_from_json(j.at("vars"), "vars"));
  return poly_from_json(j.at("poly"), n);
}

LaurentPoly poly_from_any_json(const json& j) {
  if (j.is_object()) return poly_fixture_from_json(j);
  return poly_from_json(j);
}

json record_to_json(const ManifoldRecord& rec) {
  json j;
  j["name"] = rec.name;
  j["b1"] = rec.b1;
  j["closed"] = rec.closed;
  if (rec.delta_pi) j["delta_pi"] = poly_to_json(*rec.delta_pi);
  json classes = json::array();
  for (const auto& fc : rec.fibered_classes) {
    json c;
    c["a"] = json::array();
    for (Exp x : fc.a) c["a"].push_back(x);
    c["monodromy"] = matrix_to_json(fc.monodromy);
    classes.push_back(std::move(c));
  }
  j["fibered_classes"] = std::move(classes);
  if (rec.presentation) {
    json p;
    p["generators"] = rec.presentation->generators;
    p["relators"] = json::array();
    for (const Word& w : rec.presentation->relators)
      p["relators"].push_back(word_to_string(w));
    p["psi"] = matrix_to_json(rec.presentation->psi.matrix);
    j["presentation"] = std::move(p);
  }
  return j;
}

ManifoldRecord record_from_json(const json& j) {
  if (!j.is_object()) throw math_error("record must be an object");
  ManifoldRecord rec;
  if (!j.contains("name") || !j.at("name").is_string())
    throw math_error("record needs a string 'name'");
  rec.name = j.at("name").get<std::string>();
  rec.b1 = static_cast<int>(small_int_from_json(j.at("b1"), "b1"));
  if (!j.contains("closed") || !j.at("closed").is_boolean())
    throw math_error("record needs a boolean 'closed'");
  rec.closed = j.at("closed").get<bool>();
  if (j.contains("delta_pi"))
    rec.delta_pi = poly_from_json(j.at("delta_pi"), rec.b1);
  if (j.contains("fibered_classes")) {
    for (const auto& c : j.at("fibered_classes")) {
      FiberedClass fc;
      if (!c.is_object() || !c.contains("a") || !c.contains("monodromy"))
        throw math_error("fibered class needs 'a' and 'monodromy'");
      for (const auto& x : c.at("a")) {
        if (!x.is_number_integer())
          throw math_error("class entries must be integers");
        fc.a.push_back(x.get<Exp>());
      }
      fc.monodromy = matrix_from_json(c.at("monodromy"), "monodromy");
      rec.fibered_classes.push_back(std::move(fc));
    }
  }
  if (j.contains("presentation")) {
    const json& p = j.at("presentation");
    GroupPresentation gp;
    gp.generators =
        static_cast<int>(small_int_from_json(p.at("generators"), "generators"));
    if (!p.contains("relators") || !p.at("relators").is_array())
      throw math_error("presentation needs a 'relators' array");
    for (const auto& w : p.at("relators")) {
      if (!w.is_string()) throw math_error("relators must be word strings");
      gp.relators.push_back(parse_word(w.get<std::string>(), gp.generators));
    }
    gp.psi = IntLinearMap{matrix_from_json(p.at("psi"), "psi")};
    rec.presentation = std::move(gp);
  }
  validate_record(rec);
  return rec;
}

json automorphism_to_json(const FreeAutomorphism& phi) {
  json j;
  j["rank"] = phi.rank;
  j["images"] = json::array();
  for (const Word& w : phi.images) j["images"].push_back(word_to_string(w));
  j["inverse"] = json::array();
  for (const Word& w : phi.inverse_images)
    j["inverse"].push_back(word_to_string(w));
  return j;
}

FreeAutomorphism automorphism_from_json(const json& j) {
  if (!j.is_object()) throw math_error("automorphism must be an object");
  FreeAutomorphism phi;
  phi.rank = static_cast<int>(small_int_from_json(j.at("rank"), "rank"));
  if (!j.contains("images") || !j.at("images").is_array())
    throw math_error("automorphism needs an 'images' array");
  for (const auto& w : j.at("images")) {
    if (!w.is_string()) throw math_error("images must be word strings");
    phi.images.push_back(parse_word(w.get<std::string>(), phi.rank));
  }
  if (!j.contains("inverse") || !j.at("inverse").is_array())
    throw math_error("automorphism needs an 'inverse' array");
  for (const auto& w : j.at("inverse")) {
    if (!w.is_string()) throw math_error("inverse entries must be word strings");
    phi.inverse_images.push_back(parse_word(w.get<std::string>(), phi.rank));
  }
  validate_automorphism(phi);
  return phi;
}

json cover_to_json(const PermCover& cover) {
  json j;
  j["degree"] = cover.degree;
  j["perms"] = json::array();
  for (const auto& p : cover.perms) {
    json row = json::array();
    for (int v : p) row.push_back(v + 1);
    j["perms"].push_back(std::move(row));
  }
  return j;
}

PermCover cover_from_json(const json& j) {
  if (!j.is_object()) throw math_error("cover must be an object");
  PermCover cover;
  cover.degree = static_cast<int>(small_int_from_json(j.at("degree"), "degree"));
  if (!j.contains("perms") || !j.at("perms").is_array())
    throw math_error("cover needs a 'perms' array");
  for (const auto& p : j.at("perms")) {
    if (!p.is_array()) throw math_error("permutations must be arrays");
    std::vector<int> perm;
    for (const auto& v : p) {
      if (!v.is_number_integer())
        throw math_error("permutation entries must be integers");
      perm.push_back(v.get<int>() - 1);
    }
    cover.perms.push_back(std::move(perm));
  }
  validate_cover(cover);
  return cover;
}

std::string canonical_dump(const json& j) { return j.dump(2) + "\n"; }

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw math_error("cannot open file: " + path);
  return json::parse(in);
}

}  // namespace speclift
