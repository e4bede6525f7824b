#include "speclift/surfcover.hpp"

#include "speclift/mahler.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>

namespace speclift {

namespace {

constexpr size_t kWordSizeGuard = 1u << 20;

std::vector<int> perm_inverse(const std::vector<int>& p) {
  std::vector<int> inv(p.size());
  for (size_t i = 0; i < p.size(); ++i) inv[static_cast<size_t>(p[i])] = static_cast<int>(i);
  return inv;
}

// Right action p -> p . w through the permutation tuple.
std::vector<int> eval_word_perm(const std::vector<std::vector<int>>& perms,
                                const Word& w) {
  size_t d = perms.empty() ? 0 : perms[0].size();
  std::vector<std::vector<int>> inv;
  inv.reserve(perms.size());
  for (const auto& p : perms) inv.push_back(perm_inverse(p));
  std::vector<int> out(d);
  for (size_t p = 0; p < d; ++p) {
    int cur = static_cast<int>(p);
    for (int l : w) {
      size_t j = static_cast<size_t>(l > 0 ? l : -l) - 1;
      cur = l > 0 ? perms[j][static_cast<size_t>(cur)]
                  : inv[j][static_cast<size_t>(cur)];
    }
    out[p] = cur;
  }
  return out;
}

// All tau with tau . sigma_j = rho_j . tau; transitivity pins tau by tau(0).
std::vector<std::vector<int>> find_intertwiners(
    const std::vector<std::vector<int>>& sigma,
    const std::vector<std::vector<int>>& rho, int d) {
  size_t r = sigma.size();
  std::vector<std::vector<int>> sigma_inv, rho_inv;
  for (const auto& p : sigma) sigma_inv.push_back(perm_inverse(p));
  for (const auto& p : rho) rho_inv.push_back(perm_inverse(p));
  std::vector<std::vector<int>> found;
  for (int start = 0; start < d; ++start) {
    std::vector<int> tau(static_cast<size_t>(d), -1);
    tau[0] = start;
    std::queue<int> bfs;
    bfs.push(0);
    bool ok = true;
    auto propagate = [&](int p2, int t2) {
      if (tau[static_cast<size_t>(p2)] == -1) {
        tau[static_cast<size_t>(p2)] = t2;
        bfs.push(p2);
      } else if (tau[static_cast<size_t>(p2)] != t2) {
        ok = false;
      }
    };
    while (ok && !bfs.empty()) {
      int p = bfs.front();
      bfs.pop();
      int t = tau[static_cast<size_t>(p)];
      for (size_t j = 0; ok && j < r; ++j) {
        propagate(sigma[j][static_cast<size_t>(p)], rho[j][static_cast<size_t>(t)]);
        propagate(sigma_inv[j][static_cast<size_t>(p)],
                  rho_inv[j][static_cast<size_t>(t)]);
      }
    }
    if (!ok) continue;
    std::vector<bool> seen(static_cast<size_t>(d), false);
    for (int v : tau) {
      if (v < 0 || seen[static_cast<size_t>(v)]) {
        ok = false;
        break;
      }
      seen[static_cast<size_t>(v)] = true;
    }
    if (!ok) continue;
    for (size_t j = 0; ok && j < r; ++j)
      for (int p = 0; p < d; ++p)
        if (tau[static_cast<size_t>(sigma[j][static_cast<size_t>(p)])] !=
            rho[j][static_cast<size_t>(tau[static_cast<size_t>(p)])]) {
          ok = false;
          break;
        }
    if (ok) found.push_back(std::move(tau));
  }
  return found;
}

LaurentPoly char_poly_int(const IMatrix& m) {
  size_t n = m.size();
  std::vector<std::vector<LaurentPoly>> e(
      n, std::vector<LaurentPoly>(n, LaurentPoly(1)));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      LaurentPoly t(1);
      if (i == j) t.add_term(Mono{1}, 1);
      t.add_term(Mono{0}, -m[i][j]);
      e[i][j] = t;
    }
  return det_poly_matrix(e);
}

void check_square(const IMatrix& m) {
  if (m.empty()) throw math_error("empty matrix");
  for (const auto& row : m)
    if (row.size() != m.size()) throw math_error("matrix is not square");
}

size_t total_word_size(const FreeAutomorphism& phi) {
  size_t s = 0;
  for (const auto& w : phi.images) s += w.size();
  return s;
}

// Relabel points by breadth-first discovery order from the basepoint,
// scanning generators in ascending order.  The result depends only on the
// pointed isomorphism class, which makes it a canonical form per basepoint.
std::vector<std::vector<int>> standardize(
    const std::vector<std::vector<int>>& perms, int d, int basepoint) {
  size_t r = perms.size();
  std::vector<int> label(static_cast<size_t>(d), -1);
  std::vector<int> order;
  label[static_cast<size_t>(basepoint)] = 0;
  order.push_back(basepoint);
  for (size_t head = 0; head < order.size(); ++head) {
    int v = order[head];
    for (size_t j = 0; j < r; ++j) {
      int w = perms[j][static_cast<size_t>(v)];
      if (label[static_cast<size_t>(w)] == -1) {
        label[static_cast<size_t>(w)] = static_cast<int>(order.size());
        order.push_back(w);
      }
    }
  }
  std::vector<std::vector<int>> out(r, std::vector<int>(static_cast<size_t>(d)));
  for (size_t j = 0; j < r; ++j)
    for (int v = 0; v < d; ++v)
      out[j][static_cast<size_t>(label[static_cast<size_t>(v)])] =
          label[static_cast<size_t>(perms[j][static_cast<size_t>(v)])];
  return out;
}

std::vector<int> flatten(const std::vector<std::vector<int>>& perms) {
  std::vector<int> f;
  for (const auto& p : perms) f.insert(f.end(), p.begin(), p.end());
  return f;
}

// Generate every transitive tuple in point-discovery-order normal form;
// these biject with the index-d subgroups (stabilizer of point 0).
void standard_tables(int rank, int d,
                     std::vector<std::vector<std::vector<int>>>* out) {
  size_t r = static_cast<size_t>(rank);
  std::vector<std::vector<int>> table(r, std::vector<int>(static_cast<size_t>(d), -1));
  std::vector<std::vector<bool>> used(r, std::vector<bool>(static_cast<size_t>(d), false));
  auto rec = [&](auto&& self, int cell, int discovered) -> void {
    if (cell == d * rank) {
      if (discovered == d) out->push_back(table);
      return;
    }
    int p = cell / rank;
    int j = cell % rank;
    if (p >= discovered) return;  // point p never reached: disconnected
    size_t sj = static_cast<size_t>(j);
    int qmax = std::min(discovered, d - 1);
    for (int q = 0; q <= qmax; ++q) {
      if (used[sj][static_cast<size_t>(q)]) continue;
      bool fresh = q == discovered;
      table[sj][static_cast<size_t>(p)] = q;
      used[sj][static_cast<size_t>(q)] = true;
      self(self, cell + 1, discovered + (fresh ? 1 : 0));
      used[sj][static_cast<size_t>(q)] = false;
      table[sj][static_cast<size_t>(p)] = -1;
    }
  };
  rec(rec, 0, 1);
}

bool is_transitive(const std::vector<std::vector<int>>& perms, int d) {
  std::vector<bool> seen(static_cast<size_t>(d), false);
  std::queue<int> bfs;
  seen[0] = true;
  bfs.push(0);
  int count = 1;
  while (!bfs.empty()) {
    int p = bfs.front();
    bfs.pop();
    for (const auto& perm : perms) {
      int q = perm[static_cast<size_t>(p)];
      if (!seen[static_cast<size_t>(q)]) {
        seen[static_cast<size_t>(q)] = true;
        bfs.push(q);
        ++count;
      }
    }
  }
  return count == d;
}

}  // namespace

void validate_automorphism(const FreeAutomorphism& phi) {
  if (phi.rank < 1) throw math_error("automorphism rank must be positive");
  if (static_cast<int>(phi.images.size()) != phi.rank ||
      static_cast<int>(phi.inverse_images.size()) != phi.rank)
    throw math_error("automorphism needs one image and one inverse image per generator");
  for (const Word& w : phi.images)
    if (!is_reduced(w)) throw math_error("image word is not reduced");
  for (const Word& w : phi.inverse_images)
    if (!is_reduced(w)) throw math_error("inverse image word is not reduced");
  Int det = det_int(abelianization_matrix(phi));
  if (det != 1 && det != -1)
    throw math_error("abelianized matrix is not unimodular");
  for (int j = 1; j <= phi.rank; ++j) {
    Word a = map_word(phi.images[static_cast<size_t>(j - 1)], phi.inverse_images);
    Word b = map_word(phi.inverse_images[static_cast<size_t>(j - 1)], phi.images);
    if (a != Word{j} || b != Word{j})
      throw math_error("inverse does not compose to the identity");
  }
}

void validate_cover(const PermCover& cover) {
  if (cover.degree < 1) throw math_error("cover degree must be positive");
  if (cover.perms.empty()) throw math_error("cover needs permutations");
  for (const auto& p : cover.perms) {
    if (static_cast<int>(p.size()) != cover.degree)
      throw math_error("permutation length differs from the degree");
    std::vector<bool> seen(static_cast<size_t>(cover.degree), false);
    for (int v : p) {
      if (v < 0 || v >= cover.degree || seen[static_cast<size_t>(v)])
        throw math_error("not a permutation");
      seen[static_cast<size_t>(v)] = true;
    }
  }
  if (!is_transitive(cover.perms, cover.degree))
    throw math_error("cover action is not transitive");
}

IMatrix abelianization_matrix(const FreeAutomorphism& phi) {
  size_t r = static_cast<size_t>(phi.rank);
  IMatrix m(r, std::vector<Int>(r, 0));
  for (size_t j = 0; j < r; ++j)
    for (int l : phi.images[j]) {
      size_t i = static_cast<size_t>(l > 0 ? l : -l) - 1;
      if (i >= r) throw math_error("image uses an unknown generator");
      m[i][j] += l > 0 ? 1 : -1;
    }
  return m;
}

FreeAutomorphism identity_automorphism(int rank) {
  FreeAutomorphism phi;
  phi.rank = rank;
  for (int j = 1; j <= rank; ++j) {
    phi.images.push_back(Word{j});
    phi.inverse_images.push_back(Word{j});
  }
  return phi;
}

FreeAutomorphism compose(const FreeAutomorphism& f, const FreeAutomorphism& g) {
  if (f.rank != g.rank) throw math_error("rank mismatch in composition");
  FreeAutomorphism out;
  out.rank = f.rank;
  for (int j = 0; j < f.rank; ++j)
    out.images.push_back(map_word(g.images[static_cast<size_t>(j)], f.images));
  if (!f.inverse_images.empty() && !g.inverse_images.empty())
    for (int j = 0; j < f.rank; ++j)
      out.inverse_images.push_back(
          map_word(f.inverse_images[static_cast<size_t>(j)], g.inverse_images));
  if (total_word_size(out) > kWordSizeGuard)
    throw math_error("composed image words exceed the size guard");
  return out;
}

FreeAutomorphism automorphism_power(const FreeAutomorphism& phi, long k) {
  if (k < 1) throw math_error("power must be positive");
  FreeAutomorphism out = phi;
  for (long i = 1; i < k; ++i) out = compose(phi, out);
  return out;
}

std::vector<std::vector<int>> lift_exists(const PermCover& cover,
                                          const FreeAutomorphism& phi) {
  validate_cover(cover);
  if (static_cast<int>(cover.perms.size()) != phi.rank)
    throw math_error("rank mismatch between cover and automorphism");
  std::vector<std::vector<int>> rho;
  for (const Word& w : phi.images)
    rho.push_back(eval_word_perm(cover.perms, w));
  return find_intertwiners(cover.perms, rho, cover.degree);
}

std::vector<std::vector<int>> deck_transformations(const PermCover& cover) {
  return lift_exists(cover, identity_automorphism(
                                static_cast<int>(cover.perms.size())));
}

IMatrix lifted_homology_action(const PermCover& cover,
                               const FreeAutomorphism& phi,
                               const std::vector<int>& tau) {
  validate_cover(cover);
  int d = cover.degree;
  int r = static_cast<int>(cover.perms.size());
  if (phi.rank != r) throw math_error("rank mismatch between cover and automorphism");
  if (static_cast<int>(tau.size()) != d) throw math_error("invalid intertwiner");
  {
    std::vector<bool> seen(static_cast<size_t>(d), false);
    for (int v : tau) {
      if (v < 0 || v >= d || seen[static_cast<size_t>(v)])
        throw math_error("invalid intertwiner");
      seen[static_cast<size_t>(v)] = true;
    }
    for (int j = 0; j < r; ++j) {
      std::vector<int> rho = eval_word_perm(cover.perms, phi.images[static_cast<size_t>(j)]);
      for (int p = 0; p < d; ++p)
        if (tau[static_cast<size_t>(cover.perms[static_cast<size_t>(j)][static_cast<size_t>(p)])] !=
            rho[static_cast<size_t>(tau[static_cast<size_t>(p)])])
          throw math_error("invalid intertwiner");
    }
  }

  // Breadth-first spanning tree from point 0, generators ascending.
  std::vector<std::vector<bool>> is_tree(
      static_cast<size_t>(d), std::vector<bool>(static_cast<size_t>(r), false));
  std::vector<Word> tree_word(static_cast<size_t>(d));
  std::vector<bool> visited(static_cast<size_t>(d), false);
  std::queue<int> bfs;
  visited[0] = true;
  bfs.push(0);
  while (!bfs.empty()) {
    int p = bfs.front();
    bfs.pop();
    for (int j = 0; j < r; ++j) {
      int q = cover.perms[static_cast<size_t>(j)][static_cast<size_t>(p)];
      if (!visited[static_cast<size_t>(q)]) {
        visited[static_cast<size_t>(q)] = true;
        is_tree[static_cast<size_t>(p)][static_cast<size_t>(j)] = true;
        tree_word[static_cast<size_t>(q)] = tree_word[static_cast<size_t>(p)];
        tree_word[static_cast<size_t>(q)].push_back(j + 1);
        bfs.push(q);
      }
    }
  }

  std::map<std::pair<int, int>, size_t> basis;  // (point, generator) -> index
  for (int p = 0; p < d; ++p)
    for (int j = 0; j < r; ++j)
      if (!is_tree[static_cast<size_t>(p)][static_cast<size_t>(j)])
        basis[{p, j}] = basis.size();
  size_t nb = basis.size();

  std::vector<std::vector<int>> sigma_inv;
  for (const auto& p : cover.perms) sigma_inv.push_back(perm_inverse(p));

  IMatrix m(nb, std::vector<Int>(nb, 0));
  for (const auto& [edge, col] : basis) {
    auto [p, j] = edge;
    Word cycle = tree_word[static_cast<size_t>(p)];
    cycle.push_back(j + 1);
    int q = cover.perms[static_cast<size_t>(j)][static_cast<size_t>(p)];
    Word back = invert_word(tree_word[static_cast<size_t>(q)]);
    cycle.insert(cycle.end(), back.begin(), back.end());

    Word img = map_word(cycle, phi.images);
    int cur = tau[0];
    for (int l : img) {
      int jj = (l > 0 ? l : -l) - 1;
      if (l > 0) {
        if (!is_tree[static_cast<size_t>(cur)][static_cast<size_t>(jj)])
          m[basis.at({cur, jj})][col] += 1;
        cur = cover.perms[static_cast<size_t>(jj)][static_cast<size_t>(cur)];
      } else {
        int prev = sigma_inv[static_cast<size_t>(jj)][static_cast<size_t>(cur)];
        if (!is_tree[static_cast<size_t>(prev)][static_cast<size_t>(jj)])
          m[basis.at({prev, jj})][col] -= 1;
        cur = prev;
      }
    }
    if (cur != tau[0])
      throw math_error("traced image path failed to close");  // unreachable
  }
  return m;
}

double spectral_radius(const IMatrix& m) {
  check_square(m);
  LaurentPoly cp = normalize_unit(char_poly_int(m)).poly;
  double best = 0.0;
  if (cp.is_constant()) return best;  // nilpotent: all eigenvalues zero
  for (const auto& [f, mult] : squarefree_decomposition(cp)) {
    std::vector<Int> dense = dense_coeffs_1var(f);
    std::vector<std::complex<double>> c(dense.size());
    for (size_t i = 0; i < dense.size(); ++i)
      c[i] = std::complex<double>(dense[i].convert_to<double>(), 0.0);
    for (const auto& root : poly_roots(c).roots)
      best = std::max(best, std::abs(root));
  }
  return best;
}

bool verify_quotient_divisibility(const IMatrix& base_c, const IMatrix& lift_l,
                                  const IMatrix& pushforward) {
  check_square(base_c);
  check_square(lift_l);
  size_t cn = base_c.size(), ln = lift_l.size();
  if (pushforward.size() != cn) throw math_error("intertwining precondition fails");
  for (const auto& row : pushforward)
    if (row.size() != ln) throw math_error("intertwining precondition fails");
  IMatrix pl = mat_mul(pushforward, lift_l);
  IMatrix cp = mat_mul(base_c, pushforward);
  if (pl != cp) throw math_error("intertwining precondition fails");
  if (rank_int(pushforward) != static_cast<int>(cn))
    throw math_error("intertwining precondition fails");
  LaurentPoly quo(1);
  return try_divide_exact(char_poly_int(lift_l), char_poly_int(base_c), &quo);
}

std::vector<PermCover> enumerate_covers(int rank, int degree, bool dedup,
                                        int cap) {
  if (rank < 1) throw math_error("rank must be positive");
  if (degree < 1) throw math_error("degree must be positive");
  if (degree > cap) throw math_error("cover degree exceeds the configured cap");
  std::vector<PermCover> out;
  if (!dedup) {
    // Direct product scan in lexicographic order.
    std::vector<int> ident(static_cast<size_t>(degree));
    std::iota(ident.begin(), ident.end(), 0);
    std::vector<std::vector<int>> tuple(static_cast<size_t>(rank), ident);
    auto rec = [&](auto&& self, int j) -> void {
      if (j == rank) {
        if (is_transitive(tuple, degree))
          out.push_back(PermCover{degree, tuple});
        return;
      }
      std::vector<int> p = ident;
      do {
        tuple[static_cast<size_t>(j)] = p;
        self(self, j + 1);
      } while (std::next_permutation(p.begin(), p.end()));
    };
    rec(rec, 0);
    return out;
  }
  std::vector<std::vector<std::vector<int>>> tables;
  standard_tables(rank, degree, &tables);
  std::set<std::vector<int>> seen;
  for (const auto& t : tables) {
    std::vector<int> best = flatten(t);
    for (int b = 1; b < degree; ++b)
      best = std::min(best, flatten(standardize(t, degree, b)));
    if (!seen.insert(best).second) continue;
    PermCover c;
    c.degree = degree;
    for (int j = 0; j < rank; ++j)
      c.perms.emplace_back(best.begin() + static_cast<long>(j) * degree,
                           best.begin() + static_cast<long>(j + 1) * degree);
    out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end(), [](const PermCover& a, const PermCover& b) {
    return flatten(a.perms) < flatten(b.perms);
  });
  return out;
}

std::optional<LiftSearchHit> spectral_lift_search(const FreeAutomorphism& phi,
                                                  int d_max) {
  validate_automorphism(phi);
  if (d_max < 1) throw math_error("degree cap must be positive");
  for (int d = 1; d <= d_max; ++d) {
    std::vector<PermCover> covers =
        enumerate_covers(phi.rank, d, true, std::max(d_max, 7));
    long kmax = static_cast<long>(covers.size());
    std::vector<FreeAutomorphism> powers{phi};  // powers[k-1] = phi^k
    for (const PermCover& cover : covers) {
      std::vector<std::vector<int>> rho = cover.perms;
      for (long k = 1; k <= kmax; ++k) {
        std::vector<std::vector<int>> nxt;
        for (const Word& w : phi.images) nxt.push_back(eval_word_perm(rho, w));
        rho = std::move(nxt);  // now sigma composed with phi^k
        std::vector<std::vector<int>> taus =
            find_intertwiners(cover.perms, rho, d);
        if (taus.empty()) continue;
        while (static_cast<long>(powers.size()) < k)
          powers.push_back(compose(phi, powers.back()));
        const FreeAutomorphism& phik = powers[static_cast<size_t>(k - 1)];
        for (const auto& tau : taus) {
          IMatrix l = lifted_homology_action(cover, phik, tau);
          double radius = spectral_radius(l);
          if (radius > 1.0 + 1e-9)
            return LiftSearchHit{cover, k, LiftData{tau, l}, radius};
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace speclift
