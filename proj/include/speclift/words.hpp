#pragma once

// Words in a free group on x1..xr, stored as letter sequences: +j for x_j,
// -j for its inverse (1-based j).  String form uses x1..xr for generators
// and X1..Xr for inverses, e.g. "x1X2x1".

#include <cctype>
#include <stdexcept>
#include <string>
#include <vector>

namespace speclift {

using Word = std::vector<int>;

inline Word parse_word(const std::string& s, int rank) {
  Word w;
  size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (c != 'x' && c != 'X')
      throw std::runtime_error("malformed word: expected x or X at '" +
                               s.substr(i) + "'");
    ++i;
    if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i])))
      throw std::runtime_error("malformed word: missing generator index");
    int idx = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      idx = idx * 10 + (s[i] - '0');
      ++i;
    }
    if (idx < 1 || idx > rank)
      throw std::runtime_error("malformed word: generator index out of range");
    w.push_back(c == 'x' ? idx : -idx);
  }
  return w;
}

inline std::string word_to_string(const Word& w) {
  std::string s;
  for (int l : w) {
    s += l > 0 ? 'x' : 'X';
    s += std::to_string(l > 0 ? l : -l);
  }
  return s;
}

// Free reduction: cancel adjacent inverse pairs.
inline Word reduce_word(const Word& w) {
  Word out;
  for (int l : w) {
    if (l == 0) throw std::runtime_error("malformed word: zero letter");
    if (!out.empty() && out.back() == -l)
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

inline bool is_reduced(const Word& w) {
  for (size_t i = 0; i + 1 < w.size(); ++i)
    if (w[i] == -w[i + 1] || w[i] == 0) return false;
  return !(w.size() == 1 && w[0] == 0);
}

inline Word invert_word(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (int& l : out) l = -l;
  return out;
}

// Substitute each letter by its image word (inverse letters get the
// inverted image) and reduce.
inline Word map_word(const Word& w, const std::vector<Word>& images) {
  Word out;
  for (int l : w) {
    int j = l > 0 ? l : -l;
    if (j < 1 || j > static_cast<int>(images.size()))
      throw std::runtime_error("malformed word: generator index out of range");
    const Word img = l > 0 ? images[static_cast<size_t>(j - 1)]
                           : invert_word(images[static_cast<size_t>(j - 1)]);
    out.insert(out.end(), img.begin(), img.end());
  }
  return reduce_word(out);
}

}  // namespace speclift
