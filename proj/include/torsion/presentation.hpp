// Finitely presented groups: the presentation record, its line-oriented text
// format, and the builtin corpus of example groups.
//
// Text format, one item per line, comments from '#' to end of line:
//   group <name>          optional label, at most once
//   gens <s1> <s2> ...    generator symbols, exactly once, before any rel
//   rel <t1> <t2> ...     one relator; each token is a generator symbol
//                         (lowercase) or its uppercased form (the inverse)
// Generator symbols match [a-z][a-z0-9_]* so uppercasing is unambiguous.

#ifndef TORSION_PRESENTATION_HPP
#define TORSION_PRESENTATION_HPP

#include "torsion/error.hpp"
#include "torsion/word.hpp"

#include <cctype>
#include <cstddef>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace torsion::fp {

struct GroupPresentation {
  std::string name; // optional label, empty if absent
  std::vector<std::string> generators;
  std::vector<Word> relators;

  std::size_t ngens() const { return generators.size(); }

  void check_letter(int x) const {
    int a = x < 0 ? -x : x;
    if (a == 0 || static_cast<std::size_t>(a) > generators.size())
      throw ValidationError("word letter out of range");
  }

  void check_word(const Word& w) const {
    for (int x : w) check_letter(x);
  }
};

namespace detail {

inline std::string upper_copy(const std::string& s) {
  std::string r = s;
  for (char& c : r) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return r;
}

inline bool valid_symbol(const std::string& s) {
  if (s.empty() || !std::islower(static_cast<unsigned char>(s[0]))) return false;
  for (char c : s) {
    unsigned char u = static_cast<unsigned char>(c);
    if (!(std::islower(u) || std::isdigit(u) || c == '_')) return false;
  }
  return true;
}

struct Token {
  std::string text;
  std::size_t col; // 1-based start column
};

inline std::vector<Token> tokenize(const std::string& line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == '#') break;
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) &&
           line[i] != '#')
      ++i;
    out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

} // namespace detail

inline GroupPresentation parse_presentation(const std::string& text) {
  GroupPresentation p;
  std::map<std::string, int> index; // symbol or uppercased symbol -> signed letter
  bool saw_gens = false, saw_group = false;

  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto toks = detail::tokenize(line);
    if (toks.empty()) continue;
    const auto& head = toks[0];
    if (head.text == "group") {
      if (saw_group) throw ParseError("duplicate group line", lineno, head.col);
      if (toks.size() != 2)
        throw ParseError("group line takes exactly one name", lineno, head.col);
      p.name = toks[1].text;
      saw_group = true;
    } else if (head.text == "gens") {
      if (saw_gens) throw ParseError("duplicate gens line", lineno, head.col);
      if (toks.size() < 2)
        throw ParseError("gens line needs at least one symbol", lineno, head.col);
      for (std::size_t i = 1; i < toks.size(); ++i) {
        const auto& t = toks[i];
        if (!detail::valid_symbol(t.text))
          throw ParseError("invalid generator symbol '" + t.text + "'", lineno,
                           t.col);
        if (index.count(t.text))
          throw ParseError("duplicate generator '" + t.text + "'", lineno, t.col);
        p.generators.push_back(t.text);
        int g = static_cast<int>(p.generators.size());
        index[t.text] = g;
        index[detail::upper_copy(t.text)] = -g;
      }
      saw_gens = true;
    } else if (head.text == "rel") {
      if (!saw_gens)
        throw ParseError("rel line before gens line", lineno, head.col);
      if (toks.size() < 2) throw ParseError("empty relator", lineno, head.col);
      Word w;
      for (std::size_t i = 1; i < toks.size(); ++i) {
        auto it = index.find(toks[i].text);
        if (it == index.end())
          throw ParseError("unknown letter '" + toks[i].text + "'", lineno,
                           toks[i].col);
        w.push_back(it->second);
      }
      p.relators.push_back(std::move(w));
    } else {
      throw ParseError("unknown directive '" + head.text + "'", lineno, head.col);
    }
  }
  if (!saw_gens) throw ParseError("missing gens line", lineno + 1, 1);
  return p;
}

inline std::string letter_text(const GroupPresentation& p, int x) {
  p.check_letter(x);
  const std::string& s = p.generators[static_cast<std::size_t>(std::abs(x)) - 1];
  return x > 0 ? s : detail::upper_copy(s);
}

inline std::string word_text(const GroupPresentation& p, const Word& w) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += letter_text(p, w[i]);
  }
  return out;
}

// Parses a standalone whitespace-separated word over p's generators.
inline Word parse_word(const GroupPresentation& p, const std::string& text) {
  Word w;
  auto toks = detail::tokenize(text);
  for (const auto& t : toks) {
    bool found = false;
    for (std::size_t g = 0; g < p.generators.size(); ++g) {
      if (t.text == p.generators[g]) {
        w.push_back(static_cast<int>(g + 1));
        found = true;
        break;
      }
      if (t.text == detail::upper_copy(p.generators[g])) {
        w.push_back(-static_cast<int>(g + 1));
        found = true;
        break;
      }
    }
    if (!found) throw ParseError("unknown letter '" + t.text + "'", 1, t.col);
  }
  return w;
}

inline std::string serialize_presentation(const GroupPresentation& p) {
  std::ostringstream os;
  if (!p.name.empty()) os << "group " << p.name << "\n";
  os << "gens";
  for (const auto& g : p.generators) os << ' ' << g;
  os << "\n";
  for (const auto& r : p.relators) os << "rel " << word_text(p, r) << "\n";
  return os.str();
}

namespace detail {

inline std::string nth_letter_name(std::size_t i) {
  // a, b, ..., z; beyond that g27, g28, ...
  if (i < 26) return std::string(1, static_cast<char>('a' + i));
  return "g" + std::to_string(i + 1);
}

} // namespace detail

// Builtin corpus.  Accepted names: heisenberg, dihedral_inf, free(n),
// free_abelian(n), surface(g), nonorientable(k).
inline GroupPresentation builtin(const std::string& name,
                                 const std::vector<int>& params = {}) {
  auto need_param = [&](int atleast) {
    if (params.size() != 1 || params[0] < atleast)
      throw UsageError("builtin '" + name + "' needs one integer parameter >= " +
                       std::to_string(atleast));
    return params[0];
  };
  GroupPresentation p;
  if (name == "heisenberg") {
    p.name = "heisenberg";
    p.generators = {"x", "y", "z"};
    Word x{1}, y{2}, z{3};
    p.relators.push_back(concat(commutator(x, y), inverse(z)));
    p.relators.push_back(commutator(x, z));
    p.relators.push_back(commutator(y, z));
  } else if (name == "dihedral_inf") {
    p.name = "dihedral_inf";
    p.generators = {"a", "b"};
    p.relators.push_back(Word{1, 1});
    p.relators.push_back(Word{1, 2, 1, 2});
  } else if (name == "free") {
    int n = need_param(1);
    p.name = "free_" + std::to_string(n);
    for (int i = 0; i < n; ++i)
      p.generators.push_back(detail::nth_letter_name(static_cast<std::size_t>(i)));
  } else if (name == "free_abelian") {
    int n = need_param(1);
    p.name = "free_abelian_" + std::to_string(n);
    for (int i = 0; i < n; ++i)
      p.generators.push_back(detail::nth_letter_name(static_cast<std::size_t>(i)));
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j)
        p.relators.push_back(commutator(Word{i}, Word{j}));
  } else if (name == "surface") {
    int g = need_param(1);
    p.name = "surface_" + std::to_string(g);
    Word rel;
    for (int i = 1; i <= g; ++i) {
      p.generators.push_back("a" + std::to_string(i));
      p.generators.push_back("b" + std::to_string(i));
      int a = 2 * i - 1, b = 2 * i;
      Word c = commutator(Word{a}, Word{b});
      rel.insert(rel.end(), c.begin(), c.end());
    }
    p.relators.push_back(rel);
  } else if (name == "nonorientable") {
    int k = need_param(1);
    p.name = "nonorientable_" + std::to_string(k);
    Word rel;
    for (int i = 0; i < k; ++i) {
      p.generators.push_back(detail::nth_letter_name(static_cast<std::size_t>(i)));
      rel.push_back(i + 1);
      rel.push_back(i + 1);
    }
    p.relators.push_back(rel);
  } else {
    throw UsageError("unknown builtin '" + name + "'");
  }
  return p;
}

// Disjoint union of presentations.  Clashing generator names from p2 are
// renamed to the first unused short name so free(1) * free(1) comes out as
// free(2) on the nose.
inline GroupPresentation free_product(const GroupPresentation& p1,
                                      const GroupPresentation& p2) {
  GroupPresentation p;
  p.name = (p1.name.empty() ? "g1" : p1.name) + "*" +
           (p2.name.empty() ? "g2" : p2.name);
  p.generators = p1.generators;
  auto taken = [&](const std::string& s) {
    for (const auto& g : p.generators)
      if (g == s) return true;
    return false;
  };
  for (const auto& g : p2.generators) {
    if (!taken(g)) {
      p.generators.push_back(g);
      continue;
    }
    std::size_t i = 0;
    while (taken(detail::nth_letter_name(i))) ++i;
    p.generators.push_back(detail::nth_letter_name(i));
  }
  p.relators = p1.relators;
  int shift = static_cast<int>(p1.ngens());
  for (const auto& r : p2.relators) {
    Word w;
    for (int x : r) w.push_back(x > 0 ? x + shift : x - shift);
    p.relators.push_back(std::move(w));
  }
  return p;
}

} // namespace torsion::fp

#endif
