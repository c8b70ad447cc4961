// Textual file formats for extension data, approximation systems, and stage
// subgroups.
//
// All three formats are line oriented: `#` starts a comment, blank lines are
// ignored, and every directive is a whitespace-separated token list.  Parsing
// normalizes the data (zero cocycle rows are dropped), so parse, serialize,
// parse is the identity on the parsed data, and serialize, parse, serialize
// is the identity on bytes.
//
// .vab  extension of a finite group by a lattice:
//         point Q            order of the finite point group
//         row ...            Q rows of the multiplication table
//         labels ...         optional element labels, Q symbols
//         rank N             lattice rank
//         action q m11 ...   N*N integer matrix for point element q, all q
//         cocycle a b v...   optional lattice vector for the pair (a, b)
//
// .as   approximation system: the .vab directives describe the target
//       extension, followed by
//         gens ...           source generator names
//         target M           order of the finite quotient
//         trow ...           M rows of its multiplication table
//         tlabels ...        optional labels, M symbols
//         image g q v...     extension image of each source generator
//         sigma_point ...    Q quotient indices, one per point element
//         sigma_lattice ...  N quotient indices, one per lattice basis vector
//
// .sub  stage subgroup generators, one element per line:
//         p1 .. pn | t1 .. tn
//       with the permutation in one-line form on letters 1..n and the twist
//       an integer vector read modulo the stage denominator.

#ifndef TORSION_FORMATS_HPP
#define TORSION_FORMATS_HPP

#include "torsion/approx.hpp"
#include "torsion/bigint.hpp"
#include "torsion/error.hpp"
#include "torsion/finite_group.hpp"
#include "torsion/galois.hpp"
#include "torsion/int_matrix.hpp"
#include "torsion/virtab.hpp"

#include <cctype>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace torsion::io {

namespace detail {

struct TokLine {
  std::size_t lineno = 0;
  std::vector<std::string> toks;
};

inline std::vector<TokLine> token_lines(const std::string& text) {
  std::vector<TokLine> out;
  std::istringstream in(text);
  std::string line;
  std::size_t no = 0;
  while (std::getline(in, line)) {
    ++no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    TokLine tl;
    tl.lineno = no;
    std::string t;
    while (ls >> t) tl.toks.push_back(t);
    if (!tl.toks.empty()) out.push_back(std::move(tl));
  }
  return out;
}

inline Int parse_int_tok(const std::string& t, std::size_t lineno) {
  bool ok = !t.empty() && t != "-";
  for (std::size_t i = 0; ok && i < t.size(); ++i) {
    if (i == 0 && t[i] == '-') continue;
    if (!std::isdigit(static_cast<unsigned char>(t[i]))) ok = false;
  }
  if (!ok)
    throw ParseError("expected an integer, got '" + t + "'", lineno, 1);
  return Int(t);
}

inline std::size_t parse_index_tok(const std::string& t, std::size_t lineno) {
  Int v = parse_int_tok(t, lineno);
  if (v < 0 || v > 1000000)
    throw ParseError("index '" + t + "' is out of range", lineno, 1);
  return v.convert_to<std::size_t>();
}

inline std::vector<std::string> default_labels(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(std::to_string(i));
  return out;
}

inline bool is_zero_vec(const Vec& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

} // namespace detail

struct VabData {
  std::size_t point_order = 0;
  std::vector<std::vector<std::size_t>> table;
  std::vector<std::string> labels; // empty means default numeric labels
  std::size_t rank = 0;
  std::map<std::size_t, IntMatrix> action;
  std::map<std::pair<std::size_t, std::size_t>, Vec> cocycle;

  bool operator==(const VabData& o) const {
    return point_order == o.point_order && table == o.table &&
           labels == o.labels && rank == o.rank && action == o.action &&
           cocycle == o.cocycle;
  }
};

namespace detail {

// Shared directive handler for the extension block of .vab and .as files.
// Returns true when the line was consumed.
struct VabParser {
  VabData d;
  bool saw_point = false, saw_rank = false;
  std::size_t rows_seen = 0;

  bool handle(const TokLine& tl) {
    const auto& t = tl.toks;
    const std::string& head = t[0];
    if (head == "point") {
      if (saw_point) throw ParseError("duplicate point line", tl.lineno, 1);
      if (t.size() != 2)
        throw ParseError("point line takes one count", tl.lineno, 1);
      d.point_order = parse_index_tok(t[1], tl.lineno);
      if (d.point_order == 0)
        throw ParseError("point group order must be positive", tl.lineno, 1);
      saw_point = true;
      return true;
    }
    if (head == "row") {
      if (!saw_point)
        throw ParseError("row line before point line", tl.lineno, 1);
      if (rows_seen == d.point_order)
        throw ParseError("more rows than the point order", tl.lineno, 1);
      if (t.size() != d.point_order + 1)
        throw ParseError("row needs exactly " +
                             std::to_string(d.point_order) + " entries",
                         tl.lineno, 1);
      std::vector<std::size_t> row;
      for (std::size_t i = 1; i < t.size(); ++i)
        row.push_back(parse_index_tok(t[i], tl.lineno));
      d.table.push_back(std::move(row));
      ++rows_seen;
      return true;
    }
    if (head == "labels") {
      if (!saw_point)
        throw ParseError("labels line before point line", tl.lineno, 1);
      if (!d.labels.empty())
        throw ParseError("duplicate labels line", tl.lineno, 1);
      if (t.size() != d.point_order + 1)
        throw ParseError("labels needs exactly " +
                             std::to_string(d.point_order) + " symbols",
                         tl.lineno, 1);
      d.labels.assign(t.begin() + 1, t.end());
      return true;
    }
    if (head == "rank") {
      if (saw_rank) throw ParseError("duplicate rank line", tl.lineno, 1);
      if (t.size() != 2)
        throw ParseError("rank line takes one count", tl.lineno, 1);
      d.rank = parse_index_tok(t[1], tl.lineno);
      saw_rank = true;
      return true;
    }
    if (head == "action") {
      if (!saw_point || !saw_rank)
        throw ParseError("action line before point and rank lines",
                         tl.lineno, 1);
      if (t.size() != 2 + d.rank * d.rank)
        throw ParseError("action needs a point element and " +
                             std::to_string(d.rank * d.rank) + " entries",
                         tl.lineno, 1);
      std::size_t q = parse_index_tok(t[1], tl.lineno);
      if (q >= d.point_order)
        throw ParseError("action point element out of range", tl.lineno, 1);
      if (d.action.count(q))
        throw ParseError("duplicate action for point element " +
                             std::to_string(q),
                         tl.lineno, 1);
      IntMatrix m(d.rank, d.rank);
      for (std::size_t i = 0; i < d.rank; ++i)
        for (std::size_t j = 0; j < d.rank; ++j)
          m(i, j) = parse_int_tok(t[2 + i * d.rank + j], tl.lineno);
      d.action.emplace(q, std::move(m));
      return true;
    }
    if (head == "cocycle") {
      if (!saw_point || !saw_rank)
        throw ParseError("cocycle line before point and rank lines",
                         tl.lineno, 1);
      if (t.size() != 3 + d.rank)
        throw ParseError("cocycle needs two point elements and " +
                             std::to_string(d.rank) + " entries",
                         tl.lineno, 1);
      std::size_t a = parse_index_tok(t[1], tl.lineno);
      std::size_t b = parse_index_tok(t[2], tl.lineno);
      if (a >= d.point_order || b >= d.point_order)
        throw ParseError("cocycle point element out of range", tl.lineno, 1);
      if (d.cocycle.count({a, b}))
        throw ParseError("duplicate cocycle entry", tl.lineno, 1);
      Vec v;
      for (std::size_t i = 0; i < d.rank; ++i)
        v.push_back(parse_int_tok(t[3 + i], tl.lineno));
      if (!is_zero_vec(v)) d.cocycle.emplace(std::make_pair(a, b), std::move(v));
      return true;
    }
    return false;
  }

  void finish(std::size_t lineno) const {
    if (!saw_point) throw ParseError("missing point line", lineno, 1);
    if (rows_seen != d.point_order)
      throw ParseError("expected " + std::to_string(d.point_order) +
                           " row lines, found " + std::to_string(rows_seen),
                       lineno, 1);
    if (!saw_rank) throw ParseError("missing rank line", lineno, 1);
    for (std::size_t q = 0; q < d.point_order; ++q)
      if (!d.action.count(q))
        throw ParseError("missing action for point element " +
                             std::to_string(q),
                         lineno, 1);
  }
};

inline void serialize_vab_block(std::ostream& os, const VabData& d) {
  os << "point " << d.point_order << "\n";
  for (const auto& row : d.table) {
    os << "row";
    for (auto e : row) os << ' ' << e;
    os << "\n";
  }
  if (!d.labels.empty()) {
    os << "labels";
    for (const auto& l : d.labels) os << ' ' << l;
    os << "\n";
  }
  os << "rank " << d.rank << "\n";
  for (const auto& [q, m] : d.action) {
    os << "action " << q;
    for (std::size_t i = 0; i < d.rank; ++i)
      for (std::size_t j = 0; j < d.rank; ++j) os << ' ' << m(i, j);
    os << "\n";
  }
  for (const auto& [key, v] : d.cocycle) {
    os << "cocycle " << key.first << ' ' << key.second;
    for (const auto& e : v) os << ' ' << e;
    os << "\n";
  }
}

} // namespace detail

inline VabData parse_vab(const std::string& text) {
  detail::VabParser p;
  std::size_t last = 0;
  for (const auto& tl : detail::token_lines(text)) {
    last = tl.lineno;
    if (!p.handle(tl))
      throw ParseError("unknown directive '" + tl.toks[0] + "'", tl.lineno, 1);
  }
  p.finish(last + 1);
  return std::move(p.d);
}

inline std::string serialize_vab(const VabData& d) {
  std::ostringstream os;
  detail::serialize_vab_block(os, d);
  return os.str();
}

inline vab::VirtAbGroup build_vab(const VabData& d) {
  vab::FiniteGroup point(d.table, d.labels.empty()
                                      ? detail::default_labels(d.point_order)
                                      : d.labels);
  std::vector<IntMatrix> action;
  for (std::size_t q = 0; q < d.point_order; ++q)
    action.push_back(d.action.at(q));
  vab::CocycleMap cc;
  for (const auto& [key, v] : d.cocycle) cc[key] = v;
  return vab::VirtAbGroup(std::move(point), d.rank, std::move(action),
                          std::move(cc));
}

inline VabData vab_data_of(const vab::VirtAbGroup& g) {
  VabData d;
  const auto& pg = g.point_group();
  d.point_order = pg.order();
  for (std::size_t a = 0; a < d.point_order; ++a) {
    std::vector<std::size_t> row;
    for (std::size_t b = 0; b < d.point_order; ++b) row.push_back(pg.mult(a, b));
    d.table.push_back(std::move(row));
    d.labels.push_back(pg.label(a));
  }
  d.rank = g.rank();
  for (std::size_t a = 0; a < d.point_order; ++a) d.action.emplace(a, g.action(a));
  for (std::size_t a = 0; a < d.point_order; ++a)
    for (std::size_t b = 0; b < d.point_order; ++b) {
      const Vec& v = g.cocycle_at(a, b);
      if (!detail::is_zero_vec(v)) d.cocycle.emplace(std::make_pair(a, b), v);
    }
  return d;
}

struct AsData {
  std::vector<std::string> gens;
  VabData ghat;
  std::size_t target_order = 0;
  std::vector<std::vector<std::size_t>> target_table;
  std::vector<std::string> target_labels; // empty means default numeric labels
  std::map<std::string, std::pair<std::size_t, Vec>> images;
  std::vector<std::size_t> sigma_point;
  std::vector<std::size_t> sigma_lattice;

  bool operator==(const AsData& o) const {
    return gens == o.gens && ghat == o.ghat && target_order == o.target_order &&
           target_table == o.target_table && target_labels == o.target_labels &&
           images == o.images && sigma_point == o.sigma_point &&
           sigma_lattice == o.sigma_lattice;
  }
};

inline AsData parse_as(const std::string& text) {
  AsData d;
  detail::VabParser vp;
  bool saw_gens = false, saw_target = false, saw_sp = false, saw_sl = false;
  std::size_t trows_seen = 0, last = 0;
  for (const auto& tl : detail::token_lines(text)) {
    last = tl.lineno;
    if (vp.handle(tl)) continue;
    const auto& t = tl.toks;
    const std::string& head = t[0];
    if (head == "gens") {
      if (saw_gens) throw ParseError("duplicate gens line", tl.lineno, 1);
      if (t.size() < 2)
        throw ParseError("gens line needs at least one name", tl.lineno, 1);
      d.gens.assign(t.begin() + 1, t.end());
      std::set<std::string> uniq(d.gens.begin(), d.gens.end());
      if (uniq.size() != d.gens.size())
        throw ParseError("duplicate generator name", tl.lineno, 1);
      saw_gens = true;
    } else if (head == "target") {
      if (saw_target) throw ParseError("duplicate target line", tl.lineno, 1);
      if (t.size() != 2)
        throw ParseError("target line takes one count", tl.lineno, 1);
      d.target_order = detail::parse_index_tok(t[1], tl.lineno);
      if (d.target_order == 0)
        throw ParseError("target order must be positive", tl.lineno, 1);
      saw_target = true;
    } else if (head == "trow") {
      if (!saw_target)
        throw ParseError("trow line before target line", tl.lineno, 1);
      if (trows_seen == d.target_order)
        throw ParseError("more trows than the target order", tl.lineno, 1);
      if (t.size() != d.target_order + 1)
        throw ParseError("trow needs exactly " +
                             std::to_string(d.target_order) + " entries",
                         tl.lineno, 1);
      std::vector<std::size_t> row;
      for (std::size_t i = 1; i < t.size(); ++i)
        row.push_back(detail::parse_index_tok(t[i], tl.lineno));
      d.target_table.push_back(std::move(row));
      ++trows_seen;
    } else if (head == "tlabels") {
      if (!saw_target)
        throw ParseError("tlabels line before target line", tl.lineno, 1);
      if (!d.target_labels.empty())
        throw ParseError("duplicate tlabels line", tl.lineno, 1);
      if (t.size() != d.target_order + 1)
        throw ParseError("tlabels needs exactly " +
                             std::to_string(d.target_order) + " symbols",
                         tl.lineno, 1);
      d.target_labels.assign(t.begin() + 1, t.end());
    } else if (head == "image") {
      if (!saw_gens)
        throw ParseError("image line before gens line", tl.lineno, 1);
      if (!vp.saw_rank)
        throw ParseError("image line before rank line", tl.lineno, 1);
      if (t.size() != 3 + vp.d.rank)
        throw ParseError("image needs a generator, a point element, and " +
                             std::to_string(vp.d.rank) + " entries",
                         tl.lineno, 1);
      if (d.images.count(t[1]))
        throw ParseError("duplicate image for '" + t[1] + "'", tl.lineno, 1);
      std::size_t q = detail::parse_index_tok(t[2], tl.lineno);
      Vec v;
      for (std::size_t i = 0; i < vp.d.rank; ++i)
        v.push_back(detail::parse_int_tok(t[3 + i], tl.lineno));
      d.images.emplace(t[1], std::make_pair(q, std::move(v)));
    } else if (head == "sigma_point") {
      if (!vp.saw_point)
        throw ParseError("sigma_point line before point line", tl.lineno, 1);
      if (saw_sp)
        throw ParseError("duplicate sigma_point line", tl.lineno, 1);
      if (t.size() != vp.d.point_order + 1)
        throw ParseError("sigma_point needs exactly " +
                             std::to_string(vp.d.point_order) + " entries",
                         tl.lineno, 1);
      for (std::size_t i = 1; i < t.size(); ++i)
        d.sigma_point.push_back(detail::parse_index_tok(t[i], tl.lineno));
      saw_sp = true;
    } else if (head == "sigma_lattice") {
      if (!vp.saw_rank)
        throw ParseError("sigma_lattice line before rank line", tl.lineno, 1);
      if (saw_sl)
        throw ParseError("duplicate sigma_lattice line", tl.lineno, 1);
      if (t.size() != vp.d.rank + 1)
        throw ParseError("sigma_lattice needs exactly " +
                             std::to_string(vp.d.rank) + " entries",
                         tl.lineno, 1);
      for (std::size_t i = 1; i < t.size(); ++i)
        d.sigma_lattice.push_back(detail::parse_index_tok(t[i], tl.lineno));
      saw_sl = true;
    } else {
      throw ParseError("unknown directive '" + head + "'", tl.lineno, 1);
    }
  }
  vp.finish(last + 1);
  if (!saw_gens) throw ParseError("missing gens line", last + 1, 1);
  if (!saw_target) throw ParseError("missing target line", last + 1, 1);
  if (trows_seen != d.target_order)
    throw ParseError("expected " + std::to_string(d.target_order) +
                         " trow lines, found " + std::to_string(trows_seen),
                     last + 1, 1);
  if (!saw_sp) throw ParseError("missing sigma_point line", last + 1, 1);
  if (!saw_sl) throw ParseError("missing sigma_lattice line", last + 1, 1);
  for (const auto& g : d.gens)
    if (!d.images.count(g))
      throw ParseError("missing image for generator '" + g + "'", last + 1, 1);
  for (const auto& [g, im] : d.images) {
    bool known = false;
    for (const auto& h : d.gens) known = known || h == g;
    if (!known)
      throw ParseError("image for unknown generator '" + g + "'", last + 1, 1);
  }
  d.ghat = std::move(vp.d);
  return d;
}

inline std::string serialize_as(const AsData& d) {
  std::ostringstream os;
  os << "gens";
  for (const auto& g : d.gens) os << ' ' << g;
  os << "\n";
  detail::serialize_vab_block(os, d.ghat);
  os << "target " << d.target_order << "\n";
  for (const auto& row : d.target_table) {
    os << "trow";
    for (auto e : row) os << ' ' << e;
    os << "\n";
  }
  if (!d.target_labels.empty()) {
    os << "tlabels";
    for (const auto& l : d.target_labels) os << ' ' << l;
    os << "\n";
  }
  for (const auto& g : d.gens) {
    const auto& [q, v] = d.images.at(g);
    os << "image " << g << ' ' << q;
    for (const auto& e : v) os << ' ' << e;
    os << "\n";
  }
  os << "sigma_point";
  for (auto e : d.sigma_point) os << ' ' << e;
  os << "\n";
  os << "sigma_lattice";
  for (auto e : d.sigma_lattice) os << ' ' << e;
  os << "\n";
  return os.str();
}

inline vab::ApproxSystem build_as(const AsData& d, std::uint64_t seed = 0x516a) {
  vab::VirtAbGroup ghat = build_vab(d.ghat);
  vab::FiniteGroup target(d.target_table,
                          d.target_labels.empty()
                              ? detail::default_labels(d.target_order)
                              : d.target_labels);
  std::map<std::string, vab::VAElement> images;
  for (const auto& [g, im] : d.images)
    images.emplace(g, vab::VAElement{im.first, im.second});
  vab::SigmaMap sigma{d.sigma_point, d.sigma_lattice};
  return vab::make_approx_system(d.gens, std::move(ghat), std::move(images),
                                 std::move(target), std::move(sigma), seed);
}

inline AsData as_data_of(const vab::ApproxSystem& s) {
  AsData d;
  d.gens = s.source_gens;
  d.ghat = vab_data_of(s.ghat);
  d.target_order = s.G.order();
  for (std::size_t a = 0; a < d.target_order; ++a) {
    std::vector<std::size_t> row;
    for (std::size_t b = 0; b < d.target_order; ++b) row.push_back(s.G.mult(a, b));
    d.target_table.push_back(std::move(row));
    d.target_labels.push_back(s.G.label(a));
  }
  for (const auto& [g, x] : s.images)
    d.images.emplace(g, std::make_pair(x.q, x.v));
  d.sigma_point = s.sigma.point_images;
  d.sigma_lattice = s.sigma.lattice_images;
  return d;
}

inline std::vector<galois::StageGroupElement> parse_sub(const std::string& text) {
  std::vector<galois::StageGroupElement> out;
  for (const auto& tl : detail::token_lines(text)) {
    std::size_t bar = tl.toks.size();
    for (std::size_t i = 0; i < tl.toks.size(); ++i)
      if (tl.toks[i] == "|") {
        bar = i;
        break;
      }
    if (bar == tl.toks.size())
      throw ParseError("element line needs a '|' between the permutation "
                       "and the twist",
                       tl.lineno, 1);
    if (bar == 0 || tl.toks.size() - bar - 1 != bar)
      throw ParseError("permutation and twist must have the same length",
                       tl.lineno, 1);
    galois::StageGroupElement g;
    for (std::size_t i = 0; i < bar; ++i) {
      std::size_t p = detail::parse_index_tok(tl.toks[i], tl.lineno);
      if (p == 0 || p > bar)
        throw ParseError("permutation letter out of range", tl.lineno, 1);
      g.perm.push_back(p - 1);
    }
    for (std::size_t i = bar + 1; i < tl.toks.size(); ++i)
      g.twist.push_back(detail::parse_int_tok(tl.toks[i], tl.lineno));
    out.push_back(std::move(g));
  }
  return out;
}

inline std::string serialize_sub_element(const galois::StageGroupElement& g) {
  std::ostringstream os;
  for (std::size_t i = 0; i < g.perm.size(); ++i) {
    if (i) os << ' ';
    os << g.perm[i] + 1;
  }
  os << " |";
  for (const auto& t : g.twist) os << ' ' << t;
  return os.str();
}

inline std::string serialize_sub(const std::vector<galois::StageGroupElement>& v) {
  std::ostringstream os;
  for (const auto& g : v) os << serialize_sub_element(g) << "\n";
  return os.str();
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

} // namespace torsion::io

#endif
