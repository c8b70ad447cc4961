// Line-oriented reports for the command line tool.
//
// A report is a fixed header (tool banner, version, echoed command, the
// effective sampling seed, a status word) followed by a payload of
// key-value lines nested by two-space indentation.  Values are exact
// integers, integer vectors, or plain words; nothing is rounded, and the
// serialization is deterministic: identical inputs and tool version give
// byte-identical output.

#ifndef TORSION_REPORT_HPP
#define TORSION_REPORT_HPP

#include "torsion/bigint.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace torsion::cli {

inline constexpr const char* kVersion = "0.1.0";

inline std::string fmt_vec(const Vec& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += to_string(v[i]);
  }
  return out + "]";
}

inline std::string fmt_indices(const std::vector<std::size_t>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(v[i]);
  }
  return out + "]";
}

inline std::string fmt_bool(bool b) { return b ? "true" : "false"; }

class Report {
public:
  explicit Report(std::string command) : command_(std::move(command)) {}

  void status(std::string s) { status_ = std::move(s); }
  const std::string& status() const { return status_; }
  void seed(std::uint64_t s) { seed_ = s; }

  // Payload line at the given nesting depth.  An empty value renders the
  // key alone, which is how section headers are written.
  void line(std::size_t depth, std::string key, std::string value = "") {
    lines_.push_back({depth, std::move(key), std::move(value)});
  }

  std::string str() const {
    std::ostringstream os;
    os << "torsiontool report\n";
    os << "version " << kVersion << "\n";
    os << "command " << command_ << "\n";
    if (seed_)
      os << "seed " << *seed_ << "\n";
    else
      os << "seed none\n";
    os << "status " << status_ << "\n";
    if (!lines_.empty()) {
      os << "payload\n";
      for (const auto& l : lines_) {
        os << std::string(2 * (l.depth + 1), ' ') << l.key;
        if (!l.value.empty()) os << ' ' << l.value;
        os << "\n";
      }
    }
    return os.str();
  }

private:
  struct Line {
    std::size_t depth;
    std::string key;
    std::string value;
  };

  std::string command_;
  std::string status_ = "ok";
  std::optional<std::uint64_t> seed_;
  std::vector<Line> lines_;
};

} // namespace torsion::cli

#endif
