// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace netmeasure {

enum class ArcId : std::uint32_t {};
enum class VertexId : std::uint32_t {};

constexpr std::size_t index(ArcId a) { return static_cast<std::size_t>(a); }
constexpr std::size_t index(VertexId v) { return static_cast<std::size_t>(v); }
constexpr ArcId arc_id(std::size_t i) { return static_cast<ArcId>(i); }
constexpr VertexId vertex_id(std::size_t i) { return static_cast<VertexId>(i); }

/// Lineage tag carried by atoms. Children created at junctions inherit the
/// tag of their parent; every initial atom and every emitted source atom
/// starts a new lineage.
using Origin = std::uint32_t;
inline constexpr Origin kNoOrigin = std::numeric_limits<Origin>::max();

inline constexpr double kInf = std::numeric_limits<double>::infinity();

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Outcome of a structural check. Failures are collected, never thrown.
struct ValidationReport {
  std::vector<std::string> issues;

  bool ok() const { return issues.empty(); }
  void fail(std::string msg) { issues.push_back(std::move(msg)); }
  void merge(const ValidationReport& other) {
    issues.insert(issues.end(), other.issues.begin(), other.issues.end());
  }
  std::string summary() const {
    std::string out;
    for (const auto& s : issues) {
      if (!out.empty()) out += "; ";
      out += s;
    }
    return out;
  }
};

}  // namespace netmeasure
