#pragma once

#include <string>
#include <vector>

#include "qiso/gram.hpp"

namespace qiso {

// A finite truncation of a representation: basis labels, the Gram
// matrix over them, and per-letter generator matrices as endomorphisms
// of the truncated span.  Columns whose exact image leaves the window
// are zeroed and flagged; identity checks restrict to interior columns
// where every flag involved is clean, so truncation artifacts never
// enter a residual.
struct RepWindow {
  std::string name;
  int d = 0;
  int depth = 0;  // longest generator chain that stays meaningful
  std::vector<std::string> labels;
  GramMatrix gram;
  std::vector<Eigen::MatrixXcd> gen;       // [j-1], square
  std::vector<std::vector<char>> gen_ok;   // [j-1][col]
  std::vector<Eigen::MatrixXcd> ann;       // [j-1], square
  std::vector<std::vector<char>> ann_ok;   // [j-1][col]
  std::vector<int> probes;                 // short labels tracked by decay tables

  int size() const { return int(labels.size()); }

  /// Columns whose s_j-image is exact for every letter j.
  std::vector<int> gen_interior() const { return all_ok(gen_ok); }

  /// Columns whose s_j^*-image is exact for every letter j.
  std::vector<int> ann_interior() const { return all_ok(ann_ok); }

 private:
  std::vector<int> all_ok(const std::vector<std::vector<char>>& masks) const {
    std::vector<int> out;
    for (int i = 0; i < size(); ++i) {
      bool ok = true;
      for (const auto& mask : masks) ok = ok && mask[i];
      if (ok) out.push_back(i);
    }
    return out;
  }
};

}  // namespace qiso
