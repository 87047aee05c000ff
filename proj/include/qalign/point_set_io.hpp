#pragma once

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "qalign/point_set.hpp"

namespace qalign {

// Text format: one point per line, whitespace-separated decimal coordinates,
// `#`-prefixed comment lines and blank lines skipped. The dimension is
// inferred from the first data line and must stay constant.
template <typename Scalar = double>
PointSet<Scalar> load_point_set(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open point-set file: " + path);

  std::vector<Scalar> values;
  Eigen::Index dim = 0, count = 0;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string tok;
    std::vector<Scalar> row;
    bool comment = false;
    while (ls >> tok) {
      if (tok.front() == '#') { comment = true; break; }
      double v = 0.0;
      const char* first = tok.data();
      const char* last = tok.data() + tok.size();
      auto [ptr, ec] = std::from_chars(first, last, v);
      if (ec != std::errc() || ptr != last)
        throw FormatError("non-numeric token '" + tok + "' in " + path);
      row.push_back(static_cast<Scalar>(v));
    }
    if (row.empty()) continue;  // blank or pure comment line
    if (comment) throw FormatError("inline comment after data in " + path);
    if (dim == 0) {
      dim = static_cast<Eigen::Index>(row.size());
      if (dim != 2 && dim != 3)
        throw FormatError("unsupported point dimension " + std::to_string(dim) + " in " + path);
    } else if (static_cast<Eigen::Index>(row.size()) != dim) {
      throw FormatError("ragged row in " + path);
    }
    values.insert(values.end(), row.begin(), row.end());
    ++count;
  }
  if (count == 0) throw FormatError("no points in " + path);

  typename PointSet<Scalar>::Matrix pts(dim, count);
  for (Eigen::Index n = 0; n < count; ++n)
    for (Eigen::Index d = 0; d < dim; ++d)
      pts(d, n) = values[static_cast<std::size_t>(n * dim + d)];
  return PointSet<Scalar>(std::move(pts));
}

}  // namespace qalign
