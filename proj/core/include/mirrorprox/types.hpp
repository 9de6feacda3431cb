#pragma once

#include <Eigen/Core>
#include <stdexcept>
#include <string>

namespace mirrorprox {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Points live in R^d with a dimension fixed per problem instance.
using Point = Vec;

inline bool all_finite(const Vec& v) { return v.allFinite(); }
inline bool all_finite(const Mat& m) { return m.allFinite(); }

inline void require(bool cond, const std::string& what) {
  if (!cond) throw std::invalid_argument(what);
}

}  // namespace mirrorprox
