#pragma once

#include <span>
#include <vector>

namespace mdf {

/// Holm step-down adjustment. Sorts ascending, multiplies the i-th smallest
/// (1-based) by m - i + 1, takes running maxima, caps at 1, and returns the
/// adjusted values in the input order.
std::vector<double> holm_adjust(std::span<const double> pvalues);

}  // namespace mdf
