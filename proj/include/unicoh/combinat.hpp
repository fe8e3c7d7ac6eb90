#pragma once

#include <vector>

#include "unicoh/scalar.hpp"

namespace unicoh {

unsigned long binomial_ul(unsigned long n, unsigned long k);
Int binomial_z(unsigned long n, unsigned long k);

/// All k-subsets of {0..n-1}, each ascending, in lexicographic order.
const std::vector<std::vector<int>>& subsets(int n, int k);

/// Position of an ascending k-subset in the lexicographic list.
int subset_index(int n, const std::vector<int>& s);

/// Sign of the shuffle sorting the concatenation of two disjoint ascending
/// sets; 0 if they intersect.
int merge_sign(const std::vector<int>& a, const std::vector<int>& b);

/// Sorted union of two disjoint ascending sets.
std::vector<int> merge_sets(const std::vector<int>& a, const std::vector<int>& b);

} // namespace unicoh
