#pragma once

#include <string>
#include <vector>

#include "core/inequality.hpp"

namespace exg {

// Named inequalities with fixed term lists.
std::vector<std::string> catalog_names();
LinearInequality catalog_get(const std::string& name);

// Pearl instrumental family on instrumental:l,m,n, one member per outcome i
// of A and response function k mapping B outcomes to settings, with terms
// sum_j P(i j | k(j)) and classical bound 1. Returns m * l^n inequalities.
std::vector<LinearInequality> pearl_family(int l, int m, int n);

// CGLMP block S^d_k on the bell:2,2,d,d scenario (4d unit-weight terms) with
// its classical bound from cglmp_alpha.
LinearInequality cglmp_s(int d, int k);

// Weighted combination sum_k (d-1-k) S^d_k with classical bound 3(d-1).
LinearInequality cglmp_full(int d);

// Independence number of the S^d_k support graph: 4 when 4k+1 is a multiple
// of d, else 3.
int cglmp_alpha(int d, int k);

} // namespace exg
