#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace chernvan {

// Subset of boundary components, bit i standing for Y_{i} (or T_{j}).
using IndexSet = std::uint64_t;

inline bool contains(IndexSet s, int i) { return (s >> i) & 1U; }
inline IndexSet singleton(int i) { return IndexSet{1} << i; }
int set_size(IndexSet s);
std::vector<int> members(IndexSet s);

// Combinatorial description of the boundary of a compactified fibration:
// components Y_i upstairs, T_j downstairs, pullback multiplicities nu_i^j
// (f^* T_j = sum_i nu_i^j Y_i), the nonempty strata Y_I and the index sets
// J(I) with f(Y_I) = T_{J(I)}.
struct BoundaryConfig {
  std::vector<std::string> y_names;
  std::vector<std::string> t_names;
  std::vector<std::vector<long>> nu;  // nu[i][j]
  // Closed under subsets; always holds every singleton. The empty set is not stored.
  std::set<IndexSet> strata;
  std::map<IndexSet, IndexSet> j_overrides;
  int base_dim = 0;
  int fiber_dim = 0;
  IndexSet z_support = 0;
  bool z_support_declared = false;
  // Components Y_i on which W . Y_i is declared nonzero.
  IndexSet w_nonzero_on = 0;

  int num_y() const { return static_cast<int>(y_names.size()); }
  int num_t() const { return static_cast<int>(t_names.size()); }
  IndexSet all_y() const;

  bool is_stratum(IndexSet s) const { return s != 0 && strata.count(s) > 0; }
  IndexSet column_support(IndexSet s) const;  // {j : exists i in s with nu_i^j > 0}
  IndexSet j_of(IndexSet s) const;
  // {i : sum_j nu_i^j >= 2}, the components of Z = f^*T - Y.
  IndexSet multiple_locus() const;
  // Components with nu_i^j >= 2, i.e. the components of Z_j.
  IndexSet z_components(int j) const;
  // Components of (f^*T_j)_red.
  IndexSet reduced_components(int j) const;
  // Components of (f^*T_j)_red mapping onto T_j.
  IndexSet phi_components(int j) const;
  // Components of (f^*T_j)_red mapping to a deeper stratum.
  IndexSet v_components(int j) const;
  // |{j : Y_i inside (f^*T_j)_red}| - 1
  int n_of(int i) const;

  int y_index(std::string_view name) const;  // throws InputError(parse)
  int t_index(std::string_view name) const;
  IndexSet parse_y_set(std::string_view list) const;  // "Y1,Y2"
  IndexSet parse_t_set(std::string_view list) const;
  std::string format_y_set(IndexSet s) const;  // "{Y1,Y2}"
  std::string format_t_set(IndexSet s) const;
};

// Structured text with sections [components], [nu], [strata], [J], [meta].
// Throws InputError(parse).
BoundaryConfig parse_boundary_config(std::string_view text);
BoundaryConfig load_boundary_config(const std::string& path);

// Hypothesis and consistency problems; empty when the configuration is valid.
std::vector<std::string> validation_problems(const BoundaryConfig& cfg);
// Throws InputError(validation) listing every problem.
void require_valid(const BoundaryConfig& cfg);

}  // namespace chernvan
