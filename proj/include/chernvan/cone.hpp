#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace chernvan {

using IntVector = std::vector<mpz_class>;
using IntMatrix = std::vector<IntVector>;

struct LatticeContext {
  int g = 1;
  explicit LatticeContext(int rank);
  int dim_b() const { return g * (g + 1) / 2; }
  int ambient_dim() const { return dim_b() + g; }
};

// A point of B(N) x N^dual: a symmetric integer form and a covector.
struct BPoint {
  IntMatrix b;
  IntVector l;
  bool operator==(const BPoint&) const = default;
  auto operator<=>(const BPoint&) const = default;
};

// Upper-triangle entries of b row by row, followed by l.
IntVector flatten(const BPoint& v);
std::string format_point(const BPoint& v);

struct Cone {
  int g = 1;
  std::vector<BPoint> generators;  // sorted lexicographically

  bool operator==(const Cone&) const = default;
};

// Sorts the generators. Throws std::invalid_argument on zero generators,
// shape mismatches or asymmetric b.
Cone make_cone(int g, std::vector<BPoint> generators);

// One generator per line: `b = [[..],[..]]; l = [..]`; '#' starts a comment.
Cone parse_cone(std::string_view text);
Cone load_cone(const std::string& path);

// Diagonal of the Smith normal form, nonzero entries only.
std::vector<mpz_class> elementary_divisors(IntMatrix m);
mpz_class determinant(const IntMatrix& m);

bool is_smooth(const Cone& c, const LatticeContext& ctx);

// (gamma, mu) acting by translation by mu, then by gamma.
struct AffineElement {
  IntMatrix gamma;
  IntVector mu;
};

AffineElement identity_element(int g);
// (g1, m1) . (g2, m2) = (g1 g2, g2^-1 m1 + m2).
AffineElement compose(const AffineElement& x, const AffineElement& y);
// Throws std::invalid_argument when gamma is not unimodular.
IntMatrix unimodular_inverse(const IntMatrix& gamma);
BPoint act(const AffineElement& x, const BPoint& v);

bool is_positive_semidefinite(const IntMatrix& b);
bool in_ctilde(const BPoint& v, const LatticeContext& ctx);

struct InvarianceWitness {
  std::vector<int> permutation;  // generator i goes to generator permutation[i]
  IntVector mu;
};

// Default bound: max |l| coordinate times g, plus one.
long default_witness_bound(const Cone& c);

// First (j, mu) in lexicographic order of j, then by (|mu|_1, lex) with
// b_i = b_j(i) and l_i + l_j(i) = b_j(i) mu, |mu_k| <= bound.
std::optional<InvarianceWitness> find_invariance_witness(const Cone& c, const LatticeContext& ctx,
                                                         long bound);

enum class FixedStratumStatus { smooth_locus, hypothesis_violation, failed };

struct FixedStratumReport {
  FixedStratumStatus status = FixedStratumStatus::failed;
  std::vector<std::string> assertions;
  int rank_with_l = 0;
  int rank_b = 0;
  std::string summary;
};

FixedStratumReport fixed_stratum_check(const Cone& c, const InvarianceWitness& w,
                                       const LatticeContext& ctx, bool even_level = true);

const char* status_name(FixedStratumStatus s);

}  // namespace chernvan
