#pragma once

#include <compare>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "chernvan/boundary_config.hpp"
#include "chernvan/rational.hpp"

namespace chernvan {

// At most one distinguished class per monomial: c_g of the relative log
// forms, or one of the two pieces W, f^*xi of the decomposition c_g = f^*xi + W.
enum class Marker { none, cg, w, xi };

struct CycleMonomial {
  Marker marker = Marker::none;
  std::vector<int> y;  // exponent of Y_i
  std::vector<int> t;  // exponent of the pullback f^*T_j

  IndexSet support() const;
  int y_degree() const;
  // y_degree - |support|, the number of repeated Y symbols.
  int excess() const;
  auto operator<=>(const CycleMonomial&) const = default;
};

CycleMonomial operator*(const CycleMonomial& a, const CycleMonomial& b);

// Q-linear combination of cycle monomials, kept in canonical sorted form.
class CycleExpr {
 public:
  CycleExpr() : CycleExpr(0, 0) {}
  CycleExpr(int num_y, int num_t) : num_y_(num_y), num_t_(num_t) {}
  explicit CycleExpr(const BoundaryConfig& cfg) : CycleExpr(cfg.num_y(), cfg.num_t()) {}

  static CycleExpr monomial(const CycleMonomial& m, const Rat& c = Rat(1));
  CycleMonomial unit() const;

  int num_y() const { return num_y_; }
  int num_t() const { return num_t_; }
  const std::map<CycleMonomial, Rat>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  void add_term(const CycleMonomial& m, const Rat& c);

  CycleExpr& operator+=(const CycleExpr& o);
  CycleExpr& operator-=(const CycleExpr& o);
  friend CycleExpr operator*(const CycleExpr& a, const CycleExpr& b);
  friend CycleExpr operator*(CycleExpr a, const Rat& c);
  friend bool operator==(const CycleExpr&, const CycleExpr&) = default;

  // Drop monomials over empty strata and W-monomials meeting the Z support.
  CycleExpr pruned(const BoundaryConfig& cfg) const;

  std::string str(const BoundaryConfig& cfg) const;

 private:
  int num_y_;
  int num_t_;
  std::map<CycleMonomial, Rat> terms_;
};

std::string render_monomial(const CycleMonomial& m, const BoundaryConfig& cfg);

// Grammar: expr := ['+'|'-'] term (('+'|'-') term)*
//          term := factor ('*' factor)*
//          factor := rational | cg | W | xi | Yname ['^' int] | 'f*(' expr ')' ['^' int]
//                  | '(' expr ')'
// T names are only accepted inside f*(...). Throws InputError(parse).
CycleExpr parse_cycle_expr(std::string_view text, const BoundaryConfig& cfg);

}  // namespace chernvan
