#include "chernvan/boundary_config.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <fstream>
#include <sstream>

#include "chernvan/error.hpp"

namespace chernvan {
namespace {

constexpr int kMaxComponents = 63;

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? s.npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

[[noreturn]] void parse_fail(int line, const std::string& msg) {
  throw InputError(ErrorKind::parse, "line " + std::to_string(line) + ": " + msg);
}

bool valid_name(const std::string& n) {
  if (n.empty() || !(std::isalpha(static_cast<unsigned char>(n[0])) || n[0] == '_')) return false;
  return std::all_of(n.begin(), n.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

long parse_long(const std::string& s, int line) {
  try {
    std::size_t used = 0;
    const long v = std::stol(s, &used);
    if (used != s.size()) parse_fail(line, "not an integer: '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    parse_fail(line, "not an integer: '" + s + "'");
  }
}

std::vector<std::string> name_list(const std::string& rhs) {
  std::vector<std::string> out;
  if (trim(rhs).empty()) return out;
  for (const std::string& item : split(rhs, ',')) out.push_back(item);
  return out;
}

}  // namespace

int set_size(IndexSet s) { return std::popcount(s); }

std::vector<int> members(IndexSet s) {
  std::vector<int> out;
  for (int i = 0; s != 0; ++i, s >>= 1)
    if (s & 1U) out.push_back(i);
  return out;
}

IndexSet BoundaryConfig::all_y() const {
  return num_y() >= 64 ? ~IndexSet{0} : (IndexSet{1} << num_y()) - 1;
}

IndexSet BoundaryConfig::column_support(IndexSet s) const {
  IndexSet out = 0;
  for (int i : members(s))
    for (int j = 0; j < num_t(); ++j)
      if (nu[i][j] > 0) out |= singleton(j);
  return out;
}

IndexSet BoundaryConfig::j_of(IndexSet s) const {
  auto it = j_overrides.find(s);
  return it != j_overrides.end() ? it->second : column_support(s);
}

IndexSet BoundaryConfig::multiple_locus() const {
  IndexSet out = 0;
  for (int i = 0; i < num_y(); ++i) {
    long total = 0;
    for (int j = 0; j < num_t(); ++j) total += nu[i][j];
    if (total >= 2) out |= singleton(i);
  }
  return out;
}

IndexSet BoundaryConfig::z_components(int j) const {
  IndexSet out = 0;
  for (int i = 0; i < num_y(); ++i)
    if (nu[i][j] >= 2) out |= singleton(i);
  return out;
}

IndexSet BoundaryConfig::reduced_components(int j) const {
  IndexSet out = 0;
  for (int i = 0; i < num_y(); ++i)
    if (nu[i][j] > 0) out |= singleton(i);
  return out;
}

IndexSet BoundaryConfig::phi_components(int j) const {
  IndexSet out = 0;
  for (int i : members(reduced_components(j)))
    if (j_of(singleton(i)) == singleton(j)) out |= singleton(i);
  return out;
}

IndexSet BoundaryConfig::v_components(int j) const {
  return reduced_components(j) & ~phi_components(j);
}

int BoundaryConfig::n_of(int i) const { return set_size(column_support(singleton(i))) - 1; }

int BoundaryConfig::y_index(std::string_view name) const {
  for (int i = 0; i < num_y(); ++i)
    if (y_names[i] == name) return i;
  throw InputError(ErrorKind::parse, "unknown Y component '" + std::string(name) + "'");
}

int BoundaryConfig::t_index(std::string_view name) const {
  for (int j = 0; j < num_t(); ++j)
    if (t_names[j] == name) return j;
  throw InputError(ErrorKind::parse, "unknown T component '" + std::string(name) + "'");
}

IndexSet BoundaryConfig::parse_y_set(std::string_view list) const {
  IndexSet s = 0;
  for (const std::string& n : name_list(std::string(list))) s |= singleton(y_index(n));
  return s;
}

IndexSet BoundaryConfig::parse_t_set(std::string_view list) const {
  IndexSet s = 0;
  for (const std::string& n : name_list(std::string(list))) s |= singleton(t_index(n));
  return s;
}

std::string BoundaryConfig::format_y_set(IndexSet s) const {
  std::string out = "{";
  for (int i : members(s)) out += (out.size() > 1 ? "," : "") + y_names.at(i);
  return out + "}";
}

std::string BoundaryConfig::format_t_set(IndexSet s) const {
  std::string out = "{";
  for (int j : members(s)) out += (out.size() > 1 ? "," : "") + t_names.at(j);
  return out + "}";
}

BoundaryConfig parse_boundary_config(std::string_view text) {
  BoundaryConfig cfg;
  std::string section;
  struct Pending {
    int line;
    std::string lhs, rhs;
  };
  std::vector<Pending> nu_rows, strata_rows, j_rows;
  std::vector<Pending> meta_rows;
  bool saw_components = false;

  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::size_t hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') parse_fail(line_no, "unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section != "components" && section != "nu" && section != "strata" && section != "J" &&
          section != "meta")
        parse_fail(line_no, "unknown section [" + section + "]");
      if (section == "components") saw_components = true;
      continue;
    }
    if (section.empty()) parse_fail(line_no, "content before the first section");
    if (section == "components") {
      const std::size_t eq = line.find('=');
      if (eq == std::string::npos) parse_fail(line_no, "expected 'Y = ...' or 'T = ...'");
      const std::string key = trim(line.substr(0, eq));
      std::vector<std::string> names = name_list(line.substr(eq + 1));
      for (const std::string& n : names)
        if (!valid_name(n)) parse_fail(line_no, "invalid component name '" + n + "'");
      if (key == "Y")
        cfg.y_names.insert(cfg.y_names.end(), names.begin(), names.end());
      else if (key == "T")
        cfg.t_names.insert(cfg.t_names.end(), names.begin(), names.end());
      else
        parse_fail(line_no, "unknown component kind '" + key + "'");
    } else if (section == "nu") {
      const std::size_t colon = line.find(':');
      if (colon == std::string::npos) parse_fail(line_no, "expected 'Yi: Tj=k, ...'");
      nu_rows.push_back({line_no, trim(line.substr(0, colon)), line.substr(colon + 1)});
    } else if (section == "strata") {
      strata_rows.push_back({line_no, line, ""});
    } else if (section == "J") {
      const std::size_t arrow = line.find("->");
      if (arrow == std::string::npos) parse_fail(line_no, "expected 'I -> J'");
      j_rows.push_back({line_no, trim(line.substr(0, arrow)), trim(line.substr(arrow + 2))});
    } else {
      const std::size_t eq = line.find('=');
      if (eq == std::string::npos) parse_fail(line_no, "expected 'key = value'");
      meta_rows.push_back({line_no, trim(line.substr(0, eq)), trim(line.substr(eq + 1))});
    }
  }

  if (!saw_components) throw InputError(ErrorKind::parse, "missing [components] section");
  if (cfg.y_names.empty() || cfg.t_names.empty())
    throw InputError(ErrorKind::parse, "both Y and T component lists must be nonempty");
  if (cfg.num_y() > kMaxComponents || cfg.num_t() > kMaxComponents)
    throw InputError(ErrorKind::parse, "at most 63 components per divisor are supported");
  auto check_unique = [](const std::vector<std::string>& names) {
    std::set<std::string> seen;
    for (const std::string& n : names)
      if (!seen.insert(n).second) throw InputError(ErrorKind::parse, "duplicate name '" + n + "'");
  };
  check_unique(cfg.y_names);
  check_unique(cfg.t_names);
  std::vector<std::string> all = cfg.y_names;
  all.insert(all.end(), cfg.t_names.begin(), cfg.t_names.end());
  check_unique(all);

  auto wrap = [](int line, auto&& fn) {
    try {
      fn();
    } catch (const InputError& e) {
      if (std::string_view(e.what()).starts_with("line ")) throw;
      parse_fail(line, e.what());
    }
  };

  cfg.nu.assign(cfg.num_y(), std::vector<long>(cfg.num_t(), 0));
  for (const Pending& row : nu_rows) {
    wrap(row.line, [&] {
      const int i = cfg.y_index(row.lhs);
      for (const std::string& entry : name_list(row.rhs)) {
        const std::size_t eq = entry.find('=');
        if (eq == std::string::npos) parse_fail(row.line, "expected 'Tj=k', got '" + entry + "'");
        const int j = cfg.t_index(trim(entry.substr(0, eq)));
        const long v = parse_long(trim(entry.substr(eq + 1)), row.line);
        if (v < 0) parse_fail(row.line, "multiplicities must be nonnegative");
        cfg.nu[i][j] = v;
      }
    });
  }

  for (int i = 0; i < cfg.num_y(); ++i) cfg.strata.insert(singleton(i));
  for (const Pending& row : strata_rows) {
    wrap(row.line, [&] {
      const IndexSet s = cfg.parse_y_set(row.lhs);
      if (s == 0) parse_fail(row.line, "empty stratum");
      // Subset closure.
      for (IndexSet sub = s; sub != 0; sub = (sub - 1) & s) cfg.strata.insert(sub);
    });
  }

  for (const Pending& row : j_rows) {
    wrap(row.line, [&] {
      const IndexSet s = cfg.parse_y_set(row.lhs);
      if (s == 0) parse_fail(row.line, "empty index set in [J]");
      cfg.j_overrides[s] = cfg.parse_t_set(row.rhs);
    });
  }

  for (const Pending& row : meta_rows) {
    wrap(row.line, [&] {
      if (row.lhs == "base_dim") {
        cfg.base_dim = static_cast<int>(parse_long(row.rhs, row.line));
      } else if (row.lhs == "fiber_dim") {
        cfg.fiber_dim = static_cast<int>(parse_long(row.rhs, row.line));
      } else if (row.lhs == "z_support") {
        cfg.z_support = cfg.parse_y_set(row.rhs);
        cfg.z_support_declared = true;
      } else if (row.lhs == "w_nonzero_on") {
        cfg.w_nonzero_on = cfg.parse_y_set(row.rhs);
      } else {
        parse_fail(row.line, "unknown meta key '" + row.lhs + "'");
      }
    });
  }
  if (!cfg.z_support_declared) cfg.z_support = cfg.multiple_locus();
  return cfg;
}

BoundaryConfig load_boundary_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(ErrorKind::io, "cannot open boundary config '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_boundary_config(buf.str());
  } catch (const InputError& e) {
    throw InputError(e.kind(), path + ": " + e.what());
  }
}

std::vector<std::string> validation_problems(const BoundaryConfig& cfg) {
  std::vector<std::string> problems;
  if (cfg.base_dim < 1) problems.push_back("base_dim must be >= 1");
  if (cfg.fiber_dim < 1) problems.push_back("fiber_dim must be >= 1");
  if (cfg.fiber_dim > 6) problems.push_back("fiber_dim > 6 is not supported");

  for (int i = 0; i < cfg.num_y(); ++i) {
    long total = 0;
    for (int j = 0; j < cfg.num_t(); ++j) total += cfg.nu[i][j];
    if (total < 1)
      problems.push_back(cfg.y_names[i] + " does not lie over any T component (sum of nu is 0)");
  }

  const IndexSet multiple = cfg.multiple_locus();
  if (cfg.z_support != multiple)
    problems.push_back("z_support " + cfg.format_y_set(cfg.z_support) +
                       " differs from the multiple locus " + cfg.format_y_set(multiple) +
                       " of f^*T - Y");

  if ((cfg.w_nonzero_on & cfg.z_support) != 0)
    problems.push_back("W hypothesis violated: W . Y_i declared nonzero for Z components " +
                       cfg.format_y_set(cfg.w_nonzero_on & cfg.z_support));

  const int ambient = cfg.base_dim + cfg.fiber_dim;
  for (IndexSet s : cfg.strata) {
    if (set_size(s) > ambient)
      problems.push_back("stratum " + cfg.format_y_set(s) + " has codimension above dim X");
    const IndexSet js = cfg.j_of(s);
    if ((js & cfg.column_support(s)) != cfg.column_support(s))
      problems.push_back("J" + cfg.format_y_set(s) + " = " + cfg.format_t_set(js) +
                         " misses the column support " + cfg.format_t_set(cfg.column_support(s)));
    if (set_size(js) > cfg.base_dim)
      problems.push_back("J" + cfg.format_y_set(s) + " has more than base_dim elements");
  }
  for (const auto& [s, js] : cfg.j_overrides)
    if (!cfg.is_stratum(s))
      problems.push_back("[J] override for empty stratum " + cfg.format_y_set(s));
  // Monotonicity: I' inside I implies J(I') inside J(I).
  for (IndexSet big : cfg.strata)
    for (IndexSet small = (big - 1) & big; small != 0; small = (small - 1) & big)
      if ((cfg.j_of(small) & ~cfg.j_of(big)) != 0)
        problems.push_back("J is not monotone: J" + cfg.format_y_set(small) + " = " +
                           cfg.format_t_set(cfg.j_of(small)) + " is not inside J" +
                           cfg.format_y_set(big) + " = " + cfg.format_t_set(cfg.j_of(big)));
  return problems;
}

void require_valid(const BoundaryConfig& cfg) {
  const std::vector<std::string> problems = validation_problems(cfg);
  if (problems.empty()) return;
  std::string msg = "invalid boundary configuration:";
  for (const std::string& p : problems) msg += "\n  - " + p;
  throw InputError(ErrorKind::validation, msg);
}

}  // namespace chernvan
