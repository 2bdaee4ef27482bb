#include <sgq/group.hpp>

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace sgq {

FiniteGroup::FiniteGroup(std::vector<std::vector<int>> mult,
                         std::vector<std::string> names)
    : n_(static_cast<int>(mult.size())), mult_(std::move(mult)),
      names_(std::move(names)) {
  if (n_ == 0)
    fail(errc::invalid_table, "empty multiplication table");
  for (const auto& row : mult_) {
    if (static_cast<int>(row.size()) != n_)
      fail(errc::invalid_table, "multiplication table is not square");
    for (int v : row)
      if (v < 0 || v >= n_)
        fail(errc::invalid_table, "table entry out of range");
  }
  identity_ = -1;
  for (int e = 0; e < n_; ++e) {
    bool ok = true;
    for (int a = 0; a < n_ && ok; ++a)
      ok = mult_[e][a] == a && mult_[a][e] == a;
    if (ok) {
      identity_ = e;
      break;
    }
  }
  if (identity_ < 0)
    fail(errc::invalid_table, "no identity element");
  inv_.assign(n_, -1);
  for (int a = 0; a < n_; ++a) {
    for (int b = 0; b < n_; ++b)
      if (mult_[a][b] == identity_ && mult_[b][a] == identity_) {
        inv_[a] = b;
        break;
      }
    if (inv_[a] < 0)
      fail(errc::invalid_table, "element without inverse");
  }
  for (int a = 0; a < n_; ++a)
    for (int b = 0; b < n_; ++b)
      for (int c = 0; c < n_; ++c)
        if (mult_[mult_[a][b]][c] != mult_[a][mult_[b][c]])
          fail(errc::invalid_table, "multiplication is not associative");
  if (names_.empty()) {
    names_.reserve(n_);
    for (int i = 0; i < n_; ++i)
      names_.push_back(std::to_string(i));
  }
  if (static_cast<int>(names_.size()) != n_)
    fail(errc::bad_argument, "name count does not match group size");
  long long e = 1;
  for (int a = 0; a < n_; ++a)
    e = std::lcm(e, static_cast<long long>(element_order(a)));
  exponent_ = static_cast<int>(e);
}

int FiniteGroup::pow(int a, long long e) const {
  int base = a;
  if (e < 0) {
    base = inv(a);
    e = -e;
  }
  int acc = identity_;
  while (e > 0) {
    if (e & 1)
      acc = mul(acc, base);
    base = mul(base, base);
    e >>= 1;
  }
  return acc;
}

int FiniteGroup::element_order(int a) const {
  int x = a, ord = 1;
  while (x != identity_) {
    x = mul(x, a);
    ++ord;
  }
  return ord;
}

int FiniteGroup::index_of_name(const std::string& s) const {
  for (int i = 0; i < n_; ++i)
    if (names_[i] == s)
      return i;
  fail(errc::bad_argument, "unknown group element: " + s);
}

namespace {

// one-line forms of all permutations of {0..n-1}, identity first, then
// lexicographic. Composition p;q = "p then q": (p;q)(i) = q(p(i)).
std::vector<std::vector<int>> all_perms(int n) {
  std::vector<int> base(n);
  std::iota(base.begin(), base.end(), 0);
  std::vector<std::vector<int>> out;
  std::vector<int> p = base;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

} // namespace

FiniteGroup symmetric_group(int n) {
  if (n < 1 || n > 7)
    fail(errc::bad_argument, "symmetric group supported for 1 <= n <= 7");
  auto perms = all_perms(n);
  const int m = static_cast<int>(perms.size());
  std::vector<int> index_of(m, -1);
  auto rank = [&](const std::vector<int>& p) {
    // lexicographic rank
    int lo = 0, hi = m - 1;
    while (lo < hi) {
      int mid = (lo + hi) / 2;
      if (perms[mid] < p)
        lo = mid + 1;
      else
        hi = mid;
    }
    return lo;
  };
  std::vector<std::vector<int>> mult(m, std::vector<int>(m));
  std::vector<int> comp(n);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      for (int i = 0; i < n; ++i)
        comp[i] = perms[b][perms[a][i]]; // a first, then b
      mult[a][b] = rank(comp);
    }
  std::vector<std::string> names(m);
  for (int a = 0; a < m; ++a)
    names[a] = cycle_notation(perms[a]);
  return FiniteGroup(std::move(mult), std::move(names));
}

FiniteGroup cyclic_group(int n) {
  if (n < 1)
    fail(errc::bad_argument, "cyclic group needs n >= 1");
  std::vector<std::vector<int>> mult(n, std::vector<int>(n));
  std::vector<std::string> names(n);
  for (int a = 0; a < n; ++a) {
    names[a] = std::to_string(a);
    for (int b = 0; b < n; ++b)
      mult[a][b] = (a + b) % n;
  }
  return FiniteGroup(std::move(mult), std::move(names));
}

FiniteGroup group_from_table(std::vector<std::vector<int>> mult,
                             std::vector<std::string> names) {
  return FiniteGroup(std::move(mult), std::move(names));
}

std::vector<int> parse_cycle_notation(const std::string& text, int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
      ++i;
  };
  skip_ws();
  bool saw_cycle = false;
  while (i < text.size()) {
    skip_ws();
    if (i >= text.size())
      break;
    if (text[i] != '(')
      fail(errc::bad_argument, "bad cycle notation: " + text);
    ++i;
    std::vector<int> cyc;
    while (true) {
      skip_ws();
      if (i < text.size() && text[i] == ')') {
        ++i;
        break;
      }
      if (i >= text.size() ||
          !std::isdigit(static_cast<unsigned char>(text[i])))
        fail(errc::bad_argument, "bad cycle notation: " + text);
      int v = 0;
      while (i < text.size() &&
             std::isdigit(static_cast<unsigned char>(text[i])))
        v = v * 10 + (text[i++] - '0');
      if (v < 1 || v > n)
        fail(errc::bad_argument, "cycle entry out of range: " + text);
      cyc.push_back(v - 1);
      skip_ws();
      if (i < text.size() && (text[i] == ',' || text[i] == ' '))
        ++i;
    }
    // apply this cycle after what we have so far (left-to-right)
    if (cyc.size() > 1) {
      std::vector<int> c(n);
      std::iota(c.begin(), c.end(), 0);
      for (size_t k = 0; k < cyc.size(); ++k)
        c[cyc[k]] = cyc[(k + 1) % cyc.size()];
      for (int j = 0; j < n; ++j)
        p[j] = c[p[j]];
    }
    saw_cycle = true;
  }
  if (!saw_cycle)
    fail(errc::bad_argument, "bad cycle notation: " + text);
  return p;
}

std::string cycle_notation(const std::vector<int>& one_line) {
  const int n = static_cast<int>(one_line.size());
  std::vector<bool> seen(n, false);
  std::ostringstream os;
  bool any = false;
  for (int i = 0; i < n; ++i) {
    if (seen[i] || one_line[i] == i)
      continue;
    os << '(';
    int x = i;
    bool first = true;
    while (!seen[x]) {
      seen[x] = true;
      if (!first)
        os << ',';
      os << (x + 1);
      first = false;
      x = one_line[x];
    }
    os << ')';
    any = true;
  }
  if (!any)
    return "()";
  return os.str();
}

} // namespace sgq
