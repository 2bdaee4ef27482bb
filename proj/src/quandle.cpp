#include <sgq/quandle.hpp>

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include <sgq/group.hpp>

namespace sgq {

std::string AxiomWitness::describe() const {
  std::ostringstream os;
  switch (law) {
  case Law::idempotence:
    os << "idempotence fails at a=" << a << " (a*a != a)";
    break;
  case Law::bijectivity:
    os << "column " << b << " is not a permutation (rows " << a << ", " << c
       << " collide)";
    break;
  case Law::distributivity:
    os << "right distributivity fails at (a,b,c)=(" << a << "," << b << ","
       << c << ")";
    break;
  }
  return os.str();
}

std::optional<AxiomWitness>
check_quandle_axioms(const std::vector<std::vector<int>>& table) {
  const int n = static_cast<int>(table.size());
  if (n == 0)
    return AxiomWitness{AxiomWitness::Law::bijectivity, 0, 0, 0};
  for (int a = 0; a < n; ++a) {
    if (static_cast<int>(table[a].size()) != n)
      fail(errc::axiom_violation, "operation table is not square");
    for (int b = 0; b < n; ++b)
      if (table[a][b] < 0 || table[a][b] >= n)
        fail(errc::axiom_violation, "table entry out of range");
  }
  for (int a = 0; a < n; ++a)
    if (table[a][a] != a)
      return AxiomWitness{AxiomWitness::Law::idempotence, a, a, -1};
  for (int b = 0; b < n; ++b) {
    std::vector<int> seen(n, -1);
    for (int a = 0; a < n; ++a) {
      int v = table[a][b];
      if (seen[v] >= 0)
        return AxiomWitness{AxiomWitness::Law::bijectivity, seen[v], b, a};
      seen[v] = a;
    }
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (table[table[a][b]][c] != table[table[a][c]][table[b][c]])
          return AxiomWitness{AxiomWitness::Law::distributivity, a, b, c};
  return std::nullopt;
}

FiniteQuandle::FiniteQuandle(std::vector<std::vector<int>> table,
                             std::vector<std::string> labels)
    : n_(static_cast<int>(table.size())), table_(std::move(table)),
      labels_(std::move(labels)) {
  if (auto w = check_quandle_axioms(table_))
    fail(errc::axiom_violation, w->describe());
  inv_table_.assign(n_, std::vector<int>(n_, 0));
  for (int b = 0; b < n_; ++b)
    for (int a = 0; a < n_; ++a)
      inv_table_[table_[a][b]][b] = a;
  if (labels_.empty()) {
    labels_.reserve(n_);
    for (int i = 0; i < n_; ++i)
      labels_.push_back(std::to_string(i + 1)); // rendered 1-based
  }
  if (static_cast<int>(labels_.size()) != n_)
    fail(errc::bad_argument, "label count does not match quandle size");
  long long k = 1;
  for (int b = 0; b < n_; ++b)
    k = std::lcm(k, static_cast<long long>(column_order(b)));
  k_order_ = static_cast<int>(k);
}

int FiniteQuandle::column_order(int b) const {
  // order of the permutation a -> a*b
  std::vector<bool> done(n_, false);
  long long ord = 1;
  for (int a = 0; a < n_; ++a) {
    if (done[a])
      continue;
    int len = 0, x = a;
    while (!done[x]) {
      done[x] = true;
      x = table_[x][b];
      ++len;
    }
    ord = std::lcm(ord, static_cast<long long>(len));
  }
  return static_cast<int>(ord);
}

std::optional<int>
FiniteQuandle::index_of_label(const std::string& s) const {
  for (int i = 0; i < n_; ++i)
    if (labels_[i] == s)
      return i;
  return std::nullopt;
}

FiniteQuandle quandle_from_table(std::vector<std::vector<int>> table,
                                 std::vector<std::string> labels) {
  return FiniteQuandle(std::move(table), std::move(labels));
}

FiniteQuandle dihedral_quandle(int n) {
  if (n < 1)
    fail(errc::invalid_modulus, "dihedral quandle needs n >= 1");
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  std::vector<std::string> labels(n);
  for (int i = 0; i < n; ++i) {
    labels[i] = std::to_string(i);
    for (int j = 0; j < n; ++j)
      t[i][j] = ((2 * j - i) % n + n) % n;
  }
  return FiniteQuandle(std::move(t), std::move(labels));
}

FiniteQuandle trivial_quandle(int n) {
  if (n < 1)
    fail(errc::invalid_modulus, "trivial quandle needs n >= 1");
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  std::vector<std::string> labels(n);
  for (int i = 0; i < n; ++i) {
    labels[i] = std::to_string(i);
    for (int j = 0; j < n; ++j)
      t[i][j] = i;
  }
  return FiniteQuandle(std::move(t), std::move(labels));
}

namespace {

int mod_inverse(int a, int n) {
  a = ((a % n) + n) % n;
  int t = 0, newt = 1, r = n, newr = a;
  while (newr != 0) {
    int q = r / newr;
    std::swap(t, newt);
    newt -= q * t;
    std::swap(r, newr);
    newr -= q * r;
  }
  if (r != 1)
    return -1; // not a unit
  return ((t % n) + n) % n;
}

// Polynomials over Z_n, coefficient 0 = constant term.
using Poly = std::vector<int>;

Poly trim(Poly p) {
  while (!p.empty() && p.back() == 0)
    p.pop_back();
  return p;
}

// Reduce p modulo the monic polynomial h (h.back() == 1).
Poly reduce_mod(Poly p, const Poly& h, int n) {
  const int d = static_cast<int>(h.size()) - 1;
  while (static_cast<int>(p.size()) > d) {
    int lead = p.back() % n;
    int deg = static_cast<int>(p.size()) - 1;
    if (lead != 0)
      for (int i = 0; i <= d; ++i) {
        int& c = p[deg - d + i];
        c = ((c - lead * h[i]) % n + n) % n;
      }
    p.pop_back();
  }
  p.resize(d, 0);
  return p;
}

Poly poly_scale_shift(const Poly& p, int scalar, int shift, int n, int d) {
  // scalar * t^shift * p, unreduced; caller reduces
  Poly r(p.size() + shift, 0);
  for (size_t i = 0; i < p.size(); ++i)
    r[i + shift] = (p[i] * scalar) % n;
  (void)d;
  return r;
}

Poly poly_add(Poly a, const Poly& b, int n) {
  if (a.size() < b.size())
    a.resize(b.size(), 0);
  for (size_t i = 0; i < b.size(); ++i)
    a[i] = ((a[i] + b[i]) % n + n) % n;
  return a;
}

} // namespace

FiniteQuandle alexander_quandle(int n, const std::vector<int>& h_coeffs) {
  if (n < 2)
    fail(errc::invalid_modulus, "alexander quandle needs modulus n >= 2");
  Poly h = trim(h_coeffs);
  for (int& c : h)
    c = ((c % n) + n) % n;
  h = trim(h);
  if (h.size() < 2)
    fail(errc::bad_argument, "alexander polynomial must have degree >= 1");
  if (mod_inverse(h[0], n) < 0)
    fail(errc::non_unit_constant_term,
         "constant term of h must be a unit mod n (t must be invertible)");
  int lead_inv = mod_inverse(h.back(), n);
  if (lead_inv < 0)
    fail(errc::invalid_modulus,
         "leading coefficient of h must be a unit mod n");
  for (int& c : h)
    c = (c * lead_inv) % n; // make monic
  const int d = static_cast<int>(h.size()) - 1;

  long long count = 1;
  for (int i = 0; i < d; ++i) {
    count *= n;
    if (count > 4096)
      fail(errc::bad_argument, "alexander quandle too large");
  }
  const int m = static_cast<int>(count);

  auto element = [&](int idx) {
    Poly p(d, 0);
    for (int i = 0; i < d; ++i) {
      p[i] = idx % n;
      idx /= n;
    }
    return p;
  };
  auto index_of = [&](const Poly& p) {
    int idx = 0;
    for (int i = d - 1; i >= 0; --i)
      idx = idx * n + p[i];
    return idx;
  };

  std::vector<std::vector<int>> t(m, std::vector<int>(m));
  std::vector<std::string> labels(m);
  for (int a = 0; a < m; ++a) {
    Poly pa = element(a);
    labels[a] = polynomial_label(pa);
    for (int b = 0; b < m; ++b) {
      Poly pb = element(b);
      // t*a + (1-t)*b = t*a + b - t*b
      Poly ta = poly_scale_shift(pa, 1, 1, n, d);
      Poly tb = poly_scale_shift(pb, n - 1, 1, n, d);
      Poly sum = poly_add(poly_add(ta, tb, n), pb, n);
      t[a][b] = index_of(reduce_mod(std::move(sum), h, n));
    }
  }
  return FiniteQuandle(std::move(t), std::move(labels));
}

FiniteQuandle conjugation_quandle(const FiniteGroup& g) {
  const int m = g.size();
  std::vector<std::vector<int>> t(m, std::vector<int>(m));
  std::vector<std::string> labels(m);
  for (int a = 0; a < m; ++a) {
    labels[a] = g.name(a);
    for (int b = 0; b < m; ++b)
      t[a][b] = g.mul(g.mul(g.inv(b), a), b);
  }
  return FiniteQuandle(std::move(t), std::move(labels));
}

FiniteQuandle core_quandle(const FiniteGroup& g) {
  const int m = g.size();
  std::vector<std::vector<int>> t(m, std::vector<int>(m));
  std::vector<std::string> labels(m);
  for (int a = 0; a < m; ++a) {
    labels[a] = g.name(a);
    for (int b = 0; b < m; ++b)
      t[a][b] = g.mul(g.mul(b, g.inv(a)), b);
  }
  return FiniteQuandle(std::move(t), std::move(labels));
}

int apply_operator_word(const FiniteQuandle& q, int x, const OperatorWord& w,
                        const std::vector<int>& assignment) {
  for (const auto& [gen, sign] : w) {
    if (gen < 0 || gen >= static_cast<int>(assignment.size()) ||
        assignment[gen] < 0)
      fail(errc::unassigned_generator,
           "operator word references unassigned generator " +
               std::to_string(gen));
    x = q.op_signed(x, assignment[gen], sign);
  }
  return x;
}

std::vector<int> parse_polynomial(const std::string& text) {
  // terms separated by + / -; a term is [coeff][t[^]exp]
  std::vector<int> coeffs;
  auto add_term = [&](int coeff, int exp) {
    if (exp >= static_cast<int>(coeffs.size()))
      coeffs.resize(exp + 1, 0);
    coeffs[exp] += coeff;
  };
  size_t i = 0;
  const size_t len = text.size();
  int sign = 1;
  bool any = false;
  while (i < len) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    if (text[i] == '+') {
      sign = 1;
      ++i;
      continue;
    }
    if (text[i] == '-') {
      sign = -1;
      ++i;
      continue;
    }
    int coeff = 1;
    bool saw_digits = false;
    if (std::isdigit(static_cast<unsigned char>(text[i]))) {
      coeff = 0;
      while (i < len && std::isdigit(static_cast<unsigned char>(text[i])))
        coeff = coeff * 10 + (text[i++] - '0');
      saw_digits = true;
    }
    int exp = 0;
    if (i < len && (text[i] == 't' || text[i] == 'T')) {
      ++i;
      exp = 1;
      if (i < len && text[i] == '^')
        ++i;
      if (i < len && std::isdigit(static_cast<unsigned char>(text[i]))) {
        exp = 0;
        while (i < len && std::isdigit(static_cast<unsigned char>(text[i])))
          exp = exp * 10 + (text[i++] - '0');
      }
    } else if (!saw_digits) {
      fail(errc::bad_argument, "cannot parse polynomial: " + text);
    }
    add_term(sign * coeff, exp);
    sign = 1;
    any = true;
  }
  if (!any)
    fail(errc::bad_argument, "empty polynomial: " + text);
  return coeffs;
}

std::string polynomial_label(const std::vector<int>& coeffs) {
  std::ostringstream os;
  bool first = true;
  for (int i = static_cast<int>(coeffs.size()) - 1; i >= 0; --i) {
    int c = coeffs[i];
    if (c == 0)
      continue;
    if (!first)
      os << "+";
    if (i == 0 || c != 1)
      os << c;
    if (i >= 1)
      os << "t";
    if (i >= 2)
      os << i;
    first = false;
  }
  if (first)
    os << "0";
  return os.str();
}

} // namespace sgq
