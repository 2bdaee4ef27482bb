#include <sgq/cocycle.hpp>

#include <algorithm>
#include <cctype>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>

namespace sgq {

TwoCocycle::TwoCocycle(FiniteQuandle q, FiniteGroup h,
                       std::vector<std::vector<int>> values)
    : q_(std::move(q)), h_(std::move(h)), values_(std::move(values)) {
  const int n = q_.size();
  if (static_cast<int>(values_.size()) != n)
    fail(errc::incomplete_table, "cocycle value table has wrong row count");
  for (const auto& row : values_) {
    if (static_cast<int>(row.size()) != n)
      fail(errc::incomplete_table, "cocycle value table is not square");
    for (int v : row)
      if (v < 0 || v >= h_.size())
        fail(errc::incomplete_table, "cocycle value out of range");
  }
}

std::optional<std::array<int, 3>> TwoCocycle::first_failure() const {
  const int n = q_.size();
  for (int x = 0; x < n; ++x)
    if (values_[x][x] != h_.identity())
      return std::array<int, 3>{x, x, x};
  for (int x1 = 0; x1 < n; ++x1)
    for (int x2 = 0; x2 < n; ++x2)
      for (int x3 = 0; x3 < n; ++x3) {
        int lhs = h_.mul(values_[x1][x2], values_[q_.op(x1, x2)][x3]);
        int rhs =
            h_.mul(values_[x1][x3], values_[q_.op(x1, x3)][q_.op(x2, x3)]);
        if (lhs != rhs)
          return std::array<int, 3>{x1, x2, x3};
      }
  return std::nullopt;
}

bool TwoCocycle::satisfies_stability() const {
  const int n = q_.size();
  for (int y = 0; y < n; ++y)
    for (int z = 0; z < n; ++z) {
      if (values_[q_.op(y, z)][z] != values_[y][z])
        return false;
      if (values_[q_.inv_op(y, z)][z] != values_[y][z])
        return false;
    }
  return true;
}

std::string TwoCocycle::serialize() const {
  std::ostringstream os;
  for (int x = 0; x < q_.size(); ++x)
    for (int y = 0; y < q_.size(); ++y)
      if (values_[x][y] != h_.identity())
        os << "phi(" << (x + 1) << "," << (y + 1)
           << ") = " << h_.name(values_[x][y]) << "\n";
  return os.str();
}

TwoCocycle constant_identity_cocycle(const FiniteQuandle& q,
                                     const FiniteGroup& h) {
  std::vector<std::vector<int>> v(q.size(),
                                  std::vector<int>(q.size(), h.identity()));
  return TwoCocycle(q, h, std::move(v));
}

TwoCocycle parse_cocycle(const FiniteQuandle& q, const FiniteGroup& h,
                         const std::string& text) {
  std::vector<std::vector<int>> v(q.size(),
                                  std::vector<int>(q.size(), h.identity()));
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos)
      line = line.substr(0, hash);
    bool blank = true;
    for (char c : line)
      if (!std::isspace(static_cast<unsigned char>(c)))
        blank = false;
    if (blank)
      continue;
    auto bad = [&](const std::string& msg) {
      fail(errc::syntax_error,
           "cocycle line " + std::to_string(lineno) + ": " + msg);
    };
    auto lp = line.find('(');
    auto comma = line.find(',', lp);
    auto rp = line.find(')', comma);
    auto eq = line.find('=', rp);
    if (line.find("phi") == std::string::npos || lp == std::string::npos ||
        comma == std::string::npos || rp == std::string::npos ||
        eq == std::string::npos)
      bad("expected phi(<x>,<y>) = <element>");
    int x = 0, y = 0;
    try {
      x = std::stoi(line.substr(lp + 1, comma - lp - 1));
      y = std::stoi(line.substr(comma + 1, rp - comma - 1));
    } catch (const std::exception&) {
      bad("bad quandle indices");
    }
    if (x < 1 || x > q.size() || y < 1 || y > q.size())
      bad("quandle index out of range");
    std::string elem = line.substr(eq + 1);
    auto l = elem.find_first_not_of(" \t");
    auto r = elem.find_last_not_of(" \t\r");
    if (l == std::string::npos)
      bad("missing element");
    elem = elem.substr(l, r - l + 1);
    v[x - 1][y - 1] = h.index_of_name(elem);
  }
  return TwoCocycle(q, h, std::move(v));
}

TwoCocycle coboundary_transform(const TwoCocycle& phi,
                                const std::vector<int>& beta) {
  const FiniteQuandle& q = phi.quandle();
  const FiniteGroup& h = phi.group();
  std::vector<std::vector<int>> v(q.size(), std::vector<int>(q.size()));
  for (int x1 = 0; x1 < q.size(); ++x1)
    for (int x2 = 0; x2 < q.size(); ++x2)
      v[x1][x2] = h.mul(h.mul(h.inv(beta[x1]), phi.value(x1, x2)),
                        beta[q.op(x1, x2)]);
  return TwoCocycle(q, h, std::move(v));
}

namespace {

// iterate all maps beta: Q -> H as an odometer
template <typename F>
void for_each_beta(int nq, int nh, long long budget, F&& f) {
  std::vector<int> beta(nq, 0);
  long long count = 1;
  for (int i = 0; i < nq; ++i) {
    count *= nh;
    if (count > budget)
      fail(errc::budget_exceeded, "coboundary search space exceeds budget");
  }
  while (true) {
    if (!f(beta))
      return;
    int i = 0;
    while (i < nq && ++beta[i] == nh) {
      beta[i] = 0;
      ++i;
    }
    if (i == nq)
      return;
  }
}

} // namespace

std::optional<std::vector<int>> are_cohomologous(const TwoCocycle& a,
                                                 const TwoCocycle& b,
                                                 long long budget) {
  if (!(a.quandle() == b.quandle()) || a.group().table() != b.group().table())
    fail(errc::bad_argument,
         "cocycles live over different quandles or groups");
  const FiniteQuandle& q = a.quandle();
  const FiniteGroup& h = a.group();
  std::optional<std::vector<int>> witness;
  for_each_beta(q.size(), h.size(), budget, [&](const std::vector<int>& beta) {
    for (int x1 = 0; x1 < q.size(); ++x1)
      for (int x2 = 0; x2 < q.size(); ++x2) {
        int t = h.mul(h.mul(h.inv(beta[x1]), a.value(x1, x2)),
                      beta[q.op(x1, x2)]);
        if (t != b.value(x1, x2))
          return true; // keep scanning
      }
    witness = beta;
    return false;
  });
  return witness;
}

std::vector<TwoCocycle> search_cocycles(const FiniteQuandle& q,
                                        const FiniteGroup& h,
                                        bool require_stability,
                                        long long budget, unsigned cell_seed) {
  const int n = q.size();
  // variable id per cell; diagonal cells are pinned to the identity
  std::vector<std::vector<int>> var(n, std::vector<int>(n, -1));
  int nvars = 0;
  if (require_stability) {
    // cells (y,z) and (y*z,z) share one variable: orbits of *z per column
    for (int z = 0; z < n; ++z) {
      std::vector<bool> seen(n, false);
      for (int y0 = 0; y0 < n; ++y0) {
        if (seen[y0])
          continue;
        std::vector<int> orbit;
        int y = y0;
        while (!seen[y]) {
          seen[y] = true;
          orbit.push_back(y);
          y = q.op(y, z);
        }
        bool diagonal = false;
        for (int m : orbit)
          if (m == z)
            diagonal = true;
        int id = diagonal ? -1 : nvars++;
        for (int m : orbit)
          var[m][z] = id;
      }
    }
  } else {
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        if (y != z)
          var[y][z] = nvars++;
  }

  // search order; permuted deterministically by cell_seed
  std::vector<int> order(nvars);
  std::iota(order.begin(), order.end(), 0);
  if (cell_seed != 0) {
    std::mt19937 rng(cell_seed);
    std::shuffle(order.begin(), order.end(), rng);
  }
  std::vector<int> pos(nvars); // position of var in the order
  for (int i = 0; i < nvars; ++i)
    pos[order[i]] = i;

  // triple constraints, scheduled at the latest-assigned participating var
  struct Triple {
    int a, b, c, d; // var ids of phi(x1,x2), phi(x1*x2,x3), phi(x1,x3),
                    // phi(x1*x3,x2*x3); -1 means identity
  };
  std::vector<std::vector<Triple>> due(nvars);
  for (int x1 = 0; x1 < n; ++x1)
    for (int x2 = 0; x2 < n; ++x2)
      for (int x3 = 0; x3 < n; ++x3) {
        Triple t{var[x1][x2], var[q.op(x1, x2)][x3], var[x1][x3],
                 var[q.op(x1, x3)][q.op(x2, x3)]};
        int latest = -1;
        for (int v : {t.a, t.b, t.c, t.d})
          if (v >= 0)
            latest = std::max(latest, pos[v]);
        if (latest >= 0)
          due[latest].push_back(t); // all-identity triples hold trivially
      }
  const int id_elem = h.identity();
  std::vector<int> val(nvars, -1);
  auto cell_value = [&](int v) { return v < 0 ? id_elem : val[v]; };

  std::vector<TwoCocycle> found;
  long long nodes = 0;
  std::function<void(int)> dfs = [&](int depth) {
    if (depth == nvars) {
      std::vector<std::vector<int>> cells(n, std::vector<int>(n, id_elem));
      for (int y = 0; y < n; ++y)
        for (int z = 0; z < n; ++z)
          if (var[y][z] >= 0)
            cells[y][z] = val[var[y][z]];
      found.emplace_back(q, h, std::move(cells));
      return;
    }
    int v = order[depth];
    for (int g = 0; g < h.size(); ++g) {
      if (++nodes > budget)
        fail(errc::budget_exceeded, "cocycle search budget exhausted");
      val[v] = g;
      bool ok = true;
      for (const Triple& t : due[depth]) {
        int lhs = h.mul(cell_value(t.a), cell_value(t.b));
        int rhs = h.mul(cell_value(t.c), cell_value(t.d));
        if (lhs != rhs) {
          ok = false;
          break;
        }
      }
      if (ok)
        dfs(depth + 1);
      val[v] = -1;
    }
  };
  dfs(0);
  std::sort(found.begin(), found.end());
  return found;
}

CocycleClasses classify(const std::vector<TwoCocycle>& cocycles,
                        long long budget) {
  CocycleClasses out;
  if (cocycles.empty())
    return out;
  const FiniteQuandle& q = cocycles[0].quandle();
  const FiniteGroup& h = cocycles[0].group();
  for (const TwoCocycle& c : cocycles)
    if (!(c.quandle() == q) || c.group().table() != h.table())
      fail(errc::bad_argument, "classify needs a uniform (Q, H) family");

  // canonical orbit representative: the least value table over all beta
  auto canonical = [&](const TwoCocycle& phi) {
    std::vector<std::vector<int>> best = phi.values();
    for_each_beta(q.size(), h.size(), budget,
                  [&](const std::vector<int>& beta) {
                    TwoCocycle t = coboundary_transform(phi, beta);
                    if (t.values() < best)
                      best = t.values();
                    return true;
                  });
    return best;
  };

  std::vector<std::vector<std::vector<int>>> reps;
  for (size_t i = 0; i < cocycles.size(); ++i) {
    auto canon = canonical(cocycles[i]);
    bool placed = false;
    for (size_t g = 0; g < reps.size(); ++g)
      if (reps[g] == canon) {
        out.classes[g].push_back(static_cast<int>(i));
        placed = true;
        break;
      }
    if (!placed) {
      reps.push_back(std::move(canon));
      out.classes.push_back({static_cast<int>(i)});
    }
  }
  auto trivial_canon = canonical(constant_identity_cocycle(q, h));
  for (size_t g = 0; g < reps.size(); ++g)
    if (reps[g] == trivial_canon)
      out.trivial_class = static_cast<int>(g);
  return out;
}

} // namespace sgq
