#include <sgq/presentation.hpp>

#include <boost/multiprecision/cpp_int.hpp>

namespace sgq {

namespace {
using bigint = boost::multiprecision::cpp_int;

bigint babs(const bigint& x) { return x < 0 ? bigint(-x) : x; }
} // namespace

// Smith normal form over Z by row/column elimination. Every restart of the
// pivot loop strictly shrinks |pivot|, so the computation terminates; all
// arithmetic is arbitrary precision.
SmithResult smith_normal_form(std::vector<std::vector<long long>> m_in) {
  const int rows = static_cast<int>(m_in.size());
  const int cols = rows ? static_cast<int>(m_in[0].size()) : 0;
  for (const auto& r : m_in)
    if (static_cast<int>(r.size()) != cols)
      fail(errc::bad_argument, "ragged matrix");

  std::vector<std::vector<bigint>> a(rows, std::vector<bigint>(cols));
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      a[i][j] = m_in[i][j];

  const int bound = std::min(rows, cols);
  std::vector<bigint> diag;

  for (int t = 0; t < bound; ++t) {
    // smallest nonzero entry of the trailing submatrix to (t, t)
    int pi = -1, pj = -1;
    for (int i = t; i < rows; ++i)
      for (int j = t; j < cols; ++j)
        if (a[i][j] != 0 &&
            (pi < 0 || babs(a[i][j]) < babs(a[pi][pj]))) {
          pi = i;
          pj = j;
        }
    if (pi < 0)
      break;
    std::swap(a[t], a[pi]);
    for (int i = 0; i < rows; ++i)
      std::swap(a[i][t], a[i][pj]);

    bool settled = false;
    while (!settled) {
      settled = true;
      // clear column t
      for (int i = t + 1; i < rows; ++i) {
        if (a[i][t] == 0)
          continue;
        bigint q = a[i][t] / a[t][t];
        for (int j = t; j < cols; ++j)
          a[i][j] -= q * a[t][j];
        if (a[i][t] != 0) { // remainder: strictly smaller new pivot
          std::swap(a[t], a[i]);
          settled = false;
        }
      }
      // clear row t
      for (int j = t + 1; j < cols; ++j) {
        if (a[t][j] == 0)
          continue;
        bigint q = a[t][j] / a[t][t];
        for (int i = t; i < rows; ++i)
          a[i][j] -= q * a[i][t];
        if (a[t][j] != 0) {
          for (int i = 0; i < rows; ++i)
            std::swap(a[i][t], a[i][j]);
          settled = false;
        }
      }
      if (!settled)
        continue;
      // pivot must divide the rest of the submatrix
      for (int i = t + 1; i < rows && settled; ++i)
        for (int j = t + 1; j < cols && settled; ++j)
          if (a[i][j] % a[t][t] != 0) {
            for (int jj = t; jj < cols; ++jj)
              a[t][jj] += a[i][jj];
            settled = false;
          }
    }
    if (a[t][t] < 0)
      a[t][t] = -a[t][t];
    diag.push_back(a[t][t]);
  }

  SmithResult out;
  for (const bigint& d : diag)
    if (d != 0)
      out.factors.push_back(d.convert_to<long long>());
  out.free_rank = cols - static_cast<int>(out.factors.size());
  return out;
}

} // namespace sgq
